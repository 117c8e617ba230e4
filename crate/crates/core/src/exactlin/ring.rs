//! Coefficient rings and their elements.
//!
//! Every ring supported here is commutative and computable exactly:
//! ℚ (arbitrary precision), ℤ (arbitrary precision), ℤ/n and finite
//! products of prime fields. Product elements are tuples of residues and
//! every operation on them acts componentwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A computable coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rationals,
    Integers,
    IntegersMod(u64),
    /// F_{p_1} × … × F_{p_k} for pairwise distinct primes.
    PrimeFieldProduct(Vec<u64>),
}

/// An element of one of the supported rings. Values are always kept in
/// normal form (rationals in lowest terms, residues in `0..n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rational(BigRational),
    Integer(BigInt),
    Residue(u64),
    Tuple(Vec<u64>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x) = {
        let e = (a as i128).extended_gcd(&(n as i128));
        (e.gcd, e.x)
    };
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i128) as u64)
}

impl Ring {
    pub fn integers_mod(n: u64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("modulus must be at least 2, got {n}")));
        }
        Ok(Ring::IntegersMod(n))
    }

    pub fn prime_field_product(primes: Vec<u64>) -> Result<Self, Error> {
        if primes.is_empty() {
            return Err(Error::InvalidInput("product of fields needs at least one prime".into()));
        }
        for (i, &p) in primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if primes[..i].contains(&p) {
                return Err(Error::InvalidInput(format!("prime {p} repeated in product")));
            }
        }
        Ok(Ring::PrimeFieldProduct(primes))
    }

    /// Number of factors; 1 unless the ring is a product.
    pub fn factor_count(&self) -> usize {
        match self {
            Ring::PrimeFieldProduct(ps) => ps.len(),
            _ => 1,
        }
    }

    /// ℚ or ℤ/p with p prime.
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::IntegersMod(n) => is_prime(*n),
            _ => false,
        }
    }

    /// A field or a finite product of fields.
    pub fn is_field_like(&self) -> bool {
        self.is_field() || matches!(self, Ring::PrimeFieldProduct(_))
    }

    /// The i-th factor ring (the ring itself when there is one factor).
    pub fn factor(&self, i: usize) -> Ring {
        match self {
            Ring::PrimeFieldProduct(ps) => Ring::IntegersMod(ps[i]),
            other => {
                assert_eq!(i, 0, "single-factor ring has only factor 0");
                other.clone()
            }
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Rationals => Elem::Rational(BigRational::zero()),
            Ring::Integers => Elem::Integer(BigInt::zero()),
            Ring::IntegersMod(_) => Elem::Residue(0),
            Ring::PrimeFieldProduct(ps) => Elem::Tuple(vec![0; ps.len()]),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Ring::Rationals => Elem::Rational(BigRational::one()),
            Ring::Integers => Elem::Integer(BigInt::one()),
            Ring::IntegersMod(_) => Elem::Residue(1),
            Ring::PrimeFieldProduct(ps) => Elem::Tuple(vec![1; ps.len()]),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the unique ring map ℤ → R.
    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            Ring::Rationals => Elem::Rational(BigRational::from_integer(v.clone())),
            Ring::Integers => Elem::Integer(v.clone()),
            Ring::IntegersMod(n) => Elem::Residue(reduce(v, *n)),
            Ring::PrimeFieldProduct(ps) => Elem::Tuple(ps.iter().map(|&p| reduce(v, p)).collect()),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(q) => q.is_zero(),
            Elem::Integer(z) => z.is_zero(),
            Elem::Residue(r) => *r == 0,
            Elem::Tuple(t) => t.iter().all(|&r| r == 0),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (_, Elem::Integer(x), Elem::Integer(y)) => Elem::Integer(x + y),
            (Ring::IntegersMod(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Ring::PrimeFieldProduct(ps), Elem::Tuple(x), Elem::Tuple(y)) => Elem::Tuple(
                ps.iter()
                    .zip(x.iter().zip(y))
                    .map(|(&p, (&a, &b))| (a + b) % p)
                    .collect(),
            ),
            _ => panic!("element kinds do not match ring {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Rational(x)) => Elem::Rational(-x),
            (_, Elem::Integer(x)) => Elem::Integer(-x),
            (Ring::IntegersMod(n), Elem::Residue(x)) => Elem::Residue((n - x) % n),
            (Ring::PrimeFieldProduct(ps), Elem::Tuple(x)) => {
                Elem::Tuple(ps.iter().zip(x).map(|(&p, &a)| (p - a) % p).collect())
            }
            _ => panic!("element kind does not match ring {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (_, Elem::Integer(x), Elem::Integer(y)) => Elem::Integer(x * y),
            (Ring::IntegersMod(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(mul_mod(*x, *y, *n))
            }
            (Ring::PrimeFieldProduct(ps), Elem::Tuple(x), Elem::Tuple(y)) => Elem::Tuple(
                ps.iter()
                    .zip(x.iter().zip(y))
                    .map(|(&p, (&a, &b))| mul_mod(a, b, p))
                    .collect(),
            ),
            _ => panic!("element kinds do not match ring {self}"),
        }
    }

    /// Multiplicative inverse, if the element is a unit.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (_, Elem::Rational(x)) => (!x.is_zero()).then(|| Elem::Rational(x.recip())),
            (_, Elem::Integer(x)) => {
                if x.is_one() || (-x).is_one() {
                    Some(Elem::Integer(x.clone()))
                } else {
                    None
                }
            }
            (Ring::IntegersMod(n), Elem::Residue(x)) => inv_mod(*x, *n).map(Elem::Residue),
            (Ring::PrimeFieldProduct(ps), Elem::Tuple(x)) => ps
                .iter()
                .zip(x)
                .map(|(&p, &a)| inv_mod(a, p))
                .collect::<Option<Vec<_>>>()
                .map(Elem::Tuple),
            _ => panic!("element kind does not match ring {self}"),
        }
    }

    /// Component of a product element in factor `i`, as an element of `self.factor(i)`.
    pub fn project(&self, a: &Elem, i: usize) -> Elem {
        match a {
            Elem::Tuple(t) => Elem::Residue(t[i]),
            other => {
                assert_eq!(i, 0);
                other.clone()
            }
        }
    }

    /// Inverse of [`Ring::project`]: reassemble an element from its factor components.
    pub fn combine(&self, parts: &[Elem]) -> Elem {
        match self {
            Ring::PrimeFieldProduct(_) => Elem::Tuple(
                parts
                    .iter()
                    .map(|e| match e {
                        Elem::Residue(r) => *r,
                        _ => panic!("product components must be residues"),
                    })
                    .collect(),
            ),
            _ => {
                assert_eq!(parts.len(), 1);
                parts[0].clone()
            }
        }
    }

    /// Integer lift of an element of ℤ or ℤ/n (residue representative in `0..n`).
    pub fn lift_integer(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Integer(z) => Some(z.clone()),
            Elem::Residue(r) => Some(BigInt::from(*r)),
            _ => None,
        }
    }
}

fn reduce(v: &BigInt, n: u64) -> u64 {
    let m = BigInt::from(n);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(n) => write!(f, "Z/{n}"),
            Ring::PrimeFieldProduct(ps) => {
                let names: Vec<String> = ps.iter().map(|p| format!("F{p}")).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(q) => write!(f, "{q}"),
            Elem::Integer(z) => write!(f, "{z}"),
            Elem::Residue(r) => write!(f, "{r}"),
            Elem::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(|r| r.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl Elem {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Elem::Integer(z) => Some(z),
            _ => None,
        }
    }

    pub fn is_negative_integer(&self) -> bool {
        matches!(self, Elem::Integer(z) if z.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_arithmetic_is_componentwise() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let a = Elem::Tuple(vec![1, 2]);
        let b = Elem::Tuple(vec![1, 2]);
        assert_eq!(r.add(&a, &b), Elem::Tuple(vec![0, 1]));
        assert_eq!(r.mul(&a, &b), Elem::Tuple(vec![1, 1]));
        assert_eq!(r.inv(&Elem::Tuple(vec![1, 0])), None);
        assert_eq!(r.from_i64(-1), Elem::Tuple(vec![1, 2]));
    }

    #[test]
    fn rejects_bad_products() {
        assert!(Ring::prime_field_product(vec![2, 2]).is_err());
        assert!(Ring::prime_field_product(vec![4]).is_err());
        assert!(Ring::integers_mod(1).is_err());
    }

    #[test]
    fn units() {
        assert_eq!(Ring::Integers.inv(&Ring::Integers.from_i64(2)), None);
        assert_eq!(Ring::IntegersMod(6).inv(&Elem::Residue(5)), Some(Elem::Residue(5)));
        assert_eq!(Ring::IntegersMod(6).inv(&Elem::Residue(3)), None);
        assert!(Ring::IntegersMod(7).is_field());
        assert!(!Ring::IntegersMod(6).is_field());
    }
}
