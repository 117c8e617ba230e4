use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::presentation::{k0_presentation, K0Presentation};
use crate::addcat::{wkar_witness, CategorySpec, KarObject, Layer, WkarWitness};
use crate::error::{Error, Result};
use crate::exactlin::snf::solve_integers;
use crate::exactlin::{field, snf, Elem, Matrix, Ring};

/// The map on free parts of `K₀` induced by an inclusion of specs.
#[derive(Clone, Debug)]
pub struct K0Map {
    pub source: K0Presentation,
    pub target: K0Presentation,
    /// `target.free_rank × source.free_rank`
    pub matrix: Matrix,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
}

impl K0Map {
    /// Free coordinates of `[obj]` in the target, computed through the matrix.
    pub fn apply(&self, class: &[BigInt]) -> Vec<BigInt> {
        let r = self.source.invariants.free_rank;
        let x = Matrix::from_fn(&Ring::Integers, r, 1, |i, _| Elem::Integer(class[i].clone()));
        let y = &self.matrix * &x;
        (0..y.rows()).map(|i| y.get(i, 0).as_integer().unwrap().clone()).collect()
    }

    /// Every source generator goes to the class of the same object in the target.
    pub fn check(&self) -> Result<bool> {
        for key in &self.source.generators {
            let inner = self.source.class_of_key(key)?;
            let outer = self.target.class_of_key(key)?;
            let r = self.target.invariants.free_rank;
            if self.apply(&inner[..self.source.invariants.free_rank]) != outer[..r] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn rational_rank(m: &Matrix) -> usize {
    field::rank(&m.map_entries(&Ring::Rationals, |e| Elem::Rational(e.as_integer().unwrap().clone().into())))
}

/// `K₀(inner) → K₀(outer)` for `inner ⊆ outer`, with verdicts from ranks and the Smith form.
pub fn k0_induced_map(inner: &CategorySpec, outer: &CategorySpec, bound: usize) -> Result<K0Map> {
    if inner.ring != outer.ring {
        return Err(Error::SpecMismatch);
    }
    let source = k0_presentation(inner, bound)?;
    let target = k0_presentation(outer, bound)?;
    induced_between(source, target)
}

fn induced_between(source: K0Presentation, target: K0Presentation) -> Result<K0Map> {
    let z = Ring::Integers;
    let (rs, rt) = (source.invariants.free_rank, target.invariants.free_rank);
    let g = source.generators.len();
    let mut outer = Matrix::zeros(&z, rt, g);
    for (j, key) in source.generators.iter().enumerate() {
        let class = target.class_of_key(key).map_err(|_| {
            Error::InvalidInput(format!("class {key:?} of the inner spec is not an object of the outer spec within the bound"))
        })?;
        for (i, c) in class.iter().take(rt).enumerate() {
            outer.set(i, j, Elem::Integer(c.clone()));
        }
    }
    // M·C = O with C the source coordinates of the source generators
    let c = source.free_coordinates();
    let matrix = solve_integers(&c.transpose(), &outer.transpose())
        .ok_or_else(|| Error::CrossCheckFailure("induced map is not well defined on classes".into()))?
        .transpose();
    let matrix = if rs == 0 { Matrix::zeros(&z, rt, 0) } else { matrix };
    let rank = rational_rank(&matrix);
    let injective = rank == rs;
    let units = snf(&matrix)?.diagonal().iter().all(|d| {
        let d = d.as_integer().unwrap();
        d.is_zero() || d.abs().is_one()
    });
    let surjective = rank == rt && units;
    let out = K0Map { source, target, matrix, injective, surjective, bijective: injective && surjective };
    if !out.check()? {
        return Err(Error::CrossCheckFailure("induced map does not send generators to their classes".into()));
    }
    Ok(out)
}

/// Decides `Z ∈ wKar(base)` by lattice membership of `[Z]` in the image of
/// `K₀(base) → K₀(Kar(base))` and cross-checks against the witness search.
#[derive(Clone, Debug)]
pub struct WkarK0Checker {
    pub base: CategorySpec,
    pub map: K0Map,
}

#[derive(Clone, Debug)]
pub struct WkarK0Verdict {
    pub in_image: bool,
    /// Free coordinates of `[Z]` in `K₀(Kar(base))`.
    pub class: Vec<BigInt>,
    /// Coordinates in `K₀(base)` mapping onto the class.
    pub preimage: Option<Vec<BigInt>>,
    pub witness: Option<WkarWitness>,
}

impl WkarK0Checker {
    pub fn new(base: &CategorySpec, bound: usize) -> Result<Self> {
        let base = base.base();
        let map = k0_induced_map(&base, &base.with_layer(Layer::Kar), bound)?;
        Ok(WkarK0Checker { base, map })
    }

    pub fn check(&self, z: &KarObject) -> Result<WkarK0Verdict> {
        let rt = self.map.target.invariants.free_rank;
        let class: Vec<BigInt> = self.map.target.class_of(z)?.into_iter().take(rt).collect();
        let b = Matrix::from_fn(&Ring::Integers, rt, 1, |i, _| Elem::Integer(class[i].clone()));
        let preimage = if self.map.matrix.cols() == 0 {
            class.iter().all(|c| c.is_zero()).then(Vec::new)
        } else {
            solve_integers(&self.map.matrix, &b)
                .map(|x| (0..x.rows()).map(|i| x.get(i, 0).as_integer().unwrap().clone()).collect())
        };
        let witness = wkar_witness(z, &self.base, None)?.witness;
        if preimage.is_some() != witness.is_some() {
            return Err(Error::CrossCheckFailure(format!(
                "class {:?} {} the image but the witness search {}",
                class,
                if preimage.is_some() { "lies in" } else { "is outside" },
                if witness.is_some() { "found a witness" } else { "found none" }
            )));
        }
        Ok(WkarK0Verdict { in_image: preimage.is_some(), class, preimage, witness })
    }
}

pub fn wkar_by_k0(z: &KarObject, base: &CategorySpec, bound: usize) -> Result<WkarK0Verdict> {
    WkarK0Checker::new(base, bound)?.check(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2f3() -> Ring {
        Ring::prime_field_product(vec![2, 3]).unwrap()
    }

    #[test]
    fn two_three_into_rationals_is_bijective() {
        let q = Ring::Rationals;
        let inner = CategorySpec::allowed(q.clone(), vec![2, 3], 12).unwrap();
        let m = k0_induced_map(&inner, &CategorySpec::full(q), 12).unwrap();
        assert!(m.bijective);
        assert!(m.matrix.is_identity());
    }

    #[test]
    fn identity_map() {
        let spec = CategorySpec::full(Ring::Rationals);
        let m = k0_induced_map(&spec, &spec, 5).unwrap();
        assert!(m.bijective && m.matrix.is_identity());
    }

    #[test]
    fn product_base_into_kar_is_diagonal() {
        let base = CategorySpec::full(f2f3());
        let m = k0_induced_map(&base, &base.with_layer(Layer::Kar), 4).unwrap();
        assert_eq!(m.matrix, Matrix::from_i64(&Ring::Integers, 2, 1, &[1, 1]));
        assert!(m.injective && !m.surjective);
    }

    #[test]
    fn wkar_verdicts_over_product() {
        let r = f2f3();
        let base = CategorySpec::full(r.clone());
        let checker = WkarK0Checker::new(&base, 4).unwrap();
        assert!(checker.check(&KarObject::free(&r, 2)).unwrap().in_image);
        let e = KarObject::diagonal(&r, 1, &[1, 0]);
        let v = checker.check(&e).unwrap();
        assert!(!v.in_image && v.witness.is_none());
        let both = KarObject::diagonal(&r, 2, &[1, 0]).direct_sum(&KarObject::diagonal(&r, 1, &[0, 1])).unwrap();
        assert!(checker.check(&both).unwrap().in_image);
    }
}
