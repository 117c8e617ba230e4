//! Exact linear algebra over ℚ, ℤ, ℤ/n and finite products of prime fields.
//!
//! Fields are handled by Gaussian elimination, ℤ and ℤ/n through the Smith
//! normal form, and products of fields one factor at a time.

pub mod field;
mod matrix;
mod ring;
pub mod snf;

pub use matrix::Matrix;
pub use ring::{is_prime, Elem, Ring};
pub use snf::{snf, Smith};

use crate::error::{Error, Result};

/// Some `x` with `a·x = b` over the ring of `a`, or `None` when no solution exists.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let ring = a.ring().clone();
    if ring != *b.ring() {
        return Err(Error::RingMismatch(ring, b.ring().clone()));
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve: {}x{} system with {}x{} right-hand side",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(match &ring {
        r if r.is_field() => field::solve(a, b),
        Ring::PrimeFieldProduct(ps) => {
            let mut parts = Vec::with_capacity(ps.len());
            for i in 0..ps.len() {
                match field::solve(&a.project_factor(i), &b.project_factor(i)) {
                    Some(x) => parts.push(x),
                    None => return Ok(None),
                }
            }
            Some(Matrix::from_factors(&ring, &parts))
        }
        Ring::Integers => snf::solve_integers(a, b),
        Ring::IntegersMod(n) => {
            // a·x ≡ b (mod n)  ⇔  [a | n·I]·(x; y) = b over ℤ
            let za = a.lift_to_integers().unwrap();
            let zb = b.lift_to_integers().unwrap();
            let n_id = Matrix::identity(&Ring::Integers, a.rows()).scale(&Ring::Integers.from_i64(*n as i64));
            let big = Matrix::hstack(&Ring::Integers, a.rows(), &[&za, &n_id]);
            snf::solve_integers(&big, &zb).map(|x| x.submatrix(0, a.cols(), 0, b.cols()).reduce_integers(&ring))
        }
        Ring::Rationals => unreachable!("ℚ is a field"),
    })
}

/// Two-sided inverse of a square matrix, if it is invertible over its ring.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if !m.is_square() {
        return Ok(None);
    }
    let id = Matrix::identity(m.ring(), m.rows());
    Ok(solve(m, &id)?.filter(|x| (x * m) == id))
}

/// Rank of `m` over each factor of a field or product of fields.
pub fn rank_vector(m: &Matrix) -> Result<Vec<usize>> {
    let ring = m.ring();
    if !ring.is_field_like() {
        return Err(Error::UnsupportedRing { op: "rank", ring: ring.clone() });
    }
    Ok((0..ring.factor_count())
        .map(|i| if ring.is_field() { field::rank(m) } else { field::rank(&m.project_factor(i)) })
        .collect())
}

/// `p = a·b` with `b·a = id_r` for one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSplit {
    pub a: Matrix,
    pub b: Matrix,
}

impl FactorSplit {
    pub fn rank(&self) -> usize {
        self.a.cols()
    }
}

/// Rank factorization of an idempotent, one [`FactorSplit`] per ring factor.
/// For ℚ and ℤ/p there is exactly one part, over the ring itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    pub parts: Vec<FactorSplit>,
}

impl RankFactorization {
    pub fn ranks(&self) -> Vec<usize> {
        self.parts.iter().map(FactorSplit::rank).collect()
    }

    /// When every factor has the same rank, the factorization glued into
    /// single matrices over the product ring.
    pub fn glued(&self, ring: &Ring) -> Option<FactorSplit> {
        let r = self.parts[0].rank();
        if self.parts.iter().any(|p| p.rank() != r) {
            return None;
        }
        if self.parts.len() == 1 && !matches!(ring, Ring::PrimeFieldProduct(_)) {
            return Some(self.parts[0].clone());
        }
        let a: Vec<Matrix> = self.parts.iter().map(|p| p.a.clone()).collect();
        let b: Vec<Matrix> = self.parts.iter().map(|p| p.b.clone()).collect();
        Some(FactorSplit { a: Matrix::from_factors(ring, &a), b: Matrix::from_factors(ring, &b) })
    }
}

fn split_over_field(p: &Matrix) -> FactorSplit {
    let (a, pivot_rows) = field::column_echelon_basis(p);
    let b = p.select_rows(&pivot_rows);
    FactorSplit { a, b }
}

/// Splits an idempotent `p` (over a field or product of fields) as `p = a·b`, `b·a = id`.
///
/// `a` is the reduced column-echelon basis of the image, `b` the pivot rows of `p`.
pub fn rank_factor(p: &Matrix) -> Result<RankFactorization> {
    let ring = p.ring();
    if !ring.is_field_like() {
        return Err(Error::UnsupportedRing { op: "rank_factor", ring: ring.clone() });
    }
    if !p.is_square() || &(p * p) != p {
        return Err(Error::NotIdempotent);
    }
    let parts = if ring.is_field() {
        vec![split_over_field(p)]
    } else {
        (0..ring.factor_count()).map(|i| split_over_field(&p.project_factor(i))).collect()
    };
    Ok(RankFactorization { parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_factor_examples() {
        let q = Ring::Rationals;
        let p = Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 0]);
        let rf = rank_factor(&p).unwrap();
        assert_eq!(rf.ranks(), vec![1]);
        assert_eq!(rf.parts[0].a, Matrix::from_i64(&q, 2, 1, &[1, 0]));
        assert_eq!(rf.parts[0].b, Matrix::from_i64(&q, 1, 2, &[1, 1]));

        let id = Matrix::identity(&q, 3);
        let rf = rank_factor(&id).unwrap();
        assert!(rf.parts[0].a.is_identity() && rf.parts[0].b.is_identity());

        let zero = Matrix::zeros(&q, 3, 3);
        let rf = rank_factor(&zero).unwrap();
        assert_eq!(rf.parts[0].a.shape(), (3, 0));
        assert_eq!(rf.parts[0].b.shape(), (0, 3));
    }

    #[test]
    fn rank_factor_errors() {
        let q = Ring::Rationals;
        assert!(matches!(rank_factor(&Matrix::from_i64(&q, 1, 1, &[2])), Err(Error::NotIdempotent)));
        assert!(matches!(
            rank_factor(&Matrix::identity(&Ring::Integers, 2)),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let q = Ring::Rationals;
        let x = solve(&Matrix::from_i64(&q, 1, 1, &[2]), &Matrix::from_i64(&q, 1, 1, &[1])).unwrap().unwrap();
        assert_eq!(x.get(0, 0), &Elem::Rational(num_rational::BigRational::new(1.into(), 2.into())));
        let z = Ring::Integers;
        assert!(solve(&Matrix::from_i64(&z, 1, 1, &[2]), &Matrix::from_i64(&z, 1, 1, &[1])).unwrap().is_none());
        let b = Matrix::from_i64(&z, 2, 2, &[5, -1, 7, 0]);
        assert_eq!(solve(&Matrix::identity(&z, 2), &b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_mod_composite() {
        let r = Ring::IntegersMod(6);
        // 2x = 4 (mod 6) has solutions, 2x = 3 has none
        let a = Matrix::from_i64(&r, 1, 1, &[2]);
        let x = solve(&a, &Matrix::from_i64(&r, 1, 1, &[4])).unwrap().unwrap();
        assert_eq!(&a * &x, Matrix::from_i64(&r, 1, 1, &[4]));
        assert!(solve(&a, &Matrix::from_i64(&r, 1, 1, &[3])).unwrap().is_none());
    }
}
