//! Seeded generators for matrices, idempotents and Karoubi objects.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::addcat::KarObject;
use crate::exactlin::{inverse, Elem, Matrix, Ring};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random element: integers in `-2..=2` for ℚ and ℤ, uniform residues otherwise.
pub fn elem(ring: &Ring, rng: &mut SeededRng) -> Elem {
    match ring {
        Ring::Rationals | Ring::Integers => ring.from_i64(rng.gen_range(-2..=2)),
        Ring::IntegersMod(n) => Elem::Residue(rng.gen_range(0..*n)),
        Ring::PrimeFieldProduct(ps) => Elem::Tuple(ps.iter().map(|&p| rng.gen_range(0..p)).collect()),
    }
}

pub fn matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut SeededRng) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| elem(ring, rng))
}

/// A random invertible matrix and its inverse: a permuted product of unit
/// lower and upper triangular matrices, invertible over every ring.
pub fn invertible(ring: &Ring, n: usize, rng: &mut SeededRng) -> (Matrix, Matrix) {
    let mut lower = Matrix::identity(ring, n);
    let mut upper = Matrix::identity(ring, n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, elem(ring, rng));
            upper.set(j, i, elem(ring, rng));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let g = &Matrix::identity(ring, n).select_rows(&perm) * &(&lower * &upper);
    let g_inv = inverse(&g).ok().flatten().expect("unit triangular factors are invertible");
    (g, g_inv)
}

/// A random `n×n` idempotent of multirank `ranks` (one entry per ring factor).
pub fn idempotent(ring: &Ring, n: usize, ranks: &[usize], rng: &mut SeededRng) -> Matrix {
    assert_eq!(ranks.len(), ring.factor_count());
    let diag: Vec<Elem> = (0..n)
        .map(|i| {
            let parts: Vec<Elem> =
                ranks.iter().enumerate().map(|(k, &r)| if i < r { ring.factor(k).one() } else { ring.factor(k).zero() }).collect();
            ring.combine(&parts)
        })
        .collect();
    let (g, g_inv) = invertible(ring, n, rng);
    &(&g * &Matrix::diagonal(ring, &diag)) * &g_inv
}

/// A random object of ambient size `n` with a random multirank.
pub fn kar_object(ring: &Ring, n: usize, rng: &mut SeededRng) -> KarObject {
    let ranks: Vec<usize> = (0..ring.factor_count()).map(|_| rng.gen_range(0..=n)).collect();
    KarObject::new(idempotent(ring, n, &ranks, rng)).expect("conjugate of a diagonal idempotent")
}

/// A random morphism `a → b`, projected into the hom-set.
pub fn kar_morphism(a: &KarObject, b: &KarObject, rng: &mut SeededRng) -> crate::addcat::KarMorphism {
    let f = matrix(a.ring(), b.size(), a.size(), rng);
    crate::addcat::KarMorphism::project(a, b, &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible_and_valid() {
        let ring = Ring::prime_field_product(vec![2, 3]).unwrap();
        let mut r1 = seeded(7);
        let mut r2 = seeded(7);
        for n in 0..4 {
            let (g, gi) = invertible(&ring, n, &mut r1);
            assert!((&g * &gi).is_identity());
            assert_eq!(g, invertible(&ring, n, &mut r2).0);
        }
        let mut rng = seeded(3);
        let p = idempotent(&ring, 3, &[1, 2], &mut rng);
        assert_eq!(crate::exactlin::rank_vector(&p).unwrap(), vec![1, 2]);
        let z = Ring::Integers;
        let p = idempotent(&z, 3, &[2], &mut rng);
        assert_eq!(&p * &p, p);
    }
}
