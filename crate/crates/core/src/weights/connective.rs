use crate::addcat::{CategorySpec, KarObject, Restriction};
use crate::complexes::{hom_mod_homotopy, random_complex, Complex, ComplexShape};
use crate::error::Result;
use crate::random;

#[derive(Clone, Debug)]
pub struct ConnectivityFailure {
    pub x: Complex,
    pub y: Complex,
    pub shift: i64,
    pub dimension: usize,
}

#[derive(Clone, Debug)]
pub struct ConnectivityVerdict {
    pub connective: bool,
    /// Hom spaces computed, with and without fattening.
    pub checks: usize,
    /// `dim Hom(X[0], Y[0]) = dim Hom_B(X, Y)` held for every sampled pair.
    pub fully_faithful: bool,
    pub failure: Option<ConnectivityFailure>,
}

/// Base ranks to sample: allowed ranks up to 4 (at least the smallest generator).
fn sample_ranks(spec: &CategorySpec) -> Vec<usize> {
    let ranks: Vec<usize> = (1..=4).filter(|&n| spec.allows_rank(n)).collect();
    match (&spec.restriction, ranks.is_empty()) {
        (Restriction::Allowed(_), true) => vec![spec.max_generator()],
        _ => ranks,
    }
}

/// Checks `Hom(X[0], Y[0][i]) = 0` up to homotopy for base objects `X`, `Y` and
/// `1 ≤ i ≤ degree_bound`, both on `X[0]`, `Y[0]` and on fattened
/// representatives (sums with random contractible complexes).
pub fn is_connective(spec: &CategorySpec, degree_bound: usize, seed: u64) -> Result<ConnectivityVerdict> {
    let ring = spec.ring.clone();
    let base = spec.base();
    let mut rng = random::seeded(seed);
    let fat = ComplexShape { contractible: true, max_rank: 3, min_degree: (-3, 1), ..Default::default() };
    let ranks = sample_ranks(spec);
    let mut out = ConnectivityVerdict { connective: true, checks: 0, fully_faithful: true, failure: None };
    for &a in &ranks {
        for &b in &ranks {
            let x = Complex::concentrated(&base, KarObject::free(&ring, a), 0);
            let y = Complex::concentrated(&base, KarObject::free(&ring, b), 0);
            let expected = a * b * ring.factor_count();
            out.checks += 1;
            if hom_mod_homotopy(&x, &y)?.dimension() != expected {
                out.fully_faithful = false;
            }
            let fx = x.sum(&random_complex(&base, &fat, &mut rng))?;
            let fy = y.sum(&random_complex(&base, &fat, &mut rng))?;
            for i in 1..=degree_bound as i64 {
                for (s, t) in [(&x, &y), (&fx, &fy)] {
                    let target = t.shift(i);
                    let dimension = hom_mod_homotopy(s, &target)?.dimension();
                    out.checks += 1;
                    if dimension != 0 && out.failure.is_none() {
                        out.connective = false;
                        out.failure = Some(ConnectivityFailure { x: s.clone(), y: t.clone(), shift: i, dimension });
                    }
                }
            }
            out.checks += 1;
            if hom_mod_homotopy(&fx, &fy)?.dimension() != expected {
                out.fully_faithful = false;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;

    #[test]
    fn rationals_full() {
        let v = is_connective(&CategorySpec::full(Ring::Rationals), 3, 0).unwrap();
        assert!(v.connective && v.fully_faithful);
        assert!(v.checks > 16);
    }

    #[test]
    fn two_three() {
        let spec = CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap();
        let v = is_connective(&spec, 3, 1).unwrap();
        assert!(v.connective && v.fully_faithful);
    }

    #[test]
    fn shift_zero_is_excluded() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let x = Complex::concentrated(&spec, KarObject::free(&q, 1), 0);
        assert_eq!(hom_mod_homotopy(&x, &x).unwrap().dimension(), 1);
    }
}
