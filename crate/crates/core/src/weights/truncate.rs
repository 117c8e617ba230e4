use crate::complexes::{cone, ChainMap, Complex, EquivalenceCertificate, Homotopy};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// `L → M → R → L[1]` with `L` the terms in degrees `≥ n` and `R` those in degrees `≤ n − 1`.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub level: i64,
    pub l: Complex,
    pub r: Complex,
    /// `L → M`, the inclusion of the subcomplex.
    pub to_m: ChainMap,
    /// `M → R`, the projection onto the quotient.
    pub from_m: ChainMap,
    /// `R → L[1]`, `d^{n−1}` in degree `n − 1`.
    pub connecting: ChainMap,
    /// `cone(L → M) ≃ R`.
    pub cone_equivalence: EquivalenceCertificate,
}

impl WeightDecomposition {
    pub fn check(&self) -> Result<()> {
        let m = &self.to_m.target;
        let fail = |s: &str| Err(Error::CertificateInvalid(s.to_string()));
        if !(self.to_m.verify() && self.from_m.verify() && self.connecting.verify()) {
            return fail("a map of the triangle is not a chain map");
        }
        if self.from_m.source != *m || self.to_m.source != self.l || self.from_m.target != self.r {
            return fail("maps do not connect L, M and R");
        }
        if !self.from_m.after(&self.to_m).is_zero() {
            return fail("L → M → R is not zero");
        }
        for i in m.degrees() {
            if self.l.size(i) > 0 && self.r.size(i) > 0 || self.l.size(i) + self.r.size(i) != m.size(i) {
                return fail("L and R overlap");
            }
        }
        self.cone_equivalence.check()?;
        let c = cone(&self.to_m)?;
        if *self.cone_equivalence.source() != c || *self.cone_equivalence.target() != self.r {
            return fail("cone equivalence is between the wrong complexes");
        }
        // M → cone(L → M) → R is the projection
        let into_cone = ChainMap::from_fn(m, &c, |i| {
            Matrix::vstack(m.ring(), m.size(i), &[&Matrix::zeros(m.ring(), self.l.size(i + 1), m.size(i)), &m.id(i)])
        })?;
        if self.cone_equivalence.u.after(&into_cone) != self.from_m {
            return fail("cone equivalence does not restrict to M → R");
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }
}

/// The stupid truncation of `M` at degree `n`.
pub fn stupid_truncate(m: &Complex, n: i64) -> Result<WeightDecomposition> {
    let ring = m.ring().clone();
    let (lo, hi) = (m.min_degree(), m.max_degree());
    let l = m.window(n.max(lo), hi.max(n.max(lo) - 1));
    let r = m.window(lo, (n - 1).min(hi));
    let to_m = ChainMap::from_fn(&l, m, |i| m.id(i))?;
    let from_m = ChainMap::from_fn(m, &r, |i| if i <= n - 1 { m.id(i) } else { Matrix::zeros(&ring, 0, m.size(i)) })?;
    let l1 = l.shift(1);
    let connecting =
        ChainMap::from_fn(&r, &l1, |i| if i == n - 1 { m.diff(i) } else { Matrix::zeros(&ring, l1.size(i), r.size(i)) })?;

    let c = cone(&to_m)?;
    // u = [0 | π], v^{n−1} = [−d^{n−1} ; 1], otherwise [0 ; 1], k(l, x) = (ρ(x), 0)
    let u = ChainMap::from_fn(&c, &r, |i| {
        let pi = if i <= n - 1 { m.id(i) } else { Matrix::zeros(&ring, 0, m.size(i)) };
        Matrix::hstack(&ring, r.size(i), &[&Matrix::zeros(&ring, r.size(i), l.size(i + 1)), &pi])
    })?;
    let v = ChainMap::from_fn(&r, &c, |i| {
        let top = if i == n - 1 { -&m.diff(i) } else { Matrix::zeros(&ring, l.size(i + 1), r.size(i)) };
        Matrix::vstack(&ring, r.size(i), &[&top, &m.id(i)])
    })?;
    let k = Homotopy::from_fn(&c, &c, |i| {
        // cone^i = L^{i+1} ⊕ M^i → cone^{i−1} = L^i ⊕ M^{i−1}
        let mut block = Matrix::zeros(&ring, c.size(i - 1), c.size(i));
        if i >= n && l.size(i) > 0 {
            block.set_block(0, l.size(i + 1), &m.id(i));
        }
        block
    })?;
    let cone_equivalence = EquivalenceCertificate { u, v, hm: k, hn: Homotopy::zero(&r, &r) };
    let out = WeightDecomposition { level: n, l, r, to_m, from_m, connecting, cone_equivalence };
    out.check()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addcat::{CategorySpec, KarObject};
    use crate::complexes::identity_cone;
    use crate::exactlin::Ring;

    #[test]
    fn nonnegative_complex_is_its_own_l() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let m = identity_cone(&spec, &KarObject::free(&q, 2), 0);
        let w = stupid_truncate(&m, 0).unwrap();
        assert_eq!(w.l, m);
        assert!(w.r.is_zero());
    }

    #[test]
    fn identity_cone_across_zero() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let m = identity_cone(&spec, &KarObject::free(&q, 1), -1);
        let w = stupid_truncate(&m, 0).unwrap();
        assert_eq!(w.l.trimmed().degrees(), 0..=0);
        assert_eq!(w.r.trimmed().degrees(), -1..=-1);
        assert!(w.connecting.component(-1).is_identity());
    }

    #[test]
    fn zero_complex() {
        let spec = CategorySpec::full(Ring::Rationals);
        let w = stupid_truncate(&Complex::zero(&spec), 0).unwrap();
        assert!(w.l.is_zero() && w.r.is_zero());
    }

    #[test]
    fn every_level_of_a_long_complex() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let mut rng = crate::random::seeded(9);
        let m = crate::complexes::random_complex(&spec, &crate::complexes::ComplexShape { max_length: 4, ..Default::default() }, &mut rng);
        for n in m.min_degree() - 1..=m.max_degree() + 2 {
            assert!(stupid_truncate(&m, n).unwrap().verify());
        }
    }
}
