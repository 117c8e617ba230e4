//! Splitting a contractible complex into shifted identity cones.
//!
//! Peeling starts at the lowest degree `m`: `h^{m+1}` is a retraction of
//! `d^m`, so `M^{m+1} ≅ M^m ⊕ N_1`; then `d^{m+1}` restricted to `N_1` is split
//! by `b_1·h^{m+2}`, and so on up the complex.

use super::complex::{identity_cone, ChainMap, Complex, Homotopy};
use crate::addcat::{complement_split_mono, CategorySpec, KarMorphism, KarObject};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// `M ≅ ⊕_j cone(id_{N_j})[−1−m_j]`, each summand living in degrees `m_j, m_j + 1`.
#[derive(Clone, Debug)]
pub struct ContractibleSplitting {
    /// `(N_j, m_j)`; zero objects are omitted.
    pub summands: Vec<(KarObject, i64)>,
    /// The direct sum of the cones, degreewise `N_{j−1} ⊕ N_j`.
    pub target: Complex,
    /// `M → target`
    pub forward: ChainMap,
    /// `target → M`
    pub backward: ChainMap,
}

impl ContractibleSplitting {
    /// Both composites are the identity in every degree.
    pub fn verify(&self) -> bool {
        let m = &self.forward.source;
        self.forward.verify()
            && self.backward.verify()
            && self.backward.target == *m
            && self.forward.target == self.target
            && self.backward.source == self.target
            && self.backward.after(&self.forward) == m.identity()
            && self.forward.after(&self.backward) == self.target.identity()
            && self.summands_match()
    }

    fn summands_match(&self) -> bool {
        let spec = self.target.spec();
        let mut sum = Complex::zero(spec);
        for (n, m) in &self.summands {
            match sum.sum(&identity_cone(spec, n, *m)) {
                Ok(s) => sum = s,
                Err(_) => return false,
            }
        }
        sum.trimmed() == self.target.trimmed()
    }
}

/// Why the splitting stopped: the complement at `degree` is not in the spec.
#[derive(Clone, Debug)]
pub struct FailureWitness {
    /// Degree of the source of the split mono that could not be complemented.
    pub degree: i64,
    pub i: KarMorphism,
    pub p: KarMorphism,
    /// The complement as an object of the Karoubi envelope.
    pub complement: KarObject,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Split(ContractibleSplitting),
    Failed(FailureWitness),
}

/// Splits a contractible `M` inside `spec`, given a contracting homotopy.
pub fn split_contractible(m: &Complex, h: &Homotopy, spec: &CategorySpec) -> Result<SplitOutcome> {
    if h.source != *m || !h.is_contraction() {
        return Err(Error::NotContractible);
    }
    if spec.ring != *m.ring() {
        return Err(Error::SpecMismatch);
    }
    let ring = m.ring().clone();
    let m = &m.trimmed();
    let h = &Homotopy::from_fn(m, m, |i| h.component(i))?;
    let (lo, hi) = (m.min_degree(), m.max_degree());
    if lo > hi {
        let target = Complex::zero(spec);
        return Ok(SplitOutcome::Split(ContractibleSplitting {
            summands: vec![],
            forward: ChainMap::zero(m, &target),
            backward: ChainMap::zero(&target, m),
            target,
        }));
    }

    // n_objs[j] = N_j with a_j: N_j → M^{lo+j}, b_j: M^{lo+j} → N_j
    let mut n_objs = vec![m.term(lo)];
    let mut a_s = vec![m.id(lo)];
    let mut b_s = vec![m.id(lo)];
    if n_objs[0].is_zero_object() {
        n_objs[0] = KarObject::zero(&ring);
        a_s[0] = Matrix::zeros(&ring, m.size(lo), 0);
        b_s[0] = Matrix::zeros(&ring, 0, m.size(lo));
    }
    for s in lo..hi {
        let j = (s - lo) as usize;
        let i_mat = &m.diff(s) * &a_s[j];
        let p_mat = &b_s[j] * &h.component(s + 1);
        let i = KarMorphism::new(&n_objs[j], &m.term(s + 1), i_mat)?;
        let p = KarMorphism::new(&m.term(s + 1), &n_objs[j], p_mat)?;
        match complement_split_mono(&i, &p, spec) {
            Ok(sp) => {
                if sp.complement.is_zero_object() {
                    n_objs.push(KarObject::zero(&ring));
                    a_s.push(Matrix::zeros(&ring, m.size(s + 1), 0));
                    b_s.push(Matrix::zeros(&ring, 0, m.size(s + 1)));
                } else {
                    n_objs.push(sp.complement);
                    a_s.push(sp.a);
                    b_s.push(sp.b);
                }
            }
            Err(Error::SplitMonoNoComplement { ambient, reason }) => {
                return Ok(SplitOutcome::Failed(FailureWitness { degree: s, i, p, complement: ambient, reason }));
            }
            Err(e) => return Err(e),
        }
    }
    if !n_objs[(hi - lo) as usize].is_zero_object() {
        return Err(Error::NotContractible);
    }

    let eps = |i: i64| (i + 1).rem_euclid(2) == 0;
    let n_at = |i: i64| -> Option<usize> { (i >= lo && i <= hi).then(|| (i - lo) as usize) };

    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut fwd = Vec::new();
    let mut bwd = Vec::new();
    let zero_obj = KarObject::zero(&ring);
    for i in lo..=hi {
        let j = n_at(i).unwrap();
        let upper = if j == 0 { zero_obj.clone() } else { n_objs[j - 1].clone() };
        let lower = if i == hi { zero_obj.clone() } else { n_objs[j].clone() };
        terms.push(upper.direct_sum(&lower)?);

        let size = m.size(i);
        let (i_prev, p_prev) = if j == 0 {
            (Matrix::zeros(&ring, size, 0), Matrix::zeros(&ring, 0, size))
        } else {
            (&m.diff(i - 1) * &a_s[j - 1], &b_s[j - 1] * &h.component(i))
        };
        let (a, b) = if i == hi {
            (Matrix::zeros(&ring, size, 0), Matrix::zeros(&ring, 0, size))
        } else {
            (a_s[j].clone(), b_s[j].clone())
        };
        let e = eps(i);
        fwd.push(Matrix::vstack(&ring, size, &[&p_prev, &b.signed(e)]));
        bwd.push(Matrix::hstack(&ring, size, &[&i_prev, &a.signed(e)]));
        if i < hi {
            // kills N_{j−1}, sends N_j to N_j with sign (−1)^{i+1}
            let next_upper = lower.size();
            let next_lower = if i + 1 == hi { 0 } else { n_objs[j + 1].size() };
            let mut d = Matrix::zeros(&ring, next_upper + next_lower, upper.size() + lower.size());
            d.set_block(0, upper.size(), &lower.idempotent().signed(e));
            diffs.push(d);
        }
    }
    let target = Complex::in_ambient(spec.clone(), lo, terms, diffs)?;
    let forward = ChainMap::new(m, &target, fwd)?;
    let backward = ChainMap::new(&target, m, bwd)?;
    let summands = (0..(hi - lo) as usize)
        .filter(|&j| !n_objs[j].is_zero_object())
        .map(|j| (n_objs[j].clone(), lo + j as i64))
        .collect();
    let out = ContractibleSplitting { summands, target, forward, backward };
    if !out.verify() {
        return Err(Error::CertificateInvalid("assembled splitting does not verify".into()));
    }
    Ok(SplitOutcome::Split(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addcat::standard_inclusion;
    use crate::complexes::homotopy::is_contractible;
    use crate::exactlin::Ring;

    /// `X →i Y →(id − i∘p) Y →p X` in degrees 0..3 with `i: k² → k³`.
    pub(crate) fn proof_complex(spec: &CategorySpec) -> Complex {
        let q = Ring::Rationals;
        let (i, p) = standard_inclusion(&q, 2, 3);
        let e = &Matrix::identity(&q, 3) - &(&i.matrix * &p.matrix);
        let (x, y) = (KarObject::free(&q, 2), KarObject::free(&q, 3));
        Complex::new(spec.clone(), 0, vec![x.clone(), y.clone(), y, x], vec![i.matrix, e, p.matrix]).unwrap()
    }

    fn ranks(s: &ContractibleSplitting) -> Vec<(usize, i64)> {
        s.summands.iter().map(|(n, m)| (n.size(), *m)).collect()
    }

    #[test]
    fn proof_complex_over_full_spec() {
        let spec = CategorySpec::full(Ring::Rationals);
        let m = proof_complex(&spec);
        let h = is_contractible(&m).unwrap().unwrap();
        let SplitOutcome::Split(s) = split_contractible(&m, &h, &spec).unwrap() else { panic!("expected a splitting") };
        assert_eq!(ranks(&s), vec![(2, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn proof_complex_over_two_three() {
        let spec = CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap();
        let m = proof_complex(&spec);
        let h = is_contractible(&m).unwrap().unwrap();
        let SplitOutcome::Failed(w) = split_contractible(&m, &h, &spec).unwrap() else { panic!("expected a failure") };
        assert_eq!(w.degree, 0);
        assert_eq!(w.complement, KarObject::free(&Ring::Rationals, 1));
    }

    #[test]
    fn identity_cone_is_one_summand() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let c = identity_cone(&spec, &KarObject::free(&q, 3), 4);
        let h = is_contractible(&c).unwrap().unwrap();
        let SplitOutcome::Split(s) = split_contractible(&c, &h, &spec).unwrap() else { panic!() };
        assert_eq!(ranks(&s), vec![(3, 4)]);
        assert_eq!(s.target, c);
    }

    #[test]
    fn zero_complex_splits_into_nothing() {
        let spec = CategorySpec::full(Ring::Rationals);
        let z = Complex::zero(&spec);
        let h = is_contractible(&z).unwrap().unwrap();
        let SplitOutcome::Split(s) = split_contractible(&z, &h, &spec).unwrap() else { panic!() };
        assert!(s.summands.is_empty());
    }

    #[test]
    fn dual_of_proof_complex_splits() {
        let spec = CategorySpec::full(Ring::Rationals);
        let m = proof_complex(&spec).dual();
        let h = is_contractible(&m).unwrap().unwrap();
        let SplitOutcome::Split(s) = split_contractible(&m, &h, &spec).unwrap() else { panic!() };
        assert_eq!(ranks(&s), vec![(2, -3), (1, -2), (2, -1)]);
    }

    #[test]
    fn integer_cone_splits() {
        let z = Ring::Integers;
        let spec = CategorySpec::full(z.clone());
        let d = Matrix::from_i64(&z, 2, 2, &[1, 1, 0, 1]);
        let m = Complex::new(spec.clone(), 0, vec![KarObject::free(&z, 2); 2], vec![d]).unwrap();
        let h = is_contractible(&m).unwrap().unwrap();
        assert!(matches!(split_contractible(&m, &h, &spec).unwrap(), SplitOutcome::Split(_)));
        assert!(matches!(split_contractible(&m, &Homotopy::zero(&m, &m), &spec), Err(Error::NotContractible)));
    }
}
