//! Bounded cochain complexes, chain maps, homotopies and homotopy equivalences.
//!
//! Sign conventions: `M[k]^i = M^{i+k}` with differential `(−1)^k d`; chain
//! maps shift without a sign and homotopies pick up `(−1)^k`. The cone of
//! `f: M → N` has `cone(f)^i = M^{i+1} ⊕ N^i` and differential
//! `[[−d_M, 0], [f, d_N]]`.

use std::fmt;

use crate::addcat::{CategorySpec, KarObject};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Ring};

fn sign(k: i64) -> bool {
    k.rem_euclid(2) == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    spec: CategorySpec,
    min_degree: i64,
    terms: Vec<KarObject>,
    /// `diffs[k]: terms[k] → terms[k + 1]`
    diffs: Vec<Matrix>,
}

impl Complex {
    /// Checks shapes, the hom-set law, `d∘d = 0` and that every term lies in `spec`.
    pub fn new(spec: CategorySpec, min_degree: i64, terms: Vec<KarObject>, diffs: Vec<Matrix>) -> Result<Self> {
        for t in &terms {
            if !spec.contains(t)? {
                return Err(Error::NotAnObject(format!("term {t} is not an object of {spec}")));
            }
        }
        Self::in_ambient(spec, min_degree, terms, diffs)
    }

    /// Like [`Complex::new`] but without the membership check on terms; used for
    /// complexes living in the Karoubi envelope of `spec`.
    pub fn in_ambient(spec: CategorySpec, min_degree: i64, terms: Vec<KarObject>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::ShapeMismatch(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        let c = Complex { spec, min_degree, terms, diffs };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        let ring = &self.spec.ring;
        for t in &self.terms {
            if t.ring() != ring {
                return Err(Error::RingMismatch(t.ring().clone(), ring.clone()));
            }
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let (s, t) = (&self.terms[k], &self.terms[k + 1]);
            if d.shape() != (t.size(), s.size()) || d.ring() != ring {
                return Err(Error::ShapeMismatch(format!("differential in degree {}", self.min_degree + k as i64)));
            }
            if &(&(t.idempotent() * d) * s.idempotent()) != d {
                return Err(Error::ShapeMismatch(format!(
                    "differential in degree {} is not a morphism of the Karoubi envelope",
                    self.min_degree + k as i64
                )));
            }
        }
        for k in 1..self.diffs.len() {
            if !(&self.diffs[k] * &self.diffs[k - 1]).is_zero() {
                return Err(Error::ShapeMismatch(format!("d∘d ≠ 0 at degree {}", self.min_degree + k as i64 - 1)));
            }
        }
        Ok(())
    }

    pub fn zero(spec: &CategorySpec) -> Self {
        Complex { spec: spec.clone(), min_degree: 0, terms: vec![], diffs: vec![] }
    }

    /// `obj` placed in a single degree.
    pub fn concentrated(spec: &CategorySpec, obj: KarObject, degree: i64) -> Self {
        Complex { spec: spec.clone(), min_degree: degree, terms: vec![obj], diffs: vec![] }
    }

    pub fn spec(&self) -> &CategorySpec {
        &self.spec
    }

    pub fn ring(&self) -> &Ring {
        &self.spec.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Last stored degree (`min_degree − 1` when there are no terms).
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn terms(&self) -> &[KarObject] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Matrix] {
        &self.diffs
    }

    fn index(&self, i: i64) -> Option<usize> {
        let k = i - self.min_degree;
        (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
    }

    /// The term in degree `i` (the zero object outside the stored range).
    pub fn term(&self, i: i64) -> KarObject {
        self.index(i).map(|k| self.terms[k].clone()).unwrap_or_else(|| KarObject::zero(self.ring()))
    }

    pub fn size(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.terms[k].size())
    }

    /// Identity of the term in degree `i`.
    pub fn id(&self, i: i64) -> Matrix {
        self.index(i).map(|k| self.terms[k].idempotent().clone()).unwrap_or_else(|| Matrix::zeros(self.ring(), 0, 0))
    }

    /// `d^i: M^i → M^{i+1}`.
    pub fn diff(&self, i: i64) -> Matrix {
        match self.index(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Matrix::zeros(self.ring(), self.size(i + 1), self.size(i)),
        }
    }

    /// Degrees whose terms are nonzero objects, as a closed interval.
    pub fn essential_support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self.degrees().filter(|&i| !self.term(i).is_zero_object()).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// `n − m` for the essential support `[m, n]`; 0 for the zero complex.
    pub fn essential_length(&self) -> usize {
        self.essential_support().map_or(0, |(a, b)| (b - a) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.essential_support().is_none()
    }

    /// The same complex regarded over another spec on the same ring.
    pub fn with_spec(&self, spec: CategorySpec) -> Self {
        assert_eq!(spec.ring, self.spec.ring);
        Complex { spec, ..self.clone() }
    }

    /// Restricted to degrees `lo..=hi` (quotient or subcomplex depending on the cut).
    pub fn window(&self, lo: i64, hi: i64) -> Complex {
        if lo > hi {
            return Complex { spec: self.spec.clone(), min_degree: lo, terms: vec![], diffs: vec![] };
        }
        let terms: Vec<KarObject> = (lo..=hi).map(|i| self.term(i)).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(|i| self.diff(i)).collect();
        Complex { spec: self.spec.clone(), min_degree: lo, terms, diffs }
    }

    /// Drops zero-size terms at both ends.
    pub fn trimmed(&self) -> Complex {
        let nz: Vec<i64> = self.degrees().filter(|&i| self.size(i) > 0).collect();
        match (nz.first(), nz.last()) {
            (Some(&a), Some(&b)) => self.window(a, b),
            _ => Complex::zero(&self.spec),
        }
    }

    pub fn identity(&self) -> ChainMap {
        ChainMap { source: self.clone(), target: self.clone(), comps: self.terms.iter().map(|t| t.idempotent().clone()).collect() }
    }

    /// `M[k]`.
    pub fn shift(&self, k: i64) -> Complex {
        Complex {
            spec: self.spec.clone(),
            min_degree: self.min_degree - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.signed(sign(k))).collect(),
        }
    }

    /// Degreewise direct sum.
    pub fn sum(&self, other: &Complex) -> Result<Complex> {
        if self.ring() != other.ring() {
            return Err(Error::SpecMismatch);
        }
        if self.terms.is_empty() {
            return Ok(Complex { spec: self.spec.clone(), ..other.clone() });
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let ring = self.ring().clone();
        let terms = (lo..=hi).map(|i| self.term(i).direct_sum(&other.term(i))).collect::<Result<Vec<_>>>()?;
        let diffs = (lo..hi).map(|i| Matrix::block_diag(&ring, &[&self.diff(i), &other.diff(i)])).collect();
        Ok(Complex { spec: self.spec.clone(), min_degree: lo, terms, diffs })
    }

    /// Transposes every matrix and reverses degrees: `D(M)^i = (M^{−i})ᵀ`.
    pub fn dual(&self) -> Complex {
        if self.terms.is_empty() {
            return self.clone();
        }
        let (lo, hi) = (self.min_degree, self.max_degree());
        let terms = (-hi..=-lo).map(|i| self.term(-i).transpose()).collect();
        let diffs = (-hi..-lo).map(|i| self.diff(-i - 1).transpose()).collect();
        Complex { spec: self.spec.clone(), min_degree: -hi, terms, diffs }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees().map(|i| format!("{}:{}", i, self.term(i))).collect();
        write!(f, "[{}]", parts.join(" → "))
    }
}

/// Degrees covered by either complex.
fn union_range(a: &Complex, b: &Complex) -> std::ops::RangeInclusive<i64> {
    let lo = a.min_degree.min(b.min_degree);
    let hi = a.max_degree().max(b.max_degree());
    lo..=hi
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    /// One component per degree of `source`.
    comps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(source: &Complex, target: &Complex, comps: Vec<Matrix>) -> Result<Self> {
        let f = ChainMap { source: source.clone(), target: target.clone(), comps };
        f.check()?;
        Ok(f)
    }

    /// Builds a chain map from a closure over the degrees of `source`.
    pub fn from_fn(source: &Complex, target: &Complex, mut comp: impl FnMut(i64) -> Matrix) -> Result<Self> {
        Self::new(source, target, source.degrees().map(&mut comp).collect())
    }

    pub(crate) fn unchecked(source: &Complex, target: &Complex, comps: Vec<Matrix>) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        let comps = source.degrees().map(|i| Matrix::zeros(source.ring(), target.size(i), source.size(i))).collect();
        ChainMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn component(&self, i: i64) -> Matrix {
        match self.source.index(i) {
            Some(k) => self.comps[k].clone(),
            None => Matrix::zeros(self.source.ring(), self.target.size(i), self.source.size(i)),
        }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    fn check(&self) -> Result<()> {
        if self.comps.len() != self.source.terms.len() {
            return Err(Error::ShapeMismatch("one chain map component per source degree".into()));
        }
        for i in self.source.degrees() {
            let f = self.component(i);
            if f.shape() != (self.target.size(i), self.source.size(i)) {
                return Err(Error::ShapeMismatch(format!("chain map component in degree {i}")));
            }
            if f != &(&self.target.id(i) * &f) * &self.source.id(i) {
                return Err(Error::ShapeMismatch(format!("chain map component in degree {i} violates the hom-set law")));
            }
        }
        for i in union_range(&self.source, &self.target) {
            let lhs = &self.target.diff(i) * &self.component(i);
            let rhs = &self.component(i + 1) * &self.source.diff(i);
            if lhs != rhs {
                return Err(Error::ShapeMismatch(format!("d∘f ≠ f∘d in degree {i}")));
            }
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        let comps = first.source.degrees().map(|i| &self.component(i) * &first.component(i)).collect();
        ChainMap { source: first.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps: self.comps.iter().map(|m| -m).collect() }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// `f[k]`: same components, degrees moved down by `k`.
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap { source: self.source.shift(k), target: self.target.shift(k), comps: self.comps.clone() }
    }

    /// The dual map `D(N) → D(M)`.
    pub fn dual(&self) -> ChainMap {
        let source = self.target.dual();
        let target = self.source.dual();
        let comps = source.degrees().map(|i| self.component(-i).transpose()).collect();
        ChainMap { source, target, comps }
    }

    /// `f ⊕ g`.
    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        let source = self.source.sum(&other.source)?;
        let target = self.target.sum(&other.target)?;
        let ring = source.ring().clone();
        let comps = source.degrees().map(|i| Matrix::block_diag(&ring, &[&self.component(i), &other.component(i)])).collect();
        Ok(ChainMap { source, target, comps })
    }
}

/// Components `h^i: M^i → N^{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    comps: Vec<Matrix>,
}

impl Homotopy {
    pub fn new(source: &Complex, target: &Complex, comps: Vec<Matrix>) -> Result<Self> {
        if comps.len() != source.terms.len() {
            return Err(Error::ShapeMismatch("one homotopy component per source degree".into()));
        }
        let h = Homotopy { source: source.clone(), target: target.clone(), comps };
        for i in source.degrees() {
            let c = h.component(i);
            if c.shape() != (target.size(i - 1), source.size(i)) || c != &(&target.id(i - 1) * &c) * &source.id(i) {
                return Err(Error::ShapeMismatch(format!("homotopy component in degree {i}")));
            }
        }
        Ok(h)
    }

    pub fn from_fn(source: &Complex, target: &Complex, mut comp: impl FnMut(i64) -> Matrix) -> Result<Self> {
        Self::new(source, target, source.degrees().map(&mut comp).collect())
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        let comps = source.degrees().map(|i| Matrix::zeros(source.ring(), target.size(i - 1), source.size(i))).collect();
        Homotopy { source: source.clone(), target: target.clone(), comps }
    }

    pub fn component(&self, i: i64) -> Matrix {
        match self.source.index(i) {
            Some(k) => self.comps[k].clone(),
            None => Matrix::zeros(self.source.ring(), self.target.size(i - 1), self.source.size(i)),
        }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// `(d h + h d)^i`.
    pub fn boundary(&self, i: i64) -> Matrix {
        &(&self.target.diff(i - 1) * &self.component(i)) + &(&self.component(i + 1) * &self.source.diff(i))
    }

    /// Checks `d h + h d = f − g` in every degree.
    pub fn verify(&self, f: &ChainMap, g: &ChainMap) -> bool {
        f.source == self.source
            && g.source == self.source
            && f.target == self.target
            && g.target == self.target
            && self.source.degrees().all(|i| self.boundary(i) == &f.component(i) - &g.component(i))
    }

    /// Checks `d h + h d = id` on `M = source = target`.
    pub fn is_contraction(&self) -> bool {
        self.source == self.target && self.source.degrees().all(|i| self.boundary(i) == self.source.id(i))
    }

    pub fn add(&self, other: &Homotopy) -> Homotopy {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        Homotopy { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// `g ∘ h ∘ f` for chain maps `f: L → M` and `g: N → P`.
    pub fn conjugate(&self, g: &ChainMap, f: &ChainMap) -> Homotopy {
        let comps = f.source.degrees().map(|i| &(&g.component(i - 1) * &self.component(i)) * &f.component(i)).collect();
        Homotopy { source: f.source.clone(), target: g.target.clone(), comps }
    }

    pub fn shift(&self, k: i64) -> Homotopy {
        Homotopy {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self.comps.iter().map(|m| m.signed(sign(k))).collect(),
        }
    }

    /// The dual homotopy on the dual complexes: `(D h)^i = (h^{1−i})ᵀ`.
    pub fn dual(&self) -> Homotopy {
        let source = self.target.dual();
        let target = self.source.dual();
        let comps = source.degrees().map(|i| self.component(1 - i).transpose()).collect();
        Homotopy { source, target, comps }
    }

    pub fn direct_sum(&self, other: &Homotopy) -> Result<Homotopy> {
        let source = self.source.sum(&other.source)?;
        let target = self.target.sum(&other.target)?;
        let ring = source.ring().clone();
        let comps = source.degrees().map(|i| Matrix::block_diag(&ring, &[&self.component(i), &other.component(i)])).collect();
        Ok(Homotopy { source, target, comps })
    }
}

/// `u: M → N`, `v: N → M` with `d hm + hm d = id_M − v∘u` and
/// `d hn + hn d = id_N − u∘v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub u: ChainMap,
    pub v: ChainMap,
    pub hm: Homotopy,
    pub hn: Homotopy,
}

impl EquivalenceCertificate {
    pub fn source(&self) -> &Complex {
        &self.u.source
    }

    pub fn target(&self) -> &Complex {
        &self.u.target
    }

    pub fn identity(m: &Complex) -> Self {
        EquivalenceCertificate { u: m.identity(), v: m.identity(), hm: Homotopy::zero(m, m), hn: Homotopy::zero(m, m) }
    }

    /// Re-checks every component from the raw matrices.
    pub fn check(&self) -> Result<()> {
        let (m, n) = (self.source(), self.target());
        let fail = |what: &str| Err(Error::CertificateInvalid(what.to_string()));
        if self.v.source != *n || self.v.target != *m {
            return fail("v does not go N → M");
        }
        if !self.u.verify() || !self.v.verify() {
            return fail("u or v is not a chain map");
        }
        if self.hm.source != *m || self.hm.target != *m || self.hn.source != *n || self.hn.target != *n {
            return fail("homotopies live on the wrong complexes");
        }
        if !self.hm.verify(&m.identity(), &self.v.after(&self.u)) {
            return fail("hm does not witness v∘u ≃ id");
        }
        if !self.hn.verify(&n.identity(), &self.u.after(&self.v)) {
            return fail("hn does not witness u∘v ≃ id");
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    pub fn inverse(&self) -> Self {
        EquivalenceCertificate { u: self.v.clone(), v: self.u.clone(), hm: self.hn.clone(), hn: self.hm.clone() }
    }

    /// `M ≃ N` followed by `N ≃ P`.
    pub fn then(&self, next: &EquivalenceCertificate) -> Self {
        let u = next.u.after(&self.u);
        let v = self.v.after(&next.v);
        let hm = self.hm.add(&next.hm.conjugate(&self.v, &self.u));
        let hn = next.hn.add(&self.hn.conjugate(&next.u, &next.v));
        EquivalenceCertificate { u, v, hm, hn }
    }

    pub fn shift(&self, k: i64) -> Self {
        EquivalenceCertificate { u: self.u.shift(k), v: self.v.shift(k), hm: self.hm.shift(k), hn: self.hn.shift(k) }
    }

    /// The certificate between dual complexes `D(M) ≃ D(N)`.
    pub fn dual(&self) -> Self {
        // D(u): D(N) → D(M), D(v): D(M) → D(N)
        EquivalenceCertificate { u: self.v.dual(), v: self.u.dual(), hm: self.hm.dual(), hn: self.hn.dual() }
    }

    pub fn direct_sum(&self, other: &EquivalenceCertificate) -> Result<Self> {
        Ok(EquivalenceCertificate {
            u: self.u.direct_sum(&other.u)?,
            v: self.v.direct_sum(&other.v)?,
            hm: self.hm.direct_sum(&other.hm)?,
            hn: self.hn.direct_sum(&other.hn)?,
        })
    }
}

/// `cone(f)` with `cone(f)^i = M^{i+1} ⊕ N^i`.
pub fn cone(f: &ChainMap) -> Result<Complex> {
    let (m, n) = (&f.source, &f.target);
    if m.ring() != n.ring() {
        return Err(Error::SpecMismatch);
    }
    let ring = m.ring().clone();
    if m.terms.is_empty() && n.terms.is_empty() {
        return Ok(Complex::zero(n.spec()));
    }
    let lo = (m.min_degree - 1).min(n.min_degree);
    let hi = (m.max_degree() - 1).max(n.max_degree());
    let terms = (lo..=hi).map(|i| m.term(i + 1).direct_sum(&n.term(i))).collect::<Result<Vec<_>>>()?;
    let diffs = (lo..hi)
        .map(|i| {
            let top = Matrix::hstack(&ring, m.size(i + 2), &[&-&m.diff(i + 1), &Matrix::zeros(&ring, m.size(i + 2), n.size(i))]);
            let bottom = Matrix::hstack(&ring, n.size(i + 1), &[&f.component(i + 1), &n.diff(i)]);
            Matrix::vstack(&ring, m.size(i + 1) + n.size(i), &[&top, &bottom])
        })
        .collect();
    Complex::in_ambient(n.spec.clone(), lo, terms, diffs)
}

/// `cone(id_N)[−1−m]`: `N` in degrees `m` and `m + 1` joined by `(−1)^{m+1}·id`.
pub fn identity_cone(spec: &CategorySpec, n: &KarObject, m: i64) -> Complex {
    let d = n.idempotent().signed(sign(m + 1));
    Complex { spec: spec.clone(), min_degree: m, terms: vec![n.clone(), n.clone()], diffs: vec![d] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn full() -> CategorySpec {
        CategorySpec::full(q())
    }

    fn two_term(a: usize, b: usize, d: &[i64], lo: i64) -> Complex {
        let r = q();
        Complex::new(full(), lo, vec![KarObject::free(&r, a), KarObject::free(&r, b)], vec![Matrix::from_i64(&r, b, a, d)]).unwrap()
    }

    #[test]
    fn rejects_non_complexes() {
        let r = q();
        let t = vec![KarObject::free(&r, 1); 3];
        let d = vec![Matrix::from_i64(&r, 1, 1, &[1]); 2];
        assert!(Complex::new(full(), 0, t, d).is_err());
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let m = two_term(2, 1, &[1, 1], 0);
        assert_eq!(m.shift(0), m);
        let s = m.shift(1);
        assert_eq!(s.min_degree(), -1);
        assert_eq!(s.diff(-1), Matrix::from_i64(&q(), 1, 2, &[-1, -1]));
    }

    #[test]
    fn cone_of_identity() {
        let r = q();
        let k2 = Complex::concentrated(&full(), KarObject::free(&r, 2), 0);
        let c = cone(&k2.identity()).unwrap();
        assert_eq!(c.degrees(), -1..=0);
        assert!(c.diff(-1).is_identity());
        assert_eq!(c, identity_cone(&full(), &KarObject::free(&r, 2), -1));
    }

    #[test]
    fn cone_of_zero_map_splits() {
        let m = two_term(1, 1, &[2], 0);
        let n = two_term(2, 1, &[1, 0], 0);
        let z = ChainMap::zero(&m, &n);
        assert!(z.verify());
        let c = cone(&z).unwrap();
        let split = m.shift(1).sum(&n).unwrap();
        // same terms; the differentials agree up to the block order, which is the identity here
        assert_eq!(c, split);
    }

    #[test]
    fn essential_length() {
        assert_eq!(Complex::zero(&full()).essential_length(), 0);
        assert_eq!(two_term(1, 1, &[1], 3).essential_length(), 1);
        let padded = two_term(0, 2, &[], 0);
        assert_eq!(padded.essential_length(), 0);
        assert_eq!(padded.trimmed().degrees(), 1..=1);
    }

    #[test]
    fn certificate_algebra() {
        let m = two_term(1, 1, &[1], 0);
        let id = EquivalenceCertificate::identity(&m);
        assert!(id.verify());
        assert!(id.then(&id).verify());
        assert!(id.shift(3).verify());
        assert!(id.dual().verify());
    }

    #[test]
    fn dual_reverses_degrees() {
        let m = two_term(2, 1, &[1, 3], 0);
        let d = m.dual();
        assert_eq!(d.degrees(), -1..=0);
        assert_eq!(d.diff(-1), Matrix::from_i64(&q(), 2, 1, &[1, 3]));
        assert_eq!(d.dual(), m);
    }
}
