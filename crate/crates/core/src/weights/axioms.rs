//! Sampled verification of the weight structure axioms and extension-closedness.

use rand::Rng;

use super::membership::{weight_membership, MembershipCertificate, Side, WeightClassQuery};
use super::truncate::stupid_truncate;
use crate::addcat::CategorySpec;
use crate::complexes::{cone, hom_mod_homotopy, random_chain_map, random_complex, ChainMap, Complex, ComplexShape};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::random::{self, SeededRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail,
}

impl AxiomStatus {
    pub fn name(self) -> &'static str {
        match self {
            AxiomStatus::Pass => "pass",
            AxiomStatus::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub reason: String,
    pub complexes: Vec<Complex>,
}

#[derive(Clone, Debug)]
pub struct AxiomEntry {
    /// `"i"`, `"ii"`, `"iii"`, `"iv"` or `"extension"`.
    pub axiom: &'static str,
    pub status: AxiomStatus,
    /// Number of individual exact checks performed.
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == AxiomStatus::Pass)
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }
}

/// `A` together with `A ⊕ B`; axiom (i) asks that `A` is a member whenever the sum is.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub ambient: Complex,
    pub retract: Complex,
    /// `A → A ⊕ B`
    pub section: ChainMap,
    /// `A ⊕ B → A`
    pub retraction: ChainMap,
}

impl Retraction {
    pub fn of_sum(a: &Complex, b: &Complex) -> Result<Retraction> {
        let s = a.sum(b)?;
        let ring = s.ring().clone();
        let section = ChainMap::from_fn(a, &s, |i| {
            Matrix::vstack(&ring, a.size(i), &[&a.id(i), &Matrix::zeros(&ring, s.size(i) - a.size(i), a.size(i))])
        })?;
        let retraction = ChainMap::from_fn(&s, a, |i| {
            Matrix::hstack(&ring, a.size(i), &[&a.id(i), &Matrix::zeros(&ring, a.size(i), s.size(i) - a.size(i))])
        })?;
        Ok(Retraction { ambient: s, retract: a.clone(), section, retraction })
    }

    pub fn verify(&self) -> bool {
        self.section.verify()
            && self.retraction.verify()
            && self.retraction.after(&self.section) == self.retract.identity()
            && self.section.target == self.ambient
    }
}

struct Tally {
    axiom: &'static str,
    checks: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(axiom: &'static str) -> Self {
        Tally { axiom, checks: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, reason: impl FnOnce() -> String, complexes: &[&Complex]) {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample =
                Some(Counterexample { reason: reason(), complexes: complexes.iter().map(|c| (*c).clone()).collect() });
        }
    }

    fn finish(self) -> AxiomEntry {
        let status = if self.counterexample.is_some() { AxiomStatus::Fail } else { AxiomStatus::Pass };
        AxiomEntry { axiom: self.axiom, status, checks: self.checks, counterexample: self.counterexample }
    }
}

/// Membership with the certificate checked; a certificate that fails to verify is an error.
fn member(side: Side, level: i64, m: &Complex) -> Result<Option<MembershipCertificate>> {
    let out = weight_membership(&WeightClassQuery { side, level, complex: m.clone() })?;
    if let Some(c) = &out {
        c.check()?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct AxiomOptions {
    /// Triangles per class for extension-closedness.
    pub triangles: usize,
    /// Pairs for the homotopy orthogonality check (the disjoint-support check covers all pairs).
    pub hom_pairs: usize,
    pub seed: u64,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { triangles: 50, hom_pairs: 200, seed: 0 }
    }
}

/// Checks axioms (i)–(iv) at level 0 on `sample`, axiom (i) on `retractions`, and
/// extension-closedness of `w≤0`, `w≥0`, `w=0` on random triangles built from the sample.
pub fn verify_axioms(
    spec: &CategorySpec,
    sample: &[Complex],
    retractions: &[Retraction],
    options: &AxiomOptions,
) -> Result<AxiomReport> {
    if sample.iter().any(|m| m.spec() != spec) || retractions.iter().any(|r| r.ambient.spec() != spec) {
        return Err(Error::SpecMismatch);
    }
    let mut rng = random::seeded(options.seed);
    let mut le = Vec::new();
    let mut ge = Vec::new();
    for m in sample {
        le.push(member(Side::Le, 0, m)?);
        ge.push(member(Side::Ge, 0, m)?);
    }

    let mut one = Tally::new("i");
    for r in retractions {
        one.record(r.verify(), || "retraction data does not verify".into(), &[&r.ambient, &r.retract]);
        for side in [Side::Le, Side::Ge] {
            if member(side, 0, &r.ambient)?.is_some() {
                let ok = member(side, 0, &r.retract)?.is_some();
                one.record(ok, || format!("retract of a {side}0 member is not a member"), &[&r.ambient, &r.retract]);
            }
        }
    }

    let mut two = Tally::new("ii");
    for (k, m) in sample.iter().enumerate() {
        if le[k].is_some() {
            let ok = member(Side::Le, 0, &m.shift(-1))?.is_some();
            two.record(ok, || "M in w<=0 but M[-1] is not".into(), &[m]);
        }
        if ge[k].is_some() {
            let ok = member(Side::Ge, 0, &m.shift(1))?.is_some();
            two.record(ok, || "M in w>=0 but M[1] is not".into(), &[m]);
        }
    }

    let mut three = Tally::new("iii");
    let mut hom_budget = options.hom_pairs;
    for (x, xc) in sample.iter().zip(&le) {
        let Some(xc) = xc else { continue };
        for (y, yc) in sample.iter().zip(&ge) {
            let Some(yc) = yc else { continue };
            let (xr, yr) = (&xc.parts[0].complex, &yc.parts[0].complex.shift(1));
            let lo = xr.min_degree().min(yr.min_degree());
            let hi = xr.max_degree().max(yr.max_degree());
            let disjoint = (lo..=hi).all(|i| xr.size(i) == 0 || yr.size(i) == 0);
            three.record(disjoint, || "representatives of X and Y[1] share a degree".into(), &[x, y]);
            if hom_budget > 0 {
                hom_budget -= 1;
                let dim = hom_mod_homotopy(x, &y.shift(1))?.dimension();
                three.record(dim == 0, || format!("Hom(X, Y[1]) has dimension {dim}"), &[x, y]);
            }
        }
    }

    let mut four = Tally::new("iv");
    for m in sample {
        match stupid_truncate(m, 0) {
            Ok(w) => {
                let l_ok = member(Side::Le, 0, &w.l)?.is_some();
                let r_ok = member(Side::Ge, 1, &w.r)?.is_some();
                four.record(l_ok && r_ok, || "truncation parts lie in the wrong classes".into(), &[m]);
            }
            Err(e) => four.record(false, || format!("truncation does not verify: {e}"), &[m]),
        }
    }

    let mut ext = Tally::new("extension");
    if !sample.is_empty() {
        for side in [Side::Le, Side::Ge, Side::Eq] {
            let pool = member_pool(spec, sample, side, &mut rng)?;
            for _ in 0..options.triangles {
                let a = &pool[rng.gen_range(0..pool.len())];
                let b = &pool[rng.gen_range(0..pool.len())];
                let g = random_chain_map(&b.shift(-1), a, &mut rng)?;
                let c = cone(&g)?;
                let ok = member(side, 0, &c)?.is_some();
                ext.record(ok, || format!("extension of two {side}0 members is not a member"), &[a, b, &c]);
            }
        }
    }

    Ok(AxiomReport { entries: vec![one.finish(), two.finish(), three.finish(), four.finish(), ext.finish()] })
}

/// Members of `side` at level 0: sample members, truncation parts, and degree-0
/// parts fattened by contractible complexes.
fn member_pool(spec: &CategorySpec, sample: &[Complex], side: Side, rng: &mut SeededRng) -> Result<Vec<Complex>> {
    let mut pool = Vec::new();
    let fat = ComplexShape { contractible: true, max_rank: 3, ..Default::default() };
    for m in sample {
        if member(side, 0, m)?.is_some() {
            pool.push(m.clone());
        }
        let extra = match side {
            Side::Le => m.window(0, m.max_degree().max(-1)),
            Side::Ge => m.window(m.min_degree().min(1), 0),
            Side::Eq => m.window(0, 0),
        };
        pool.push(extra.sum(&random_complex(spec, &fat, rng))?);
    }
    Ok(pool)
}

/// `count` seeded random complexes over `spec`.
pub fn sample_complexes(spec: &CategorySpec, count: usize, seed: u64) -> Vec<Complex> {
    let mut rng = random::seeded(seed);
    (0..count).map(|_| random_complex(spec, &ComplexShape::default(), &mut rng)).collect()
}

/// Retractions `A ⊂ A ⊕ B` for consecutive pairs of the sample.
pub fn sample_retractions(sample: &[Complex]) -> Result<Vec<Retraction>> {
    sample.windows(2).map(|w| Retraction::of_sum(&w[0], &w[1])).collect()
}
