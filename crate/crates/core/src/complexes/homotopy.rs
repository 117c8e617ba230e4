//! Contractibility, null-homotopies and hom-sets in the homotopy category.

use super::complex::{ChainMap, Complex, Homotopy};
use super::linear::{LinearSystem, Term};
use crate::addcat::{CategorySpec, KarObject};
use crate::error::{Error, Result};
use crate::exactlin::{field, solve, Matrix, Ring};

/// A contracting homotopy `d h + h d = id`, if one exists over the ring.
///
/// Built one degree at a time from the bottom: with `h^{≤s}` fixed, the next
/// component must satisfy `h^{s+1}·d^s = id − d^{s−1}·h^s`. The right side
/// always kills the image of `d^{s−1}`, and it factors through `d^s` whenever
/// any contraction exists, so a failure at some degree is a proof that `M` is
/// not contractible.
pub fn is_contractible(m: &Complex) -> Result<Option<Homotopy>> {
    let mut comps: Vec<Matrix> = Vec::new();
    let mut prev = Matrix::zeros(m.ring(), m.size(m.min_degree() - 1), m.size(m.min_degree()));
    comps.push(prev.clone());
    for s in m.degrees() {
        let e = &m.id(s) - &(&m.diff(s - 1) * &prev);
        let d = m.diff(s);
        // x·d = e  ⇔  dᵀ·xᵀ = eᵀ
        let Some(xt) = solve(&d.transpose(), &e.transpose())? else {
            return Ok(None);
        };
        let x = &(&m.id(s) * &xt.transpose()) * &m.id(s + 1);
        if s < m.max_degree() {
            comps.push(x.clone());
        }
        prev = x;
    }
    if m.degrees().is_empty() {
        comps.clear();
    }
    let h = Homotopy::new(m, m, comps)?;
    if !h.is_contraction() {
        return Err(Error::CrossCheckFailure("greedy contraction does not verify".into()));
    }
    Ok(Some(h))
}

/// Unknowns `h^i: M^i → N^{i−1}` for every degree of `M`.
fn homotopy_unknowns(sys: &mut LinearSystem, m: &Complex, n: &Complex) -> Vec<(i64, usize)> {
    m.degrees().map(|i| (i, sys.unknown(n.size(i - 1), m.size(i)))).collect()
}

/// Terms of `(d h + h d)^i` with `h` replaced by its projection `q·h·p`.
fn boundary_terms(m: &Complex, n: &Complex, hs: &[(i64, usize)], i: i64) -> Vec<Term> {
    let mut terms = Vec::new();
    for &(j, k) in hs {
        if j == i {
            terms.push(Term { unknown: k, left: &n.diff(i - 1) * &n.id(i - 1), right: m.id(i) });
        }
        if j == i + 1 {
            terms.push(Term { unknown: k, left: n.id(i), right: &m.id(i + 1) * &m.diff(i) });
        }
    }
    terms
}

/// A homotopy `h` with `d h + h d = f`, if `f` is null-homotopic.
pub fn is_null_homotopic(f: &ChainMap) -> Result<Option<Homotopy>> {
    let (m, n) = (&f.source, &f.target);
    let ring = m.ring().clone();
    let mut sys = LinearSystem::new(&ring);
    let hs = homotopy_unknowns(&mut sys, m, n);
    for i in m.degrees() {
        let terms = boundary_terms(m, n, &hs, i);
        sys.equation(n.size(i), m.size(i), terms, Some(f.component(i)));
    }
    let Some(x) = solve(&sys.coefficients(), &sys.rhs())? else {
        return Ok(None);
    };
    let raw = sys.unpack(&x, 0);
    let comps = m.degrees().zip(raw).map(|(i, h)| &(&n.id(i - 1) * &h) * &m.id(i)).collect();
    let h = Homotopy::new(m, n, comps)?;
    if !h.verify(f, &ChainMap::zero(m, n)) {
        return Err(Error::CrossCheckFailure("null-homotopy does not verify".into()));
    }
    Ok(Some(h))
}

/// Chain maps `M → N` modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomSpace {
    /// Dimension over each factor of the coefficient ring.
    pub dims: Vec<usize>,
    /// Chain maps whose classes form a basis (factor by factor).
    pub basis: Vec<ChainMap>,
}

impl HomSpace {
    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The complex over factor `k` of a product ring (the complex itself over a field).
pub(crate) fn factor_complex(c: &Complex, k: usize) -> Complex {
    if !matches!(c.ring(), Ring::PrimeFieldProduct(_)) {
        return c.clone();
    }
    let ring = c.ring().factor(k);
    let spec = CategorySpec { ring, ..c.spec().clone() };
    let terms = c.terms().iter().map(|t| KarObject::new(t.idempotent().project_factor(k)).expect("idempotent")).collect();
    let diffs = c.diffs().iter().map(|d| d.project_factor(k)).collect();
    Complex::in_ambient(spec, c.min_degree(), terms, diffs).expect("projection of a complex")
}

/// Embeds per-factor matrices into the product ring, zero in the other factors.
pub(crate) fn embed_factor(ring: &Ring, k: usize, m: &Matrix) -> Matrix {
    if !matches!(ring, Ring::PrimeFieldProduct(_)) {
        return m.clone();
    }
    let parts: Vec<Matrix> = (0..ring.factor_count())
        .map(|j| if j == k { m.clone() } else { Matrix::zeros(&ring.factor(j), m.rows(), m.cols()) })
        .collect();
    Matrix::from_factors(ring, &parts)
}

/// `Hom_{K^b}(M, N)` over a field or a product of fields: the kernel of the
/// chain-map conditions modulo the image of `h ↦ d h + h d`.
pub fn hom_mod_homotopy(m: &Complex, n: &Complex) -> Result<HomSpace> {
    let ring = m.ring().clone();
    if &ring != n.ring() {
        return Err(Error::RingMismatch(ring, n.ring().clone()));
    }
    if !ring.is_field_like() {
        return Err(Error::UnsupportedRing { op: "hom_mod_homotopy", ring });
    }
    let mut dims = Vec::new();
    let mut basis = Vec::new();
    for k in 0..ring.factor_count() {
        let (mk, nk) = (factor_complex(m, k), factor_complex(n, k));
        let (dim, reps) = hom_over_field(&mk, &nk);
        dims.push(dim);
        for comps in reps {
            let comps = comps.iter().map(|c| embed_factor(&ring, k, c)).collect();
            basis.push(ChainMap::new(m, n, comps)?);
        }
    }
    Ok(HomSpace { dims, basis })
}

fn hom_over_field(m: &Complex, n: &Complex) -> (usize, Vec<Vec<Matrix>>) {
    let ring = m.ring().clone();
    // chain maps: f^i for each degree of M
    let mut maps = LinearSystem::new(&ring);
    let fs: Vec<(i64, usize)> = m.degrees().map(|i| (i, maps.unknown(n.size(i), m.size(i)))).collect();
    let lo = m.min_degree().min(n.min_degree()) - 1;
    let hi = m.max_degree().max(n.max_degree());
    for i in lo..=hi {
        let mut terms = Vec::new();
        for &(j, k) in &fs {
            if j == i {
                terms.push(Term { unknown: k, left: n.diff(i), right: Matrix::identity(&ring, m.size(i)) });
            }
            if j == i + 1 {
                terms.push(Term { unknown: k, left: -&Matrix::identity(&ring, n.size(i + 1)), right: m.diff(i) });
            }
        }
        if !terms.is_empty() {
            maps.equation(n.size(i + 1), m.size(i), terms, None);
        }
    }
    for &(i, k) in &fs {
        // q·f·p − f = 0
        let (q, p) = (n.id(i), m.id(i));
        let terms = vec![
            Term { unknown: k, left: q, right: p },
            Term { unknown: k, left: -&Matrix::identity(&ring, n.size(i)), right: Matrix::identity(&ring, m.size(i)) },
        ];
        maps.equation(n.size(i), m.size(i), terms, None);
    }
    let kernel = field::kernel_basis(&maps.coefficients());

    // null-homotopic maps: images of d (q h p) + (q h p) d
    let mut homs = LinearSystem::new(&ring);
    let hs = homotopy_unknowns(&mut homs, m, n);
    for i in m.degrees() {
        let terms = boundary_terms(m, n, &hs, i);
        homs.equation(n.size(i), m.size(i), terms, None);
    }
    let image = homs.coefficients();

    let total = kernel.rows();
    let both = Matrix::hstack(&ring, total, &[&image, &kernel]);
    let (_, pivots) = field::rref(&both);
    let chosen: Vec<usize> = pivots.iter().filter(|&&c| c >= image.cols()).copied().collect();
    let reps = chosen.iter().map(|&c| maps.unpack(&both, c)).collect();
    (chosen.len(), reps)
}
