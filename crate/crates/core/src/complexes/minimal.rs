//! Minimal models over fields and padding them back into a rank-restricted spec.

use super::complex::{ChainMap, Complex, EquivalenceCertificate, Homotopy};
use super::homotopy::factor_complex;
use crate::addcat::{split_idempotent, CategorySpec, KarObject, Layer, Restriction};
use crate::error::{Error, Result};
use crate::exactlin::{field, snf, FactorSplit, Matrix, Ring};

/// Columns of `extra` that extend the columns of `base` to a basis of their joint span.
fn extend_basis(ring: &Ring, base: &Matrix, extra: &Matrix) -> Matrix {
    let both = Matrix::hstack(ring, base.rows(), &[base, extra]);
    let (_, pivots) = field::rref(&both);
    let idx: Vec<usize> = pivots.iter().filter(|&&c| c >= base.cols()).map(|&c| c - base.cols()).collect();
    extra.select_cols(&idx)
}

/// Per-degree data of the minimal model over one field, in concrete coordinates.
struct FieldModel {
    /// `H^i` ranks.
    ranks: Vec<usize>,
    /// `u'^i: C^i → H^i`, `v'^i: H^i → C^i`, `h'^i: C^i → C^{i−1}`.
    u: Vec<Matrix>,
    v: Vec<Matrix>,
    h: Vec<Matrix>,
}

/// Splits `F^{r_i}` as `B ⊕ H ⊕ C` with `B = im D^{i−1}`, `B ⊕ H = ker D^i`
/// and `D^i` injective on `C`.
fn field_model(ring: &Ring, sizes: &[usize], d: &[Matrix]) -> FieldModel {
    let n = sizes.len();
    let mut cb_prev = Matrix::zeros(ring, 0, 0);
    let mut model = FieldModel { ranks: vec![], u: vec![], v: vec![], h: vec![] };
    let mut bpi_list = Vec::new();
    let mut cb_list: Vec<Matrix> = Vec::new();
    for i in 0..n {
        let r = sizes[i];
        let bb = if i == 0 { Matrix::zeros(ring, r, 0) } else { &d[i - 1] * &cb_prev };
        let dout = if i + 1 < n { d[i].clone() } else { Matrix::zeros(ring, 0, r) };
        let ker = field::kernel_basis(&dout);
        let hb = extend_basis(ring, &bb, &ker);
        let bh = Matrix::hstack(ring, r, &[&bb, &hb]);
        let cb = extend_basis(ring, &bh, &Matrix::identity(ring, r));
        let basis = Matrix::hstack(ring, r, &[&bb, &hb, &cb]);
        let inv = field::inverse(&basis).expect("basis of the whole space");
        let (nb, nh) = (bb.cols(), hb.cols());
        let bpi = inv.submatrix(0, nb, 0, r);
        let hpi = inv.submatrix(nb, nb + nh, 0, r);
        model.ranks.push(nh);
        model.u.push(hpi);
        model.v.push(hb);
        bpi_list.push(bpi);
        cb_list.push(cb.clone());
        cb_prev = cb;
    }
    for i in 0..n {
        // h'^i = Cb^{i−1}·Bπ^i
        let h = if i == 0 { Matrix::zeros(ring, 0, sizes[0]) } else { &cb_list[i - 1] * &bpi_list[i] };
        model.h.push(h);
    }
    model
}

/// A complex with zero differentials homotopy equivalent to `M`, over a field
/// or a product of fields. The certificate goes `M → H`. Over a product ring
/// `H^i` is a diagonal idempotent on the largest factor rank.
pub fn minimal_model(m: &Complex) -> Result<(Complex, EquivalenceCertificate)> {
    let ring = m.ring().clone();
    if !ring.is_field_like() {
        return Err(Error::UnsupportedRing { op: "minimal_model", ring });
    }
    let degrees: Vec<i64> = m.degrees().collect();
    let nf = ring.factor_count();
    // per factor: splittings of every term and the model in concrete coordinates
    let mut splits: Vec<Vec<FactorSplit>> = Vec::new();
    let mut models = Vec::new();
    for k in 0..nf {
        let mk = factor_complex(m, k);
        let fr = mk.ring().clone();
        let sp: Vec<FactorSplit> = mk
            .terms()
            .iter()
            .map(|t| split_idempotent(t.idempotent()).map(|r| r.parts[0].clone()))
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = sp.iter().map(FactorSplit::rank).collect();
        let d: Vec<Matrix> = (0..sp.len().saturating_sub(1)).map(|j| &(&sp[j + 1].b * &mk.diffs()[j]) * &sp[j].a).collect();
        models.push(field_model(&fr, &sizes, &d));
        splits.push(sp);
    }

    let spec = m.spec().with_layer(Layer::Kar);
    let mut terms = Vec::new();
    let (mut us, mut vs, mut hs) = (Vec::new(), Vec::new(), Vec::new());
    for (j, &i) in degrees.iter().enumerate() {
        let s = models.iter().map(|md| md.ranks[j]).max().unwrap_or(0);
        let ranks: Vec<usize> = models.iter().map(|md| md.ranks[j]).collect();
        terms.push(KarObject::diagonal(&ring, s, &ranks));
        let n_i = m.size(i);
        let (mut u_parts, mut v_parts, mut h_parts) = (Vec::new(), Vec::new(), Vec::new());
        for k in 0..nf {
            let fr = ring.factor(k);
            let md = &models[k];
            let sp = &splits[k][j];
            let pad_rows = Matrix::vstack(&fr, md.u[j].cols(), &[&md.u[j], &Matrix::zeros(&fr, s - md.ranks[j], md.u[j].cols())]);
            let pad_cols = Matrix::hstack(&fr, md.v[j].rows(), &[&md.v[j], &Matrix::zeros(&fr, md.v[j].rows(), s - md.ranks[j])]);
            u_parts.push(&pad_rows * &sp.b);
            v_parts.push(&sp.a * &pad_cols);
            let h = if j == 0 {
                Matrix::zeros(&fr, m.size(i - 1), n_i)
            } else {
                &(&splits[k][j - 1].a * &md.h[j]) * &sp.b
            };
            h_parts.push(h);
        }
        let glue = |parts: Vec<Matrix>| if nf == 1 && !matches!(ring, Ring::PrimeFieldProduct(_)) { parts.into_iter().next().unwrap() } else { Matrix::from_factors(&ring, &parts) };
        us.push(glue(u_parts));
        vs.push(glue(v_parts));
        hs.push(glue(h_parts));
    }
    let diffs = (1..terms.len()).map(|j| Matrix::zeros(&ring, terms[j].size(), terms[j - 1].size())).collect();
    let h_complex = Complex::in_ambient(spec, m.min_degree(), terms, diffs)?;
    let cert = EquivalenceCertificate {
        u: ChainMap::new(m, &h_complex, us)?,
        v: ChainMap::new(&h_complex, m, vs)?,
        hm: Homotopy::new(m, m, hs)?,
        hn: Homotopy::zero(&h_complex, &h_complex),
    };
    cert.check()?;
    Ok((h_complex, cert))
}

/// `diag` with `ranks[k]` leading ones over factor `k`, on `size` coordinates.
/// Homology multiranks of a complex over a field or product of fields, one per stored degree.
pub fn homology_ranks(m: &Complex) -> Result<Vec<Vec<usize>>> {
    let (h, _) = minimal_model(m)?;
    h.terms().iter().map(KarObject::multirank).collect()
}

/// Nonzero homology multiranks by degree.
pub fn homology_profile(m: &Complex) -> Result<Vec<(i64, Vec<usize>)>> {
    let (h, _) = minimal_model(m)?;
    let mut out = Vec::new();
    for i in h.degrees() {
        let t = h.term(i);
        if !t.is_zero_object() {
            out.push((i, t.multirank()?));
        }
    }
    Ok(out)
}

/// `M` with entries pushed along the canonical map from ℤ (or the identity).
pub fn base_change(m: &Complex, ring: &Ring) -> Result<Complex> {
    let map = |x: &Matrix| -> Result<Matrix> {
        if x.ring() == ring {
            return Ok(x.clone());
        }
        let z = x.lift_to_integers().ok_or_else(|| Error::UnsupportedHom(format!("{} to {ring}", x.ring())))?;
        Ok(z.map_entries(ring, |e| ring.from_bigint(e.as_integer().expect("integer entry"))))
    };
    let terms = m.terms().iter().map(|t| KarObject::new(map(t.idempotent())?)).collect::<Result<Vec<_>>>()?;
    let diffs = m.diffs().iter().map(map).collect::<Result<Vec<_>>>()?;
    Complex::in_ambient(CategorySpec::full(ring.clone()).with_layer(Layer::Kar), m.min_degree(), terms, diffs)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A ring `k` (reached from the coefficients by a ring map) over which `M ⊗ k`
/// has nonzero homology, with that homology. Contractibility survives base
/// change, so this certifies that `M` is not contractible.
pub fn contractibility_obstruction(m: &Complex) -> Result<Option<(Ring, Vec<(i64, Vec<usize>)>)>> {
    let ring = m.ring().clone();
    if ring.is_field_like() {
        let h = homology_profile(m)?;
        return Ok((!h.is_empty()).then_some((ring, h)));
    }
    if ring != Ring::Integers {
        return Err(Error::UnsupportedRing { op: "contractibility_obstruction", ring });
    }
    let mut candidates = vec![Ring::Rationals];
    let mut primes: Vec<u64> = Vec::new();
    for d in m.diffs() {
        for e in snf(d)?.diagonal() {
            let v = e.as_integer().expect("integer entry").magnitude().clone();
            if let Ok(v) = u64::try_from(v) {
                primes.extend(prime_factors(v));
            }
        }
    }
    primes.sort();
    primes.dedup();
    candidates.extend(primes.into_iter().map(Ring::IntegersMod));
    for k in candidates {
        let h = homology_profile(&base_change(m, &k)?)?;
        if !h.is_empty() {
            return Ok(Some((k, h)));
        }
    }
    Ok(None)
}

/// Pads a zero-differential complex `H` with identity cones on adjacent
/// degrees of `window` until every term is a free module of an allowed rank.
///
/// Padding sizes are chosen degree by degree from the bottom, smallest first,
/// backtracking when a later degree cannot be completed. Each degree is laid
/// out as `[pad from below | H | pad to above]`. Returns `None` when no padding
/// inside the window works. The certificate goes `P → H`.
pub fn pad_to_spec(h: &Complex, spec: &CategorySpec, window: (i64, i64)) -> Result<Option<(Complex, EquivalenceCertificate)>> {
    let ring = h.ring().clone();
    if spec.ring != ring {
        return Err(Error::SpecMismatch);
    }
    if h.diffs().iter().any(|d| !d.is_zero()) {
        return Err(Error::InvalidInput("pad_to_spec expects zero differentials".into()));
    }
    let (lo, hi) = window;
    if let Some((a, b)) = h.essential_support() {
        if a < lo || b > hi {
            return Ok(None);
        }
    }
    if spec.layer == Layer::Kar {
        let p = h.window(lo, hi).with_spec(spec.clone());
        let cert = window_certificate(&p, h);
        return Ok(Some((p, cert)));
    }
    if lo > hi {
        let p = Complex::zero(spec);
        let cert = window_certificate(&p, h);
        return Ok(Some((p, cert)));
    }
    let nf = ring.factor_count();
    let mut hsplit = Vec::new();
    let mut hranks = Vec::new();
    for i in lo..=hi {
        let rf = split_idempotent(&h.id(i))?;
        hranks.push(rf.ranks());
        hsplit.push(rf);
    }

    let slack = spec.max_generator() * 2 + 2;
    let mut memo = std::collections::HashSet::new();
    let mut pads = Vec::new();
    let zero = vec![0usize; nf];
    if !search_pads(spec, &hranks, 0, &zero, slack, &mut memo, &mut pads) {
        return Ok(None);
    }
    // pads[j]: multirank of the cone on degrees lo + j, lo + j + 1
    let t = |j: i64| -> Vec<usize> {
        if j < 0 || j as usize >= pads.len() {
            zero.clone()
        } else {
            pads[j as usize].clone()
        }
    };

    let len = (hi - lo + 1) as usize;
    let mut terms = Vec::new();
    let mut sizes = Vec::new();
    for j in 0..len {
        let c = t(j as i64 - 1)[0] + hranks[j][0] + t(j as i64)[0];
        sizes.push(c);
        terms.push(KarObject::free(&ring, c));
    }
    let glue = |parts: Vec<Matrix>| if matches!(ring, Ring::PrimeFieldProduct(_)) { Matrix::from_factors(&ring, &parts) } else { parts.into_iter().next().unwrap() };
    let (mut diffs, mut us, mut vs, mut ks) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for j in 0..len {
        let (mut d_parts, mut u_parts, mut v_parts, mut k_parts) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for k in 0..nf {
            let fr = ring.factor(k);
            let below = t(j as i64 - 1)[k];
            let hk = hranks[j][k];
            let above = t(j as i64)[k];
            let part = &hsplit[j].parts[k];
            // u = a·[0 | I | 0], v = [0 ; I ; 0]·b
            let mut sel = Matrix::zeros(&fr, hk, sizes[j]);
            sel.set_block(0, below, &Matrix::identity(&fr, hk));
            u_parts.push(&part.a * &sel);
            v_parts.push(&sel.transpose() * &part.b);
            if j + 1 < len {
                let mut d = Matrix::zeros(&fr, sizes[j + 1], sizes[j]);
                d.set_block(0, below + hk, &Matrix::identity(&fr, above));
                d_parts.push(d);
            }
            // k^i: pad-from-below at i → pad-to-above at i − 1
            let prev = if j == 0 { 0 } else { sizes[j - 1] };
            let mut kk = Matrix::zeros(&fr, prev, sizes[j]);
            if j > 0 {
                kk.set_block(prev - below, 0, &Matrix::identity(&fr, below));
            }
            k_parts.push(kk);
        }
        us.push(glue(u_parts));
        vs.push(glue(v_parts));
        ks.push(glue(k_parts));
        if j + 1 < len {
            diffs.push(glue(d_parts));
        }
    }
    let p = Complex::new(spec.clone(), lo, terms, diffs)?;
    let hw = h.clone();
    let v_full: Vec<Matrix> = hw
        .degrees()
        .map(|i| if i >= lo && i <= hi { vs[(i - lo) as usize].clone() } else { Matrix::zeros(&ring, 0, hw.size(i)) })
        .collect();
    let cert = EquivalenceCertificate {
        u: ChainMap::new(&p, &hw, us)?,
        v: ChainMap::new(&hw, &p, v_full)?,
        hm: Homotopy::new(&p, &p, ks)?,
        hn: Homotopy::zero(&hw, &hw),
    };
    cert.check()?;
    Ok(Some((p, cert)))
}

/// DFS over padding multiranks: at degree `j` the term multirank
/// `carry + H^j + t_j` must be constant and allowed.
fn search_pads(
    spec: &CategorySpec,
    hranks: &[Vec<usize>],
    j: usize,
    carry: &[usize],
    slack: usize,
    memo: &mut std::collections::HashSet<(usize, Vec<usize>)>,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if memo.contains(&(j, carry.to_vec())) {
        return false;
    }
    let base: Vec<usize> = carry.iter().zip(&hranks[j]).map(|(a, b)| a + b).collect();
    let need = *base.iter().max().unwrap();
    let last = j + 1 == hranks.len();
    let upper = if last { need } else { need + slack };
    for c in need..=upper {
        if !allows(spec, c) || (last && base.iter().any(|&b| b != c)) {
            continue;
        }
        let t: Vec<usize> = base.iter().map(|&b| c - b).collect();
        if last {
            return true;
        }
        out.push(t.clone());
        if search_pads(spec, hranks, j + 1, &t, slack, memo, out) {
            return true;
        }
        out.pop();
    }
    memo.insert((j, carry.to_vec()));
    false
}

fn allows(spec: &CategorySpec, c: usize) -> bool {
    match &spec.restriction {
        Restriction::Full => true,
        Restriction::Allowed(a) => a.contains(c),
    }
}

/// `P = H` restricted to a window containing its support: identity components.
fn window_certificate(p: &Complex, h: &Complex) -> EquivalenceCertificate {
    let u = ChainMap::unchecked(p, h, p.degrees().map(|i| h.id(i)).collect());
    let v = ChainMap::unchecked(h, p, h.degrees().map(|i| if p.degrees().contains(&i) { h.id(i) } else { Matrix::zeros(h.ring(), 0, h.size(i)) }).collect());
    EquivalenceCertificate { u, v, hm: Homotopy::zero(p, p), hn: Homotopy::zero(h, h) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::complex::identity_cone;
    use crate::exactlin::Elem;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn k_at(n: usize, deg: i64) -> Complex {
        Complex::concentrated(&CategorySpec::full(q()).with_layer(Layer::Kar), KarObject::free(&q(), n), deg)
    }

    #[test]
    fn split_epi_model() {
        let m = Complex::new(
            CategorySpec::full(q()),
            0,
            vec![KarObject::free(&q(), 3), KarObject::free(&q(), 2)],
            vec![Matrix::from_i64(&q(), 2, 3, &[1, 0, 0, 0, 1, 0])],
        )
        .unwrap();
        let (h, cert) = minimal_model(&m).unwrap();
        assert!(cert.verify());
        assert_eq!(h.essential_support(), Some((0, 0)));
        assert_eq!(h.term(0).multirank().unwrap(), vec![1]);
    }

    #[test]
    fn contractible_model_is_zero() {
        let c = identity_cone(&CategorySpec::full(q()), &KarObject::free(&q(), 2), 0);
        let (h, cert) = minimal_model(&c).unwrap();
        assert!(h.is_zero());
        assert!(cert.verify());
    }

    #[test]
    fn zero_differentials_are_kept() {
        let m = k_at(2, 0).sum(&k_at(1, 1)).unwrap();
        let (h, cert) = minimal_model(&m).unwrap();
        assert!(cert.verify());
        assert_eq!(h.terms(), m.terms());
    }

    #[test]
    fn model_refuses_integers() {
        let z = Ring::Integers;
        let m = Complex::concentrated(&CategorySpec::full(z.clone()), KarObject::free(&z, 1), 0);
        assert!(matches!(minimal_model(&m), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn pad_k1_below() {
        let spec = CategorySpec::allowed(q(), vec![2, 3], 12).unwrap();
        let (p, cert) = pad_to_spec(&k_at(1, 0), &spec, (-1, 0)).unwrap().unwrap();
        assert!(cert.verify());
        assert_eq!((p.min_degree(), p.size(-1), p.size(0)), (-1, 2, 3));
        let (i, _) = crate::addcat::standard_inclusion(&q(), 2, 3);
        assert_eq!(p.diff(-1), i.matrix);
    }

    #[test]
    fn pad_k1_above() {
        let spec = CategorySpec::allowed(q(), vec![2, 3], 12).unwrap();
        let (p, cert) = pad_to_spec(&k_at(1, 0), &spec, (0, 1)).unwrap().unwrap();
        assert!(cert.verify());
        assert_eq!((p.size(0), p.size(1)), (3, 2));
        assert!(crate::exactlin::field::rank(&p.diff(0)) == 2);
        assert!(pad_to_spec(&k_at(1, 0), &spec, (0, 0)).unwrap().is_none());
    }

    #[test]
    fn allowed_terms_need_no_padding() {
        let spec = CategorySpec::allowed(q(), vec![2, 3], 12).unwrap();
        let (p, cert) = pad_to_spec(&k_at(2, 0), &spec, (-1, 1)).unwrap().unwrap();
        assert!(cert.verify());
        assert_eq!(p.trimmed().terms(), &[KarObject::free(&q(), 2)]);
    }

    #[test]
    fn product_ring_pads_to_constant_rank() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let e = KarObject::new(Matrix::from_elems(&r, 1, 1, vec![Elem::Tuple(vec![0, 1])]).unwrap()).unwrap();
        let kar = CategorySpec::full(r.clone()).with_layer(Layer::Kar);
        let h = Complex::concentrated(&kar, e.clone(), 0).sum(&Complex::concentrated(&kar, e, 1)).unwrap();
        // (0,1) in one degree alone never becomes free
        assert!(pad_to_spec(&h.window(0, 0), &CategorySpec::full(r.clone()), (0, 1)).unwrap().is_none());
        // a cone of multirank (1,0) on degrees 0, 1 makes both terms free of rank 1
        let (p, cert) = pad_to_spec(&h, &CategorySpec::full(r.clone()), (0, 1)).unwrap().unwrap();
        assert!(cert.verify());
        assert_eq!(p.terms(), &[KarObject::free(&r, 1), KarObject::free(&r, 1)]);
    }
}
