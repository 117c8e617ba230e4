use std::fmt;

use crate::complexes::{minimal_model, pad_to_spec, ChainMap, Complex, EquivalenceCertificate, Homotopy};
use crate::exactlin::Matrix;
use crate::error::{Error, Result};

/// `C_{w≤0}` is the class of complexes homotopy equivalent to ones in degrees
/// `≥ 0`, `C_{w≥0}` the class of those equivalent to ones in degrees `≤ 0`.
/// Level `n` means the class shifted by `[n]`, so `M ∈ C_{w≤n}` iff `M[−n] ∈ C_{w≤0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `w≤`
    Le,
    /// `w≥`
    Ge,
    /// `w=`, both at once
    Eq,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Le => "w<=",
            Side::Ge => "w>=",
            Side::Eq => "w=",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "w<=" | "w≤" | "le" => Some(Side::Le),
            "w>=" | "w≥" | "ge" => Some(Side::Ge),
            "w=" | "eq" => Some(Side::Eq),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct WeightClassQuery {
    pub side: Side,
    pub level: i64,
    pub complex: Complex,
}

/// A representative supported in `range` and an equivalence from it to the queried complex.
#[derive(Clone, Debug)]
pub struct Representative {
    /// Required support: `(lower, upper)` bounds, either open.
    pub range: (Option<i64>, Option<i64>),
    pub complex: Complex,
    /// `complex → queried`
    pub equivalence: EquivalenceCertificate,
}

impl Representative {
    pub fn check(&self, queried: &Complex) -> Result<()> {
        self.equivalence.check()?;
        if self.equivalence.source() != &self.complex || self.equivalence.target() != queried {
            return Err(Error::CertificateInvalid("equivalence does not connect the representative to the complex".into()));
        }
        for i in self.complex.degrees() {
            if self.complex.size(i) == 0 {
                continue;
            }
            let below = self.range.0.is_some_and(|lo| i < lo);
            let above = self.range.1.is_some_and(|hi| i > hi);
            if below || above {
                return Err(Error::CertificateInvalid(format!("representative has a term in degree {i}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub side: Side,
    pub level: i64,
    pub complex: Complex,
    /// One representative for `w≤` or `w≥`; for `w=` the `w≤` one, then the `w≥` one.
    pub parts: Vec<Representative>,
}

impl MembershipCertificate {
    pub fn check(&self) -> Result<()> {
        let expected = if self.side == Side::Eq { 2 } else { 1 };
        if self.parts.len() != expected {
            return Err(Error::CertificateInvalid("wrong number of representatives".into()));
        }
        for (k, part) in self.parts.iter().enumerate() {
            let side = match (self.side, k) {
                (Side::Eq, 0) => Side::Le,
                (Side::Eq, _) => Side::Ge,
                (s, _) => s,
            };
            if part.range != required_range(side, self.level) {
                return Err(Error::CertificateInvalid("representative range does not match the query".into()));
            }
            part.check(&self.complex)?;
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// The `w≥` representative (the one bounded above).
    pub fn upper_bounded(&self) -> Option<&Representative> {
        self.parts.iter().find(|p| p.range.1.is_some())
    }
}

/// Degree range of representatives for `C_{side n}`.
pub fn required_range(side: Side, level: i64) -> (Option<i64>, Option<i64>) {
    match side {
        Side::Le => (Some(-level), None),
        Side::Ge => (None, Some(-level)),
        Side::Eq => (Some(-level), Some(-level)),
    }
}

/// Certifies `q.complex ∈ C_{side, level}` over a field or product of fields.
///
/// The minimal model decides where homology lives; the model is then padded
/// with identity cones inside the window `[0, top + 1]` (for `w≤`) or
/// `[bottom − 1, 0]` (for `w≥`) of the shifted complex until its terms are
/// objects of the spec. `None` means homology lies outside the range or no
/// padding inside the window exists.
pub fn weight_membership(q: &WeightClassQuery) -> Result<Option<MembershipCertificate>> {
    let ring = q.complex.ring();
    if !ring.is_field_like() {
        return Err(Error::UnsupportedRing { op: "weight_membership", ring: ring.clone() });
    }
    let sides: &[Side] = match q.side {
        Side::Eq => &[Side::Le, Side::Ge],
        Side::Le => &[Side::Le],
        Side::Ge => &[Side::Ge],
    };
    let shifted = q.complex.shift(-q.level);
    let (h, model) = minimal_model(&shifted)?;
    let mut parts = Vec::new();
    for &side in sides {
        let Some((p, cert)) = level_zero(&shifted, &h, &model, side)? else {
            return Ok(None);
        };
        parts.push(Representative {
            range: required_range(side, q.level),
            complex: p.shift(q.level),
            equivalence: cert.shift(q.level),
        });
    }
    let out = MembershipCertificate { side: q.side, level: q.level, complex: q.complex.clone(), parts };
    out.check()?;
    Ok(Some(out))
}

/// Representative of `m ∈ C_{side 0}` and the certificate `P → m`.
fn level_zero(
    m: &Complex,
    h: &Complex,
    model: &EquivalenceCertificate,
    side: Side,
) -> Result<Option<(Complex, EquivalenceCertificate)>> {
    let support = h.essential_support();
    let window = match (side, support) {
        (Side::Le, Some((a, _))) if a < 0 => return Ok(None),
        (Side::Ge, Some((_, b))) if b > 0 => return Ok(None),
        (Side::Le, Some((_, b))) => (0, b + 1),
        (Side::Ge, Some((a, _))) => (a - 1, 0),
        (_, None) => (0, -1),
        (Side::Eq, _) => unreachable!("split into both sides"),
    };
    if m.essential_support().map_or(true, |(a, b)| window.0 <= a && b <= window.1) {
        return Ok(Some((m.window(window.0, window.1).trimmed(), window_identity(m, window))));
    }
    let Some((p, pad)) = pad_to_spec(h, m.spec(), window)? else {
        return Ok(None);
    };
    Ok(Some((p, pad.then(&model.inverse()))))
}

/// The identity of `m` seen from its trimmed restriction to `window`, which holds all nonzero terms.
fn window_identity(m: &Complex, window: (i64, i64)) -> EquivalenceCertificate {
    let p = m.window(window.0, window.1).trimmed();
    let u = ChainMap::from_fn(&p, m, |i| if p.size(i) > 0 { m.id(i) } else { Matrix::zeros(m.ring(), m.size(i), 0) })
        .expect("same terms");
    let v = ChainMap::from_fn(m, &p, |i| if p.size(i) > 0 { m.id(i) } else { Matrix::zeros(m.ring(), 0, m.size(i)) })
        .expect("same terms");
    EquivalenceCertificate { u, v, hm: Homotopy::zero(&p, &p), hn: Homotopy::zero(m, m) }
}

/// Certifies membership when `m` itself is supported in the required range.
pub fn certify_by_support(side: Side, level: i64, m: &Complex) -> Option<MembershipCertificate> {
    let sides: &[Side] = if side == Side::Eq { &[Side::Le, Side::Ge] } else { std::slice::from_ref(&side) };
    let mut parts = Vec::new();
    for &s in sides {
        let range = required_range(s, level);
        let (lo, hi) = m.essential_support().unwrap_or((0, -1));
        let lo_ok = range.0.map_or(true, |r| m.is_zero() || lo >= r);
        let hi_ok = range.1.map_or(true, |r| m.is_zero() || hi <= r);
        if !(lo_ok && hi_ok) {
            return None;
        }
        let window = if m.is_zero() { (0, -1) } else { (lo, hi) };
        let cert = window_identity(m, window);
        parts.push(Representative { range, complex: cert.source().clone(), equivalence: cert });
    }
    Some(MembershipCertificate { side, level, complex: m.clone(), parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addcat::{CategorySpec, KarObject};
    use crate::complexes::identity_cone;
    use crate::exactlin::Ring;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn two_three() -> CategorySpec {
        CategorySpec::allowed(q(), vec![2, 3], 12).unwrap()
    }

    fn split_epi(spec: &CategorySpec) -> Complex {
        Complex::new(
            spec.clone(),
            0,
            vec![KarObject::free(&q(), 3), KarObject::free(&q(), 2)],
            vec![Matrix::from_i64(&q(), 2, 3, &[0, 1, 0, 0, 0, 1])],
        )
        .unwrap()
    }

    fn query(side: Side, level: i64, complex: &Complex) -> Option<MembershipCertificate> {
        weight_membership(&WeightClassQuery { side, level, complex: complex.clone() }).unwrap()
    }

    #[test]
    fn heart_object_not_a_single_term() {
        let m = split_epi(&two_three());
        let cert = query(Side::Eq, 0, &m).unwrap();
        assert!(cert.verify());
        let ge = cert.upper_bounded().unwrap();
        let p = ge.complex.trimmed();
        assert_eq!((p.min_degree(), p.size(-1), p.size(0)), (-1, 2, 3));
    }

    #[test]
    fn cone_is_in_every_class() {
        let spec = CategorySpec::full(q());
        let c = identity_cone(&spec, &KarObject::free(&q(), 2), 5);
        for side in [Side::Le, Side::Ge, Side::Eq] {
            for level in [-3, 0, 2] {
                let cert = query(side, level, &c).unwrap();
                assert!(cert.parts.iter().all(|p| p.complex.is_zero()));
            }
        }
    }

    #[test]
    fn negative_degree_is_not_w_le_zero() {
        let spec = CategorySpec::full(q());
        let m = Complex::concentrated(&spec, KarObject::free(&q(), 1), -2);
        assert!(query(Side::Le, 0, &m).is_none());
        assert!(query(Side::Ge, 0, &m).is_some());
        // k in degree −2 is in C_{w=2}
        assert!(query(Side::Eq, 2, &m).unwrap().verify());
    }

    #[test]
    fn levels_are_shifts() {
        let spec = CategorySpec::full(q());
        let m = split_epi(&spec);
        for level in -2..=2 {
            for side in [Side::Le, Side::Ge] {
                let a = query(side, level, &m).is_some();
                let b = query(side, 0, &m.shift(-level)).is_some();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn integers_refused() {
        let z = Ring::Integers;
        let m = Complex::concentrated(&CategorySpec::full(z.clone()), KarObject::free(&z, 1), 0);
        let r = weight_membership(&WeightClassQuery { side: Side::Le, level: 0, complex: m });
        assert!(matches!(r, Err(Error::UnsupportedRing { .. })));
    }
}
