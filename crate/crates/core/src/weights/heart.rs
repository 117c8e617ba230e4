//! The heart of the stupid weight structure and its identification with the
//! weak idempotent completion of the base.

use super::membership::{weight_membership, MembershipCertificate, Side, WeightClassQuery};
use crate::addcat::{is_isomorphic, wkar_witness, CategorySpec, Isomorphism, KarMorphism, KarObject, WkarWitness};
use crate::complexes::{homology_profile, resolve_wkar_object, Complex, EquivalenceCertificate};
use crate::error::{Error, Result};
use crate::exactlin::{solve, Matrix};

/// A `wKar` object extracted from a heart complex.
#[derive(Clone, Debug)]
pub struct HeartObject {
    pub z: KarObject,
    pub witness: WkarWitness,
}

/// A heart complex `[X → Y]` in degrees `−1, 0` realizing a `wKar` object.
#[derive(Clone, Debug)]
pub struct HeartComplex {
    pub complex: Complex,
    pub witness: WkarWitness,
    /// `complex → Z[0]` over the Karoubi envelope.
    pub to_object: EquivalenceCertificate,
    pub membership: MembershipCertificate,
}

/// Reads `Z = coker(P^{−1} → P^0)` off the `w≥0` representative of a `w=0` certificate.
pub fn heart_to_wkar(cert: &MembershipCertificate, base: &CategorySpec) -> Result<HeartObject> {
    let invalid = |s: &str| Error::CertificateInvalid(s.to_string());
    if cert.side != Side::Eq || cert.level != 0 {
        return Err(invalid("not a w=0 certificate"));
    }
    cert.check()?;
    let p = &cert.upper_bounded().ok_or_else(|| invalid("no w>=0 representative"))?.complex;
    if p.degrees().any(|i| (i < -1 || i > 0) && p.size(i) > 0) {
        return Err(invalid("w>=0 representative is not concentrated in degrees -1, 0"));
    }
    let ring = p.ring().clone();
    let (x, y, d) = (p.term(-1), p.term(0), p.diff(-1));
    // s·d = 1_X, projected into Hom(Y, X)
    let s = solve(&d.transpose(), &x.idempotent().transpose())?
        .ok_or_else(|| invalid("differential is not split mono"))?
        .transpose();
    let s = &(x.idempotent() * &s) * y.idempotent();
    let e = y.idempotent() - &(&d * &s);
    let z = KarObject::new(e.clone())?;
    let sum = x.direct_sum(&z)?;
    let forward = KarMorphism::new(&sum, &y, Matrix::hstack(&ring, y.size(), &[&d, &e]))?;
    let backward = KarMorphism::new(&y, &sum, Matrix::vstack(&ring, y.size(), &[&s, &e]))?;
    let witness = WkarWitness { x, y, z: z.clone(), iso: Isomorphism { forward, backward } };
    if !witness.verify(base) {
        return Err(invalid("extracted witness does not verify"));
    }
    Ok(HeartObject { z, witness })
}

/// `Z ↦ [X → Y]` via a witness `X ⊕ Z ≅ Y`, certified a member of `w=0`.
pub fn wkar_to_heart(z: &KarObject, spec: &CategorySpec, bound: Option<usize>) -> Result<HeartComplex> {
    let witness = wkar_witness(z, spec, bound)?
        .witness
        .ok_or_else(|| Error::WitnessInvalid("object has no witness within the bound".into()))?;
    let (complex, to_object) = resolve_wkar_object(&witness, spec)?;
    let membership = weight_membership(&WeightClassQuery { side: Side::Eq, level: 0, complex: complex.clone() })?
        .ok_or_else(|| Error::CertificateInvalid("resolution is not certified in the heart".into()))?;
    Ok(HeartComplex { complex, witness, to_object, membership })
}

#[derive(Clone, Debug)]
pub struct HeartRoundtrip {
    pub heart: HeartComplex,
    pub recovered: HeartObject,
    /// `Z ≅ Z'` for the recovered object.
    pub iso: Isomorphism,
}

/// `Z → heart → Z'` with `Z ≅ Z'` certified.
pub fn heart_roundtrip(z: &KarObject, spec: &CategorySpec, bound: Option<usize>) -> Result<HeartRoundtrip> {
    let heart = wkar_to_heart(z, spec, bound)?;
    let recovered = heart_to_wkar(&heart.membership, spec)?;
    let iso = is_isomorphic(z, &recovered.z)?
        .ok_or_else(|| Error::CertificateInvalid("recovered object is not isomorphic to the input".into()))?;
    Ok(HeartRoundtrip { heart, recovered, iso })
}

/// `M → Z → [X → Y]` lands back in the class of `M`; over a field this is equality of homology ranks.
pub fn heart_complex_roundtrip(cert: &MembershipCertificate, spec: &CategorySpec) -> Result<bool> {
    let z = heart_to_wkar(cert, spec)?.z;
    let back = wkar_to_heart(&z, spec, None)?;
    Ok(homology_profile(&back.complex)? == homology_profile(&cert.complex)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;

    fn two_three() -> CategorySpec {
        CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap()
    }

    fn rank_one(q: &Ring) -> KarObject {
        KarObject::new(Matrix::from_i64(q, 2, 2, &[1, 0, 0, 0])).unwrap()
    }

    #[test]
    fn base_object_roundtrip() {
        let q = Ring::Rationals;
        let spec = CategorySpec::full(q.clone());
        let z = KarObject::free(&q, 2);
        let r = heart_roundtrip(&z, &spec, None).unwrap();
        assert_eq!(r.heart.complex.trimmed().terms(), &[z]);
        assert!(r.iso.verify());
    }

    #[test]
    fn rank_one_over_two_three() {
        let q = Ring::Rationals;
        let r = heart_roundtrip(&rank_one(&q), &two_three(), None).unwrap();
        let c = &r.heart.complex;
        assert_eq!((c.size(-1), c.size(0)), (2, 3));
        assert_eq!(r.recovered.z.multirank().unwrap(), vec![1]);
        assert_eq!((r.recovered.witness.x.size(), r.recovered.witness.y.size()), (2, 3));
    }

    #[test]
    fn zero_object_gives_contractible_heart_complex() {
        let q = Ring::Rationals;
        let r = heart_roundtrip(&KarObject::zero(&q), &two_three(), None).unwrap();
        assert!(homology_profile(&r.heart.complex).unwrap().is_empty());
        assert!(r.recovered.z.is_zero_object());
    }

    #[test]
    fn wrong_side_is_refused() {
        let q = Ring::Rationals;
        let spec = two_three();
        let m = wkar_to_heart(&rank_one(&q), &spec, None).unwrap().complex;
        let le = weight_membership(&WeightClassQuery { side: Side::Le, level: 0, complex: m }).unwrap().unwrap();
        assert!(matches!(heart_to_wkar(&le, &spec), Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn heart_complex_comes_back() {
        let q = Ring::Rationals;
        let spec = two_three();
        let m = Complex::new(
            spec.clone(),
            0,
            vec![KarObject::free(&q, 3), KarObject::free(&q, 2)],
            vec![Matrix::from_i64(&q, 2, 3, &[0, 1, 0, 0, 0, 1])],
        )
        .unwrap();
        let cert = weight_membership(&WeightClassQuery { side: Side::Eq, level: 0, complex: m }).unwrap().unwrap();
        assert!(heart_complex_roundtrip(&cert, &spec).unwrap());
    }
}
