//! Offline verification of emitted certificates.
//!
//! Positive certificates are checked from their matrices alone. Negative
//! answers that assert the absence of something (no witness, no
//! representative) are re-decided, since the deciders are exact. Sampled
//! reports record their seed and are recomputed and compared.

use serde_json::{json, Value};
use wkar_core::addcat::{
    complement_split_mono, is_idempotent_complete, is_isomorphic, kar_functor, wkar_witness, CategorySpec, Isomorphism,
    KarMorphism, KarObject, Layer, Restriction, Splitting,
};
use wkar_core::complexes::{
    base_change, cone, hom_mod_homotopy, homology_profile, Complex, ContractibleSplitting, EquivalenceCertificate,
};
use wkar_core::exactlin::Matrix;
use wkar_core::json::{self, Reader, ToJson};
use wkar_core::k0::{k0_induced_map, k0_presentation_unchecked, WkarK0Checker};
use wkar_core::weights::{
    weight_membership, AxiomOptions, MembershipCertificate, Representative, WeightClassQuery, WeightDecomposition,
};
use wkar_core::{Error, Result};

use crate::commands::{axioms_payload, connectivity_payload, hom_json, item_json, kar_item, profile_json, ring_hom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub kind: String,
    pub valid: bool,
    pub reason: Option<String>,
}

/// `Ok(())` when the claim holds, `Err(reason)` otherwise.
type Check = std::result::Result<(), String>;

fn ensure(cond: bool, reason: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

/// Checks a certificate document. Malformed documents are errors; well-formed
/// documents whose claims fail are reported with `valid: false`.
pub fn verify_document(r: Reader) -> Result<Verification> {
    let kind = r.field("certificate")?.reader().str()?.to_string();
    let check = match kind.as_str() {
        "splitting" => splitting_doc(r)?,
        "no-complement" => no_complement(r)?,
        "wkar-witness" => witness_doc(r)?,
        "wkar-none" => witness_none(r)?,
        "completeness" => completeness(r)?,
        "kar-map" => kar_map(r)?,
        "contraction" => contraction(r)?,
        "not-contractible" => not_contractible(r)?,
        "split" => split(r)?,
        "split-failure" => split_failure(r)?,
        "hom" => hom(r)?,
        "weight-decomposition" => decomposition(r)?.check().map_err(|e| e.to_string()),
        "membership" => membership(r)?.check().map_err(|e| e.to_string()),
        "non-membership" => non_membership(r)?,
        "axioms" => axioms(r)?,
        "heart-roundtrip" => heart(r)?,
        "connectivity" => connectivity(r)?,
        "k0" => k0(r)?,
        "k0-map" => k0_map(r)?,
        "wkar-k0" => wkar_k0(r)?,
        other => return Err(r.field("certificate")?.reader().err(format!("unknown certificate kind {other:?}"))),
    };
    Ok(Verification { kind, valid: check.is_ok(), reason: check.err() })
}

/// Whether `obj` is isomorphic to an object of `spec`.
pub fn contains_up_to_iso(spec: &CategorySpec, obj: &KarObject) -> Result<bool> {
    match spec.layer {
        Layer::Base => {
            let ranks = obj.multirank()?;
            Ok(ranks.windows(2).all(|w| w[0] == w[1]) && spec.allows_rank(ranks.first().copied().unwrap_or(0)))
        }
        _ => spec.contains(obj),
    }
}

/// The image of `id_Y − i∘p` in the Karoubi envelope.
fn complement_image(i: &KarMorphism, p: &KarMorphism) -> Result<KarObject> {
    KarObject::new(i.target.idempotent() - &(&i.matrix * &p.matrix))
}

fn spec_field(r: Reader) -> Result<CategorySpec> {
    json::spec(r.field("spec")?.reader())
}

fn splitting(r: Reader, spec: &CategorySpec) -> Result<Splitting> {
    let ring = &spec.ring;
    let i = json::kar_morphism(r.field("i")?.reader(), ring)?;
    let p = json::kar_morphism(r.field("p")?.reader(), ring)?;
    let complement = json::kar_object(r.field("complement")?.reader(), ring)?;
    let a = json::matrix(r.field("a")?.reader(), ring)?;
    let b = json::matrix(r.field("b")?.reader(), ring)?;
    let y = i.target.clone();
    let sum = i.source.direct_sum(&complement).map_err(|e| r.wrap(e))?;
    let shape = |m: &Matrix, want: (usize, usize), key: &str| {
        if m.shape() == want {
            Ok(())
        } else {
            Err(Error::Json { path: format!("{}.{key}", r.path()), message: "wrong shape".into() })
        }
    };
    shape(&a, (y.size(), complement.size()), "a")?;
    shape(&b, (complement.size(), y.size()), "b")?;
    let forward = KarMorphism::project(&sum, &y, &Matrix::hstack(ring, y.size(), &[&i.matrix, &a]));
    let backward = KarMorphism::project(&y, &sum, &Matrix::vstack(ring, y.size(), &[&p.matrix, &b]));
    Ok(Splitting { i, p, complement, a, b, iso: Isomorphism { forward, backward } })
}

fn check_splitting(s: &Splitting, spec: &CategorySpec) -> Result<Check> {
    if !s.verify() {
        return Ok(Err("splitting isomorphism does not verify".into()));
    }
    Ok(ensure(spec.contains(&s.complement)?, "complement is not an object of the spec"))
}

fn splitting_doc(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let s = splitting(r.field("splitting")?.reader(), &spec)?;
    check_splitting(&s, &spec)
}

/// `p∘i = id` and the complement is not in the spec up to isomorphism.
fn split_mono_without_complement(i: &KarMorphism, p: &KarMorphism, spec: &CategorySpec) -> Result<Check> {
    if p.source != i.target || p.target != i.source || !p.after(i)?.is_identity() {
        return Ok(Err("p∘i is not the identity".into()));
    }
    let image = complement_image(i, p)?;
    Ok(ensure(!contains_up_to_iso(spec, &image)?, "the complement is isomorphic to an object of the spec"))
}

fn no_complement(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let i = json::kar_morphism(r.field("i")?.reader(), &spec.ring)?;
    let p = json::kar_morphism(r.field("p")?.reader(), &spec.ring)?;
    let stated = json::kar_object(r.field("complement")?.reader(), &spec.ring)?;
    if is_isomorphic(&stated, &complement_image(&i, &p)?)?.is_none() {
        return Ok(Err("stated complement is not the image of id − i∘p".into()));
    }
    split_mono_without_complement(&i, &p, &spec)
}

fn witness_doc(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let z = json::kar_object(r.field("z")?.reader(), &spec.ring)?;
    let w = json::wkar_witness(r.field("witness")?.reader(), &spec.ring)?;
    if w.z != z {
        return Ok(Err("witness is for a different object".into()));
    }
    Ok(ensure(w.verify(&spec.base()), "witness does not verify"))
}

fn witness_none(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let z = json::kar_object(r.field("z")?.reader(), &spec.ring)?;
    let bound = r.field("bound")?.reader().usize()?;
    Ok(ensure(wkar_witness(&z, &spec, Some(bound))?.witness.is_none(), "a witness exists within the bound"))
}

fn completeness(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let ring = &spec.ring;
    let wic = r.field("wic")?;
    let wic = wic.reader();
    let complete = wic.field("weakly_idempotent_complete")?.reader().bool()?;
    if complete {
        let cert = wic.field("certificate")?;
        let cert = cert.reader();
        let check = match cert.field("kind")?.reader().str()? {
            "free-complements" => ensure(
                spec.layer == Layer::Base && spec.restriction == Restriction::Full,
                "free complements only apply to the full base category",
            ),
            "karoubi-images" => ensure(spec.layer == Layer::Kar, "Karoubi images only apply to the Karoubi layer"),
            "pairs" => pairs(cert, &spec)?,
            "combined-witnesses" => {
                let mut check = ensure(spec.layer == Layer::Wkar, "combined witnesses only apply to the wKar layer");
                for w in cert.field("witnesses")?.reader().items()? {
                    let w = json::wkar_witness(w.reader(), ring)?;
                    if check.is_ok() && !w.verify(&spec.base()) {
                        check = Err("a combined witness does not verify".into());
                    }
                }
                check
            }
            other => return Err(cert.err(format!("unknown completeness certificate {other:?}"))),
        };
        if check.is_err() {
            return Ok(check);
        }
    } else {
        let c = wic.field("counterexample")?;
        let c = c.reader();
        let i = json::kar_morphism(c.field("i")?.reader(), ring)?;
        let p = json::kar_morphism(c.field("p")?.reader(), ring)?;
        let check = split_mono_without_complement(&i, &p, &spec)?;
        if check.is_err() {
            return Ok(check);
        }
    }
    let ic = r.field("ic")?;
    let ic = ic.reader();
    if ic.field("idempotent_complete")?.reader().bool()? {
        let bound = ic.opt("bound").map(|b| b.reader().usize()).transpose()?;
        Ok(ensure(is_idempotent_complete(&spec, bound)?.complete, "an idempotent without image exists"))
    } else {
        let e = json::kar_morphism(ic.field("witness")?.reader(), ring)?;
        if e.source != e.target || &e.matrix * &e.matrix != e.matrix || !spec.contains(&e.source)? {
            return Ok(Err("witness is not an idempotent endomorphism of an object".into()));
        }
        let image = KarObject::new(e.matrix.clone())?;
        Ok(ensure(!contains_up_to_iso(&spec, &image)?, "the idempotent splits in the spec"))
    }
}

/// Every standard inclusion between allowed ranks up to the bound has a verified splitting.
fn pairs(cert: Reader, spec: &CategorySpec) -> Result<Check> {
    if spec.layer != Layer::Base {
        return Ok(Err("pair certificates only apply to the base layer".into()));
    }
    let bound = cert.field("bound")?.reader().usize()?;
    let mut seen = Vec::new();
    for s in cert.field("splittings")?.reader().items()? {
        let s = splitting(s.reader(), spec)?;
        let check = check_splitting(&s, spec)?;
        if check.is_err() {
            return Ok(check);
        }
        let std = wkar_core::addcat::standard_inclusion(&spec.ring, s.x().size(), s.y().size());
        if s.i != std.0 || s.p != std.1 {
            return Ok(Err("a splitting is not of a standard inclusion".into()));
        }
        seen.push((s.x().size(), s.y().size()));
    }
    let allowed = spec.allowed_up_to(bound);
    for &b in &allowed {
        for &a in allowed.iter().filter(|&&a| a <= b) {
            if !seen.contains(&(a, b)) {
                return Ok(Err(format!("no splitting for the pair ({a}, {b})")));
            }
        }
    }
    Ok(Ok(()))
}

fn kar_map(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let hom = ring_hom(r.field("hom")?.reader(), &spec)?;
    let input = kar_item(r.field("input")?.reader(), &spec)?;
    let output = kar_functor(&hom, &input)?;
    Ok(ensure(
        r.field("output")?.reader().value() == &item_json(&output) && r.field("hom")?.reader().value() == &hom_json(&hom),
        "output differs from the functor applied to the input",
    ))
}

fn contraction(r: Reader) -> Result<Check> {
    let m = json::complex(r.field("complex")?.reader(), None)?;
    let h = json::homotopy_parts(r.field("homotopy")?.reader(), &m, &m)?;
    Ok(ensure(h.is_contraction(), "dh + hd is not the identity"))
}

fn not_contractible(r: Reader) -> Result<Check> {
    let m = json::complex(r.field("complex")?.reader(), None)?;
    let ring = json::ring(r.field("ring")?.reader())?;
    let profile = homology_profile(&base_change(&m, &ring)?)?;
    if profile.is_empty() {
        return Ok(Err("homology vanishes after base change".into()));
    }
    Ok(ensure(&profile_json(&profile) == r.field("homology")?.reader().value(), "stated homology differs"))
}

fn split(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let s = r.field("splitting")?;
    let s = s.reader();
    let m = json::complex(s.field("complex")?.reader(), None)?;
    let target = json::complex(s.field("target")?.reader(), None)?;
    let mut summands = Vec::new();
    for item in s.field("summands")?.reader().items()? {
        let item = item.reader();
        let n = json::kar_object(item.field("object")?.reader(), &spec.ring)?;
        if !spec.contains(&n)? {
            return Ok(Err("a summand is not an object of the spec".into()));
        }
        summands.push((n, item.field("degree")?.reader().i64()?));
    }
    let forward = json::chain_map_parts(s.field("forward")?.reader(), &m, &target)?;
    let backward = json::chain_map_parts(s.field("backward")?.reader(), &target, &m)?;
    let cs = ContractibleSplitting { summands, target, forward, backward };
    Ok(ensure(cs.verify(), "splitting maps are not mutually inverse chain maps onto the sum of cones"))
}

fn split_failure(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let m = json::complex(r.field("complex")?.reader(), None)?;
    let f = r.field("failure")?;
    let f = f.reader();
    let degree = f.field("degree")?.reader().i64()?;
    if !m.degrees().contains(&degree) {
        return Ok(Err("failure degree is outside the complex".into()));
    }
    let i = json::kar_morphism(f.field("i")?.reader(), &spec.ring)?;
    let p = json::kar_morphism(f.field("p")?.reader(), &spec.ring)?;
    if complement_split_mono(&i, &p, &spec).is_ok() {
        return Ok(Err("the split mono has a complement in the spec".into()));
    }
    split_mono_without_complement(&i, &p, &spec)
}

fn hom(r: Reader) -> Result<Check> {
    let m = json::complex(r.field("source")?.reader(), None)?;
    let n = json::complex(r.field("target")?.reader(), None)?;
    let h = r.field("hom")?;
    let h = h.reader();
    for b in h.field("basis")?.reader().items()? {
        if !json::chain_map_parts(b.reader(), &m, &n)?.verify() {
            return Ok(Err("a basis element is not a chain map".into()));
        }
    }
    let dims = json::usize_list(h.field("dims")?.reader())?;
    Ok(ensure(hom_mod_homotopy(&m, &n)?.dims == dims, "dimensions differ from a recomputation"))
}

fn range(r: Reader) -> Result<(Option<i64>, Option<i64>)> {
    let items = r.items()?;
    if items.len() != 2 {
        return Err(r.err("expected [lower, upper]"));
    }
    let end = |n: &json::Node| -> Result<Option<i64>> {
        match n.reader().value() {
            Value::Null => Ok(None),
            _ => n.reader().i64().map(Some),
        }
    };
    Ok((end(&items[0])?, end(&items[1])?))
}

pub fn membership(r: Reader) -> Result<MembershipCertificate> {
    let side = json::side(r.field("side")?.reader())?;
    let level = r.field("level")?.reader().i64()?;
    let complex = json::complex(r.field("complex")?.reader(), None)?;
    let mut parts = Vec::new();
    for p in r.field("representatives")?.reader().items()? {
        let p = p.reader();
        let rep = json::complex(p.field("complex")?.reader(), None)?;
        let equivalence = json::equivalence_between(p.field("equivalence")?.reader(), &rep, &complex)?;
        parts.push(Representative { range: range(p.field("range")?.reader())?, complex: rep, equivalence });
    }
    Ok(MembershipCertificate { side, level, complex, parts })
}

fn non_membership(r: Reader) -> Result<Check> {
    let side = json::side(r.field("side")?.reader())?;
    let level = r.field("level")?.reader().i64()?;
    let complex = json::complex(r.field("complex")?.reader(), None)?;
    Ok(ensure(weight_membership(&WeightClassQuery { side, level, complex })?.is_none(), "the complex is a member"))
}

pub fn decomposition(r: Reader) -> Result<WeightDecomposition> {
    let m = json::complex(r.field("complex")?.reader(), None)?;
    let l = json::complex(r.field("l")?.reader(), None)?;
    let rr = json::complex(r.field("r")?.reader(), None)?;
    let to_m = json::chain_map_parts(r.field("to_m")?.reader(), &l, &m)?;
    let from_m = json::chain_map_parts(r.field("from_m")?.reader(), &m, &rr)?;
    let connecting = json::chain_map_parts(r.field("connecting")?.reader(), &rr, &l.shift(1))?;
    let c = cone(&to_m).map_err(|e| r.wrap(e))?;
    let cone_equivalence = json::equivalence_between(r.field("cone_equivalence")?.reader(), &c, &rr)?;
    Ok(WeightDecomposition { level: r.field("level")?.reader().i64()?, l, r: rr, to_m, from_m, connecting, cone_equivalence })
}

/// `m` and `n` agree as complexes, ignoring the spec they are read in.
fn same_terms(m: &Complex, n: &Complex) -> bool {
    m.trimmed().terms() == n.trimmed().terms() && m.trimmed().diffs() == n.trimmed().diffs() && m.trimmed().min_degree() == n.trimmed().min_degree()
}

fn heart(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let ring = &spec.ring;
    let z = json::kar_object(r.field("z")?.reader(), ring)?;
    let rt = r.field("roundtrip")?;
    let rt = rt.reader();
    let h = rt.field("heart")?;
    let h = h.reader();
    let complex = json::complex(h.field("complex")?.reader(), None)?;
    let w = json::wkar_witness(h.field("witness")?.reader(), ring)?;
    if w.z != z || !w.verify(&spec.base()) {
        return Ok(Err("heart witness does not verify for the object".into()));
    }
    let to_object: EquivalenceCertificate = json::equivalence(h.field("to_object")?.reader(), None)?;
    if let Err(e) = to_object.check() {
        return Ok(Err(format!("equivalence to the object: {e}")));
    }
    let target = to_object.target();
    if !same_terms(to_object.source(), &complex) || target.term(0) != z || target.degrees().any(|i| i != 0 && target.size(i) > 0) {
        return Ok(Err("equivalence does not connect the heart complex to the object".into()));
    }
    let mem = membership(h.field("membership")?.reader())?;
    if mem.complex != complex || mem.side != wkar_core::weights::Side::Eq || mem.level != 0 {
        return Ok(Err("membership is not a w=0 certificate for the heart complex".into()));
    }
    if let Err(e) = mem.check() {
        return Ok(Err(format!("membership: {e}")));
    }
    let rec = rt.field("recovered")?;
    let rec = rec.reader();
    let z2 = json::kar_object(rec.field("z")?.reader(), ring)?;
    let w2 = json::wkar_witness(rec.field("witness")?.reader(), ring)?;
    if w2.z != z2 || !w2.verify(&spec.base()) {
        return Ok(Err("recovered witness does not verify".into()));
    }
    let iso = json::isomorphism(rt.field("iso")?.reader(), ring)?;
    Ok(ensure(
        iso.verify() && iso.forward.source == z && iso.forward.target == z2,
        "recovered object is not isomorphic to the input",
    ))
}

fn recomputed(stated: &Value, fresh: Value, what: &str) -> Check {
    ensure(stated == &fresh, &format!("{what} differs from a recomputation"))
}

fn axioms(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let options = AxiomOptions {
        triangles: r.field("triangles")?.reader().usize()?,
        hom_pairs: r.field("hom_pairs")?.reader().usize()?,
        seed: r.field("seed")?.reader().u64()?,
    };
    let fresh = axioms_payload(&spec, r.field("samples")?.reader().usize()?, &options)?;
    Ok(recomputed(r.field("report")?.reader().value(), fresh["report"].clone(), "axiom report"))
}

fn connectivity(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let fresh =
        connectivity_payload(&spec, r.field("degree_bound")?.reader().usize()?, r.field("seed")?.reader().u64()?)?;
    Ok(recomputed(r.field("verdict")?.reader().value(), fresh["verdict"].clone(), "connectivity verdict"))
}

fn k0(r: Reader) -> Result<Check> {
    let p = r.field("presentation")?;
    let p = p.reader();
    let spec = spec_field(p)?;
    let fresh = k0_presentation_unchecked(&spec, p.field("bound")?.reader().usize()?)?;
    if !(fresh.relations_well_formed() && fresh.relations_vanish()) {
        return Ok(Err("relations do not vanish in the stated coordinates".into()));
    }
    Ok(recomputed(p.value(), fresh.to_json(), "presentation"))
}

fn k0_map(r: Reader) -> Result<Check> {
    let bound = r.field("bound")?.reader().usize()?;
    let m = r.field("map")?;
    let m = m.reader();
    let inner = spec_field(m.field("source")?.reader())?;
    let outer = spec_field(m.field("target")?.reader())?;
    let fresh = k0_induced_map(&inner, &outer, bound)?;
    Ok(recomputed(m.value(), fresh.to_json(), "induced map"))
}

fn wkar_k0(r: Reader) -> Result<Check> {
    let spec = spec_field(r)?;
    let checker = WkarK0Checker::new(&spec, r.field("bound")?.reader().usize()?)?;
    for v in r.field("verdicts")?.reader().items()? {
        let v = v.reader();
        let z = json::kar_object(v.field("object")?.reader(), &spec.ring)?;
        let mut fresh = match checker.check(&z) {
            Ok(f) => f.to_json(),
            Err(e) => return Ok(Err(e.to_string())),
        };
        fresh["object"] = z.to_json();
        if &fresh != v.value() {
            return Ok(Err(format!("verdict at {} differs from a recomputation", v.path())));
        }
    }
    Ok(ensure(r.field("disagreements")?.reader().value() == &json!(0), "disagreements reported"))
}
