use serde_json::{json, Value};
use wkar_core::addcat::{
    complement_split_mono, is_idempotent_complete, is_weakly_idempotent_complete, kar_functor, wkar_witness, CategorySpec,
    KarItem, KarObject, Layer, RingHom, WicOptions,
};
use wkar_core::complexes::{
    contractibility_obstruction, hom_mod_homotopy, is_contractible, split_contractible, Complex, SplitOutcome,
};
use wkar_core::addcat::completeness::kar_rank_object;
use wkar_core::json::{self, ToJson, Reader};
use wkar_core::k0::{k0_induced_map, k0_presentation_unchecked, WkarK0Checker};
use wkar_core::weights::{
    heart_roundtrip, is_connective, sample_complexes, sample_retractions, stupid_truncate, verify_axioms, weight_membership,
    AxiomOptions, WeightClassQuery,
};
use wkar_core::{Error, Result};

use crate::{verify, Exit, Options, Outcome};

pub const COMMANDS: &[&str] = &[
    "complement",
    "wkar-witness",
    "wic-check",
    "kar-map",
    "contractible",
    "split-contractible",
    "hom",
    "weight-decompose",
    "weight-member",
    "verify-axioms",
    "heart-roundtrip",
    "connective",
    "k0",
    "k0-map",
    "wkar-k0-crosscheck",
    "verify-certificate",
];

pub fn dispatch(command: &str, r: Reader, opts: &Options) -> Result<Outcome> {
    match command {
        "complement" => complement(r, opts),
        "wkar-witness" => witness(r, opts),
        "wic-check" => wic_check(r, opts),
        "kar-map" => kar_map(r, opts),
        "contractible" => contractible(r, opts),
        "split-contractible" => split(r, opts),
        "hom" => hom(r, opts),
        "weight-decompose" => weight_decompose(r, opts),
        "weight-member" => weight_member(r, opts),
        "verify-axioms" => axioms(r, opts),
        "heart-roundtrip" => heart(r, opts),
        "connective" => connective(r, opts),
        "k0" => k0(r, opts),
        "k0-map" => k0_map(r, opts),
        "wkar-k0-crosscheck" => wkar_k0(r, opts),
        "verify-certificate" => {
            let v = verify::verify_document(r)?;
            let exit = if v.valid { Exit::Success } else { Exit::Negative };
            Ok(Outcome::new("verification", exit, json!({ "kind": v.kind, "valid": v.valid, "reason": v.reason })))
        }
        other => Err(Error::InvalidInput(format!("unknown subcommand {other:?}"))),
    }
}

fn usize_or(r: Reader, key: &str, fallback: usize) -> Result<usize> {
    r.opt(key).map_or(Ok(fallback), |n| n.reader().usize())
}

fn complex_field(r: Reader, key: &str, opts: &Options) -> Result<Complex> {
    let spec = match r.opt("spec") {
        Some(s) => Some(json::spec(s.reader())?),
        None => opts.default_spec(),
    };
    json::complex(r.field(key)?.reader(), spec.as_ref())
}

fn complement(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let i = json::kar_morphism(r.field("i")?.reader(), &spec.ring)?;
    let p = json::kar_morphism(r.field("p")?.reader(), &spec.ring)?;
    match complement_split_mono(&i, &p, &spec) {
        Ok(s) => Ok(Outcome::new("splitting", Exit::Success, json!({ "spec": spec.to_json(), "splitting": s.to_json() }))),
        Err(Error::SplitMonoNoComplement { reason, .. }) => {
            let image = KarObject::new(i.target.idempotent() - &(&i.matrix * &p.matrix))?;
            Ok(Outcome::new(
                "no-complement",
                Exit::Negative,
                json!({
                    "spec": spec.to_json(),
                    "i": i.to_json(),
                    "p": p.to_json(),
                    "complement": image.to_json(),
                    "complement_multirank": image.multirank().ok(),
                    "reason": reason,
                }),
            ))
        }
        Err(e) => Err(e),
    }
}

fn witness(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let z = json::kar_object(r.field("z")?.reader(), &spec.ring)?;
    let bound = match r.opt("bound") {
        Some(b) => Some(b.reader().usize()?),
        None => opts.bound,
    };
    let search = wkar_witness(&z, &spec, bound)?;
    Ok(match search.witness {
        Some(w) => Outcome::new("wkar-witness", Exit::Success, json!({ "spec": spec.to_json(), "z": z.to_json(), "witness": w.to_json() })),
        None => Outcome::new(
            "wkar-none",
            Exit::Negative,
            json!({ "spec": spec.to_json(), "z": z.to_json(), "bound": search.bound, "multirank": z.multirank()? }),
        ),
    })
}

fn wic_check(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let wic_opts = WicOptions {
        bound: r.opt("bound").map(|b| b.reader().usize()).transpose()?.or(opts.bound),
        samples: usize_or(r, "samples", WicOptions::default().samples)?,
        seed: opts.seed,
    };
    let wic = is_weakly_idempotent_complete(&spec, &wic_opts)?;
    let ic = is_idempotent_complete(&spec, wic_opts.bound)?;
    let exit = if wic.complete { Exit::Success } else { Exit::Negative };
    Ok(Outcome::new("completeness", exit, json!({ "spec": spec.to_json(), "wic": wic.to_json(), "ic": ic.to_json() })))
}

pub fn ring_hom(r: Reader, spec: &CategorySpec) -> Result<RingHom> {
    if let Ok("identity") = r.str() {
        return Ok(RingHom::Identity(spec.ring.clone()));
    }
    if let Some(k) = r.opt("projection") {
        return RingHom::projection(spec.ring.clone(), k.reader().usize()?).map_err(|e| r.wrap(e));
    }
    if let Some(n) = r.opt("quotient") {
        if spec.ring != wkar_core::exactlin::Ring::Integers {
            return Err(r.err("a quotient map needs source ring Z"));
        }
        return RingHom::quotient(n.reader().u64()?).map_err(|e| r.wrap(e));
    }
    Err(r.err("expected \"identity\", {\"projection\": k} or {\"quotient\": n}"))
}

pub fn hom_json(h: &RingHom) -> Value {
    match h {
        RingHom::Identity(_) => json!("identity"),
        RingHom::Projection { factor, .. } => json!({ "projection": factor }),
        RingHom::Quotient { modulus } => json!({ "quotient": modulus }),
    }
}

pub fn kar_item(r: Reader, spec: &CategorySpec) -> Result<KarItem> {
    match (r.opt("object"), r.opt("morphism")) {
        (Some(o), None) => Ok(KarItem::Object(json::kar_object(o.reader(), &spec.ring)?)),
        (None, Some(m)) => Ok(KarItem::Morphism(json::kar_morphism(m.reader(), &spec.ring)?)),
        _ => Err(r.err("expected exactly one of \"object\" and \"morphism\"")),
    }
}

pub fn item_json(x: &KarItem) -> Value {
    match x {
        KarItem::Object(o) => json!({ "object": o.to_json() }),
        KarItem::Morphism(m) => json!({ "morphism": m.to_json() }),
    }
}

fn kar_map(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let hom = ring_hom(r.field("hom")?.reader(), &spec)?;
    let input = kar_item(r, &spec)?;
    let output = kar_functor(&hom, &input)?;
    Ok(Outcome::new(
        "kar-map",
        Exit::Success,
        json!({
            "spec": spec.to_json(),
            "hom": hom_json(&hom),
            "target_ring": hom.target().to_json(),
            "input": item_json(&input),
            "output": item_json(&output),
        }),
    ))
}

/// The not-contractible document, or a cross-check failure if no obstruction is found.
fn not_contractible(m: &Complex) -> Result<Outcome> {
    let (ring, profile) = contractibility_obstruction(m)?
        .ok_or_else(|| Error::CrossCheckFailure("no contracting homotopy, but no homology obstruction either".into()))?;
    Ok(Outcome::new(
        "not-contractible",
        Exit::Negative,
        json!({ "complex": m.to_json(), "ring": ring.to_json(), "homology": profile_json(&profile) }),
    ))
}

pub fn profile_json(p: &[(i64, Vec<usize>)]) -> Value {
    Value::Array(p.iter().map(|(i, r)| json!({ "degree": i, "multirank": r })).collect())
}

fn contractible(r: Reader, opts: &Options) -> Result<Outcome> {
    let m = complex_field(r, "complex", opts)?;
    match is_contractible(&m)? {
        Some(h) => Ok(Outcome::new(
            "contraction",
            Exit::Success,
            json!({ "complex": m.to_json(), "homotopy": h.to_json()["components"].clone() }),
        )),
        None => not_contractible(&m),
    }
}

fn split(r: Reader, opts: &Options) -> Result<Outcome> {
    let m = complex_field(r, "complex", opts)?;
    let spec = match r.opt("target_spec") {
        Some(s) => json::spec(s.reader())?,
        None => m.spec().clone(),
    };
    let h = match r.opt("homotopy") {
        Some(h) => Some(json::homotopy_parts(h.reader(), &m, &m)?),
        None => is_contractible(&m)?,
    };
    let Some(h) = h else { return not_contractible(&m) };
    if !h.is_contraction() {
        return Err(Error::Json { path: "$.homotopy".into(), message: "not a contracting homotopy".into() });
    }
    Ok(match split_contractible(&m, &h, &spec)? {
        SplitOutcome::Split(s) => Outcome::new("split", Exit::Success, json!({ "spec": spec.to_json(), "splitting": s.to_json() })),
        SplitOutcome::Failed(f) => Outcome::new(
            "split-failure",
            Exit::Negative,
            json!({ "spec": spec.to_json(), "complex": m.to_json(), "failure": f.to_json() }),
        ),
    })
}

fn hom(r: Reader, opts: &Options) -> Result<Outcome> {
    let m = complex_field(r, "source", opts)?;
    let n = complex_field(r, "target", opts)?;
    let h = hom_mod_homotopy(&m, &n)?;
    Ok(Outcome::new("hom", Exit::Success, json!({ "source": m.to_json(), "target": n.to_json(), "hom": h.to_json() })))
}

fn level(r: Reader) -> Result<i64> {
    r.opt("level").map_or(Ok(0), |l| l.reader().i64())
}

fn weight_decompose(r: Reader, opts: &Options) -> Result<Outcome> {
    let m = complex_field(r, "complex", opts)?;
    let d = stupid_truncate(&m, level(r)?)?;
    Ok(Outcome::new("weight-decomposition", Exit::Success, d.to_json()))
}

fn weight_member(r: Reader, opts: &Options) -> Result<Outcome> {
    let complex = complex_field(r, "complex", opts)?;
    let side = json::side(r.field("side")?.reader())?;
    let level = level(r)?;
    Ok(match weight_membership(&WeightClassQuery { side, level, complex: complex.clone() })? {
        Some(c) => Outcome::new("membership", Exit::Success, c.to_json()),
        None => Outcome::new(
            "non-membership",
            Exit::Negative,
            json!({ "side": side.name(), "level": level, "complex": complex.to_json() }),
        ),
    })
}

/// Parameters of a sampled axiom check, as recorded in its certificate.
pub fn axioms_payload(spec: &CategorySpec, samples: usize, options: &AxiomOptions) -> Result<Value> {
    let sample = sample_complexes(spec, samples, options.seed);
    let retractions = sample_retractions(&sample)?;
    let report = verify_axioms(spec, &sample, &retractions, options)?;
    Ok(json!({
        "spec": spec.to_json(),
        "seed": options.seed,
        "samples": samples,
        "triangles": options.triangles,
        "hom_pairs": options.hom_pairs,
        "report": report.to_json(),
    }))
}

fn axioms(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let d = AxiomOptions::default();
    let options = AxiomOptions {
        triangles: usize_or(r, "triangles", d.triangles)?,
        hom_pairs: usize_or(r, "hom_pairs", d.hom_pairs)?,
        seed: opts.seed,
    };
    let payload = axioms_payload(&spec, usize_or(r, "samples", 100)?, &options)?;
    let exit = if payload["report"]["passed"] == json!(true) { Exit::Success } else { Exit::Negative };
    Ok(Outcome::new("axioms", exit, payload))
}

fn heart(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let bound = opts.bound_in(r, 12)?;
    let z = match (r.opt("z"), r.opt("rank")) {
        (Some(z), None) => json::kar_object(z.reader(), &spec.ring)?,
        (None, Some(k)) => kar_rank_object(&spec.with_layer(Layer::Kar), k.reader().usize()?, bound)?,
        _ => return Err(r.err("expected exactly one of \"z\" and \"rank\"")),
    };
    let rt = heart_roundtrip(&z, &spec, None)?;
    Ok(Outcome::new("heart-roundtrip", Exit::Success, json!({ "spec": spec.to_json(), "z": z.to_json(), "roundtrip": rt.to_json() })))
}

pub fn connectivity_payload(spec: &CategorySpec, degree_bound: usize, seed: u64) -> Result<Value> {
    let v = is_connective(spec, degree_bound, seed)?;
    Ok(json!({ "spec": spec.to_json(), "degree_bound": degree_bound, "seed": seed, "verdict": v.to_json() }))
}

fn connective(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let payload = connectivity_payload(&spec, usize_or(r, "degree_bound", 3)?, opts.seed)?;
    let exit = if payload["verdict"]["connective"] == json!(true) { Exit::Success } else { Exit::Negative };
    Ok(Outcome::new("connectivity", exit, payload))
}

fn spec_bound(spec: &CategorySpec) -> usize {
    match &spec.restriction {
        wkar_core::addcat::Restriction::Allowed(a) => a.bound(),
        wkar_core::addcat::Restriction::Full => 12,
    }
}

fn k0(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let bound = opts.bound_in(r, spec_bound(&spec))?;
    let p = k0_presentation_unchecked(&spec, bound)?;
    let exit = if p.stable { Exit::Success } else { Exit::Negative };
    Ok(Outcome::new("k0", exit, json!({ "presentation": p.to_json() })))
}

fn k0_map(r: Reader, opts: &Options) -> Result<Outcome> {
    let inner = json::spec(r.field("inner")?.reader())?;
    let outer = json::spec(r.field("outer")?.reader())?;
    let bound = opts.bound_in(r, spec_bound(&inner).max(spec_bound(&outer)))?;
    let map = k0_induced_map(&inner, &outer, bound)?;
    Ok(Outcome::new("k0-map", Exit::Success, json!({ "bound": bound, "map": map.to_json() })))
}

/// Diagonal representatives of every iso class of Kar objects of size at most `max_rank`.
pub fn kar_objects_up_to(spec: &CategorySpec, max_rank: usize) -> Vec<KarObject> {
    let f = spec.ring.factor_count();
    let mut out = Vec::new();
    for n in 0..=max_rank {
        let mut ranks = vec![0usize; f];
        loop {
            out.push(KarObject::diagonal(&spec.ring, n, &ranks));
            let Some(k) = (0..f).rev().find(|&k| ranks[k] < n) else { break };
            ranks[k] += 1;
            ranks[k + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    out
}

fn wkar_k0(r: Reader, opts: &Options) -> Result<Outcome> {
    let spec = opts.spec_in(r)?;
    let bound = opts.bound_in(r, 4)?;
    let objects = match r.opt("objects") {
        Some(list) => list.reader().items()?.iter().map(|o| json::kar_object(o.reader(), &spec.ring)).collect::<Result<Vec<_>>>()?,
        None => kar_objects_up_to(&spec, usize_or(r, "max_rank", bound)?),
    };
    let checker = WkarK0Checker::new(&spec, bound)?;
    let mut verdicts = Vec::new();
    for z in &objects {
        let mut v = checker.check(z)?.to_json();
        v["object"] = z.to_json();
        verdicts.push(v);
    }
    Ok(Outcome::new(
        "wkar-k0",
        Exit::Success,
        json!({ "spec": spec.to_json(), "bound": bound, "disagreements": 0, "verdicts": verdicts }),
    ))
}
