use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::addcat::{
    CategorySpec, IcReport, Isomorphism, KarMorphism, KarObject, Restriction, Splitting, WicCertificate, WicCounterexample,
    WicReport, WkarWitness,
};
use crate::complexes::{ChainMap, Complex, ContractibleSplitting, EquivalenceCertificate, FailureWitness, HomSpace, Homotopy};
use crate::exactlin::{Elem, Matrix, Ring};
use crate::k0::{K0Map, K0Presentation, WkarK0Verdict};
use crate::weights::{
    AxiomReport, ConnectivityVerdict, HeartComplex, HeartObject, HeartRoundtrip, MembershipCertificate, WeightDecomposition,
};

pub trait ToJson {
    fn to_json(&self) -> Value;
}

fn int_json(z: &BigInt) -> Value {
    match i64::try_from(z) {
        Ok(v) => json!(v),
        Err(_) => json!(z.to_string()),
    }
}

pub fn bigints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

impl ToJson for Ring {
    fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

impl ToJson for Elem {
    fn to_json(&self) -> Value {
        match self {
            Elem::Rational(q) if q.is_integer() => int_json(q.numer()),
            Elem::Rational(q) => json!(q.to_string()),
            Elem::Integer(z) => int_json(z),
            Elem::Residue(r) => json!(r),
            Elem::Tuple(t) => json!(t),
        }
    }
}

impl ToJson for Matrix {
    fn to_json(&self) -> Value {
        let (r, c) = self.shape();
        if r == 0 || c == 0 {
            return json!({ "shape": [r, c] });
        }
        Value::Array((0..r).map(|i| Value::Array((0..c).map(|j| self.get(i, j).to_json()).collect())).collect())
    }
}

impl ToJson for KarObject {
    fn to_json(&self) -> Value {
        if self.is_free() {
            json!(self.size())
        } else {
            json!({ "size": self.size(), "idem": self.idempotent().to_json() })
        }
    }
}

impl ToJson for KarMorphism {
    fn to_json(&self) -> Value {
        json!({ "source": self.source.to_json(), "target": self.target.to_json(), "matrix": self.matrix.to_json() })
    }
}

impl ToJson for Isomorphism {
    fn to_json(&self) -> Value {
        json!({ "forward": self.forward.to_json(), "backward": self.backward.to_json() })
    }
}

impl ToJson for CategorySpec {
    fn to_json(&self) -> Value {
        let mut v = json!({ "ring": self.ring.to_json(), "layer": self.layer.name() });
        if let Restriction::Allowed(a) = &self.restriction {
            v["allowed"] = json!(a.generators());
            v["bound"] = json!(a.bound());
        }
        v
    }
}

impl ToJson for WkarWitness {
    fn to_json(&self) -> Value {
        json!({
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
            "forward": self.iso.forward.matrix.to_json(),
            "backward": self.iso.backward.matrix.to_json(),
        })
    }
}

impl ToJson for Splitting {
    fn to_json(&self) -> Value {
        json!({
            "i": self.i.to_json(),
            "p": self.p.to_json(),
            "complement": self.complement.to_json(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
        })
    }
}

impl ToJson for Complex {
    fn to_json(&self) -> Value {
        json!({
            "spec": self.spec().to_json(),
            "min_degree": self.min_degree(),
            "terms": self.terms().iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "diffs": self.diffs().iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

fn comps(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(ToJson::to_json).collect())
}

impl ToJson for ChainMap {
    fn to_json(&self) -> Value {
        json!({ "source": self.source.to_json(), "target": self.target.to_json(), "components": comps(self.components()) })
    }
}

impl ToJson for Homotopy {
    fn to_json(&self) -> Value {
        json!({ "source": self.source.to_json(), "target": self.target.to_json(), "components": comps(self.components()) })
    }
}

/// The four component lists of an equivalence, without the complexes.
pub fn equivalence_body(e: &EquivalenceCertificate) -> Value {
    json!({
        "u": comps(e.u.components()),
        "v": comps(e.v.components()),
        "hm": comps(e.hm.components()),
        "hn": comps(e.hn.components()),
    })
}

impl ToJson for EquivalenceCertificate {
    fn to_json(&self) -> Value {
        let mut v = equivalence_body(self);
        v["source"] = self.source().to_json();
        v["target"] = self.target().to_json();
        v
    }
}

impl ToJson for ContractibleSplitting {
    fn to_json(&self) -> Value {
        json!({
            "complex": self.forward.source.to_json(),
            "summands": self.summands.iter().map(|(n, m)| json!({ "object": n.to_json(), "degree": m })).collect::<Vec<_>>(),
            "target": self.target.to_json(),
            "forward": comps(self.forward.components()),
            "backward": comps(self.backward.components()),
        })
    }
}

impl ToJson for FailureWitness {
    fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "i": self.i.to_json(),
            "p": self.p.to_json(),
            "complement": self.complement.to_json(),
            "complement_multirank": self.complement.multirank().ok(),
            "reason": self.reason,
        })
    }
}

impl ToJson for HomSpace {
    fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension(),
            "dims": self.dims,
            "basis": self.basis.iter().map(|f| comps(f.components())).collect::<Vec<_>>(),
        })
    }
}

fn range_json(r: (Option<i64>, Option<i64>)) -> Value {
    json!([r.0, r.1])
}

impl ToJson for MembershipCertificate {
    fn to_json(&self) -> Value {
        json!({
            "side": self.side.name(),
            "level": self.level,
            "complex": self.complex.to_json(),
            "representatives": self.parts.iter().map(|p| json!({
                "range": range_json(p.range),
                "complex": p.complex.to_json(),
                "equivalence": equivalence_body(&p.equivalence),
            })).collect::<Vec<_>>(),
        })
    }
}

impl ToJson for WeightDecomposition {
    fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "complex": self.to_m.target.to_json(),
            "l": self.l.to_json(),
            "r": self.r.to_json(),
            "to_m": comps(self.to_m.components()),
            "from_m": comps(self.from_m.components()),
            "connecting": comps(self.connecting.components()),
            "cone_equivalence": equivalence_body(&self.cone_equivalence),
        })
    }
}

impl ToJson for AxiomReport {
    fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "axioms": self.entries.iter().map(|e| json!({
                "axiom": e.axiom,
                "status": e.status.name(),
                "checks": e.checks,
                "counterexample": e.counterexample.as_ref().map(|c| json!({
                    "reason": c.reason,
                    "complexes": c.complexes.iter().map(ToJson::to_json).collect::<Vec<_>>(),
                })),
            })).collect::<Vec<_>>(),
        })
    }
}

impl ToJson for ConnectivityVerdict {
    fn to_json(&self) -> Value {
        json!({
            "connective": self.connective,
            "fully_faithful": self.fully_faithful,
            "checks": self.checks,
            "failure": self.failure.as_ref().map(|f| json!({
                "x": f.x.to_json(),
                "y": f.y.to_json(),
                "shift": f.shift,
                "dimension": f.dimension,
            })),
        })
    }
}

impl ToJson for HeartObject {
    fn to_json(&self) -> Value {
        json!({ "z": self.z.to_json(), "witness": self.witness.to_json() })
    }
}

impl ToJson for HeartComplex {
    fn to_json(&self) -> Value {
        json!({
            "complex": self.complex.to_json(),
            "witness": self.witness.to_json(),
            "to_object": self.to_object.to_json(),
            "membership": self.membership.to_json(),
        })
    }
}

impl ToJson for HeartRoundtrip {
    fn to_json(&self) -> Value {
        json!({
            "heart": self.heart.to_json(),
            "recovered": self.recovered.to_json(),
            "iso": self.iso.to_json(),
        })
    }
}

impl ToJson for K0Presentation {
    fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.to_json(),
            "bound": self.bound,
            "invariants": {
                "free_rank": self.invariants.free_rank,
                "torsion": bigints(&self.invariants.torsion),
            },
            "stable": self.stable,
            "generators": self.generators,
            "relations": self.relations.to_json(),
            "coordinates": self.coordinates.to_json(),
        })
    }
}

impl ToJson for K0Map {
    fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.matrix.to_json(),
            "injective": self.injective,
            "surjective": self.surjective,
            "bijective": self.bijective,
        })
    }
}

impl ToJson for WkarK0Verdict {
    fn to_json(&self) -> Value {
        json!({
            "in_image": self.in_image,
            "class": bigints(&self.class),
            "preimage": self.preimage.as_deref().map(bigints),
            "witness": self.witness.as_ref().map(ToJson::to_json),
        })
    }
}

impl ToJson for WicCounterexample {
    fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "b": self.b,
            "i": self.i.to_json(),
            "p": self.p.to_json(),
            "complement": self.complement.to_json(),
            "reason": self.reason,
        })
    }
}

impl ToJson for WicCertificate {
    fn to_json(&self) -> Value {
        match self {
            WicCertificate::FreeComplements => json!({ "kind": "free-complements" }),
            WicCertificate::KaroubiImages => json!({ "kind": "karoubi-images" }),
            WicCertificate::Pairs { bound, splittings } => json!({
                "kind": "pairs",
                "bound": bound,
                "splittings": splittings.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            }),
            WicCertificate::CombinedWitnesses { samples } => json!({
                "kind": "combined-witnesses",
                "witnesses": samples.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

impl ToJson for WicReport {
    fn to_json(&self) -> Value {
        json!({
            "weakly_idempotent_complete": self.complete,
            "certificate": self.certificate.as_ref().map(ToJson::to_json),
            "counterexample": self.counterexample.as_ref().map(ToJson::to_json),
        })
    }
}

impl ToJson for IcReport {
    fn to_json(&self) -> Value {
        json!({
            "idempotent_complete": self.complete,
            "witness": self.witness.as_ref().map(ToJson::to_json),
            "reason": self.reason,
            "bound": self.bound,
        })
    }
}
