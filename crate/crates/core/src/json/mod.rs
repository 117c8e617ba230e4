//! JSON encoding of rings, matrices, objects, complexes and certificates.
//!
//! Decoding errors carry the JSON path of the offending value, e.g.
//! `$.complex.terms[2].idem`.

mod encode;

pub use encode::{bigints, equivalence_body, ToJson};

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::addcat::{CategorySpec, Isomorphism, KarMorphism, KarObject, Layer, WkarWitness};
use crate::complexes::{ChainMap, Complex, EquivalenceCertificate, Homotopy};
use crate::error::{Error, Result};
use crate::exactlin::{Elem, Matrix, Ring};
use crate::weights::Side;

/// A JSON value together with its path from the document root.
#[derive(Clone, Copy)]
pub struct Reader<'a> {
    value: &'a Value,
    path: &'a str,
}

/// Owns the path strings of child readers.
pub struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, path: "$".into() }
    }

    pub fn reader(&self) -> Reader<'_> {
        Reader { value: self.value, path: &self.path }
    }
}

impl<'a> Reader<'a> {
    pub fn path(&self) -> &str {
        self.path
    }

    pub fn value(&self) -> &'a Value {
        self.value
    }

    pub fn err(&self, message: impl Into<String>) -> Error {
        Error::Json { path: self.path.to_string(), message: message.into() }
    }

    /// Re-labels an error from a constructor as an error at this path.
    pub fn wrap(&self, e: Error) -> Error {
        match e {
            Error::Json { .. } => e,
            other => self.err(other.to_string()),
        }
    }

    pub fn field(&self, key: &str) -> Result<Node<'a>> {
        self.opt(key).ok_or_else(|| Error::Json { path: format!("{}.{key}", self.path), message: "missing field".into() })
    }

    pub fn opt(&self, key: &str) -> Option<Node<'a>> {
        match self.value.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => Some(Node { value: v, path: format!("{}.{key}", self.path) }),
        }
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| Node { value: v, path: format!("{}[{i}]", self.path) }).collect())
    }

    pub fn i64(&self) -> Result<i64> {
        self.value.as_i64().ok_or_else(|| self.err("expected an integer"))
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn usize(&self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    pub fn bigint(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| self.err("expected an integer")),
            Value::String(s) => BigInt::from_str(s).map_err(|_| self.err("expected an integer")),
            _ => Err(self.err("expected an integer")),
        }
    }
}

/// Field access in one call: `get(r, "spec")?` then `.reader()`.
macro_rules! sub {
    ($r:expr, $k:expr) => {
        $r.field($k)?
    };
}

pub fn parse_ring(s: &str) -> Option<Result<Ring>> {
    let s = s.trim();
    Some(match s {
        "Q" | "QQ" => Ok(Ring::Rationals),
        "Z" | "ZZ" => Ok(Ring::Integers),
        _ => {
            if let Some(n) = s.strip_prefix("Z/") {
                Ring::integers_mod(n.parse().ok()?)
            } else if s.starts_with('F') {
                let primes: Option<Vec<u64>> = s.split(['x', '×']).map(|f| f.trim().strip_prefix('F')?.parse().ok()).collect();
                let primes = primes?;
                if primes.len() == 1 {
                    Ring::integers_mod(primes[0])
                } else {
                    Ring::prime_field_product(primes)
                }
            } else {
                return None;
            }
        }
    })
}

pub fn ring(r: Reader) -> Result<Ring> {
    match r.value() {
        Value::String(s) => parse_ring(s).ok_or_else(|| r.err(format!("unknown ring {s:?}")))?.map_err(|e| r.wrap(e)),
        Value::Object(_) => {
            if let Some(n) = r.opt("mod") {
                Ring::integers_mod(n.reader().u64()?).map_err(|e| r.wrap(e))
            } else if let Some(ps) = r.opt("product") {
                let primes = ps.reader().items()?.iter().map(|p| p.reader().u64()).collect::<Result<Vec<_>>>()?;
                Ring::prime_field_product(primes).map_err(|e| r.wrap(e))
            } else {
                Err(r.err("expected \"mod\" or \"product\""))
            }
        }
        _ => Err(r.err("expected a ring name such as \"Q\", \"Z\", \"Z/6\" or \"F2xF3\"")),
    }
}

pub fn layer(r: Reader) -> Result<Layer> {
    match r.str()? {
        "base" => Ok(Layer::Base),
        "kar" => Ok(Layer::Kar),
        "wkar" => Ok(Layer::Wkar),
        other => Err(r.err(format!("unknown layer {other:?}"))),
    }
}

pub fn spec(r: Reader) -> Result<CategorySpec> {
    if let Value::String(_) = r.value() {
        return Ok(CategorySpec::full(ring(r)?));
    }
    let ring = ring(sub!(r, "ring").reader())?;
    let mut spec = match r.opt("allowed") {
        None => CategorySpec::full(ring),
        Some(a) => {
            let gens = a.reader().items()?.iter().map(|g| g.reader().usize()).collect::<Result<Vec<_>>>()?;
            let bound = match r.opt("bound") {
                Some(b) => b.reader().usize()?,
                None => 12,
            };
            CategorySpec::allowed(ring, gens, bound).map_err(|e| a.reader().wrap(e))?
        }
    };
    if let Some(l) = r.opt("layer") {
        spec = spec.with_layer(layer(l.reader())?);
    }
    Ok(spec)
}

pub fn elem(r: Reader, ring: &Ring) -> Result<Elem> {
    match (ring, r.value()) {
        (Ring::PrimeFieldProduct(ps), Value::Array(_)) => {
            let items = r.items()?;
            if items.len() != ps.len() {
                return Err(r.err(format!("expected {} components", ps.len())));
            }
            let parts =
                items.iter().enumerate().map(|(k, x)| Ok(ring.factor(k).from_bigint(&x.reader().bigint()?))).collect::<Result<Vec<_>>>()?;
            Ok(ring.combine(&parts))
        }
        (Ring::Rationals, Value::String(s)) => {
            let q = BigRational::from_str(s.trim()).map_err(|_| r.err("expected a rational such as \"-3/4\""))?;
            Ok(Elem::Rational(q))
        }
        _ => Ok(ring.from_bigint(&r.bigint()?)),
    }
}

/// Rows of entries, or `{"shape": [r, c], "rows": [...]}` (needed for empty matrices).
pub fn matrix(r: Reader, ring: &Ring) -> Result<Matrix> {
    let (shape, rows_node) = match r.value() {
        Value::Array(_) => (None, None),
        Value::Object(_) => {
            let s = sub!(r, "shape");
            let dims = s.reader().items()?;
            if dims.len() != 2 {
                return Err(s.reader().err("expected [rows, cols]"));
            }
            (Some((dims[0].reader().usize()?, dims[1].reader().usize()?)), r.opt("rows"))
        }
        _ => return Err(r.err("expected a matrix")),
    };
    let rows = match (&rows_node, shape) {
        (Some(n), _) => n.reader().items()?,
        (None, Some(_)) => vec![],
        (None, None) => r.items()?,
    };
    let nrows = rows.len();
    let mut data = Vec::new();
    let mut ncols = None;
    for row in &rows {
        let entries = row.reader().items()?;
        if ncols.is_some_and(|c| c != entries.len()) {
            return Err(row.reader().err("rows have different lengths"));
        }
        ncols = Some(entries.len());
        for e in &entries {
            data.push(elem(e.reader(), ring)?);
        }
    }
    let (nrows, ncols) = match shape {
        Some((sr, sc)) => {
            if nrows > 0 && (nrows, ncols.unwrap_or(0)) != (sr, sc) {
                return Err(r.err(format!("rows do not match shape [{sr}, {sc}]")));
            }
            if nrows == 0 && sr * sc > 0 {
                return Err(r.err("nonempty shape without rows"));
            }
            (sr, sc)
        }
        None => (nrows, ncols.unwrap_or(0)),
    };
    if data.is_empty() {
        return Ok(Matrix::zeros(ring, nrows, ncols));
    }
    Matrix::from_elems(ring, nrows, ncols, data).map_err(|e| r.wrap(e))
}

/// An integer `n` (the free object), or `{"size": n}` / `{"idem": matrix}`.
pub fn kar_object(r: Reader, ring: &Ring) -> Result<KarObject> {
    match r.value() {
        Value::Number(_) => Ok(KarObject::free(ring, r.usize()?)),
        Value::Object(_) => match r.opt("idem") {
            Some(m) => {
                let idem = matrix(m.reader(), ring)?;
                if let Some(s) = r.opt("size").or_else(|| r.opt("rank")) {
                    if s.reader().usize()? != idem.rows() {
                        return Err(s.reader().err("size differs from the idempotent"));
                    }
                }
                if !idem.is_square() {
                    return Err(m.reader().err("idempotent is not square"));
                }
                KarObject::new(idem).map_err(|e| m.reader().wrap(e))
            }
            None => {
                let s = r.opt("size").or_else(|| r.opt("rank")).ok_or_else(|| r.err("expected \"size\" or \"idem\""))?;
                Ok(KarObject::free(ring, s.reader().usize()?))
            }
        },
        _ => Err(r.err("expected an object")),
    }
}

pub fn kar_morphism(r: Reader, ring: &Ring) -> Result<KarMorphism> {
    let source = kar_object(sub!(r, "source").reader(), ring)?;
    let target = kar_object(sub!(r, "target").reader(), ring)?;
    let m = sub!(r, "matrix");
    let matrix = matrix(m.reader(), ring)?;
    KarMorphism::new(&source, &target, matrix).map_err(|e| m.reader().wrap(e))
}

pub fn isomorphism(r: Reader, ring: &Ring) -> Result<Isomorphism> {
    Ok(Isomorphism {
        forward: kar_morphism(sub!(r, "forward").reader(), ring)?,
        backward: kar_morphism(sub!(r, "backward").reader(), ring)?,
    })
}

pub fn wkar_witness(r: Reader, ring: &Ring) -> Result<WkarWitness> {
    let x = kar_object(sub!(r, "x").reader(), ring)?;
    let y = kar_object(sub!(r, "y").reader(), ring)?;
    let z = kar_object(sub!(r, "z").reader(), ring)?;
    let sum = x.direct_sum(&z).map_err(|e| r.wrap(e))?;
    let f = sub!(r, "forward");
    let b = sub!(r, "backward");
    let forward = KarMorphism::new(&sum, &y, matrix(f.reader(), ring)?).map_err(|e| f.reader().wrap(e))?;
    let backward = KarMorphism::new(&y, &sum, matrix(b.reader(), ring)?).map_err(|e| b.reader().wrap(e))?;
    Ok(WkarWitness { x, y, z, iso: Isomorphism { forward, backward } })
}

/// `{"spec"?, "min_degree", "terms", "diffs"}`; `spec` falls back to `default`.
pub fn complex(r: Reader, default: Option<&CategorySpec>) -> Result<Complex> {
    let spec = match (r.opt("spec"), default) {
        (Some(s), _) => spec(s.reader())?,
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(r.err("missing field \"spec\" (or pass --spec)")),
    };
    let ring = spec.ring.clone();
    let min_degree = match r.opt("min_degree") {
        Some(m) => m.reader().i64()?,
        None => 0,
    };
    let terms =
        sub!(r, "terms").reader().items()?.iter().map(|t| kar_object(t.reader(), &ring)).collect::<Result<Vec<_>>>()?;
    let diffs = match r.opt("diffs") {
        Some(d) => d.reader().items()?.iter().map(|m| matrix(m.reader(), &ring)).collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    // empty differentials may be given as []
    let diffs = diffs
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            let want = (terms.get(k + 1).map_or(0, KarObject::size), terms.get(k).map_or(0, KarObject::size));
            if d.shape() == (0, 0) && want != (0, 0) && want.0 * want.1 == 0 {
                Matrix::zeros(&ring, want.0, want.1)
            } else {
                d
            }
        })
        .collect::<Vec<_>>();
    if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
        return Err(r.err(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
    }
    Complex::new(spec, min_degree, terms, diffs).map_err(|e| r.wrap(e))
}

fn components(r: Reader, ring: &Ring, shape: impl Fn(i64) -> (usize, usize), degrees: std::ops::RangeInclusive<i64>) -> Result<Vec<Matrix>> {
    let items = r.items()?;
    let degrees: Vec<i64> = degrees.collect();
    if items.len() != degrees.len() {
        return Err(r.err(format!("expected {} components, one per source degree", degrees.len())));
    }
    items
        .iter()
        .zip(degrees)
        .map(|(n, i)| {
            let m = matrix(n.reader(), ring)?;
            let want = shape(i);
            if m.shape() == want || (m.shape() == (0, 0) && want.0 * want.1 == 0) {
                Ok(if m.shape() == want { m } else { Matrix::zeros(ring, want.0, want.1) })
            } else {
                Err(n.reader().err(format!("expected a {}x{} matrix in degree {i}", want.0, want.1)))
            }
        })
        .collect()
}

/// Components of a map `source → target`, unchecked beyond shapes.
pub fn chain_map_parts(r: Reader, source: &Complex, target: &Complex) -> Result<ChainMap> {
    let comps = components(r, source.ring(), |i| (target.size(i), source.size(i)), source.degrees())?;
    Ok(ChainMap::unchecked(source, target, comps))
}

pub fn homotopy_parts(r: Reader, source: &Complex, target: &Complex) -> Result<Homotopy> {
    let comps = components(r, source.ring(), |i| (target.size(i - 1), source.size(i)), source.degrees())?;
    Homotopy::new(source, target, comps).map_err(|e| r.wrap(e))
}

/// `{"source", "target", "components"}`
pub fn chain_map(r: Reader, default: Option<&CategorySpec>) -> Result<ChainMap> {
    let source = complex(sub!(r, "source").reader(), default)?;
    let target = complex(sub!(r, "target").reader(), default)?;
    chain_map_parts(sub!(r, "components").reader(), &source, &target)
}

/// `{"source", "target", "u", "v", "hm", "hn"}` with component lists.
pub fn equivalence(r: Reader, default: Option<&CategorySpec>) -> Result<EquivalenceCertificate> {
    let m = complex(sub!(r, "source").reader(), default)?;
    let n = complex(sub!(r, "target").reader(), default)?;
    equivalence_between(r, &m, &n)
}

pub fn equivalence_between(r: Reader, m: &Complex, n: &Complex) -> Result<EquivalenceCertificate> {
    Ok(EquivalenceCertificate {
        u: chain_map_parts(sub!(r, "u").reader(), m, n)?,
        v: chain_map_parts(sub!(r, "v").reader(), n, m)?,
        hm: homotopy_parts(sub!(r, "hm").reader(), m, m)?,
        hn: homotopy_parts(sub!(r, "hn").reader(), n, n)?,
    })
}

pub fn side(r: Reader) -> Result<Side> {
    let s = r.str()?;
    Side::parse(s).ok_or_else(|| r.err(format!("unknown side {s:?}; expected \"w<=\", \"w>=\" or \"w=\"")))
}

pub fn usize_list(r: Reader) -> Result<Vec<usize>> {
    r.items()?.iter().map(|x| x.reader().usize()).collect()
}

pub fn bigint_list(r: Reader) -> Result<Vec<BigInt>> {
    r.items()?.iter().map(|x| x.reader().bigint()).collect()
}
