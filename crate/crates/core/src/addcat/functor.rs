use super::kar::{Isomorphism, KarMorphism, KarObject};
use super::spec::CategorySpec;
use super::wkar::WkarWitness;
use crate::error::{Error, Result};
use crate::exactlin::{Elem, Matrix, Ring};

/// A ring homomorphism between supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingHom {
    Identity(Ring),
    /// `F_{p_1} × … × F_{p_k} → F_{p_factor}`
    Projection { source: Ring, factor: usize },
    /// `ℤ → ℤ/n`
    Quotient { modulus: u64 },
}

impl RingHom {
    pub fn projection(source: Ring, factor: usize) -> Result<Self> {
        match &source {
            Ring::PrimeFieldProduct(ps) if factor < ps.len() => Ok(RingHom::Projection { source, factor }),
            _ => Err(Error::UnsupportedHom(format!("no projection onto factor {factor} of {source}"))),
        }
    }

    pub fn quotient(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::UnsupportedHom(format!("quotient ℤ → ℤ/{modulus}")));
        }
        Ok(RingHom::Quotient { modulus })
    }

    pub fn source(&self) -> Ring {
        match self {
            RingHom::Identity(r) => r.clone(),
            RingHom::Projection { source, .. } => source.clone(),
            RingHom::Quotient { .. } => Ring::Integers,
        }
    }

    pub fn target(&self) -> Ring {
        match self {
            RingHom::Identity(r) => r.clone(),
            RingHom::Projection { source, factor } => source.factor(*factor),
            RingHom::Quotient { modulus } => Ring::IntegersMod(*modulus),
        }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match self {
            RingHom::Identity(_) => e.clone(),
            RingHom::Projection { source, factor } => source.project(e, *factor),
            RingHom::Quotient { modulus } => {
                Ring::IntegersMod(*modulus).from_bigint(e.as_integer().expect("integer element"))
            }
        }
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if *m.ring() != self.source() {
            return Err(Error::RingMismatch(m.ring().clone(), self.source()));
        }
        Ok(m.map_entries(&self.target(), |e| self.apply(e)))
    }

    pub fn map_object(&self, obj: &KarObject) -> Result<KarObject> {
        KarObject::new(self.apply_matrix(obj.idempotent())?)
    }

    pub fn map_morphism(&self, f: &KarMorphism) -> Result<KarMorphism> {
        KarMorphism::new(&self.map_object(&f.source)?, &self.map_object(&f.target)?, self.apply_matrix(&f.matrix)?)
    }

    /// The spec with the same restriction and layer over the target ring.
    pub fn map_spec(&self, spec: &CategorySpec) -> Result<CategorySpec> {
        if spec.ring != self.source() {
            return Err(Error::RingMismatch(spec.ring.clone(), self.source()));
        }
        Ok(CategorySpec { ring: self.target(), ..spec.clone() })
    }

    /// Image of a witness; free objects stay free, so it is again a witness.
    pub fn map_witness(&self, w: &WkarWitness, target: &CategorySpec) -> Result<WkarWitness> {
        let mapped = WkarWitness {
            x: self.map_object(&w.x)?,
            y: self.map_object(&w.y)?,
            z: self.map_object(&w.z)?,
            iso: Isomorphism { forward: self.map_morphism(&w.iso.forward)?, backward: self.map_morphism(&w.iso.backward)? },
        };
        if !mapped.verify(target) {
            return Err(Error::WitnessInvalid("mapped witness does not verify".into()));
        }
        Ok(mapped)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KarItem {
    Object(KarObject),
    Morphism(KarMorphism),
}

/// `Kar(F)`: `(B, p) ↦ (F(B), F(p))`, morphisms entrywise.
pub fn kar_functor(f: &RingHom, x: &KarItem) -> Result<KarItem> {
    Ok(match x {
        KarItem::Object(o) => KarItem::Object(f.map_object(o)?),
        KarItem::Morphism(m) => KarItem::Morphism(f.map_morphism(m)?),
    })
}
