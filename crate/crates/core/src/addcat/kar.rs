//! The Karoubi envelope of a matrix category.
//!
//! An object is a pair `(n, p)` with `p` an idempotent `n×n` matrix; a
//! morphism `(n, p) → (m, q)` is a matrix `f` with `q·f = f = f·p`. The
//! identity of `(n, p)` is `p` itself, and the free module `Rⁿ` is `(n, id)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{rank_factor, rank_vector, snf, Elem, FactorSplit, Matrix, RankFactorization, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KarObject {
    idem: Matrix,
}

impl KarObject {
    pub fn new(idem: Matrix) -> Result<Self> {
        if !idem.is_square() || &idem * &idem != idem {
            return Err(Error::NotIdempotent);
        }
        Ok(KarObject { idem })
    }

    /// The free module of rank `n`, embedded as `(n, id)`.
    pub fn free(ring: &Ring, n: usize) -> Self {
        KarObject { idem: Matrix::identity(ring, n) }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    pub fn ring(&self) -> &Ring {
        self.idem.ring()
    }

    /// Rank of the ambient free module.
    pub fn size(&self) -> usize {
        self.idem.rows()
    }

    pub fn idempotent(&self) -> &Matrix {
        &self.idem
    }

    pub fn is_free(&self) -> bool {
        self.idem.is_identity()
    }

    /// Per-factor rank of the ambient free module.
    pub fn base_rank_vector(&self) -> Vec<usize> {
        vec![self.size(); self.ring().factor_count()]
    }

    /// Rank of the idempotent over each factor (fields and products of fields),
    /// or the rank of its free image over ℤ.
    pub fn multirank(&self) -> Result<Vec<usize>> {
        if self.ring().is_field_like() {
            return rank_vector(&self.idem);
        }
        if self.is_free() {
            return Ok(vec![self.size()]);
        }
        if *self.ring() == Ring::Integers {
            return Ok(split_idempotent(&self.idem)?.ranks());
        }
        Err(Error::UnsupportedRing { op: "multirank", ring: self.ring().clone() })
    }

    pub fn is_zero_object(&self) -> bool {
        self.idem.is_zero()
    }

    pub fn identity(&self) -> KarMorphism {
        KarMorphism { source: self.clone(), target: self.clone(), matrix: self.idem.clone() }
    }

    pub fn direct_sum(&self, other: &KarObject) -> Result<KarObject> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring().clone(), other.ring().clone()));
        }
        Ok(KarObject { idem: Matrix::block_diag(self.ring(), &[&self.idem, &other.idem]) })
    }

    pub fn sum_of(ring: &Ring, objs: &[&KarObject]) -> KarObject {
        let idems: Vec<&Matrix> = objs.iter().map(|o| &o.idem).collect();
        KarObject { idem: Matrix::block_diag(ring, &idems) }
    }

    pub fn transpose(&self) -> KarObject {
        KarObject { idem: self.idem.transpose() }
    }

    /// A diagonal idempotent of the given multirank on `R^size`.
    pub fn diagonal(ring: &Ring, size: usize, ranks: &[usize]) -> KarObject {
        let diag: Vec<Elem> = (0..size)
            .map(|i| {
                if !matches!(ring, Ring::PrimeFieldProduct(_)) {
                    return if i < ranks[0] { ring.one() } else { ring.zero() };
                }
                let parts: Vec<Elem> =
                    ranks.iter().enumerate().map(|(k, &r)| if i < r { ring.factor(k).one() } else { ring.factor(k).zero() }).collect();
                ring.combine(&parts)
            })
            .collect();
        KarObject::new(Matrix::diagonal(ring, &diag)).expect("diagonal idempotent")
    }
}

impl fmt::Display for KarObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            write!(f, "{}^{}", self.ring(), self.size())
        } else {
            match self.multirank() {
                Ok(r) => write!(f, "({}, p) of multirank {:?}", self.size(), r),
                Err(_) => write!(f, "({}, p)", self.size()),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KarMorphism {
    pub source: KarObject,
    pub target: KarObject,
    pub matrix: Matrix,
}

impl KarMorphism {
    /// Checks `q·f = f = f·p`.
    pub fn new(source: &KarObject, target: &KarObject, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.size(), source.size()) {
            return Err(Error::ShapeMismatch(format!(
                "morphism {}x{} between objects of size {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.size(),
                target.size()
            )));
        }
        let m = KarMorphism { source: source.clone(), target: target.clone(), matrix };
        if !m.satisfies_hom_law() {
            return Err(Error::InvalidInput("matrix violates q·f = f = f·p".into()));
        }
        Ok(m)
    }

    pub fn zero(source: &KarObject, target: &KarObject) -> Self {
        KarMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.ring(), target.size(), source.size()),
        }
    }

    /// Cuts an arbitrary matrix down to the hom-set: `q·f·p`.
    pub fn project(source: &KarObject, target: &KarObject, f: &Matrix) -> Self {
        KarMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: &(target.idempotent() * f) * source.idempotent(),
        }
    }

    pub fn satisfies_hom_law(&self) -> bool {
        let f = &self.matrix;
        &(self.target.idempotent() * f) == f && &(f * self.source.idempotent()) == f
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &KarMorphism) -> Result<KarMorphism> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("composing morphisms with mismatched objects".into()));
        }
        Ok(KarMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn add(&self, other: &KarMorphism) -> Result<KarMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("adding morphisms with different endpoints".into()));
        }
        Ok(KarMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn neg(&self) -> KarMorphism {
        KarMorphism { source: self.source.clone(), target: self.target.clone(), matrix: -&self.matrix }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && &self.matrix == self.source.idempotent()
    }

    /// `inverse ∘ self = id` and `self ∘ inverse = id`.
    pub fn is_inverse_pair(&self, inverse: &KarMorphism) -> bool {
        inverse.source == self.target
            && inverse.target == self.source
            && &(&inverse.matrix * &self.matrix) == self.source.idempotent()
            && &(&self.matrix * &inverse.matrix) == self.target.idempotent()
    }

    /// Block-diagonal sum of morphisms.
    pub fn direct_sum(ring: &Ring, parts: &[&KarMorphism]) -> KarMorphism {
        let sources: Vec<&KarObject> = parts.iter().map(|m| &m.source).collect();
        let targets: Vec<&KarObject> = parts.iter().map(|m| &m.target).collect();
        let mats: Vec<&Matrix> = parts.iter().map(|m| &m.matrix).collect();
        KarMorphism {
            source: KarObject::sum_of(ring, &sources),
            target: KarObject::sum_of(ring, &targets),
            matrix: Matrix::block_diag(ring, &mats),
        }
    }

    pub fn transpose(&self) -> KarMorphism {
        KarMorphism {
            source: self.target.transpose(),
            target: self.source.transpose(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// Injections and projections of a finite biproduct.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub sum: KarObject,
    pub injections: Vec<KarMorphism>,
    pub projections: Vec<KarMorphism>,
}

pub fn biproduct(ring: &Ring, objs: &[&KarObject]) -> Biproduct {
    let sum = KarObject::sum_of(ring, objs);
    let total = sum.size();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (o, offset) in objs.iter().zip(offsets(objs)) {
        let mut inj = Matrix::zeros(ring, total, o.size());
        inj.set_block(offset, 0, o.idempotent());
        let mut proj = Matrix::zeros(ring, o.size(), total);
        proj.set_block(0, offset, o.idempotent());
        injections.push(KarMorphism { source: (*o).clone(), target: sum.clone(), matrix: inj });
        projections.push(KarMorphism { source: sum.clone(), target: (*o).clone(), matrix: proj });
    }
    Biproduct { sum, injections, projections }
}

/// The morphism `⊕ objs[i] → ⊕ objs[order[i]]` that moves each summand to its
/// new slot.
pub fn permutation(ring: &Ring, objs: &[&KarObject], order: &[usize]) -> KarMorphism {
    assert_eq!(objs.len(), order.len());
    let source = KarObject::sum_of(ring, objs);
    let reordered: Vec<&KarObject> = order.iter().map(|&i| objs[i]).collect();
    let target = KarObject::sum_of(ring, &reordered);
    let src_offsets = offsets(objs);
    let tgt_offsets = offsets(&reordered);
    let mut m = Matrix::zeros(ring, target.size(), source.size());
    for (slot, &i) in order.iter().enumerate() {
        m.set_block(tgt_offsets[slot], src_offsets[i], objs[i].idempotent());
    }
    KarMorphism { source, target, matrix: m }
}

fn offsets(objs: &[&KarObject]) -> Vec<usize> {
    let mut out = Vec::with_capacity(objs.len());
    let mut acc = 0;
    for o in objs {
        out.push(acc);
        acc += o.size();
    }
    out
}

/// An explicit isomorphism and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub forward: KarMorphism,
    pub backward: KarMorphism,
}

impl Isomorphism {
    pub fn verify(&self) -> bool {
        self.forward.satisfies_hom_law() && self.backward.satisfies_hom_law() && self.forward.is_inverse_pair(&self.backward)
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Isomorphism) -> Result<Isomorphism> {
        Ok(Isomorphism { forward: other.forward.after(&self.forward)?, backward: self.backward.after(&other.backward)? })
    }
}

/// Splits an idempotent through a free module: `rank_factor` over fields and
/// products of fields, the Smith form over ℤ.
pub fn split_idempotent(p: &Matrix) -> Result<RankFactorization> {
    if *p.ring() != Ring::Integers {
        return rank_factor(p);
    }
    if !p.is_square() || &(p * p) != p {
        return Err(Error::NotIdempotent);
    }
    // u·p·v = diag(1,…,1,0,…,0); the image is spanned by the first r columns of u⁻¹
    let sm = snf(p)?;
    let r = sm.diagonal().iter().filter(|d| !p.ring().is_zero(d)).count();
    let u_inv = crate::exactlin::inverse(&sm.u)?.expect("unimodular");
    let a = u_inv.submatrix(0, p.rows(), 0, r);
    let b = (&sm.u * p).submatrix(0, r, 0, p.cols());
    Ok(RankFactorization { parts: vec![FactorSplit { a, b }] })
}

/// Decides `a ≅ b`, returning mutually inverse morphisms when they are.
///
/// Over fields and products of fields, objects are isomorphic iff their
/// multiranks agree; the isomorphism is assembled from rank factorizations.
/// Over other rings only free objects are compared, by rank.
pub fn is_isomorphic(a: &KarObject, b: &KarObject) -> Result<Option<Isomorphism>> {
    let ring = a.ring().clone();
    if &ring != b.ring() {
        return Err(Error::RingMismatch(ring, b.ring().clone()));
    }
    if ring.is_field_like() || (a.is_free() && b.is_free()) {
        return isomorphism_by_splitting(a, b);
    }
    Err(Error::UnsupportedRing { op: "is_isomorphic", ring })
}

/// Like [`is_isomorphic`], but also for arbitrary objects over ℤ, where every
/// idempotent splits through a free module.
pub(crate) fn isomorphism_by_splitting(a: &KarObject, b: &KarObject) -> Result<Option<Isomorphism>> {
    let ring = a.ring().clone();
    if a.is_free() && b.is_free() && !ring.is_field_like() {
        if a.size() != b.size() {
            return Ok(None);
        }
        let id = Matrix::identity(&ring, a.size());
        return Ok(Some(Isomorphism {
            forward: KarMorphism { source: a.clone(), target: b.clone(), matrix: id.clone() },
            backward: KarMorphism { source: b.clone(), target: a.clone(), matrix: id },
        }));
    }
    let fa = split_idempotent(a.idempotent())?;
    let fb = split_idempotent(b.idempotent())?;
    if fa.ranks() != fb.ranks() {
        return Ok(None);
    }
    let fwd: Vec<Matrix> = fa.parts.iter().zip(&fb.parts).map(|(pa, pb)| &pb.a * &pa.b).collect();
    let bwd: Vec<Matrix> = fa.parts.iter().zip(&fb.parts).map(|(pa, pb)| &pa.a * &pb.b).collect();
    let (fwd, bwd) = if matches!(ring, Ring::PrimeFieldProduct(_)) {
        (Matrix::from_factors(&ring, &fwd), Matrix::from_factors(&ring, &bwd))
    } else {
        (fwd[0].clone(), bwd[0].clone())
    };
    let iso = Isomorphism {
        forward: KarMorphism { source: a.clone(), target: b.clone(), matrix: fwd },
        backward: KarMorphism { source: b.clone(), target: a.clone(), matrix: bwd },
    };
    debug_assert!(iso.verify());
    Ok(Some(iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Elem;

    fn f2f3() -> Ring {
        Ring::prime_field_product(vec![2, 3]).unwrap()
    }

    fn e(r: &Ring, a: u64, b: u64) -> KarObject {
        KarObject::new(Matrix::diagonal(r, &[Elem::Tuple(vec![a, b])])).unwrap()
    }

    #[test]
    fn direct_sums() {
        let q = Ring::Rationals;
        let s = KarObject::free(&q, 2).direct_sum(&KarObject::free(&q, 3)).unwrap();
        assert_eq!(s, KarObject::free(&q, 5));
        let a = KarObject::new(Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 0])).unwrap();
        assert_eq!(a.direct_sum(&KarObject::zero(&q)).unwrap(), a);

        let r = f2f3();
        let s = e(&r, 1, 0).direct_sum(&e(&r, 0, 1)).unwrap();
        assert_eq!(s.size(), 2);
        let iso = is_isomorphic(&s, &KarObject::free(&r, 1)).unwrap().unwrap();
        assert!(iso.verify());
    }

    #[test]
    fn biproduct_identities() {
        let q = Ring::Rationals;
        let a = KarObject::new(Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 0])).unwrap();
        let b = KarObject::free(&q, 1);
        let bp = biproduct(&q, &[&a, &b]);
        for i in 0..2 {
            for j in 0..2 {
                let c = bp.projections[i].after(&bp.injections[j]).unwrap();
                if i == j {
                    assert!(c.is_identity());
                } else {
                    assert!(c.matrix.is_zero());
                }
            }
        }
        let mut sum = bp.injections[0].after(&bp.projections[0]).unwrap();
        sum = sum.add(&bp.injections[1].after(&bp.projections[1]).unwrap()).unwrap();
        assert!(sum.is_identity());
    }

    #[test]
    fn isomorphism_examples() {
        let q = Ring::Rationals;
        let a = KarObject::new(Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 0])).unwrap();
        let iso = is_isomorphic(&a, &KarObject::free(&q, 1)).unwrap().unwrap();
        assert!(iso.verify());
        let same = is_isomorphic(&KarObject::free(&q, 3), &KarObject::free(&q, 3)).unwrap().unwrap();
        assert!(same.forward.matrix.is_identity());

        let r = f2f3();
        assert!(is_isomorphic(&e(&r, 1, 0), &KarObject::free(&r, 1)).unwrap().is_none());
    }

    #[test]
    fn permutation_moves_blocks() {
        let q = Ring::Rationals;
        let a = KarObject::free(&q, 1);
        let b = KarObject::free(&q, 2);
        let p = permutation(&q, &[&a, &b], &[1, 0]);
        assert_eq!(p.matrix, Matrix::from_i64(&q, 3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]));
    }
}
