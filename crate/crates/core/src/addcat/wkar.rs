//! Witnesses for membership in the weak idempotent completion.
//!
//! `Z` lies in `wKar(C)` when `X ⊕ Z ≅ Y` for some objects `X`, `Y` of `C`.

use super::kar::{biproduct, isomorphism_by_splitting, permutation, Isomorphism, KarMorphism, KarObject};
use super::spec::CategorySpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkarWitness {
    pub x: KarObject,
    pub y: KarObject,
    pub z: KarObject,
    /// `X ⊕ Z → Y` and back.
    pub iso: Isomorphism,
}

impl WkarWitness {
    /// `0 ⊕ Z ≅ Z` for an object already in the base category.
    pub fn trivial(z: &KarObject) -> WkarWitness {
        let ring = z.ring();
        let zero = KarObject::zero(ring);
        let sum = zero.direct_sum(z).expect("same ring");
        WkarWitness {
            x: zero,
            y: z.clone(),
            z: z.clone(),
            iso: Isomorphism {
                forward: KarMorphism { source: sum.clone(), target: z.clone(), matrix: z.idempotent().clone() },
                backward: KarMorphism { source: z.clone(), target: sum, matrix: z.idempotent().clone() },
            },
        }
    }

    /// Checks the iso by composition and that `X`, `Y` are base objects of `base`.
    pub fn verify(&self, base: &CategorySpec) -> bool {
        let base = base.base();
        let in_base = |o: &KarObject| base.contains(o).unwrap_or(false);
        let Ok(sum) = self.x.direct_sum(&self.z) else { return false };
        in_base(&self.x)
            && in_base(&self.y)
            && self.iso.forward.source == sum
            && self.iso.forward.target == self.y
            && self.iso.verify()
    }
}

/// Result of a bounded witness search; `bound` is the largest `rank X` tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkarSearch {
    pub witness: Option<WkarWitness>,
    pub bound: usize,
}

pub fn default_bound(z: &KarObject, base: &CategorySpec) -> usize {
    z.size() + base.max_generator() + 4
}

/// Searches for `X ⊕ Z ≅ Y` with `X`, `Y` in the base of `spec` and `rank X ≤ bound`.
///
/// `X ⊕ Z` is free exactly when `Z` has constant multirank `r`, so the search
/// reduces to the smallest allowed `x` with `x + r` allowed. The answer is
/// cross-checked against [`enumerate_witness_ranks`].
pub fn wkar_witness(z: &KarObject, spec: &CategorySpec, bound: Option<usize>) -> Result<WkarSearch> {
    if z.ring() != &spec.ring {
        return Err(Error::RingMismatch(z.ring().clone(), spec.ring.clone()));
    }
    let base = spec.base();
    let bound = bound.unwrap_or_else(|| default_bound(z, &base));
    let ranks = z.multirank()?;

    let fast = match constant(&ranks) {
        None => None,
        Some(r) => base.allowed_up_to(bound).into_iter().find(|&x| base.allows_rank(x + r)).map(|x| (x, x + r)),
    };
    let oracle = enumerate_witness_ranks(&ranks, &base, bound);
    if fast != oracle {
        return Err(Error::CrossCheckFailure(format!(
            "witness search for {z}: rank arithmetic gives {fast:?}, enumeration gives {oracle:?}"
        )));
    }
    let Some((x, y)) = fast else {
        return Ok(WkarSearch { witness: None, bound });
    };

    let xo = KarObject::free(&spec.ring, x);
    let yo = KarObject::free(&spec.ring, y);
    let sum = xo.direct_sum(z)?;
    let iso = isomorphism_by_splitting(&sum, &yo)?
        .ok_or_else(|| Error::CrossCheckFailure(format!("{sum} and {yo} have equal ranks but no isomorphism")))?;
    let w = WkarWitness { x: xo, y: yo, z: z.clone(), iso };
    if !w.verify(&base) {
        return Err(Error::WitnessInvalid(format!("constructed witness for {z}")));
    }
    Ok(WkarSearch { witness: Some(w), bound })
}

fn constant(ranks: &[usize]) -> Option<usize> {
    let r = *ranks.first()?;
    ranks.iter().all(|&s| s == r).then_some(r)
}

/// Exhaustive oracle: the first pair `(x, y)`, ordered by `x` then `y`, of
/// allowed ranks with `x + multirank(Z) = (y, …, y)` componentwise.
pub fn enumerate_witness_ranks(ranks: &[usize], base: &CategorySpec, bound: usize) -> Option<(usize, usize)> {
    let top = bound + ranks.iter().copied().max().unwrap_or(0);
    for x in 0..=bound {
        if !base.allows_rank(x) {
            continue;
        }
        for y in 0..=top {
            if base.allows_rank(y) && ranks.iter().all(|&r| x + r == y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Given witnesses `X₁ ⊕ X ≅ X₂` and `Y₁ ⊕ Y ≅ Y₂` and an iso `X ⊕ Z ≅ Y`,
/// builds the witness `(X₂ ⊕ Y₁) ⊕ Z ≅ Y₂ ⊕ X₁` for `Z`.
pub fn combine_witnesses(
    wx: &WkarWitness,
    wy: &WkarWitness,
    phi: &Isomorphism,
    z: &KarObject,
    base: &CategorySpec,
) -> Result<WkarWitness> {
    if !wx.verify(base) || !wy.verify(base) {
        return Err(Error::WitnessInvalid("input witness does not verify".into()));
    }
    let x = &wx.z;
    let y = &wy.z;
    let xz = x.direct_sum(z)?;
    if !phi.verify() || phi.forward.source != xz || &phi.forward.target != y {
        return Err(Error::WitnessInvalid("φ is not an isomorphism X ⊕ Z → Y".into()));
    }
    let ring = z.ring().clone();
    let (x1, x2, y1, y2) = (&wx.x, &wx.y, &wy.x, &wy.y);

    // (X₂ ⊕ Y₁) ⊕ Z → (X₁ ⊕ X) ⊕ Y₁ ⊕ Z
    let s1 = KarMorphism::direct_sum(&ring, &[&wx.iso.backward, &y1.identity(), &z.identity()]);
    let s1_inv = KarMorphism::direct_sum(&ring, &[&wx.iso.forward, &y1.identity(), &z.identity()]);
    // X₁ ⊕ X ⊕ Y₁ ⊕ Z → Y₁ ⊕ X ⊕ Z ⊕ X₁
    let pieces = [x1, x, y1, z];
    let order = [2, 1, 3, 0];
    let s2 = permutation(&ring, &pieces, &order);
    let reordered = [y1, x, z, x1];
    let inverse_order = [3, 1, 0, 2];
    let s2_inv = permutation(&ring, &reordered, &inverse_order);
    // Y₁ ⊕ (X ⊕ Z) ⊕ X₁ → Y₁ ⊕ Y ⊕ X₁
    let s3 = KarMorphism::direct_sum(&ring, &[&y1.identity(), &phi.forward, &x1.identity()]);
    let s3_inv = KarMorphism::direct_sum(&ring, &[&y1.identity(), &phi.backward, &x1.identity()]);
    // Y₁ ⊕ Y ⊕ X₁ → Y₂ ⊕ X₁
    let s4 = KarMorphism::direct_sum(&ring, &[&wy.iso.forward, &x1.identity()]);
    let s4_inv = KarMorphism::direct_sum(&ring, &[&wy.iso.backward, &x1.identity()]);

    let forward = s4.after(&s3.after(&s2.after(&s1)?)?)?;
    let backward = s1_inv.after(&s2_inv.after(&s3_inv.after(&s4_inv)?)?)?;
    let new_x = x2.direct_sum(y1)?;
    let new_y = y2.direct_sum(x1)?;
    let w = WkarWitness { x: new_x, y: new_y, z: z.clone(), iso: Isomorphism { forward, backward } };
    if !w.verify(base) {
        return Err(Error::WitnessInvalid("composite witness does not verify".into()));
    }
    Ok(w)
}

/// `X ⊕ Z ≅ X ⊕ Z` as the identity: the iso argument of [`combine_witnesses`]
/// when `Y` is literally `X ⊕ Z`.
pub fn sum_identity(x: &KarObject, z: &KarObject) -> Result<Isomorphism> {
    let b = biproduct(x.ring(), &[x, z]);
    let id = b.sum.identity();
    Ok(Isomorphism { forward: id.clone(), backward: id })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Matrix, Ring};

    fn two_three() -> CategorySpec {
        CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap()
    }

    #[test]
    fn rank_one_joins_two_to_three() {
        let q = Ring::Rationals;
        let s = wkar_witness(&KarObject::free(&q, 1), &two_three(), None).unwrap();
        let w = s.witness.unwrap();
        assert_eq!((w.x.size(), w.y.size()), (2, 3));
        assert!(w.iso.forward.matrix.is_identity());
    }

    #[test]
    fn full_spec_is_trivial() {
        let q = Ring::Rationals;
        let z = KarObject::free(&q, 3);
        let w = wkar_witness(&z, &CategorySpec::full(q), None).unwrap().witness.unwrap();
        assert_eq!(w.x.size(), 0);
        assert_eq!(w.y, z);
    }

    #[test]
    fn non_constant_rank_has_no_witness() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let e = Matrix::from_elems(&r, 1, 1, vec![crate::exactlin::Elem::Tuple(vec![1, 0])]).unwrap();
        let z = KarObject::new(e).unwrap();
        let s = wkar_witness(&z, &CategorySpec::full(r), None).unwrap();
        assert!(s.witness.is_none());
        assert_eq!(s.bound, 1 + 1 + 4);
    }

    #[test]
    fn even_ranks_never_reach_odd() {
        let q = Ring::Rationals;
        let spec = CategorySpec::allowed(q.clone(), vec![2], 20).unwrap();
        assert!(wkar_witness(&KarObject::free(&q, 1), &spec, Some(15)).unwrap().witness.is_none());
        assert!(wkar_witness(&KarObject::free(&q, 2), &spec, Some(15)).unwrap().witness.is_some());
    }

    #[test]
    fn integer_idempotent() {
        let z = Ring::Integers;
        let p = KarObject::new(Matrix::from_i64(&z, 2, 2, &[1, 3, 0, 0])).unwrap();
        let w = wkar_witness(&p, &CategorySpec::full(z), None).unwrap().witness.unwrap();
        assert_eq!((w.x.size(), w.y.size()), (0, 1));
    }

    #[test]
    fn combine_with_trivial_witnesses() {
        let q = Ring::Rationals;
        let base = CategorySpec::full(q.clone());
        let x = KarObject::free(&q, 2);
        let z = KarObject::new(Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 0])).unwrap();
        let y = x.direct_sum(&z).unwrap();
        let wy = wkar_witness(&y, &base, None).unwrap().witness.unwrap();
        let phi = sum_identity(&x, &z).unwrap();
        let w = combine_witnesses(&WkarWitness::trivial(&x), &wy, &phi, &z, &base).unwrap();
        assert_eq!(w.x, x);
        assert!(w.verify(&base));
    }

    #[test]
    fn combine_with_deleted_summand() {
        let q = Ring::Rationals;
        let base = two_three();
        // X = k², witnessed by k² ⊕ k² ≅ k⁴; Z = k¹; Y = X ⊕ Z
        let x = KarObject::free(&q, 2);
        let z = KarObject::free(&q, 1);
        let wx = WkarWitness {
            x: x.clone(),
            y: KarObject::free(&q, 4),
            z: x.clone(),
            iso: sum_identity(&x, &x).unwrap(),
        };
        let y = x.direct_sum(&z).unwrap();
        let wy = WkarWitness::trivial(&y);
        let w = combine_witnesses(&wx, &wy, &sum_identity(&x, &z).unwrap(), &z, &base).unwrap();
        assert_eq!((w.x.size(), w.y.size()), (4, 5));
    }

    #[test]
    fn combine_rejects_bad_phi() {
        let q = Ring::Rationals;
        let base = CategorySpec::full(q.clone());
        let x = KarObject::free(&q, 1);
        let z = KarObject::free(&q, 1);
        let y = KarObject::free(&q, 2);
        let zero = KarMorphism::zero(&x.direct_sum(&z).unwrap(), &y);
        let bad = Isomorphism { forward: zero.clone(), backward: zero.transpose() };
        let r = combine_witnesses(&WkarWitness::trivial(&x), &WkarWitness::trivial(&y), &bad, &z, &base);
        assert!(matches!(r, Err(Error::WitnessInvalid(_))));
    }
}
