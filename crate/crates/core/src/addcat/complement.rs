use super::kar::{split_idempotent, Isomorphism, KarMorphism, KarObject};
use super::spec::{CategorySpec, Layer};
use super::wkar::wkar_witness;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Ring};

/// `Y ≅ X ⊕ Z` identifying a split mono `i: X → Y` with `id_X ⊕ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub i: KarMorphism,
    pub p: KarMorphism,
    pub complement: KarObject,
    /// `Z → Y`
    pub a: Matrix,
    /// `Y → Z`
    pub b: Matrix,
    /// `X ⊕ Z → Y` is `[i | a]`, its inverse `[p ; b]`.
    pub iso: Isomorphism,
}

impl Splitting {
    pub fn x(&self) -> &KarObject {
        &self.i.source
    }

    pub fn y(&self) -> &KarObject {
        &self.i.target
    }

    /// Re-checks the splitting from its matrices.
    pub fn verify(&self) -> bool {
        let ring = self.i.matrix.ring();
        let ny = self.y().size();
        let fwd = Matrix::hstack(ring, ny, &[&self.i.matrix, &self.a]);
        let bwd = Matrix::vstack(ring, ny, &[&self.p.matrix, &self.b]);
        let sum = match self.x().direct_sum(&self.complement) {
            Ok(s) => s,
            Err(_) => return false,
        };
        self.iso.forward.matrix == fwd
            && self.iso.backward.matrix == bwd
            && self.iso.forward.source == sum
            && &self.iso.forward.target == self.y()
            && self.iso.verify()
            && self.p.after(&self.i).map(|c| c.is_identity()).unwrap_or(false)
    }

    /// The same data for the opposite category: `pᵀ` is a split mono with retraction `iᵀ`.
    pub fn transpose(&self) -> Splitting {
        Splitting {
            i: self.p.transpose(),
            p: self.i.transpose(),
            complement: self.complement.transpose(),
            a: self.b.transpose(),
            b: self.a.transpose(),
            iso: Isomorphism { forward: self.iso.backward.transpose(), backward: self.iso.forward.transpose() },
        }
    }
}

/// Splits `Y ≅ X ⊕ Z` inside `spec` for a split mono `i` with retraction `p`.
///
/// The complement is the image of the idempotent `e = id_Y − i∘p`. In the
/// Karoubi layers it is `(Y, e)` itself; in the base layer it must be a free
/// module of an allowed rank, found by rank factorization over fields and by
/// the Smith form over ℤ.
pub fn complement_split_mono(i: &KarMorphism, p: &KarMorphism, spec: &CategorySpec) -> Result<Splitting> {
    let x = &i.source;
    let y = &i.target;
    if p.source != *y || p.target != *x || !i.satisfies_hom_law() || !p.satisfies_hom_law() {
        return Err(Error::ShapeMismatch("i: X → Y and p: Y → X expected".into()));
    }
    if !p.after(i)?.is_identity() {
        return Err(Error::NotSplitMono);
    }
    let ring = spec.ring.clone();
    let e = y.idempotent() - &(&i.matrix * &p.matrix);
    let ambient = KarObject::new(e.clone())?;

    let (complement, a, b) = match spec.layer {
        Layer::Kar => (ambient.clone(), e.clone(), e.clone()),
        Layer::Wkar => {
            if !ambient.is_free() && wkar_witness(&ambient, &spec.base(), None)?.witness.is_none() {
                return Err(Error::SplitMonoNoComplement {
                    ambient,
                    reason: "complement is not in the weak idempotent completion".into(),
                });
            }
            (ambient.clone(), e.clone(), e.clone())
        }
        Layer::Base => {
            let (a, b) = free_image(&e, &ambient)?;
            let r = a.cols();
            if !spec.allows_rank(r) {
                return Err(Error::SplitMonoNoComplement {
                    ambient: KarObject::free(&ring, r),
                    reason: format!("complement rank {r} is not an allowed rank"),
                });
            }
            (KarObject::free(&ring, r), a, b)
        }
    };

    let ny = y.size();
    let sum = x.direct_sum(&complement)?;
    let fwd = Matrix::hstack(&ring, ny, &[&i.matrix, &a]);
    let bwd = Matrix::vstack(&ring, ny, &[&p.matrix, &b]);
    let iso = Isomorphism {
        forward: KarMorphism { source: sum.clone(), target: y.clone(), matrix: fwd },
        backward: KarMorphism { source: y.clone(), target: sum, matrix: bwd },
    };
    let s = Splitting { i: i.clone(), p: p.clone(), complement, a, b, iso };
    if !s.verify() {
        return Err(Error::CertificateInvalid("complement splitting does not verify".into()));
    }
    Ok(s)
}

/// `e = a·b`, `b·a = id_r`, with `r` columns, when the image of `e` is free.
fn free_image(e: &Matrix, ambient: &KarObject) -> Result<(Matrix, Matrix)> {
    let ring = e.ring().clone();
    let rf = split_idempotent(e)?;
    match rf.glued(&ring) {
        Some(s) => Ok((s.a, s.b)),
        None => Err(Error::SplitMonoNoComplement {
            ambient: ambient.clone(),
            reason: format!("complement has non-constant multirank {:?}, so it is not free", rf.ranks()),
        }),
    }
}

/// Standard inclusion `Rᵃ → Rᵇ` and the coordinate projection back.
pub fn standard_inclusion(ring: &Ring, a: usize, b: usize) -> (KarMorphism, KarMorphism) {
    assert!(a <= b);
    let x = KarObject::free(ring, a);
    let y = KarObject::free(ring, b);
    let mut m = Matrix::zeros(ring, b, a);
    m.set_block(0, 0, &Matrix::identity(ring, a));
    (
        KarMorphism { source: x.clone(), target: y.clone(), matrix: m.clone() },
        KarMorphism { source: y, target: x, matrix: m.transpose() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn mono(i: &[i64], p: &[i64], nx: usize, ny: usize, r: &Ring) -> (KarMorphism, KarMorphism) {
        let x = KarObject::free(r, nx);
        let y = KarObject::free(r, ny);
        (
            KarMorphism::new(&x, &y, Matrix::from_i64(r, ny, nx, i)).unwrap(),
            KarMorphism::new(&y, &x, Matrix::from_i64(r, nx, ny, p)).unwrap(),
        )
    }

    #[test]
    fn canonical_inclusion() {
        let (i, p) = mono(&[1, 0], &[1, 0], 1, 2, &q());
        let s = complement_split_mono(&i, &p, &CategorySpec::full(q())).unwrap();
        assert_eq!(s.complement, KarObject::free(&q(), 1));
        assert!(s.iso.forward.matrix.is_identity());
    }

    #[test]
    fn skew_inclusion() {
        let (i, p) = mono(&[1, 1], &[1, 0], 1, 2, &q());
        let s = complement_split_mono(&i, &p, &CategorySpec::full(q())).unwrap();
        assert_eq!(s.iso.forward.matrix, Matrix::from_i64(&q(), 2, 2, &[1, 0, 1, 1]));
        assert!(s.verify());
    }

    #[test]
    fn excluded_complement() {
        let spec = CategorySpec::allowed(q(), vec![2, 3], 12).unwrap();
        let (i, p) = standard_inclusion(&q(), 2, 3);
        match complement_split_mono(&i, &p, &spec) {
            Err(Error::SplitMonoNoComplement { ambient, .. }) => assert_eq!(ambient, KarObject::free(&q(), 1)),
            other => panic!("expected failure, got {other:?}"),
        }
        let s = complement_split_mono(&i, &p, &spec.with_layer(Layer::Kar)).unwrap();
        assert_eq!(s.complement.multirank().unwrap(), vec![1]);
    }

    #[test]
    fn not_split() {
        let (i, p) = mono(&[2, 0], &[1, 0], 1, 2, &q());
        assert!(matches!(complement_split_mono(&i, &p, &CategorySpec::full(q())), Err(Error::NotSplitMono)));
    }

    #[test]
    fn integer_complement() {
        let z = Ring::Integers;
        let (i, p) = mono(&[1, 2, 3], &[1, 0, 0], 1, 3, &z);
        let s = complement_split_mono(&i, &p, &CategorySpec::full(z.clone())).unwrap();
        assert_eq!(s.complement, KarObject::free(&z, 2));
        assert!(s.verify());
    }

    #[test]
    fn product_ring_complement_is_free() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let (i, p) = standard_inclusion(&r, 1, 3);
        let s = complement_split_mono(&i, &p, &CategorySpec::full(r.clone())).unwrap();
        assert_eq!(s.complement.size(), 2);
        assert!(s.transpose().verify());
    }
}
