//! Deciders for weak idempotent completeness and idempotent completeness.

use super::complement::{complement_split_mono, standard_inclusion, Splitting};
use super::kar::{KarMorphism, KarObject};
use super::spec::{CategorySpec, Layer, Restriction};
use super::wkar::{combine_witnesses, wkar_witness, WkarWitness};
use crate::error::{Error, Result};
use crate::exactlin::{Elem, Matrix, Ring};
use crate::random;

#[derive(Clone, Debug)]
pub struct WicOptions {
    /// Largest rank examined; defaults to the bound of the allowed-rank set.
    pub bound: Option<usize>,
    /// Number of witness combinations sampled for the `wkar` layer.
    pub samples: usize,
    pub seed: u64,
}

impl Default for WicOptions {
    fn default() -> Self {
        WicOptions { bound: None, samples: 8, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub enum WicCertificate {
    /// Complements of split monos between free modules are always free.
    FreeComplements,
    /// Every split mono `(i, p)` of the Karoubi envelope splits off the image of `id − i∘p`.
    KaroubiImages,
    /// The standard inclusion `Rᵃ → Rᵇ` split for every allowed `a ≤ b ≤ bound`;
    /// every split mono between free modules is conjugate to one of these.
    Pairs { bound: usize, splittings: Vec<Splitting> },
    /// wKar is closed under complements because witnesses combine; these
    /// combinations were built and verified.
    CombinedWitnesses { samples: Vec<WkarWitness> },
}

#[derive(Clone, Debug)]
pub struct WicCounterexample {
    pub a: usize,
    pub b: usize,
    pub i: KarMorphism,
    pub p: KarMorphism,
    /// The complement in the Karoubi envelope, which is not in the category.
    pub complement: KarObject,
    pub reason: String,
}

impl WicCounterexample {
    /// The dual datum: `pᵀ` with retraction `iᵀ`, a split epi counterexample read as a split mono.
    pub fn transpose(&self) -> WicCounterexample {
        WicCounterexample {
            i: self.p.transpose(),
            p: self.i.transpose(),
            complement: self.complement.transpose(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct WicReport {
    pub complete: bool,
    pub certificate: Option<WicCertificate>,
    pub counterexample: Option<WicCounterexample>,
}

/// Decides whether every split mono in `spec` has a complement in `spec`.
///
/// For rank-restricted base categories this holds iff `b − a` is allowed for
/// all allowed `a ≤ b`; pairs are tried in order of `b`, then `a`, up to the bound.
pub fn is_weakly_idempotent_complete(spec: &CategorySpec, opts: &WicOptions) -> Result<WicReport> {
    let ok = |certificate| Ok(WicReport { complete: true, certificate: Some(certificate), counterexample: None });
    match (spec.layer, &spec.restriction) {
        (Layer::Kar, _) => ok(WicCertificate::KaroubiImages),
        (Layer::Wkar, _) => ok(WicCertificate::CombinedWitnesses { samples: sample_combinations(spec, opts)? }),
        (Layer::Base, Restriction::Full) => ok(WicCertificate::FreeComplements),
        (Layer::Base, Restriction::Allowed(allowed)) => {
            let bound = opts.bound.unwrap_or(allowed.bound());
            let ring = &spec.ring;
            let mut splittings = Vec::new();
            for b in spec.allowed_up_to(bound) {
                for a in spec.allowed_up_to(b) {
                    let (i, p) = standard_inclusion(ring, a, b);
                    match complement_split_mono(&i, &p, spec) {
                        Ok(s) => splittings.push(s),
                        Err(Error::SplitMonoNoComplement { ambient, reason }) => {
                            return Ok(WicReport {
                                complete: false,
                                certificate: None,
                                counterexample: Some(WicCounterexample { a, b, i, p, complement: ambient, reason }),
                            })
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            ok(WicCertificate::Pairs { bound, splittings })
        }
    }
}

/// Builds random `X, Z ∈ wKar`, sets `Y = g(X ⊕ Z)g⁻¹`, and combines the
/// witnesses of `X` and `Y` into one for `Z`.
fn sample_combinations(spec: &CategorySpec, opts: &WicOptions) -> Result<Vec<WkarWitness>> {
    let ring = spec.ring.clone();
    let base = spec.base();
    let mut rng = random::seeded(opts.seed);
    let sizes: Vec<usize> = spec.allowed_up_to(spec.max_generator() + 3).into_iter().filter(|&n| n > 0).collect();
    let mut out = Vec::new();
    if sizes.is_empty() {
        return Ok(out);
    }
    let mut attempts = 0;
    while out.len() < opts.samples && attempts < 50 * opts.samples.max(1) {
        attempts += 1;
        let x = random_wkar_object(&base, &sizes, &mut rng)?;
        let z = random_wkar_object(&base, &sizes, &mut rng)?;
        let (Some(x), Some(z)) = (x, z) else { continue };
        let xz = x.direct_sum(&z)?;
        let (g, g_inv) = random::invertible(&ring, xz.size(), &mut rng);
        let y = KarObject::new(&(&g * xz.idempotent()) * &g_inv)?;
        let phi = super::kar::Isomorphism {
            forward: KarMorphism::new(&xz, &y, &g * xz.idempotent())?,
            backward: KarMorphism::new(&y, &xz, xz.idempotent() * &g_inv)?,
        };
        let wx = wkar_witness(&x, &base, None)?.witness.expect("sampled from wKar");
        let Some(wy) = wkar_witness(&y, &base, None)?.witness else {
            return Err(Error::CrossCheckFailure(format!("{y} ≅ X ⊕ Z has no witness")));
        };
        out.push(combine_witnesses(&wx, &wy, &phi, &z, &base)?);
    }
    Ok(out)
}

fn random_wkar_object(base: &CategorySpec, sizes: &[usize], rng: &mut random::SeededRng) -> Result<Option<KarObject>> {
    use rand::seq::SliceRandom;
    let n = *sizes.choose(rng).expect("nonempty");
    let obj = random::kar_object(&base.ring, n, rng);
    Ok(wkar_witness(&obj, base, None)?.witness.map(|_| obj))
}

#[derive(Clone, Debug)]
pub struct IcReport {
    pub complete: bool,
    /// An idempotent endomorphism whose image is not in the category.
    pub witness: Option<KarMorphism>,
    pub reason: String,
    pub bound: Option<usize>,
}

/// Decides whether every idempotent of `spec` has an image in `spec`.
pub fn is_idempotent_complete(spec: &CategorySpec, bound: Option<usize>) -> Result<IcReport> {
    let ring = spec.ring.clone();
    if spec.layer == Layer::Kar {
        return Ok(IcReport { complete: true, witness: None, reason: "Karoubi envelope".into(), bound: None });
    }
    let smallest = spec.allowed_up_to(spec.max_generator()).into_iter().find(|&n| n > 0);

    // a scalar idempotent other than 0 and 1 has an image that is not free
    if let Some(e0) = nontrivial_scalar_idempotent(&ring) {
        let Some(n) = smallest else {
            return Ok(IcReport { complete: true, witness: None, reason: "only the zero object".into(), bound: None });
        };
        let obj = KarObject::free(&ring, n);
        let mut diag = vec![ring.one(); n];
        diag[0] = e0.clone();
        let e = KarMorphism::new(&obj, &obj, Matrix::diagonal(&ring, &diag))?;
        return Ok(IcReport {
            complete: false,
            witness: Some(e),
            reason: format!("the idempotent {e0} has an image of non-constant rank"),
            bound: None,
        });
    }

    let allowed = match &spec.restriction {
        Restriction::Full => {
            return Ok(IcReport { complete: true, witness: None, reason: "images of idempotents are free".into(), bound: None })
        }
        Restriction::Allowed(a) => a,
    };
    let bound = bound.unwrap_or(allowed.bound());
    let in_layer = |r: usize| -> bool {
        match spec.layer {
            Layer::Wkar => wkar_rank(spec, r, bound),
            _ => spec.allows_rank(r),
        }
    };
    for n in (1..=bound).filter(|&n| in_layer(n)) {
        if let Some(r) = (1..n).find(|&r| !in_layer(r)) {
            let carrier = match spec.layer {
                Layer::Wkar => kar_rank_object(spec, n, bound)?,
                _ => KarObject::free(&ring, n),
            };
            let e = KarMorphism::new(&carrier, &carrier, diagonal_projector(&ring, carrier.size(), r))?;
            return Ok(IcReport {
                complete: false,
                witness: Some(e),
                reason: format!("an idempotent of rank {r} on an object of rank {n} has an image outside the category"),
                bound: Some(bound),
            });
        }
    }
    Ok(IcReport { complete: true, witness: None, reason: format!("all ranks checked up to {bound}"), bound: Some(bound) })
}

/// Rank `r` is realized in wKar: `x + r` allowed for some allowed `x ≤ bound`.
fn wkar_rank(spec: &CategorySpec, r: usize, bound: usize) -> bool {
    spec.allowed_up_to(bound).into_iter().any(|x| spec.allows_rank(x + r))
}

/// `diag(1, …, 1, 0, …, 0)` with `r` ones.
pub fn diagonal_projector(ring: &Ring, n: usize, r: usize) -> Matrix {
    let diag: Vec<Elem> = (0..n).map(|i| if i < r { ring.one() } else { ring.zero() }).collect();
    Matrix::diagonal(ring, &diag)
}

/// `k^r` as an object of the Karoubi envelope: `diag(1^r, 0)` on the smallest allowed rank `≥ r`.
pub fn kar_rank_object(spec: &CategorySpec, r: usize, bound: usize) -> Result<KarObject> {
    let n = (r..=bound.max(r) + spec.max_generator())
        .find(|&n| spec.allows_rank(n))
        .ok_or_else(|| Error::InvalidInput(format!("no allowed rank at least {r}")))?;
    KarObject::new(diagonal_projector(&spec.ring, n, r))
}

/// For ℤ/n with `n` not a prime power, a scalar idempotent other than 0 and 1
/// (via the Chinese remainder theorem); for products of fields, `(1, 0, …)`.
fn nontrivial_scalar_idempotent(ring: &Ring) -> Option<Elem> {
    match ring {
        Ring::PrimeFieldProduct(ps) if ps.len() > 1 => {
            let mut t = vec![0; ps.len()];
            t[0] = 1;
            Some(Elem::Tuple(t))
        }
        Ring::IntegersMod(n) => {
            let p = (2..=*n).find(|d| n % d == 0)?;
            let mut m1 = 1;
            let mut rest = *n;
            while rest % p == 0 {
                rest /= p;
                m1 *= p;
            }
            if rest == 1 {
                return None;
            }
            // e ≡ 0 mod m1, e ≡ 1 mod rest
            let Elem::Residue(inv) = Ring::IntegersMod(rest).inv(&Elem::Residue(m1 % rest))? else { return None };
            Some(Elem::Residue(((m1 as u128 * inv as u128) % *n as u128) as u64))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rational_category() {
        let r = is_weakly_idempotent_complete(&CategorySpec::full(Ring::Rationals), &WicOptions::default()).unwrap();
        assert!(r.complete);
        assert!(is_idempotent_complete(&CategorySpec::full(Ring::Rationals), None).unwrap().complete);
    }

    #[test]
    fn two_three_fails_at_two_three() {
        let spec = CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap();
        let r = is_weakly_idempotent_complete(&spec, &WicOptions::default()).unwrap();
        assert!(!r.complete);
        let c = r.counterexample.unwrap();
        assert_eq!((c.a, c.b), (2, 3));
        assert_eq!(c.complement, KarObject::free(&Ring::Rationals, 1));
        let dual = c.transpose();
        assert!(matches!(complement_split_mono(&dual.i, &dual.p, &spec), Err(Error::SplitMonoNoComplement { .. })));
    }

    #[test]
    fn product_of_fields() {
        let ring = Ring::prime_field_product(vec![2, 3]).unwrap();
        let spec = CategorySpec::full(ring.clone());
        assert!(is_weakly_idempotent_complete(&spec, &WicOptions::default()).unwrap().complete);
        let ic = is_idempotent_complete(&spec, None).unwrap();
        assert!(!ic.complete);
        assert_eq!(ic.witness.unwrap().matrix, Matrix::from_elems(&ring, 1, 1, vec![Elem::Tuple(vec![1, 0])]).unwrap());
    }

    #[test]
    fn wkar_layer_by_combination() {
        let spec = CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap().with_layer(Layer::Wkar);
        let r = is_weakly_idempotent_complete(&spec, &WicOptions { samples: 3, ..Default::default() }).unwrap();
        assert!(r.complete);
        match r.certificate.unwrap() {
            WicCertificate::CombinedWitnesses { samples } => {
                assert_eq!(samples.len(), 3);
                assert!(samples.iter().all(|w| w.verify(&spec)));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn idempotent_completeness_of_restricted_specs() {
        let q = Ring::Rationals;
        let spec = CategorySpec::allowed(q.clone(), vec![2, 3], 12).unwrap();
        let ic = is_idempotent_complete(&spec, None).unwrap();
        assert!(!ic.complete);
        let w = ic.witness.unwrap();
        assert_eq!(w.matrix, diagonal_projector(&q, 2, 1));
        // every rank lies in wKar when the generators are coprime
        assert!(is_idempotent_complete(&spec.with_layer(Layer::Wkar), None).unwrap().complete);
        let even = CategorySpec::allowed(q, vec![2], 12).unwrap().with_layer(Layer::Wkar);
        assert!(!is_idempotent_complete(&even, None).unwrap().complete);
    }

    #[test]
    fn composite_modulus_idempotent() {
        // e ≡ 0 mod 2, e ≡ 1 mod 3
        let e = nontrivial_scalar_idempotent(&Ring::IntegersMod(6)).unwrap();
        assert_eq!(e, Elem::Residue(4));
        assert!(nontrivial_scalar_idempotent(&Ring::IntegersMod(8)).is_none());
        let r = Ring::IntegersMod(12);
        let e = nontrivial_scalar_idempotent(&r).unwrap();
        assert_eq!(r.mul(&e, &e), e);
    }
}
