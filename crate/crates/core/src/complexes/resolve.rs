use super::complex::{ChainMap, Complex, EquivalenceCertificate, Homotopy};
use crate::addcat::{biproduct, CategorySpec, Layer, WkarWitness};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// The two-term complex `[X → Y]` in degrees `−1, 0` with differential
/// `X → X ⊕ Z → Y`, and a certificate that it is homotopy equivalent to `Z[0]`
/// in the Karoubi envelope.
pub fn resolve_wkar_object(w: &WkarWitness, base: &CategorySpec) -> Result<(Complex, EquivalenceCertificate)> {
    if !w.verify(base) {
        return Err(Error::WitnessInvalid("witness does not verify".into()));
    }
    let ring = base.ring.clone();
    let bp = biproduct(&ring, &[&w.x, &w.z]);
    let (phi, psi) = (&w.iso.forward.matrix, &w.iso.backward.matrix);
    let (inc_x, inc_z) = (&bp.injections[0].matrix, &bp.injections[1].matrix);
    let (pr_x, pr_z) = (&bp.projections[0].matrix, &bp.projections[1].matrix);

    let d = phi * inc_x;
    let r = Complex::new(base.base(), -1, vec![w.x.clone(), w.y.clone()], vec![d])?;
    let z0 = Complex::concentrated(&base.with_layer(Layer::Kar), w.z.clone(), 0);

    let u = ChainMap::new(&r, &z0, vec![Matrix::zeros(&ring, 0, w.x.size()), pr_z * psi])?;
    let v = ChainMap::new(&z0, &r, vec![phi * inc_z])?;
    // k^0 = π_X·ψ : Y → X
    let hm = Homotopy::new(&r, &r, vec![Matrix::zeros(&ring, 0, w.x.size()), pr_x * psi])?;
    let cert = EquivalenceCertificate { u, v, hm, hn: Homotopy::zero(&z0, &z0) };
    cert.check()?;
    Ok((r, cert))
}
