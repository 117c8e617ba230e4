//! Seeded random complexes and chain maps.

use rand::Rng;

use super::complex::{ChainMap, Complex, Homotopy};
use super::homotopy::hom_mod_homotopy;
use crate::addcat::{CategorySpec, KarObject, Restriction};
use crate::error::Result;
use crate::exactlin::Matrix;
use crate::random::{self, SeededRng};

#[derive(Clone, Debug)]
pub struct ComplexShape {
    /// Largest essential length.
    pub max_length: usize,
    /// Largest term rank.
    pub max_rank: usize,
    /// Lowest degree is drawn from this range.
    pub min_degree: (i64, i64),
    /// Only sums of identity cones.
    pub contractible: bool,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape { max_length: 3, max_rank: 4, min_degree: (-2, 1), contractible: false }
    }
}

fn allowed(spec: &CategorySpec, n: usize) -> bool {
    match &spec.restriction {
        Restriction::Full => true,
        Restriction::Allowed(a) => a.contains(n),
    }
}

/// A sum of shifted identity cones and single-degree terms, conjugated in every
/// degree by a random invertible matrix. Term ranks are drawn until all of them
/// are allowed in `spec`.
pub fn random_complex(spec: &CategorySpec, shape: &ComplexShape, rng: &mut SeededRng) -> Complex {
    let ring = spec.ring.clone();
    loop {
        let lo = rng.gen_range(shape.min_degree.0..=shape.min_degree.1);
        let len = rng.gen_range(0..=shape.max_length);
        let mut cones = Vec::new();
        let mut homs = Vec::new();
        let mut sizes = Vec::new();
        let mut carry = 0;
        for j in 0..=len {
            let room = shape.max_rank - carry;
            let h = if shape.contractible { 0 } else { rng.gen_range(0..=room.min(2)) };
            let c = if j == len { 0 } else { rng.gen_range(0..=room - h) };
            homs.push(h);
            cones.push(c);
            sizes.push(carry + h + c);
            carry = c;
        }
        if !sizes.iter().all(|&n| allowed(spec, n)) {
            continue;
        }
        let mut gs = Vec::new();
        for &n in &sizes {
            gs.push(random::invertible(&ring, n, rng));
        }
        let terms = sizes.iter().map(|&n| KarObject::free(&ring, n)).collect();
        let diffs = (0..len)
            .map(|j| {
                // lower cone block at j onto the upper cone block at j + 1
                let mut d = Matrix::zeros(&ring, sizes[j + 1], sizes[j]);
                let start = if j == 0 { 0 } else { cones[j - 1] } + homs[j];
                d.set_block(0, start, &Matrix::identity(&ring, cones[j]));
                &(&gs[j + 1].0 * &d) * &gs[j].1
            })
            .collect();
        return Complex::new(spec.clone(), lo, terms, diffs).expect("conjugated sum of cones");
    }
}

/// A random chain map: a random combination of homotopy classes plus a random
/// null-homotopic map `d h + h d`. Fields and products of fields only.
pub fn random_chain_map(m: &Complex, n: &Complex, rng: &mut SeededRng) -> Result<ChainMap> {
    let ring = m.ring().clone();
    let hom = hom_mod_homotopy(m, n)?;
    let mut f = ChainMap::zero(m, n);
    for b in &hom.basis {
        let c = random::elem(&ring, rng);
        let comps = b.components().iter().map(|x| x.scale(&c)).collect();
        f = f.add(&ChainMap::unchecked(m, n, comps));
    }
    let h = Homotopy::from_fn(m, n, |i| {
        let raw = random::matrix(&ring, n.size(i - 1), m.size(i), rng);
        &(&n.id(i - 1) * &raw) * &m.id(i)
    })?;
    let comps: Vec<Matrix> = m.degrees().map(|i| &f.component(i) + &h.boundary(i)).collect();
    ChainMap::new(m, n, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homotopy::is_contractible;
    use crate::exactlin::Ring;

    #[test]
    fn contractible_samples_are_contractible() {
        let spec = CategorySpec::full(Ring::Rationals);
        let mut rng = random::seeded(3);
        let shape = ComplexShape { contractible: true, ..Default::default() };
        for _ in 0..10 {
            let m = random_complex(&spec, &shape, &mut rng);
            assert!(is_contractible(&m).unwrap().is_some());
        }
    }

    #[test]
    fn allowed_ranks_are_respected() {
        let spec = CategorySpec::allowed(Ring::Rationals, vec![2, 3], 12).unwrap();
        let mut rng = random::seeded(4);
        for _ in 0..10 {
            let m = random_complex(&spec, &ComplexShape::default(), &mut rng);
            assert!(m.terms().iter().all(|t| t.size() != 1));
        }
    }

    #[test]
    fn random_maps_are_chain_maps() {
        let spec = CategorySpec::full(Ring::Rationals);
        let mut rng = random::seeded(5);
        let shape = ComplexShape { max_length: 2, max_rank: 3, ..Default::default() };
        for _ in 0..5 {
            let m = random_complex(&spec, &shape, &mut rng);
            let n = random_complex(&spec, &shape, &mut rng);
            assert!(random_chain_map(&m, &n, &mut rng).unwrap().verify());
        }
    }
}
