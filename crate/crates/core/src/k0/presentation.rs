use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::addcat::{wkar_witness, CategorySpec, KarObject, Layer};
use crate::error::{Error, Result};
use crate::exactlin::snf::hermite_rows;
use crate::exactlin::{snf, Elem, Matrix, Ring};

/// `K₀ ≅ ℤ^free_rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// A truncated presentation: iso classes up to `bound` modulo `[A ⊕ C] = [A] + [C]`.
#[derive(Clone, Debug)]
pub struct K0Presentation {
    pub spec: CategorySpec,
    pub bound: usize,
    /// Multirank of each generator.
    pub generators: Vec<Vec<usize>>,
    /// One row `[A ⊕ C] − [A] − [C]` per relation.
    pub relations: Matrix,
    pub invariants: K0Invariants,
    /// The invariants at `bound + 1` agree.
    pub stable: bool,
    /// Column `j`: coordinates of generator `j`, free part first (column Hermite form), then torsion residues.
    pub coordinates: Matrix,
    index: HashMap<Vec<usize>, usize>,
}

fn big(e: &Elem) -> BigInt {
    e.as_integer().expect("integer entry").clone()
}

/// Descending lexicographic order within each total rank.
fn key_order(a: &Vec<usize>, b: &Vec<usize>) -> std::cmp::Ordering {
    let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
    sa.cmp(&sb).then_with(|| b.cmp(a))
}

fn all_vectors(factors: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..factors {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Smallest allowed ambient size `≥ need` and `≤ bound`.
fn ambient(spec: &CategorySpec, need: usize, bound: usize) -> Option<usize> {
    (need.max(1)..=bound).find(|&n| spec.allows_rank(n))
}

/// A representative object of the class `key` in `spec`.
pub fn representative(spec: &CategorySpec, key: &[usize], bound: usize) -> Option<KarObject> {
    let ring = &spec.ring;
    let top = key.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return Some(KarObject::zero(ring));
    }
    match spec.layer {
        Layer::Base => {
            let n = key[0];
            (key.iter().all(|&k| k == n) && n <= bound && spec.allows_rank(n)).then(|| KarObject::free(ring, n))
        }
        Layer::Kar | Layer::Wkar => Some(KarObject::diagonal(ring, ambient(spec, top, bound)?, key)),
    }
}

fn supported(ring: &Ring) -> bool {
    ring.is_field_like() || *ring == Ring::Integers
}

/// Iso-class keys of nonzero objects within `bound`, in generator order.
pub fn enumerate_classes(spec: &CategorySpec, bound: usize) -> Result<Vec<Vec<usize>>> {
    let ring = &spec.ring;
    if !supported(ring) {
        return Err(Error::UnsupportedRing { op: "k0_presentation", ring: ring.clone() });
    }
    // over ℤ every summand of a free module is free, so Kar classes are ranks
    let factors = ring.factor_count();
    let mut keys = Vec::new();
    for key in all_vectors(factors, bound) {
        if key.iter().all(|&k| k == 0) {
            continue;
        }
        let Some(obj) = representative(spec, &key, bound) else { continue };
        if spec.layer == Layer::Wkar && wkar_witness(&obj, &spec.base(), None)?.witness.is_none() {
            continue;
        }
        keys.push(key);
    }
    keys.sort_by(key_order);
    Ok(keys)
}

fn present(spec: &CategorySpec, bound: usize) -> Result<K0Presentation> {
    let z = Ring::Integers;
    let generators = enumerate_classes(spec, bound)?;
    let g = generators.len();
    let index: HashMap<Vec<usize>, usize> = generators.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for a in 0..g {
        for c in a..g {
            let sum: Vec<usize> = generators[a].iter().zip(&generators[c]).map(|(x, y)| x + y).collect();
            if let Some(&b) = index.get(&sum) {
                let mut row = vec![0i64; g];
                row[b] += 1;
                row[a] -= 1;
                row[c] -= 1;
                rows.push(row);
            }
        }
    }
    let flat: Vec<i64> = rows.concat();
    let relations = Matrix::from_i64(&z, rows.len(), g, &flat);

    let smith = snf(&relations)?;
    let diag: Vec<BigInt> = smith.diagonal().iter().map(big).map(|d| d.abs()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| diag[i].clone()).collect();
    let free_rank = g - rank;

    // x ↦ x·v sends the relation lattice onto the span of the d_i e_i
    let vt = smith.v.transpose();
    let free = vt.select_rows(&(rank..g).collect::<Vec<_>>());
    let (free, _) = hermite_rows(&free);
    let mut tors = vt.select_rows(&torsion_idx);
    for (r, d) in torsion.iter().enumerate() {
        for j in 0..g {
            let x = big(tors.get(r, j));
            tors.set(r, j, Elem::Integer(((x % d) + d) % d));
        }
    }
    let coordinates = Matrix::vstack(&z, g, &[&free, &tors]);

    Ok(K0Presentation {
        spec: spec.clone(),
        bound,
        generators,
        relations,
        invariants: K0Invariants { free_rank, torsion },
        stable: true,
        coordinates,
        index,
    })
}

/// Presentation within `bound`; `UnstablePresentation` if the invariants change at `bound + 1`.
pub fn k0_presentation(spec: &CategorySpec, bound: usize) -> Result<K0Presentation> {
    let p = k0_presentation_unchecked(spec, bound)?;
    if !p.stable {
        let next = present(spec, bound + 1)?;
        return Err(Error::UnstablePresentation {
            bound,
            next: bound + 1,
            at_bound: format!("{:?}", p.invariants),
            at_next: format!("{:?}", next.invariants),
        });
    }
    Ok(p)
}

/// Like [`k0_presentation`] but reports instability through the `stable` flag.
pub fn k0_presentation_unchecked(spec: &CategorySpec, bound: usize) -> Result<K0Presentation> {
    let mut p = present(spec, bound)?;
    p.stable = present(spec, bound + 1)?.invariants == p.invariants;
    Ok(p)
}

impl K0Presentation {
    /// Reassembles a presentation from its stored parts (no recomputation).
    pub fn from_parts(
        spec: CategorySpec,
        bound: usize,
        generators: Vec<Vec<usize>>,
        relations: Matrix,
        invariants: K0Invariants,
        stable: bool,
        coordinates: Matrix,
    ) -> K0Presentation {
        let index = generators.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        K0Presentation { spec, bound, generators, relations, invariants, stable, coordinates, index }
    }

    /// Each relation row is `e_b − e_a − e_c` with the multiranks of `a` and `c` adding up to that of `b`.
    pub fn relations_well_formed(&self) -> bool {
        let g = self.generators.len();
        if self.relations.cols() != g {
            return false;
        }
        (0..self.relations.rows()).all(|r| {
            let row: Vec<BigInt> = (0..g).map(|j| big(self.relations.get(r, j))).collect();
            let mut sum = vec![0i64; self.generators.first().map_or(0, Vec::len)];
            for (j, c) in row.iter().enumerate() {
                let Ok(c) = i64::try_from(c) else { return false };
                for (k, x) in self.generators[j].iter().enumerate() {
                    sum[k] += c * *x as i64;
                }
            }
            let total: i64 = row.iter().map(|c| i64::try_from(c).unwrap_or(i64::MAX)).sum();
            let positive = row.iter().filter(|c| c.is_positive()).count();
            sum.iter().all(|&s| s == 0) && total == -1 && positive == 1
        })
    }

    pub fn generator_index(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Iso-class key of `obj`: its multirank.
    pub fn key_of(&self, obj: &KarObject) -> Result<Vec<usize>> {
        if obj.ring() != &self.spec.ring {
            return Err(Error::RingMismatch(obj.ring().clone(), self.spec.ring.clone()));
        }
        let mut key = obj.multirank()?;
        if key.len() == 1 && self.spec.ring.factor_count() > 1 {
            key = vec![key[0]; self.spec.ring.factor_count()];
        }
        Ok(key)
    }

    /// Coordinates of `[obj]`: free part, then torsion residues.
    pub fn class_of(&self, obj: &KarObject) -> Result<Vec<BigInt>> {
        let key = self.key_of(obj)?;
        self.class_of_key(&key)
    }

    pub fn class_of_key(&self, key: &[usize]) -> Result<Vec<BigInt>> {
        let n = self.coordinates.rows();
        if key.iter().all(|&k| k == 0) {
            return Ok(vec![BigInt::zero(); n]);
        }
        let j = self
            .generator_index(key)
            .ok_or_else(|| Error::InvalidInput(format!("class {key:?} is not among the generators within bound {}", self.bound)))?;
        Ok((0..n).map(|i| big(self.coordinates.get(i, j))).collect())
    }

    /// Free coordinates of every generator as the columns of a matrix.
    pub fn free_coordinates(&self) -> Matrix {
        self.coordinates.submatrix(0, self.invariants.free_rank, 0, self.generators.len())
    }

    /// Every relation row is zero in the quotient.
    pub fn relations_vanish(&self) -> bool {
        let free = self.free_coordinates();
        if !(&free * &self.relations.transpose()).is_zero() {
            return false;
        }
        let t = self.invariants.free_rank;
        let prod = &self.coordinates * &self.relations.transpose();
        self.invariants.torsion.iter().enumerate().all(|(r, d)| {
            (0..prod.cols()).all(|j| (big(prod.get(t + r, j)) % d).is_zero())
        })
    }

    pub fn generator_objects(&self) -> Vec<KarObject> {
        self.generators.iter().map(|k| representative(&self.spec, k, self.bound).expect("enumerated class")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn rationals_full() {
        let p = k0_presentation(&CategorySpec::full(Ring::Rationals), 6).unwrap();
        assert_eq!(p.invariants, K0Invariants { free_rank: 1, torsion: vec![] });
        for n in 1..=6 {
            assert_eq!(ints(&p.class_of(&KarObject::free(&Ring::Rationals, n)).unwrap()), vec![n as i64]);
        }
        assert!(p.relations_vanish());
    }

    #[test]
    fn two_three_is_z() {
        let q = Ring::Rationals;
        let p = k0_presentation(&CategorySpec::allowed(q.clone(), vec![2, 3], 12).unwrap(), 12).unwrap();
        assert_eq!(p.invariants.free_rank, 1);
        assert!(p.invariants.torsion.is_empty());
        let two = ints(&p.class_of(&KarObject::free(&q, 2)).unwrap())[0];
        let three = ints(&p.class_of(&KarObject::free(&q, 3)).unwrap())[0];
        assert_eq!(three - two, 1);
        assert_eq!(two, 2);
    }

    #[test]
    fn kar_of_two_three_product() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let spec = CategorySpec::full(r.clone()).with_layer(Layer::Kar);
        let p = k0_presentation(&spec, 4).unwrap();
        assert_eq!(p.invariants.free_rank, 2);
        assert_eq!(p.generators[0], vec![1, 0]);
        assert_eq!(p.generators[1], vec![0, 1]);
        assert_eq!(ints(&p.class_of_key(&[3, 1]).unwrap()), vec![3, 1]);
    }

    #[test]
    fn wkar_of_product_is_diagonal() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let spec = CategorySpec::full(r).with_layer(Layer::Wkar);
        let p = k0_presentation(&spec, 3).unwrap();
        assert!(p.generators.iter().all(|k| k[0] == k[1]));
        assert_eq!(p.invariants.free_rank, 1);
    }

    #[test]
    fn composite_modulus_refused() {
        let r = Ring::integers_mod(6).unwrap();
        assert!(matches!(k0_presentation(&CategorySpec::full(r), 3), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn integers_by_rank() {
        let p = k0_presentation(&CategorySpec::full(Ring::Integers), 5).unwrap();
        assert_eq!(p.invariants, K0Invariants { free_rank: 1, torsion: vec![] });
    }
}
