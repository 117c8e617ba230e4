use std::fmt;

use super::kar::KarObject;
use super::wkar::wkar_witness;
use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// The submonoid of ℕ generated by a finite list of ranks.
///
/// `bound` is the enumeration bound used by deciders; membership itself is
/// exact for every rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AllowedRanks {
    generators: Vec<usize>,
    bound: usize,
}

impl AllowedRanks {
    pub fn new(mut generators: Vec<usize>, bound: usize) -> Result<Self> {
        generators.retain(|&g| g > 0);
        generators.sort_unstable();
        generators.dedup();
        let set = AllowedRanks { generators, bound };
        set.check_closed()?;
        Ok(set)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn contains(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for k in 1..=n {
            reach[k] = self.generators.iter().any(|&g| g <= k && reach[k - g]);
        }
        reach[n]
    }

    /// Elements of the set up to `limit`, ascending.
    pub fn members_up_to(&self, limit: usize) -> Vec<usize> {
        (0..=limit).filter(|&n| self.contains(n)).collect()
    }

    pub fn max_generator(&self) -> usize {
        self.generators.iter().copied().max().unwrap_or(0)
    }

    fn check_closed(&self) -> Result<()> {
        let members = self.members_up_to(self.bound);
        for &a in &members {
            for &b in &members {
                if a + b <= self.bound && !self.contains(a + b) {
                    return Err(Error::InvalidInput(format!("allowed ranks not closed: {a} + {b}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Restriction {
    Full,
    Allowed(AllowedRanks),
}

/// Which completion of the base matrix category a spec describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    Base,
    Kar,
    Wkar,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Base => "base",
            Layer::Kar => "kar",
            Layer::Wkar => "wkar",
        }
    }
}

/// A decidable additive category: the free modules over `ring` whose ranks
/// satisfy `restriction`, or its Karoubi envelope, or its weak idempotent
/// completion inside the Karoubi envelope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CategorySpec {
    pub ring: Ring,
    pub restriction: Restriction,
    pub layer: Layer,
}

impl CategorySpec {
    pub fn full(ring: Ring) -> Self {
        CategorySpec { ring, restriction: Restriction::Full, layer: Layer::Base }
    }

    pub fn allowed(ring: Ring, generators: Vec<usize>, bound: usize) -> Result<Self> {
        Ok(CategorySpec {
            ring,
            restriction: Restriction::Allowed(AllowedRanks::new(generators, bound)?),
            layer: Layer::Base,
        })
    }

    pub fn with_layer(&self, layer: Layer) -> Self {
        CategorySpec { layer, ..self.clone() }
    }

    /// The base matrix category this spec completes.
    pub fn base(&self) -> Self {
        self.with_layer(Layer::Base)
    }

    pub fn allows_rank(&self, n: usize) -> bool {
        match &self.restriction {
            Restriction::Full => true,
            Restriction::Allowed(a) => a.contains(n),
        }
    }

    pub fn allowed_up_to(&self, limit: usize) -> Vec<usize> {
        (0..=limit).filter(|&n| self.allows_rank(n)).collect()
    }

    pub fn max_generator(&self) -> usize {
        match &self.restriction {
            Restriction::Full => 1,
            Restriction::Allowed(a) => a.max_generator(),
        }
    }

    /// Decides whether `obj` is (up to isomorphism) an object of this category.
    ///
    /// Base objects are free of an allowed rank. Any idempotent fits inside
    /// some allowed rank unless the allowed set is `{0}`, so the Karoubi layer
    /// accepts every object in that case.
    pub fn contains(&self, obj: &KarObject) -> Result<bool> {
        if obj.ring() != &self.ring {
            return Err(Error::RingMismatch(obj.ring().clone(), self.ring.clone()));
        }
        let free_allowed = obj.is_free() && self.allows_rank(obj.size());
        Ok(match self.layer {
            Layer::Base => free_allowed,
            Layer::Kar => self.allows_rank(obj.size()) || self.max_generator() > 0 || obj.is_zero_object(),
            Layer::Wkar => free_allowed || wkar_witness(obj, &self.base(), None)?.witness.is_some(),
        })
    }

    pub fn require(&self, obj: &KarObject) -> Result<()> {
        if self.contains(obj)? {
            Ok(())
        } else {
            Err(Error::NotAnObject(format!("{obj} is not an object of {self}")))
        }
    }
}

impl fmt::Display for CategorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match &self.restriction {
            Restriction::Full => format!("matcat({})", self.ring),
            Restriction::Allowed(a) => format!("matcat({})<{:?}>", self.ring, a.generators()),
        };
        match self.layer {
            Layer::Base => write!(f, "{base}"),
            Layer::Kar => write!(f, "Kar({base})"),
            Layer::Wkar => write!(f, "wKar({base})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_semigroup_membership() {
        let a = AllowedRanks::new(vec![2, 3], 12).unwrap();
        assert_eq!(a.members_up_to(6), vec![0, 2, 3, 4, 5, 6]);
        let even = AllowedRanks::new(vec![2], 10).unwrap();
        assert!(!even.contains(5));
        assert!(even.contains(8));
    }

    #[test]
    fn membership_by_layer() {
        let q = Ring::Rationals;
        let spec = CategorySpec::allowed(q.clone(), vec![2, 3], 12).unwrap();
        let k1 = KarObject::free(&q, 1);
        let k3 = KarObject::free(&q, 3);
        assert!(!spec.contains(&k1).unwrap());
        assert!(spec.contains(&k3).unwrap());
        let rank_one_in_k2 = KarObject::new(crate::exactlin::Matrix::from_i64(&q, 2, 2, &[1, 0, 0, 0])).unwrap();
        assert!(!spec.contains(&rank_one_in_k2).unwrap());
        assert!(spec.with_layer(Layer::Kar).contains(&rank_one_in_k2).unwrap());
        assert!(spec.with_layer(Layer::Wkar).contains(&rank_one_in_k2).unwrap());
    }
}
