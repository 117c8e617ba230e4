//! Split Grothendieck groups from bounded iso-class enumeration.

pub mod maps;
pub mod presentation;

pub use maps::{k0_induced_map, wkar_by_k0, K0Map, WkarK0Checker, WkarK0Verdict};
pub use presentation::{enumerate_classes, k0_presentation, k0_presentation_unchecked, representative, K0Invariants, K0Presentation};
