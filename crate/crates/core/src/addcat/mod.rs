//! Matrix categories over a ring, their rank-restricted subcategories, the
//! Karoubi envelope and the weak idempotent completion.

pub mod complement;
pub mod completeness;
pub mod functor;
pub mod kar;
pub mod spec;
pub mod wkar;

pub use complement::{complement_split_mono, standard_inclusion, Splitting};
pub use completeness::{
    is_idempotent_complete, is_weakly_idempotent_complete, IcReport, WicCertificate, WicCounterexample, WicOptions,
    WicReport,
};
pub use functor::{kar_functor, KarItem, RingHom};
pub use kar::{biproduct, is_isomorphic, permutation, split_idempotent, Biproduct, Isomorphism, KarMorphism, KarObject};
pub use spec::{AllowedRanks, CategorySpec, Layer, Restriction};
pub use wkar::{combine_witnesses, wkar_witness, WkarSearch, WkarWitness};
