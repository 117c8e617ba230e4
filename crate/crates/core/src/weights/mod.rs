//! The stupid weight structure on bounded complexes: membership certificates,
//! weight decompositions, the axioms, connectivity and the heart.

pub mod axioms;
pub mod connective;
pub mod heart;
pub mod membership;
pub mod truncate;

pub use axioms::{
    sample_complexes, sample_retractions, verify_axioms, AxiomEntry, AxiomOptions, AxiomReport, AxiomStatus, Counterexample,
    Retraction,
};
pub use connective::{is_connective, ConnectivityFailure, ConnectivityVerdict};
pub use heart::{
    heart_complex_roundtrip, heart_roundtrip, heart_to_wkar, wkar_to_heart, HeartComplex, HeartObject,
    HeartRoundtrip,
};
pub use membership::{
    certify_by_support, required_range, weight_membership, MembershipCertificate, Representative, Side, WeightClassQuery,
};
pub use truncate::{stupid_truncate, WeightDecomposition};
