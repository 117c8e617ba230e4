//! Bounded complexes over a category spec and their homotopy algebra.

pub mod complex;
pub mod homotopy;
mod linear;
pub mod minimal;
pub mod resolve;
pub mod sample;
pub mod split;

pub use complex::{cone, identity_cone, ChainMap, Complex, EquivalenceCertificate, Homotopy};
pub use homotopy::{hom_mod_homotopy, is_contractible, is_null_homotopic, HomSpace};
pub use minimal::{base_change, contractibility_obstruction, homology_profile, homology_ranks, minimal_model, pad_to_spec};
pub use resolve::resolve_wkar_object;
pub use sample::{random_chain_map, random_complex, ComplexShape};
pub use split::{split_contractible, ContractibleSplitting, FailureWitness, SplitOutcome};
