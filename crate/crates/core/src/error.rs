use thiserror::Error;

use crate::addcat::KarObject;
use crate::exactlin::Ring;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{op} is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: Ring },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("p∘i is not the identity; not a split monomorphism")]
    NotSplitMono,
    #[error("split mono has no complement in the category: {reason}")]
    SplitMonoNoComplement { ambient: KarObject, reason: String },
    #[error("witness failed verification: {0}")]
    WitnessInvalid(String),
    #[error("complex is not contractible")]
    NotContractible,
    #[error("category specs differ")]
    SpecMismatch,
    #[error("certificate failed verification: {0}")]
    CertificateInvalid(String),
    #[error("unsupported ring homomorphism: {0}")]
    UnsupportedHom(String),
    #[error("presentation is unstable: bound {bound} gives {at_bound}, bound {next} gives {at_next}")]
    UnstablePresentation { bound: usize, next: usize, at_bound: String, at_next: String },
    #[error("cross-check failure: {0}")]
    CrossCheckFailure(String),
    #[error("object is not in the category: {0}")]
    NotAnObject(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{path}: {message}")]
    Json { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
