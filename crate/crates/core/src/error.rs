use num_bigint::BigUint;
use thiserror::Error;

use crate::lattice::ComponentId;

/// Errors raised by configuration building and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate component id `{0}`")]
    DuplicateId(ComponentId),

    #[error("incidence pairs component `{0}` with itself")]
    SelfLoop(ComponentId),

    #[error("incidence references unknown component id `{0}`")]
    UnknownIdInIncidence(ComponentId),

    #[error("configuration must contain at least one component")]
    EmptyConfiguration,

    #[error("divisor references component id `{0}` absent from the configuration")]
    UnknownComponent(ComponentId),

    #[error("divisor does not belong to this configuration")]
    MismatchedConfiguration,

    #[error("operation requires an effective nonzero divisor")]
    ZeroDivisor,

    #[error("configuration is not simple over the divisor support: {0}")]
    NotSimpleConfiguration(String),

    #[error("subdivisor candidate space {candidates} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { candidates: BigUint, cap: u64 },

    #[error("certificate would need {steps} peel steps, more than the cap {cap}")]
    CertificateCapExceeded { steps: u128, cap: u64 },

    #[error("divisor is not reduced: component `{component}` has multiplicity {multiplicity}")]
    NotReduced {
        component: ComponentId,
        multiplicity: u64,
    },

    #[error("divisor support is not a tree of projective lines: {0}")]
    NotTreeOfLines(String),

    #[error("interpolation points must be pairwise distinct")]
    DuplicatePoints,

    #[error("degree bound must be non-negative")]
    NegativeDegree,

    #[error("points and multiplicities must have equal length")]
    PointCountMismatch,

    #[error("classes {i} and {j} have negative pairing")]
    NegativePairwisePairing { i: usize, j: usize },

    #[error("class {index} has non-integral adjunction genus")]
    NonIntegralGenus { index: usize },

    #[error("class {index} has negative adjunction genus")]
    NegativeGenus { index: usize },

    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("invalid sweep bounds: {0}")]
    InvalidSweepBounds(String),

    #[error("value out of range for {0}")]
    ValueOutOfRange(&'static str),
}
