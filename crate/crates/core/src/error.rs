use thiserror::Error;

use crate::rootdata::{LieType, Weight};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}: {bound}")]
    InvalidType {
        family: char,
        rank: usize,
        bound: &'static str,
    },

    #[error("cannot parse Lie type from {0:?} (expected family letter and rank, e.g. \"B3\")")]
    ParseType(String),

    #[error("cannot parse weight from {0:?} (expected comma-separated integers, e.g. \"1,0,2\")")]
    ParseWeight(String),

    #[error("rank mismatch: expected a vector of length {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} is not in P_{level} (theta-pairing {pairing})")]
    OutsideLevel {
        weight: Weight,
        level: u32,
        pairing: i64,
    },

    #[error("level must be at least 1")]
    ZeroLevel,

    #[error("dimension cap exceeded: V{weight} has dimension {dim} > {cap}")]
    DimensionCap { weight: Weight, dim: u128, cap: u128 },

    #[error("{what} requires rank <= {cap}, but {lie_type} has rank {}", lie_type.rank())]
    RankCap {
        what: &'static str,
        lie_type: LieType,
        cap: usize,
    },

    #[error("torus element is singular (Weyl denominator {magnitude:e}); perturb the point")]
    SingularPoint { magnitude: f64 },

    #[error("Verlinde sum for {lambda} x {mu} -> {nu} is {re}{im:+}i, not within {tol:e} of an integer")]
    NonIntegralVerlinde {
        lambda: Weight,
        mu: Weight,
        nu: Weight,
        re: f64,
        im: f64,
        tol: f64,
    },

    #[error("fusion coefficient for {lambda} x {mu} -> {nu} came out negative ({value})")]
    NegativeFusion {
        lambda: Weight,
        mu: Weight,
        nu: Weight,
        value: i64,
    },

    #[error("methods disagree on {lambda} x {mu} -> {nu}: Kac-Walton {kac_walton}, Verlinde {verlinde}")]
    MethodMismatch {
        lambda: Weight,
        mu: Weight,
        nu: Weight,
        kac_walton: u64,
        verlinde: u64,
    },

    #[error("malformed fusion table: {0}")]
    MalformedTable(String),

    #[error("generator source {source_tag} does not apply to {lie_type}")]
    SourceMismatch {
        source_tag: &'static str,
        lie_type: LieType,
    },

    #[error("unknown generator source {0:?}")]
    UnknownSource(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("polynomial system solver failed: {0}")]
    Solver(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}
