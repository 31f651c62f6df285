use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid circulant offset {offset} for n = {n} (offsets must lie in 1..=n/2)")]
    BadCirculantOffset { n: usize, offset: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("automorphism search exceeded its budget ({nodes} nodes explored)")]
    AutomorphismBudget { nodes: u64 },

    #[error("graph too large for automorphism search: {n} vertices (limit {limit})")]
    AutomorphismTooLarge { n: usize, limit: usize },

    #[error("invalid vector set: {0}")]
    InvalidVectorSet(String),

    #[error("state family parameter out of range: {0}")]
    BadFamilyParameter(String),

    #[error("mixed dimensions in vector set: {0} vs {1}")]
    MixedDimensions(usize, usize),

    #[error("local-bound enumeration infeasible: {settings} settings with no symmetry classes")]
    LocalBoundInfeasible { settings: usize },

    #[error("class enumeration infeasible: {0}")]
    ClassEnumerationInfeasible(String),

    #[error("linear program error: {0}")]
    Lp(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
