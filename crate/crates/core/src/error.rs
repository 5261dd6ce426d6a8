use thiserror::Error;

use crate::complex::Simplex;

/// Errors surfaced by constructors and operations across the crate.
///
/// `MalformedInput` covers syntactically broken input (duplicate vertices,
/// missing locations, weights that do not sum to one). `InvalidSubdivision`
/// and `NotASubcomplex` are semantic violations of the structures involved.
/// `HopfPrecondition` and `InternalConsistency` guard the evaluators: the
/// former rejects the Hopf-axiom formula for maps it does not apply to, the
/// latter aborts a homology computation that would otherwise silently paper
/// over a chain-level sign bug.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),

    #[error("{0} is not a subcomplex of the ambient complex")]
    NotASubcomplex(String),

    #[error("not a simplicial map: image of {simplex} does not span a simplex")]
    NotSimplicial { simplex: Simplex },

    #[error(
        "map is not Hopf simplicial: fixed point of dimension {fixed_dim} in non-maximal open simplex {simplex}"
    )]
    HopfPrecondition { simplex: Simplex, fixed_dim: usize },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("exhaustive enumeration refused: complex has {size} simplices, limit is {limit}")]
    EnumerationTooLarge { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
