use thiserror::Error;

/// Errors raised while building or combining the finite structures of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid ring table: {0}")]
    InvalidRing(String),
    #[error("not a ring homomorphism: {0}")]
    InvalidHom(String),
    #[error("subgroup {inner} is not contained in subgroup {outer}")]
    NotContained { inner: usize, outer: usize },
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("ring mismatch: ideals belong to different rings")]
    RingMismatch,
    #[error("functor mismatch: {0}")]
    FunctorMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
