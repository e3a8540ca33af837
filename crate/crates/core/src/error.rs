use thiserror::Error;

/// Errors raised by the algebraic layer and the search routines built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element has {found} residues but the group has {expected} invariant factors")]
    ElementGroupMismatch { expected: usize, found: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("element does not match the shape of the model: {0}")]
    ElementModelMismatch(String),

    #[error("element is not in the monoid (class {class:?} is not zero)")]
    NotInMonoid { class: Vec<u32> },

    #[error("element is not an atom")]
    NotAtom,

    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("component {component} has rank {rank}, expected rank one")]
    RankNotOne { component: usize, rank: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
