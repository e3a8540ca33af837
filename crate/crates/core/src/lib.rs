//! Arithmetic of T-block monoids over finite abelian groups: factorizations,
//! sets of lengths, catenary degrees, ω-invariants and the transfer
//! homomorphisms that reduce them to smaller monoids.

pub mod error;
pub mod factorization;
pub mod group;
pub mod invariants;
pub mod monoid;
pub mod transfer;
pub mod verification;

pub use error::{Error, Result};
pub use factorization::{Factorization, FactorizationSet, LengthSet};
pub use group::{AbelianGroup, GroupElement};
pub use monoid::{
    BlockModel, DegreeBound, FreeClasses, LocalComponent, LocalElement, ModelElement,
};
