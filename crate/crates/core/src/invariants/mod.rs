//! Arithmetic invariants of elements and of whole monoids.
//!
//! Element-level values are exact. Monoid-level values are suprema over
//! infinitely many elements; they are computed over a bounded scan and carry
//! an exactness flag that is only `Exact` when a structural statement pins the
//! value and the scan reaches it.

mod catenary;
mod davenport;
mod omega;
mod report;
mod scan;

pub(crate) use catenary::bottleneck;
pub use catenary::{catenary, catenary_refined, RefinedCatenary};
pub use davenport::davenport;
pub use omega::{
    observe_omega, omega, omega_growth_witness, verify_omega_tuple, OmegaObservation, OmegaWitness,
};
pub use report::{
    delta_set, is_half_factorial, monoid_omega, union_of_lengths, Exactness, HalfFactoriality,
    InvariantReport, MonoidOmega, Omega, UnionOfLengths,
};
pub use scan::{set_distances, summarize, ElementSummary, Scan};
