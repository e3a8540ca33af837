//! Independent oracles and the runner that confronts structural predictions
//! with bounded computations.

mod oracle;
mod suite;

pub use oracle::{oracle_factorizations, oracle_omega_general, AtomMultiset};
pub use suite::{
    run_theorem_suite, run_theorem_suite_with, Check, SuiteOptions, SuiteResult, Verdict,
};
