//! Counterexample constructions and the `(l, L)` checker.

pub mod chain;
pub mod intervals;
pub mod liouville;
pub mod ll;
pub mod sieve;

pub use chain::{
    build_as, build_as_normalized, chain, shift_residues, AsConstruction, ChainRecord,
    EquationABC, Normalized, ResidueTower,
};
pub use intervals::remove_poly_intervals;
pub use liouville::{
    lambda_q, liouville_set, montecarlo_second_moment, MonteCarloReport, QSignAssignment,
};
pub use ll::{ll_check, LlResult};
pub use sieve::Sieve;
