//! Witness searches for additive and multiplicative patterns.

pub mod additive;
pub mod multiplicative;
pub mod squares;
pub mod witness;

pub use crate::poly::{essentially_distinct, IntPolynomial};
pub use additive::{
    additive_poly_witness, find_ap, find_schur, find_schur_with, ip_prefix, ip_prefix_with, recurrence_witness, IpBudget,
};
pub use multiplicative::{find_mult_schur, find_mult_schur_with, find_mult_square};
pub use squares::{find_diff_square, find_sum_square, DIFF_TRIPLE, SUM_TRIPLE};
pub use witness::{PatternKind, PatternWitness};
