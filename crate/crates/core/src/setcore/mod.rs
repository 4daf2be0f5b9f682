//! Finite set and sign-sequence carriers plus correlation statistics.

mod bits;
pub mod io;
mod intset;
mod signseq;
pub mod stats;

pub use bits::BitVec;
pub use intset::IntegerSet;
pub use signseq::SignSeq;
pub use stats::{
    correlation, normality_test, subsequence_consistency, word_frequency, CorrelationReport,
    NormalityParams, NormalityReport, Tolerance,
};

use num_rational::BigRational;

/// Serialises a rational as the string `p/q` (or `p` when integral).
pub(crate) fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}
