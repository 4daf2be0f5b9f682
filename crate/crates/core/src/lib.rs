//! Set families, exact linear solvability decisions and pattern searches for
//! subsets of the natural numbers.
//!
//! The crate is organised around a handful of subsystems:
//!
//! * [`setcore`]: finite truncations of subsets of ℕ, ±1 sequences, exact
//!   correlation statistics and the correlation-based normality test.
//! * [`generators`]: random normal sets, Sturmian return-time sets and
//!   periodic control sets.
//! * [`constructions`]: the counterexample machines (chain sets for
//!   `ax = by + c`, modified Liouville sets, interval removal) and the
//!   `(l, L)` checker.
//! * [`lindecide`]: the exact rational decision procedure for solvability of
//!   `Bx = d` inside every weakly mixing set, its certificates, and Rado's
//!   columns condition.
//! * [`patterns`]: witness searches for additive and multiplicative patterns.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled (the default) and plain iterators otherwise.
//! Results never depend on the number of threads.

pub mod constructions;
pub mod error;
pub mod generators;
pub mod lindecide;
pub mod par;
pub mod patterns;
pub mod poly;
pub mod setcore;

pub use error::{Result, WmError};
pub use generators::Seed;
pub use poly::IntPolynomial;
pub use setcore::{IntegerSet, SignSeq};
