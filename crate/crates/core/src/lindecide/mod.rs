//! Exact decision procedure for solvability of `Bx = d` inside every weakly
//! mixing set, with checkable certificates, plus Rado's columns condition.

pub mod certificate;
pub mod decide;
pub mod fm;
pub mod hnf;
pub mod linalg;
pub mod matrix;
pub mod rado;
pub mod search;

pub use certificate::{verify_certificate, CheckItem, GroupConstants, SolvabilityCertificate, VerificationReport};
pub use decide::{decide_wm_solvable, NotSolvableReason, Verdict};
pub use fm::{positive_vector, positive_vector_certified, PositiveResult};
pub use hnf::integer_point;
pub use linalg::{nullspace, pair_projection_dim, particular_solution, rank, ParticularSolution};
pub use matrix::{parse_rational, parse_vector, RationalMatrix, RationalVector};
pub use rado::{rado_regular, RadoPartition, RadoResult};
pub use search::{find_solution_in_set, SetSolution};
