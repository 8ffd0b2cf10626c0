//! Feasibility of expected order statistics, certificate recovery, and
//! construction of parent distributions.

// Negated comparisons double as NaN rejection.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod eigen;
pub mod error;
pub mod feasibility;
pub mod generator;
pub mod hankel;
pub mod io;
pub mod moments;
pub mod oracle;
pub mod recovery;
pub mod scalar;

pub use error::{EosError, Result};
pub use scalar::Scalar;
