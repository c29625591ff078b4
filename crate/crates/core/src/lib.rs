//! Exact enumeration of permutations avoiding sets of classical patterns,
//! with a catalog of closed-form generating functions for triples that
//! contain 1342 and independent engines that cross-check them.
//!
//! The brute-force counts in [`enumerate`] are the ground truth. Everything
//! in [`catalog`] and [`recurrences`] is compared against them coefficient
//! by coefficient.

pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod perm;
pub mod recurrences;
pub mod series;

pub use catalog::{evaluate_auxiliary, evaluate_case, registry, verify_case, CaseSpec, VerifyReport};
pub use enumerate::{count_avoiders, count_by_statistic, count_filtered, CountTable, FilterSpec};
pub use error::{Error, PermError, Result, SeriesError};
pub use perm::{PatternSet, Permutation, Statistic, Symmetry};
pub use series::{Polynomial, RationalSeries};

/// Truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 24;
