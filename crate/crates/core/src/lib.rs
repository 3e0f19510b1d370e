//! Triangular fuzzy numbers, fuzzy sequence spaces, and the integrated /
//! differentiated matrix domains built from the weight matrices Ω and Γ.
//!
//! Everything infinitary (sups, limits, series) is evaluated at finite
//! truncation and reported as a three-valued [`verdict::Verdict`] with the
//! numeric evidence that produced it.

pub mod domains;
pub mod duals;
pub mod error;
pub mod fuzzy;
pub mod matrices;
pub mod sequences;
pub mod verdict;

pub use error::Error;
pub use fuzzy::{Interval, SpreadPair, TriangularFuzzyNumber};
pub use matrices::InfiniteMatrix;
pub use sequences::{FuzzySequence, Generator};
pub use verdict::{Status, TruncationPolicy, Verdict};
