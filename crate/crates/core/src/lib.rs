//! Element-order statistics for finite permutation groups.
//!
//! The crate enumerates permutation groups, computes the order sum `psi(G)`
//! and the average order `o(G) = psi(G) / |G|` exactly, checks classical
//! element-count bounds, replays the numeric side of the argument that no
//! solvable group has average order 211/60, and searches group corpora for a
//! target average order.

pub mod arith;
pub mod bounds;
pub mod constructors;
pub mod corpus;
pub mod error;
pub mod group;
pub mod permutation;
pub mod proof;
pub mod report;
pub mod search;
pub mod series;
pub mod spectrum;
pub mod sylow;

pub use arith::{Natural, Rational};
pub use error::{Error, Result};
pub use group::{PermutationGroup, DEFAULT_CAP};
pub use permutation::Permutation;
pub use report::{BoundReport, Relation, Verdict};
pub use spectrum::OrderSpectrum;
