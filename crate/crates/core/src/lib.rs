//! Maximal repetitions (runs) in words and their split into primary and
//! secondary runs.
//!
//! A secondary run is one that is *generated* by a pair of cognate,
//! non-separated runs of a much smaller period; everything else is primary.
//! The crate computes `R(w)`, classifies it, and checks the combinatorial
//! facts about that classification (uniqueness of generating pairs, the
//! closed form of generated runs, the point-covering bound and the explicit
//! constants of the density bounds) against brute-force oracles.
//!
//! Positions are 1-based and inclusive everywhere in the public API, so a
//! factor `w[i..j]` is the `Factor { start: i, end: j }`.

pub mod error;
pub mod generation;
pub mod par;
pub mod periodicity;
pub mod points;
pub mod ratio;
pub mod report;
pub mod runs;
pub mod stats;
pub mod structure;
mod suffix;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use generation::{classify, GenerationFactor, GenerationRecord, Taxonomy};
pub use periodicity::ExactRational;
pub use points::{Point, WeightedPointSet};
pub use runs::{find_runs, find_runs_oracle, Run, RunSet};
pub use stats::{lambda_stats, LambdaStats};
pub use structure::{cognate_pairs, RunPair};
pub use word::{Factor, Family, Word};
