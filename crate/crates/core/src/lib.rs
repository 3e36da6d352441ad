//! Maximal δ-subrepetitions of words over integer alphabets.
//!
//! The pipeline reduces subrepetitions to principal maximal `1/δ`-gapped
//! repeats and filters the gapped repeats of the word in three passes. See
//! [`word`] for the position convention used by every public type.

pub mod error;
pub mod filter;
pub mod lce;
pub mod oracle;
pub mod pairs;
pub mod repeats;
pub mod runs;
pub mod word;

pub use error::{Error, Result};
pub use filter::{find_subrepetitions, find_subrepetitions_ratio, Finder, Stats, Subrepetition};
pub use lce::LceIndex;
pub use oracle::Oracle;
pub use repeats::MaxRepeat;
pub use runs::{Run, RunGroups, RunSet};
pub use word::{generate, load_word, min_period, GenKind, InputMode, RationalDelta, Symbol, Word};
