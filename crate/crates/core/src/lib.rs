//! Numerical semigroups counted by genus and number of even gaps.
//!
//! - [`semigroup`]: the [`Semigroup`] type and per-semigroup quantities.
//! - [`tree`]: exhaustive enumeration of all semigroups of a given genus.
//! - [`strata`]: the one-half map, translations and related constructions.
//! - [`closed`]: closed sets and the sequence `f_γ`.

pub mod closed;
pub mod error;
pub mod semigroup;
pub mod strata;
pub mod tree;

pub use error::{Error, Result};
pub use semigroup::{EvenGapProfile, Semigroup};
pub use tree::{StratumRow, TreeConfig};
