//! Rank-`r` signotopes: sign maps on the `r`-subsets of `[n]` in which every
//! `(r+1)`-subset sees at most one sign change.
//!
//! The crate covers the combinatorics ([`Subset`], [`Signotope`]), the
//! induced partial order ([`order`]), constructive extensions ([`extend`]),
//! CNF encodings with an embedded solver ([`sat`]) and exhaustive searches
//! ([`search`]).

pub mod cli;
pub mod error;
pub mod extend;
pub mod order;
pub mod sat;
pub mod search;
pub mod signotope;
pub mod subset;
pub mod text;

pub use error::{Error, Result};
pub use extend::ExtensionCertificate;
pub use order::{Comparison, PartialOrder};
pub use signotope::{Sign, SignMap, Signotope};
pub use subset::{binomial, subset_rank, subsets, Subset};
