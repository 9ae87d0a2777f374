//! Exact intersection degrees of monomials in the boundary divisor classes
//! of the moduli space of stable genus-zero curves with `n` marked points.
//!
//! The fast path is [`integral_value`]: a monomial becomes a loaded tree,
//! the tree a weighted redundancy forest, and the forest a product of
//! binomial coefficients. [`reduction::oracle_value`] computes the same
//! numbers by repeated linear reduction and is meant for cross-checking.

mod bits;
pub mod combinat;
pub mod dot;
mod error;
pub mod forest;
pub mod generate;
pub mod identity;
mod labels;
mod monomial;
pub mod reduction;
mod tree;

pub use bits::LabelBits;
pub use error::{Error, Result};
pub use forest::{
    integral_value, integral_value_timed, sign_of, sun_like_value, tree_value, Classification, IntegralValue,
    RedundancyForest, StageTimes,
};
pub use labels::{Cut, LabelSet, MAX_LABEL};
pub use monomial::{parse_monomial, Monomial};
pub use tree::{Cluster, ClusterKind, Edge, LoadedTree, WeightedTree};
