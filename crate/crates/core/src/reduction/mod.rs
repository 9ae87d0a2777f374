//! The slow path: linear reduction, vertex splitting and edge cutting.

pub mod cutting;
pub mod linear;
pub mod split;
pub mod sum;

pub use cutting::{
    cut_multi_edge, cut_single_edge, find_star_cut, is_balanced, is_balanced_at, is_star_cut, EdgeCutResult,
};
pub use linear::{
    is_proper_quadruple, linear_reduction_step, oracle_report, oracle_value, proper_quadruples,
    smallest_proper_quadruple, OracleOptions, OracleReport, DEFAULT_ORACLE_CAP,
};
pub use split::{split_configurations, tree_reduction, vertex_split, SplitChoice, MAX_FREE_ITEMS};
pub use sum::{epsilon_cuts, epsilon_sum, Quadruple, SignedSum, EPSILON_MAX_N};
