//! Bounds, matchings, peeling, and bound tables.

mod bounds;
mod matching;
mod montecarlo;
mod peel;
mod table;

pub use bounds::{
    gamma_raw, gamma_reciprocal, gamma_upper, log2_floor_plus_one, lower_c2, power_lower,
    power_upper, power_upper_summary, t1_bounds, to_f64, upper_c2, Rational,
};
pub use matching::{complementary_pairs_k2, verify_matching, CrossMatching, MatchingReport};
pub use montecarlo::{permutation_type_mc, TypeEstimate};
pub use peel::{degree_dichotomy, peel, Dichotomy, PeelRound, PeelingTrace};
pub use table::{
    best_construction, best_upper, bound_table, table_row, to_csv, SearchCell, TableRow, CSV_HEADER,
};
