//! Exact oracle: product graphs, maximum clique, and GF(2) rank checks.

mod clique;
mod dimacs;
mod gf2;
mod graph;

#[cfg(feature = "parallel")]
pub use clique::max_clique_parallel;
pub use clique::{max_clique, CliqueResult, SearchStatus, DEFAULT_NODE_BUDGET};
pub use dimacs::{parse_dimacs, to_dimacs};
pub use gf2::{check_rank_bound, gf2_rank, GF2Matrix, RankCheck};
pub use graph::{
    build_product_graph, build_product_graph_with_budget, product_vertex_count, CliqueGraph,
    ProductLabels, DEFAULT_VERTEX_BUDGET,
};

use crate::error::Result;

/// `f_ell(n, k)`: the clique number of the `ell`-th xor-power of `KG(n, k)`.
pub fn brute_force_f(n: usize, k: usize, ell: usize, budget: u64) -> Result<CliqueResult> {
    let g = build_product_graph(n, k, ell)?;
    Ok(max_clique(&g, budget))
}
