//! Exact maximum clique by branch and bound with a greedy colouring bound.
//!
//! Vertices are renumbered by descending degree (ties by index). A greedy
//! lower bound is computed first. The root candidate set is colour-sorted
//! and split into independent root branches, branch `j` containing the
//! root vertex `v_j` and the candidates coloured before it. Every branch
//! starts from the same greedy bound, so the outcome does not depend on
//! how branches are scheduled across threads. Inside a branch, candidates
//! are greedily coloured in index order and expanded highest colour first.

use serde::Serialize;

use super::graph::CliqueGraph;
use crate::bits::BitSet;

/// Default search-tree node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Exact,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Sorted vertex ids of a clique of `size` vertices.
    pub witness: Vec<usize>,
    pub status: SearchStatus,
    pub nodes_explored: u64,
}

impl CliqueResult {
    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }
}

struct Reordered {
    /// position -> original vertex id
    order: Vec<usize>,
    adj: Vec<BitSet>,
}

impl Reordered {
    fn new(g: &CliqueGraph) -> Self {
        let n = g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| BitSet::from_indices(n, g.neighbors(v).iter().map(|u| pos[u])))
            .collect();
        Self { order, adj }
    }

    /// Greedy sequential colouring of `p` in index order. Returns vertices
    /// with their colours, colours non-decreasing.
    fn colour_sort(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                uncoloured.remove(v);
                q.remove(v);
                for (w, a) in q.words_mut().iter_mut().zip(self.adj[v].words()) {
                    *w &= !a;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn greedy_clique(&self) -> Vec<usize> {
        let mut clique: Vec<usize> = Vec::new();
        for v in 0..self.order.len() {
            if clique.iter().all(|&u| self.adj[u].contains(v)) {
                clique.push(v);
            }
        }
        clique
    }

    fn to_original(&self, clique: &[usize]) -> Vec<usize> {
        let mut w: Vec<usize> = clique.iter().map(|&i| self.order[i]).collect();
        w.sort_unstable();
        w
    }
}

/// One root branch: the clique must contain `root`, other vertices come from `candidates`.
struct Branch {
    root: usize,
    candidates: BitSet,
}

struct BranchOutcome {
    best: Option<Vec<usize>>,
    nodes: u64,
    aborted: bool,
}

struct Search<'a> {
    graph: &'a Reordered,
    best_len: usize,
    best: Option<Vec<usize>>,
    nodes: u64,
    cap: u64,
    aborted: bool,
    shared: Option<&'a std::sync::atomic::AtomicU64>,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.aborted = true;
        }
        if let Some(total) = self.shared {
            // flush occasionally so long branches notice exhaustion elsewhere
            if self.nodes.is_multiple_of(1024) {
                let seen = total.fetch_add(1024, std::sync::atomic::Ordering::Relaxed) + 1024;
                if seen > self.budget {
                    self.aborted = true;
                }
            }
        }
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut p: BitSet) {
        self.tick();
        if self.aborted {
            return;
        }
        let coloured = self.graph.colour_sort(&p);
        for &(v, colour) in coloured.iter().rev() {
            if clique.len() + colour <= self.best_len {
                return;
            }
            clique.push(v);
            let np = p.intersection(&self.graph.adj[v]);
            if np.is_empty() {
                if clique.len() > self.best_len {
                    self.best_len = clique.len();
                    self.best = Some(clique.clone());
                }
            } else {
                self.expand(clique, np);
            }
            clique.pop();
            p.remove(v);
            if self.aborted {
                return;
            }
        }
    }
}

fn run_branch(
    graph: &Reordered,
    branch: &Branch,
    lower: usize,
    cap: u64,
    shared: Option<&std::sync::atomic::AtomicU64>,
    budget: u64,
) -> BranchOutcome {
    let mut search = Search {
        graph,
        best_len: lower,
        best: None,
        nodes: 0,
        cap,
        aborted: false,
        shared,
        budget,
    };
    let mut clique = vec![branch.root];
    if branch.candidates.is_empty() {
        search.tick();
        if 1 > lower {
            search.best = Some(clique);
        }
    } else {
        search.expand(&mut clique, branch.candidates.clone());
    }
    BranchOutcome {
        best: search.best,
        nodes: search.nodes,
        aborted: search.aborted,
    }
}

fn plan(graph: &Reordered, lower: usize) -> Vec<Branch> {
    let n = graph.order.len();
    let all = BitSet::full(n);
    let coloured = graph.colour_sort(&all);
    let mut branches = Vec::new();
    let mut earlier = BitSet::new(n);
    for &(v, colour) in &coloured {
        // a clique through v using only earlier vertices has at most `colour` vertices
        if colour > lower {
            branches.push(Branch {
                root: v,
                candidates: earlier.intersection(&graph.adj[v]),
            });
        }
        earlier.insert(v);
    }
    // highest colour first, matching the order a sequential search would take
    branches.reverse();
    branches
}

fn merge(
    graph: &Reordered,
    g: &CliqueGraph,
    greedy: &[usize],
    outcomes: Vec<BranchOutcome>,
    budget: u64,
) -> CliqueResult {
    let nodes: u64 = outcomes.iter().map(|o| o.nodes).sum();
    let aborted = outcomes.iter().any(|o| o.aborted) || nodes > budget;
    let mut witness = graph.to_original(greedy);
    for found in outcomes.into_iter().filter_map(|o| o.best) {
        let cand = graph.to_original(&found);
        if cand.len() > witness.len() || (cand.len() == witness.len() && cand < witness) {
            witness = cand;
        }
    }
    assert!(
        g.is_clique(&witness),
        "internal error: reported witness is not a clique"
    );
    CliqueResult {
        size: witness.len(),
        witness,
        status: if aborted {
            SearchStatus::LowerBoundOnly
        } else {
            SearchStatus::Exact
        },
        nodes_explored: nodes,
    }
}

/// Exact clique number with a witness. If the node budget runs out the
/// best clique seen so far is returned with [`SearchStatus::LowerBoundOnly`].
pub fn max_clique(g: &CliqueGraph, budget: u64) -> CliqueResult {
    let graph = Reordered::new(g);
    let greedy = graph.greedy_clique();
    let branches = plan(&graph, greedy.len());
    let mut outcomes = Vec::with_capacity(branches.len());
    let mut spent = 0u64;
    for b in &branches {
        let out = run_branch(
            &graph,
            b,
            greedy.len(),
            budget - spent.min(budget),
            None,
            budget,
        );
        spent += out.nodes;
        let stop = out.aborted || spent > budget;
        outcomes.push(out);
        if stop {
            break;
        }
    }
    merge(&graph, g, &greedy, outcomes, budget)
}

/// Same search with root branches spread over `threads` workers. Exact
/// results (size, witness, node count) equal those of [`max_clique`].
#[cfg(feature = "parallel")]
pub fn max_clique_parallel(g: &CliqueGraph, budget: u64, threads: usize) -> CliqueResult {
    use rayon::prelude::*;
    use std::sync::atomic::AtomicU64;

    if threads <= 1 {
        return max_clique(g, budget);
    }
    let graph = Reordered::new(g);
    let greedy = graph.greedy_clique();
    let branches = plan(&graph, greedy.len());
    let total = AtomicU64::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let outcomes: Vec<BranchOutcome> = pool.install(|| {
        branches
            .par_iter()
            .map(|b| run_branch(&graph, b, greedy.len(), budget, Some(&total), budget))
            .collect()
    });
    merge(&graph, g, &greedy, outcomes, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::build_product_graph;

    #[test]
    fn petersen_has_clique_number_two() {
        let g = build_product_graph(5, 2, 1).unwrap();
        let r = max_clique(&g, DEFAULT_NODE_BUDGET);
        assert_eq!(r.size, 2);
        assert!(r.is_exact());
        assert!(g.is_clique(&r.witness));
    }

    #[test]
    fn empty_and_edgeless() {
        let r = max_clique(&CliqueGraph::new(0), 10);
        assert_eq!((r.size, r.status), (0, SearchStatus::Exact));
        let r = max_clique(&CliqueGraph::new(4), 10);
        assert_eq!(r.size, 1);
        assert_eq!(r.witness, vec![0]);
    }

    #[test]
    fn complete_graph() {
        let mut g = CliqueGraph::new(7);
        for u in 0..7 {
            for v in u + 1..7 {
                g.add_edge(u, v).unwrap();
            }
        }
        let r = max_clique(&g, 1000);
        assert_eq!(r.size, 7);
        assert_eq!(r.witness, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn tiny_budget_downgrades_status() {
        let g = build_product_graph(3, 1, 4).unwrap();
        let r = max_clique(&g, 3);
        assert_eq!(r.status, SearchStatus::LowerBoundOnly);
        assert!(g.is_clique(&r.witness));
        assert!(r.size <= 9);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let g = build_product_graph(3, 1, 4).unwrap();
        let seq = max_clique(&g, DEFAULT_NODE_BUDGET);
        for threads in [2, 3, 8] {
            assert_eq!(max_clique_parallel(&g, DEFAULT_NODE_BUDGET, threads), seq);
        }
    }
}
