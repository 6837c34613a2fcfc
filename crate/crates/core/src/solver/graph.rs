use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::setsystem::{Layout, TransversalSet};
use crate::subsets::{binomial, colex_subsets};

/// Default cap on the number of product-graph vertices.
pub const DEFAULT_VERTEX_BUDGET: u128 = 200_000;

/// Dense adjacency matrices beyond this size are refused outright.
const MAX_ADJACENCY_BYTES: u128 = 1 << 31;

/// Simple undirected graph with bit-row adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueGraph {
    adj: Vec<BitSet>,
    labels: Option<ProductLabels>,
}

/// Maps product-graph vertices back to transversal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLabels {
    layout: Layout,
    subsets: Vec<Vec<usize>>,
}

impl ProductLabels {
    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Per-block subset indices of vertex `v`; block 0 is the fastest digit.
    pub fn digits(&self, mut v: usize) -> Vec<usize> {
        let radix = self.subsets.len();
        (0..self.layout.ell())
            .map(|_| {
                let d = v % radix;
                v /= radix;
                d
            })
            .collect()
    }

    pub fn vertex_set(&self, v: usize) -> TransversalSet {
        let n = self.layout.n();
        let elems: Vec<usize> = self
            .digits(v)
            .into_iter()
            .enumerate()
            .flat_map(|(block, d)| self.subsets[d].iter().map(move |x| block * n + x))
            .collect();
        TransversalSet::from_elements(&self.layout, &elems).expect("labels fit their layout")
    }
}

impl CliqueGraph {
    pub fn new(vertices: usize) -> Self {
        Self {
            adj: vec![BitSet::new(vertices); vertices],
            labels: None,
        }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::ElementOutOfRange {
                element: u.max(v),
                universe: n,
            });
        }
        if u == v {
            return Err(Error::Domain(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn labels(&self) -> Option<&ProductLabels> {
        self.labels.as_ref()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.adj.len() && vertices[i + 1..].iter().all(|&v| self.adj[u].contains(v))
        })
    }

    /// Edges `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }
}

/// The `ell`-fold xor-power of `KG(n, k)` with the default vertex budget.
pub fn build_product_graph(n: usize, k: usize, ell: usize) -> Result<CliqueGraph> {
    build_product_graph_with_budget(n, k, ell, DEFAULT_VERTEX_BUDGET)
}

/// Number of vertices `C(n,k)^ell`, saturating at `u128::MAX`.
pub fn product_vertex_count(n: usize, k: usize, ell: usize) -> u128 {
    let c = binomial(n as u64, k as u64).unwrap_or(u128::MAX);
    (0..ell)
        .try_fold(1u128, |acc, _| acc.checked_mul(c))
        .unwrap_or(u128::MAX)
}

/// Vertices are tuples of k-subsets, one per block, each block enumerated
/// in colex order and block 0 varying fastest. Two vertices are adjacent
/// when their subsets are disjoint in an odd number of blocks.
pub fn build_product_graph_with_budget(
    n: usize,
    k: usize,
    ell: usize,
    budget: u128,
) -> Result<CliqueGraph> {
    let layout = Layout::new(ell, n, k)?;
    let required = product_vertex_count(n, k, ell);
    if required > budget {
        return Err(Error::VertexBudget { required, budget });
    }
    if required.saturating_mul(required) / 8 > MAX_ADJACENCY_BYTES {
        return Err(Error::VertexBudget {
            required,
            budget: budget.min(131_072),
        });
    }
    let v_count = required as usize;
    let subsets = colex_subsets(n, k);
    let c = subsets.len();

    // Kneser adjacency of the factor
    let masks: Vec<BitSet> = subsets
        .iter()
        .map(|s| BitSet::from_indices(n, s.iter().copied()))
        .collect();
    let kneser: Vec<BitSet> = masks
        .iter()
        .map(|a| BitSet::from_indices(c, (0..c).filter(|&j| a.is_disjoint(&masks[j]))))
        .collect();

    let labels = ProductLabels { layout, subsets };

    // lift[i][r] = vertices whose block-i digit is Kneser-adjacent to r
    let mut lift = vec![vec![BitSet::new(v_count); c]; ell];
    for v in 0..v_count {
        for (i, d) in labels.digits(v).into_iter().enumerate() {
            for r in kneser[d].iter() {
                lift[i][r].insert(v);
            }
        }
    }
    let adj = (0..v_count)
        .map(|u| {
            let mut row = BitSet::new(v_count);
            for (i, d) in labels.digits(u).into_iter().enumerate() {
                row.xor_with(&lift[i][d]);
            }
            row
        })
        .collect();
    Ok(CliqueGraph {
        adj,
        labels: Some(labels),
    })
}
