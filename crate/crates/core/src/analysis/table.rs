//! Construction sizes against exact clique numbers and closed-form bounds.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use super::bounds::{power_upper, upper_c2};
use crate::constructions::{
    build_core, construct_f2_lower, core_to_family, extend_power, is_prime, matrix_family,
    min_block_size, plane_family, trivial_family,
};
use crate::error::{Error, Result};
use crate::setsystem::{verify_family, Family};
use crate::solver::{build_product_graph_with_budget, max_clique, CliqueResult};

/// Pads `f` with extra blocks (fixed set `0..k` in each) up to `ell` blocks.
fn extend_to(mut f: Family, ell: usize) -> Result<Family> {
    let extra: Vec<usize> = (0..f.layout().k()).collect();
    while f.layout().ell() < ell {
        f = extend_power(&f, &extra)?;
    }
    Ok(f)
}

/// The largest verified family among the known constructions for `(n, k, ell)`.
pub fn best_construction(n: usize, k: usize, ell: usize) -> Result<(Family, &'static str)> {
    let mut candidates: Vec<(Family, &'static str)> =
        vec![(trivial_family(n, k, ell)?, "disjoint k-sets")];
    if ell >= 2 && n >= min_block_size(k)? {
        candidates.push((
            extend_to(construct_f2_lower(n, k)?, ell)?,
            "two-block lattice",
        ));
    }
    if k == 1 && ell >= 3 {
        let core = build_core(ell)?;
        if core.core_type().0.iter().all(|&c| c <= n) {
            candidates.push((core_to_family(&core, &vec![n; ell])?, "core extension"));
        }
    }
    if k == 1 && n % 2 == 1 && is_prime(n) && ell > n {
        candidates.push((extend_to(plane_family(n)?, ell)?, "projective plane"));
    }
    let mut t = 2;
    while (1usize << t) - 1 <= ell && t <= k {
        candidates.push((extend_to(matrix_family(n, k, t)?, ell)?, "binary matrix"));
        t += 1;
    }
    let mut best: Option<(Family, &'static str)> = None;
    for (f, label) in candidates {
        if !verify_family(&f).valid {
            return Err(Error::Structure(format!(
                "{label} construction failed verification"
            )));
        }
        if best.as_ref().is_none_or(|(b, _)| f.len() > b.len()) {
            best = Some((f, label));
        }
    }
    Ok(best.expect("trivial family always present"))
}

/// The sharpest applicable closed-form upper bound on `f_ell(n, k)`.
pub fn best_upper(n: usize, k: usize, ell: usize) -> Result<(BigUint, &'static str)> {
    let mut best = (power_upper(n, k, ell)?, "degree recursion");
    if ell == 1 {
        best = (BigUint::from(n / k), "disjoint k-sets");
    }
    if ell == 2 && k >= 2 && n >= 2 {
        let u = upper_c2(n, k)?;
        let floor = u.numer().div_floor(u.denom());
        let floor = floor.to_biguint().expect("positive bound");
        if floor < best.0 {
            best = (floor, "matching bound");
        }
    }
    if k == 1 && ell >= 2 {
        let alg = BigUint::from(ell * n - ell + 1);
        if alg < best.0 {
            best = (alg, "rank bound");
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub ell: usize,
    pub n: usize,
    pub k: usize,
    pub lower_construction: usize,
    pub lower_source: &'static str,
    /// Clique search outcome; `None` when the product graph was too large to build.
    pub search: Option<SearchCell>,
    #[serde(serialize_with = "ser_big")]
    pub upper_formula: BigUint,
    pub upper_source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCell {
    pub value: usize,
    pub exact: bool,
    pub nodes: u64,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl TableRow {
    /// Exact value, when the search completed.
    pub fn exact(&self) -> Option<usize> {
        self.search.as_ref().filter(|s| s.exact).map(|s| s.value)
    }

    /// Best known lower bound: the search result or the construction.
    pub fn best_lower(&self) -> usize {
        self.search
            .as_ref()
            .map_or(0, |s| s.value)
            .max(self.lower_construction)
    }

    pub fn tight(&self) -> bool {
        self.exact()
            .is_some_and(|v| BigUint::from(v) == self.upper_formula)
    }

    /// `lower <= value <= upper` for whatever value is known.
    pub fn sandwich_holds(&self) -> bool {
        let value = self.best_lower();
        self.lower_construction <= value && BigUint::from(value) <= self.upper_formula
    }

    fn exact_or_lb(&self) -> String {
        match self.exact() {
            Some(v) => v.to_string(),
            None => format!(">={}", self.best_lower()),
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ell={} n={} k={} lower={} ({}) value={} upper={} ({})",
            self.ell,
            self.n,
            self.k,
            self.lower_construction,
            self.lower_source,
            self.exact_or_lb(),
            self.upper_formula,
            self.upper_source
        )
    }
}

pub fn table_row(
    n: usize,
    k: usize,
    ell: usize,
    node_budget: u64,
    vertex_budget: u128,
) -> Result<TableRow> {
    let (family, lower_source) = best_construction(n, k, ell)?;
    let (upper_formula, upper_source) = best_upper(n, k, ell)?;
    let search = match build_product_graph_with_budget(n, k, ell, vertex_budget) {
        Ok(g) => {
            let CliqueResult {
                size,
                status,
                nodes_explored,
                ..
            } = max_clique(&g, node_budget);
            Some(SearchCell {
                value: size,
                exact: status == crate::solver::SearchStatus::Exact,
                nodes: nodes_explored,
            })
        }
        Err(Error::VertexBudget { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TableRow {
        ell,
        n,
        k,
        lower_construction: family.len(),
        lower_source,
        search,
        upper_formula,
        upper_source,
    })
}

/// Rows for every `(ell, n, k)` in the grid with `k <= n`, ordered by ell, then k, then n.
pub fn bound_table(
    ells: &[usize],
    ns: &[usize],
    ks: &[usize],
    node_budget: u64,
    vertex_budget: u128,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &ell in ells {
        for &k in ks {
            for &n in ns.iter().filter(|&&n| n >= k) {
                rows.push(table_row(n, k, ell, node_budget, vertex_budget)?);
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 7] = [
    "ell",
    "n",
    "k",
    "lower_construction",
    "exact_or_lb",
    "upper_formula",
    "tight",
];

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.ell.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.lower_construction.to_string(),
            r.exact_or_lb(),
            r.upper_formula.to_string(),
            r.tight().to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
