//! Peeling a two-block family along high-degree points of `B`.
//!
//! Each round takes the point `p ∈ B` of largest degree among the surviving
//! members (lowest index on ties), removes the members `Z` through `p` and
//! the members `M` meeting some `Z` inside `B`, and records the A-traces of
//! `Z`. Rounds stop once the survivors are pairwise disjoint in `B`. The
//! recorded A-traces form a cross-intersecting matching.

use serde::Serialize;

use super::matching::{verify_matching, CrossMatching, MatchingReport};
use crate::error::{Error, Result};
use crate::setsystem::Family;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelRound {
    /// Global index of the chosen point of `B`.
    pub point: usize,
    /// Members through `point` (indices into the family).
    pub through: Vec<usize>,
    /// Other members meeting one of `through` inside `B`.
    pub touching: Vec<usize>,
    /// `d_i = |through|`.
    pub degree: usize,
    /// `d + (k - 1)·d·(d - 1)`.
    pub removal_bound: usize,
}

impl PeelRound {
    pub fn removed(&self) -> usize {
        self.through.len() + self.touching.len()
    }

    pub fn within_removal_bound(&self) -> bool {
        self.removed() <= self.removal_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelingTrace {
    pub k: usize,
    pub family_size: usize,
    pub rounds: Vec<PeelRound>,
    /// Members left when no two share a point of `B`.
    pub residual: Vec<usize>,
    /// Some point of `B` has degree above `k` in the input.
    pub b_degree_exceeds_k: bool,
    /// `A`-traces of each round, one group per round.
    pub a_traces: Vec<Vec<Vec<usize>>>,
}

impl PeelingTrace {
    /// Number of rounds `q`.
    pub fn q(&self) -> usize {
        self.rounds.len()
    }

    /// `|S| = |S_q| + Σ (|Z_i| + |M_i|)`.
    pub fn accounting_holds(&self) -> bool {
        self.family_size
            == self.residual.len() + self.rounds.iter().map(PeelRound::removed).sum::<usize>()
    }

    /// The A-traces as a matching; `None` when `q < 2` or `k < 2`.
    pub fn matching(&self) -> Option<CrossMatching> {
        (self.q() >= 2 && self.k >= 2).then(|| CrossMatching::new(self.k, self.a_traces.clone()))
    }

    pub fn matching_report(&self) -> Option<MatchingReport> {
        self.matching().as_ref().map(verify_matching)
    }
}

fn require_two_blocks(f: &Family) -> Result<()> {
    if f.layout().ell() != 2 {
        return Err(Error::Precondition(format!(
            "peeling needs ell = 2, got ell = {}",
            f.layout().ell()
        )));
    }
    Ok(())
}

pub fn peel(f: &Family) -> Result<PeelingTrace> {
    require_two_blocks(f)?;
    let layout = f.layout();
    let (n, k) = (layout.n(), layout.k());
    let members = f.members();
    let b_traces: Vec<Vec<usize>> = members.iter().map(|m| m.trace(layout, 1)).collect();
    let a_traces: Vec<Vec<usize>> = members.iter().map(|m| m.trace(layout, 0)).collect();

    let b_degrees = |alive: &[bool]| {
        let mut deg = vec![0usize; n];
        for (tr, _) in b_traces.iter().zip(alive).filter(|(_, a)| **a) {
            for &e in tr {
                deg[e - n] += 1;
            }
        }
        deg
    };

    let mut alive = vec![true; members.len()];
    let b_degree_exceeds_k = b_degrees(&alive).iter().any(|&d| d > k);
    let mut rounds = Vec::new();
    let mut groups = Vec::new();
    loop {
        let deg = b_degrees(&alive);
        let (p_local, max_deg) =
            deg.iter().enumerate().fold(
                (0, 0),
                |best, (e, &d)| if d > best.1 { (e, d) } else { best },
            );
        if max_deg <= 1 {
            break;
        }
        let point = n + p_local;
        let through: Vec<usize> = (0..members.len())
            .filter(|&i| alive[i] && b_traces[i].contains(&point))
            .collect();
        let touched: Vec<usize> = through
            .iter()
            .flat_map(|&z| b_traces[z].iter().copied())
            .collect();
        let touching: Vec<usize> = (0..members.len())
            .filter(|&i| {
                alive[i] && !through.contains(&i) && b_traces[i].iter().any(|e| touched.contains(e))
            })
            .collect();
        for &i in through.iter().chain(&touching) {
            alive[i] = false;
        }
        let d = through.len();
        groups.push(through.iter().map(|&z| a_traces[z].clone()).collect());
        rounds.push(PeelRound {
            point,
            degree: d,
            removal_bound: d + (k - 1) * d * (d - 1),
            through,
            touching,
        });
    }
    Ok(PeelingTrace {
        k,
        family_size: members.len(),
        rounds,
        residual: (0..members.len()).filter(|&i| alive[i]).collect(),
        b_degree_exceeds_k,
        a_traces: groups,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    /// All A-degrees or all B-degrees are at most k.
    Holds,
    /// Both sides have a point of degree above k.
    Counterexample,
    /// `|S| <= 2k³`: the statement makes no claim.
    Inapplicable,
}

/// For `|S| > 2k³`, either every point of `A` or every point of `B` has degree at most `k`.
pub fn degree_dichotomy(f: &Family) -> Result<Dichotomy> {
    require_two_blocks(f)?;
    let (n, k) = (f.layout().n(), f.layout().k());
    if f.len() <= 2 * k * k * k {
        return Ok(Dichotomy::Inapplicable);
    }
    let deg = f.degrees();
    let a_ok = deg[..n].iter().all(|&d| d <= k);
    let b_ok = deg[n..].iter().all(|&d| d <= k);
    Ok(if a_ok || b_ok {
        Dichotomy::Holds
    } else {
        Dichotomy::Counterexample
    })
}
