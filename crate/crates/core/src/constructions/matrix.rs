//! Families of size `⌊n/k⌋^t` over `2^t - 1` blocks.
//!
//! Rows of `H` are the nonzero vectors of `F_2^t`. `C` spreads `k` over the
//! support of each row. Block `α` is cut into cells `A^p_{α,β}` of size
//! `C[α][β]`; the cells with equal `(β, p)` form `S^p_β`, and every map
//! `φ: [t] → [m]` yields the member `∪_β S^{φ(β)}_β`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setsystem::{Family, Layout, TransversalSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixPlan {
    pub t: usize,
    pub k: usize,
    /// `(2^t - 1) × t` 0/1 matrix with pairwise distinct nonzero rows.
    pub h: Vec<Vec<u8>>,
    /// Same shape; positive exactly where `h` is 1; rows sum to `k`.
    pub c: Vec<Vec<usize>>,
}

impl MatrixPlan {
    pub fn new(t: usize, k: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::Domain(format!("t must be at least 2, got {t}")));
        }
        if t >= usize::BITS as usize - 1 {
            return Err(Error::Domain(format!("t = {t} is too large")));
        }
        if k < t {
            return Err(Error::Precondition(format!(
                "k >= t is required to fill every row of C (k = {k}, t = {t})"
            )));
        }
        let rows = (1usize << t) - 1;
        let h: Vec<Vec<u8>> = (1..=rows)
            .map(|a| (0..t).map(|b| ((a >> b) & 1) as u8).collect())
            .collect();
        let c = h
            .iter()
            .map(|row| {
                let support: Vec<usize> = (0..t).filter(|&b| row[b] == 1).collect();
                let (q, r) = (k / support.len(), k % support.len());
                let mut out = vec![0; t];
                for (i, &b) in support.iter().enumerate() {
                    out[b] = q + usize::from(i < r);
                }
                out
            })
            .collect();
        Ok(Self { t, k, h, c })
    }

    pub fn ell(&self) -> usize {
        self.h.len()
    }

    /// Blocks containing points of `S^p_β` (the support of column `β`).
    pub fn column_support(&self, beta: usize) -> Vec<usize> {
        (0..self.ell()).filter(|&a| self.h[a][beta] == 1).collect()
    }
}

pub fn matrix_family(n: usize, k: usize, t: usize) -> Result<Family> {
    let plan = MatrixPlan::new(t, k)?;
    if n < k {
        return Err(Error::Precondition(format!("n = {n} < k = {k}")));
    }
    let ell = plan.ell();
    let m = n / k;
    let layout = Layout::new(ell, n, k)?;

    // cells[beta][p] = elements of S^p_beta
    let mut cells = vec![vec![Vec::new(); m]; t];
    for alpha in 0..ell {
        // within chunk p of block alpha, column beta's cell starts after the earlier columns
        let mut offset = alpha * n;
        for (beta, row) in cells.iter_mut().enumerate() {
            let width = plan.c[alpha][beta];
            for (p, cell) in row.iter_mut().enumerate() {
                let at = offset + p * k;
                cell.extend(at..at + width);
            }
            offset += width;
        }
    }

    let total = m
        .checked_pow(t as u32)
        .ok_or_else(|| Error::Domain("m^t overflows".into()))?;
    let mut members = Vec::with_capacity(total);
    let mut phi = vec![0usize; t];
    for _ in 0..total {
        let elems: Vec<usize> = (0..t)
            .flat_map(|b| cells[b][phi[b]].iter().copied())
            .collect();
        members.push(TransversalSet::transversal(&layout, &elems)?);
        // odometer over [m]^t
        for slot in phi.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    Family::new(layout, members)
}
