//! Linear algebra over the two-element field.

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::setsystem::Family;

/// Rows of equal length over F_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<BitSet>,
}

impl GF2Matrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: BitSet) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Domain(format!(
                "row of length {} in a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = BitSet>) -> Result<Self> {
        let mut m = Self::new(cols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].contains(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let p = &head[rank];
            for r in tail.iter_mut().filter(|r| r.contains(col)) {
                r.xor_with(p);
            }
            rank += 1;
        }
        rank
    }
}

pub fn gf2_rank(m: &GF2Matrix) -> usize {
    m.rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    /// Rank of the characteristic vectors of all members and all blocks.
    pub rank: usize,
    /// `|S| + ell - 1`, the rank every semi-intersecting family must reach.
    pub required: usize,
    pub members: usize,
    pub blocks: usize,
    pub holds: bool,
}

/// For a `k = 1` family, the characteristic vectors of the members and of
/// the blocks admit at most one linear dependency, so their rank is at least
/// `|S| + ell - 1`. That rank cannot exceed the universe size, which yields
/// `|S| <= |V| - ell + 1`.
pub fn check_rank_bound(f: &Family) -> Result<RankCheck> {
    let layout = f.layout();
    if layout.k() != 1 {
        return Err(Error::Precondition(format!(
            "rank check needs k = 1, got k = {}",
            layout.k()
        )));
    }
    let universe = layout.universe();
    let mut m = GF2Matrix::new(universe);
    for s in f.members() {
        m.push_row(s.bits().clone())?;
    }
    for b in 0..layout.ell() {
        m.push_row(BitSet::from_indices(universe, layout.block_range(b)))?;
    }
    let rank = m.rank();
    let required = f.len() + layout.ell() - 1;
    Ok(RankCheck {
        rank,
        required,
        members: f.len(),
        blocks: layout.ell(),
        holds: rank >= required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::Layout;

    #[test]
    fn identity_and_repeats() {
        let id = GF2Matrix::from_rows(5, (0..5).map(|i| BitSet::from_indices(5, [i]))).unwrap();
        assert_eq!(id.rank(), 5);
        let r = BitSet::from_indices(5, [0, 3]);
        let rep = GF2Matrix::from_rows(5, [r.clone(), r]).unwrap();
        assert_eq!(rep.rank(), 1);
        assert_eq!(GF2Matrix::new(3).rank(), 0);
    }

    #[test]
    fn dependent_rows() {
        let rows = [
            BitSet::from_indices(4, [0, 1]),
            BitSet::from_indices(4, [1, 2]),
            BitSet::from_indices(4, [0, 2]),
            BitSet::from_indices(4, [3]),
        ];
        assert_eq!(GF2Matrix::from_rows(4, rows).unwrap().rank(), 3);
    }

    #[test]
    fn wrong_row_length() {
        assert!(GF2Matrix::new(3).push_row(BitSet::new(4)).is_err());
    }

    #[test]
    fn empty_family_rank_is_block_count() {
        let f = Family::empty(Layout::new(4, 3, 1).unwrap());
        let c = check_rank_bound(&f).unwrap();
        assert_eq!(c.rank, 4);
        assert!(c.holds);
    }

    #[test]
    fn rejects_k_above_one() {
        let f = Family::empty(Layout::new(2, 4, 2).unwrap());
        assert!(check_rank_bound(&f).is_err());
    }
}
