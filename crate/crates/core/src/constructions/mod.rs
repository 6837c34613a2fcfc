//! Explicit semi-intersecting families.

mod cores;
mod f2;
mod matrix;
mod plane;

pub use cores::{build_core, core3, core4, core5, core_to_family, fuse, Core, CoreType};
pub use f2::{construct_f2_lower, f2_lower_size, min_block_size};
pub use matrix::{matrix_family, MatrixPlan};
pub use plane::{is_prime, plane_family};

use crate::error::{Error, Result};
use crate::setsystem::{Family, TransversalSet};

/// Appends a block and adds the same k-set `extra` (local indices within
/// the new block) to every member. Disjointness counts are unchanged, so a
/// valid family stays valid.
pub fn extend_power(f: &Family, extra: &[usize]) -> Result<Family> {
    let layout = f.layout();
    let mut local = extra.to_vec();
    local.sort_unstable();
    local.dedup();
    if local.len() != extra.len()
        || local.len() != layout.k()
        || local.iter().any(|&x| x >= layout.n())
    {
        return Err(Error::Precondition(format!(
            "{extra:?} is not a {}-subset of a block of size {}",
            layout.k(),
            layout.n()
        )));
    }
    let wider = layout.with_extra_block();
    let offset = layout.ell() * layout.n();
    let members = f
        .members()
        .iter()
        .map(|m| {
            let elems: Vec<usize> = m
                .elements()
                .chain(local.iter().map(|x| x + offset))
                .collect();
            TransversalSet::from_elements(&wider, &elems)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(wider, members)
}

/// `⌊n/k⌋` pairwise disjoint k-sets in block 0, padded with the first k
/// points of every other block: the trivial `ω ≥ ⌊n/k⌋` family.
pub fn trivial_family(n: usize, k: usize, ell: usize) -> Result<Family> {
    let layout = crate::setsystem::Layout::new(ell, n, k)?;
    let pad: Vec<usize> = (1..ell).flat_map(|b| b * n..b * n + k).collect();
    let members = (0..n / k)
        .map(|j| {
            let elems: Vec<usize> = (j * k..(j + 1) * k).chain(pad.iter().copied()).collect();
            TransversalSet::transversal(&layout, &elems)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(layout, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::{verify_family, Layout};

    #[test]
    fn extend_keeps_validity() {
        let f = construct_f2_lower(8, 2).unwrap();
        let g = extend_power(&f, &[3, 5]).unwrap();
        assert_eq!(g.layout().ell(), 3);
        assert_eq!(g.len(), 8);
        assert!(verify_family(&g).valid);
        let h = extend_power(&g, &[0, 1]).unwrap();
        assert_eq!(h.len(), 8);
        assert!(verify_family(&h).valid);
    }

    #[test]
    fn extend_empty() {
        let f = Family::empty(Layout::new(2, 4, 2).unwrap());
        let g = extend_power(&f, &[0, 1]).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.layout().ell(), 3);
    }

    #[test]
    fn extend_rejects_bad_sets() {
        let f = construct_f2_lower(8, 2).unwrap();
        assert!(extend_power(&f, &[1]).is_err());
        assert!(extend_power(&f, &[1, 1]).is_err());
        assert!(extend_power(&f, &[1, 8]).is_err());
    }

    #[test]
    fn trivial() {
        let f = trivial_family(7, 2, 3).unwrap();
        assert_eq!(f.len(), 3);
        assert!(verify_family(&f).valid);
    }
}
