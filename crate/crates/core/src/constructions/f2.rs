//! The two-block construction beating `⌊n/k⌋` by `C(2k,k)·k/2 - k`.
//!
//! A 2k-set `K ⊂ A` is split into complementary label pairs `H_i / G_i`.
//! For every pair but the first, a `k × k` lattice `L_i ⊂ B` is laid out;
//! `H_i` is joined with each lattice row and `G_i` with each column. The
//! remaining room in `B` holds disjoint k-sets `F_j`, all joined with `H_1`.

use crate::error::{Error, Result};
use crate::setsystem::{Family, Layout, TransversalSet};
use crate::subsets::{binomial, lex_subsets};

/// Smallest admissible block size for `construct_f2_lower(_, k)`.
pub fn min_block_size(k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let central = binomial(2 * k as u64, k as u64)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or_else(|| Error::Domain(format!("C(2k, k) overflows for k = {k}")))?;
    let lattice_room = (central - 2) / 2 * k * k;
    Ok(lattice_room.max(k))
}

/// Size of the construction: `⌊n/k⌋ + C(2k,k)·k/2 - k`.
pub fn f2_lower_size(n: usize, k: usize) -> Result<usize> {
    let central = binomial(2 * k as u64, k as u64).unwrap_or(u128::MAX) as usize;
    Ok(n / k + central / 2 * k - k)
}

pub fn construct_f2_lower(n: usize, k: usize) -> Result<Family> {
    let min_n = min_block_size(k)?;
    if n < min_n {
        return Err(Error::Precondition(format!(
            "n >= (C(2k,k) - 2)·k²/2 is required; for k = {k} the minimal admissible n is {min_n}, got {n}"
        )));
    }
    let layout = Layout::new(2, n, k)?;
    let b0 = n;

    // Labels: H_i are the k-subsets of K = {0..2k} containing 0, in lex
    // order; G_i = K \ H_i. H_1 = {0..k} comes first.
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = lex_subsets(2 * k, k)
        .into_iter()
        .filter(|s| s[0] == 0)
        .map(|h| {
            let g = (0..2 * k).filter(|x| !h.contains(x)).collect();
            (h, g)
        })
        .collect();
    let m = pairs.len();

    let mut members = Vec::with_capacity(2 * (m - 1) * k + n / k);
    let mut push = |a: &[usize], b: &mut dyn Iterator<Item = usize>| -> Result<()> {
        let elems: Vec<usize> = a.iter().copied().chain(b).collect();
        members.push(TransversalSet::transversal(&layout, &elems)?);
        Ok(())
    };

    for (i, (h, g)) in pairs.iter().enumerate().skip(1) {
        let lattice = b0 + (i - 1) * k * k;
        for r in 0..k {
            push(h, &mut (0..k).map(|c| lattice + r * k + c))?;
        }
        for c in 0..k {
            push(g, &mut (0..k).map(|r| lattice + r * k + c))?;
        }
    }

    let used = (m - 1) * k * k;
    let d = n / k - (m - 1) * k;
    let h1 = &pairs[0].0;
    for j in 0..d {
        let start = b0 + used + j * k;
        push(h1, &mut (start..start + k))?;
    }
    Family::new(layout, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::verify_family;

    #[test]
    fn small_cases() {
        let f = construct_f2_lower(8, 2).unwrap();
        assert_eq!(f.len(), 8);
        assert!(verify_family(&f).valid);
        let f = construct_f2_lower(1, 1).unwrap();
        assert_eq!(f.len(), 1);
        let f = construct_f2_lower(40, 2).unwrap();
        assert_eq!(f.len(), 24);
        assert!(verify_family(&f).valid);
    }

    #[test]
    fn rejects_small_n_with_minimum() {
        let err = construct_f2_lower(7, 2).unwrap_err();
        assert!(
            err.to_string().contains("minimal admissible n is 8"),
            "{err}"
        );
        assert_eq!(min_block_size(3).unwrap(), 81);
        assert!(construct_f2_lower(80, 3).is_err());
    }

    #[test]
    fn lattice_elements_have_degree_two() {
        let f = construct_f2_lower(9, 2).unwrap();
        let deg = f.degrees();
        // B = 9..18: two 2x2 lattices then one leftover pair and an unused point
        assert_eq!(&deg[9..17], &[2, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(deg[17], 0);
        assert!(deg[..4].iter().all(|&d| d >= 1));
    }
}
