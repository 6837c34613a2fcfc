//! Random orderings of a matching's ground set. An ordering has type `i`
//! when some set of group `i` lies entirely before another set of group `i`.
//! Cross intersection forbids two types at once; every sample checks it.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use super::matching::CrossMatching;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeEstimate {
    pub samples: u64,
    /// Samples of type i, per group.
    pub counts: Vec<u64>,
    pub typeless: u64,
    pub estimates: Vec<f64>,
    pub standard_errors: Vec<f64>,
}

/// Estimates `Pr(E_i)` for each group from `samples` uniform orderings
/// drawn with a SplitMix64 stream seeded by `seed`. Errors if the matching
/// is invalid, if `samples == 0`, or if an ordering carries two types.
pub fn permutation_type_mc(m: &CrossMatching, samples: u64, seed: u64) -> Result<TypeEstimate> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    if let Some(d) = m.defect() {
        return Err(Error::Precondition(format!(
            "not a cross-intersecting matching: {d}"
        )));
    }
    let ground = m.ground_set();
    let max = ground.last().copied().unwrap_or(0);
    let mut position = vec![0usize; max + 1];
    let mut order = ground.clone();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut counts = vec![0u64; m.groups.len()];
    let mut typeless = 0;

    for sample in 0..samples {
        order.shuffle(&mut rng);
        for (pos, &e) in order.iter().enumerate() {
            position[e] = pos;
        }
        let mut typed = None;
        for (i, group) in m.groups.iter().enumerate() {
            let spans: Vec<(usize, usize)> = group
                .iter()
                .map(|s| {
                    let ps = s.iter().map(|&e| position[e]);
                    (ps.clone().min().unwrap(), ps.max().unwrap())
                })
                .collect();
            let has_type = spans.iter().enumerate().any(|(a, sa)| {
                spans
                    .iter()
                    .enumerate()
                    .any(|(b, sb)| a != b && sa.1 < sb.0)
            });
            if has_type {
                if let Some(j) = typed {
                    return Err(Error::Structure(format!(
                        "sample {sample} has both type {j} and type {i}"
                    )));
                }
                typed = Some(i);
            }
        }
        match typed {
            Some(i) => counts[i] += 1,
            None => typeless += 1,
        }
    }
    let n = samples as f64;
    let estimates: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let standard_errors = estimates
        .iter()
        .map(|p| (p * (1.0 - p) / n).sqrt())
        .collect();
    Ok(TypeEstimate {
        samples,
        counts,
        typeless,
        estimates,
        standard_errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::matching::complementary_pairs_k2;

    #[test]
    fn zero_samples_rejected() {
        assert!(permutation_type_mc(&complementary_pairs_k2(), 0, 1).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let m = complementary_pairs_k2();
        let a = permutation_type_mc(&m, 2000, 7).unwrap();
        let b = permutation_type_mc(&m, 2000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>() + a.typeless, 2000);
    }

    #[test]
    fn invalid_matching_rejected() {
        let m = CrossMatching::new(2, vec![vec![vec![0, 1], vec![2, 3]]]);
        assert!(permutation_type_mc(&m, 10, 0).is_err());
    }
}
