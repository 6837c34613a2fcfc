//! Cross-intersecting matchings: groups of pairwise disjoint k-sets where
//! sets from different groups always meet.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Serialize, Serializer};

use super::bounds::{gamma_raw, Rational};
use crate::subsets::binomial_big;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossMatching {
    pub k: usize,
    /// `groups[i]` is the list of sets of group i; sets are element lists.
    pub groups: Vec<Vec<Vec<usize>>>,
}

impl CrossMatching {
    pub fn new(k: usize, groups: Vec<Vec<Vec<usize>>>) -> Self {
        Self { k, groups }
    }

    /// The type `(d_1, …, d_t)`.
    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// `Σ d_i (d_i - 1)`.
    pub fn weight(&self) -> u64 {
        self.groups
            .iter()
            .map(|g| (g.len() * g.len().saturating_sub(1)) as u64)
            .sum()
    }

    /// Union of all sets, ascending.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.groups.iter().flatten().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// First structural defect, if any.
    pub fn defect(&self) -> Option<String> {
        let t = self.groups.len();
        if t < 2 {
            return Some(format!("needs at least 2 groups, found {t}"));
        }
        if self.k < 2 {
            return Some(format!("needs k >= 2, found {}", self.k));
        }
        for (i, g) in self.groups.iter().enumerate() {
            if g.len() < 2 {
                return Some(format!("group {i} has {} sets, needs at least 2", g.len()));
            }
            for (a, s) in g.iter().enumerate() {
                let mut sorted = s.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != self.k || s.len() != self.k {
                    return Some(format!("set {a} of group {i} is not a {}-set", self.k));
                }
                for (b, other) in g.iter().enumerate().skip(a + 1) {
                    if meets(s, other) {
                        return Some(format!("sets {a} and {b} of group {i} intersect"));
                    }
                }
            }
        }
        for i in 0..t {
            for j in i + 1..t {
                for (a, x) in self.groups[i].iter().enumerate() {
                    for (b, y) in self.groups[j].iter().enumerate() {
                        if !meets(x, y) {
                            return Some(format!(
                                "set {a} of group {i} misses set {b} of group {j}"
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}

fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub valid: bool,
    pub defect: Option<String>,
    pub weight: u64,
    /// `(1 + γ(k))·C(2k,k)` with the raw γ.
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    pub within_bound: bool,
}

/// Checks the matching conditions and the weight bound
/// `Σ d_i(d_i - 1) <= (1 + γ(k))·C(2k,k)`.
pub fn verify_matching(m: &CrossMatching) -> MatchingReport {
    let defect = m.defect();
    let weight = m.weight();
    let bound = if m.k >= 2 {
        let c = BigInt::from(binomial_big(2 * m.k as u64, m.k as u64));
        (Rational::one() + gamma_raw(m.k).expect("k >= 2")) * Rational::from_integer(c)
    } else {
        Rational::from_integer(BigInt::from(BigUint::from(0u8)))
    };
    let within_bound = Rational::from_integer(BigInt::from(weight)) <= bound;
    MatchingReport {
        valid: defect.is_none(),
        defect,
        weight,
        bound,
        within_bound,
    }
}

/// The three complementary pairs of 2-subsets of a 4-set: the extremal case
/// for k = 2.
pub fn complementary_pairs_k2() -> CrossMatching {
    CrossMatching::new(
        2,
        vec![
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 2], vec![1, 3]],
            vec![vec![0, 3], vec![1, 2]],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_k2() {
        let r = verify_matching(&complementary_pairs_k2());
        assert!(r.valid);
        assert_eq!(r.weight, 6);
        assert_eq!(r.bound, Rational::from_integer(BigInt::from(6)));
        assert!(r.within_bound);
    }

    #[test]
    fn single_group_invalid() {
        let m = CrossMatching::new(2, vec![vec![vec![0, 1], vec![2, 3]]]);
        let r = verify_matching(&m);
        assert!(!r.valid);
        assert!(r.defect.unwrap().contains("2 groups"));
    }

    #[test]
    fn defects() {
        let overlapping = CrossMatching::new(
            2,
            vec![vec![vec![0, 1], vec![1, 2]], vec![vec![0, 2], vec![1, 3]]],
        );
        assert!(overlapping.defect().unwrap().contains("intersect"));
        let missing = CrossMatching::new(
            2,
            vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![4, 5]]],
        );
        assert!(missing.defect().unwrap().contains("misses"));
        let wrong_size = CrossMatching::new(
            2,
            vec![vec![vec![0], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]],
        );
        assert!(wrong_size.defect().is_some());
        let small_k = CrossMatching::new(1, vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]]);
        assert!(!verify_matching(&small_k).valid);
    }
}
