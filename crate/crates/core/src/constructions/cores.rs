//! ℓ-cores: `ell` sets `B_i` of size `ell - 1`, each missing class `i` and
//! hitting every other class once, with `|B_i ∩ B_j| + ell` always odd.
//! Padding each `B_i` with one extra point of `A_i` gives a `k = 1` family.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setsystem::{Family, Layout, TransversalSet};

/// Class sizes `|U ∩ A_i|` in class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreType(pub Vec<usize>);

impl CoreType {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// The type as a multiset (sorted ascending).
    pub fn multiset(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Core {
    classes: Vec<Vec<usize>>,
    sets: Vec<Vec<usize>>,
    universe: usize,
}

impl Core {
    /// Elements are `0..universe`; `classes[i]` lists the elements of class
    /// `i` and `sets[i]` is `B_i`. All core conditions are checked.
    pub fn new(classes: Vec<Vec<usize>>, sets: Vec<Vec<usize>>) -> Result<Self> {
        let universe = classes.iter().map(Vec::len).sum();
        let mut core = Self {
            classes,
            sets,
            universe,
        };
        for v in core.classes.iter_mut().chain(core.sets.iter_mut()) {
            v.sort_unstable();
        }
        core.validate()?;
        Ok(core)
    }

    pub fn ell(&self) -> usize {
        self.sets.len()
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn core_type(&self) -> CoreType {
        CoreType(self.classes.iter().map(Vec::len).collect())
    }

    fn class_map(&self) -> Result<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.universe];
        for (i, class) in self.classes.iter().enumerate() {
            for &e in class {
                if e >= self.universe || class_of[e] != usize::MAX {
                    return Err(Error::InvalidCore(format!(
                        "classes do not partition 0..{} (element {e})",
                        self.universe
                    )));
                }
                class_of[e] = i;
            }
        }
        Ok(class_of)
    }

    /// Checks every core condition; the error names the first failure.
    pub fn validate(&self) -> Result<()> {
        let ell = self.sets.len();
        if ell < 3 {
            return Err(Error::InvalidCore(format!("ell = {ell} < 3")));
        }
        if self.classes.len() != ell {
            return Err(Error::InvalidCore(format!(
                "{} classes for {ell} sets",
                self.classes.len()
            )));
        }
        let class_of = self.class_map()?;
        let mut covered = vec![false; self.universe];
        for (i, b) in self.sets.iter().enumerate() {
            if b.len() != ell - 1 || b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidCore(format!(
                    "B_{i} has {} distinct elements",
                    b.len()
                )));
            }
            let mut hits = vec![0usize; ell];
            for &e in b {
                if e >= self.universe {
                    return Err(Error::InvalidCore(format!("B_{i} has foreign element {e}")));
                }
                covered[e] = true;
                hits[class_of[e]] += 1;
            }
            for (j, &h) in hits.iter().enumerate() {
                let want = usize::from(i != j);
                if h != want {
                    return Err(Error::InvalidCore(format!(
                        "|B_{i} ∩ A_{j}| = {h}, expected {want}"
                    )));
                }
            }
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidCore(format!(
                "element {e} lies in no core set"
            )));
        }
        for i in 0..ell {
            for j in i..ell {
                let common = intersection_size(&self.sets[i], &self.sets[j]);
                if (common + ell).is_multiple_of(2) {
                    return Err(Error::InvalidCore(format!(
                        "|B_{i} ∩ B_{j}| + ell = {common} + {ell} is even"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reorders classes (and the matching sets): new class `i` is old class `order[i]`.
    pub fn permute_classes(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.ell()];
        if order.len() != self.ell()
            || order
                .iter()
                .any(|&o| o >= seen.len() || std::mem::replace(&mut seen[o], true))
        {
            return Err(Error::Domain(format!(
                "{order:?} is not a permutation of 0..{}",
                self.ell()
            )));
        }
        Ok(Self {
            classes: order.iter().map(|&o| self.classes[o].clone()).collect(),
            sets: order.iter().map(|&o| self.sets[o].clone()).collect(),
            universe: self.universe,
        })
    }

    /// Moves the class at `from` to the front, keeping the others in order.
    pub fn rotate_to_front(&self, from: usize) -> Result<Self> {
        let mut order = vec![from];
        order.extend((0..self.ell()).filter(|&i| i != from));
        self.permute_classes(&order)
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

// Element names shared by the explicit cores.
const A12: usize = 0;
const A13: usize = 1;
const A21: usize = 2;
const A23: usize = 3;
const A31: usize = 4;
const A32: usize = 5;
const A4: usize = 6;
const A5: usize = 7;

/// The 3-core of type (2,2,2): `B_α = {a_{α-1,α}, a_{α+1,α}}`.
pub fn core3() -> Core {
    Core::new(
        vec![vec![A12, A13], vec![A21, A23], vec![A31, A32]],
        vec![vec![A21, A31], vec![A12, A32], vec![A13, A23]],
    )
    .expect("core3 is a core")
}

/// The 4-core of type (2,2,2,1) on 7 points.
pub fn core4() -> Core {
    Core::new(
        vec![vec![A12, A13], vec![A21, A23], vec![A31, A32], vec![A4]],
        vec![
            vec![A21, A31, A4],
            vec![A12, A32, A4],
            vec![A13, A23, A4],
            vec![A13, A21, A32],
        ],
    )
    .expect("core4 is a core")
}

/// The 5-core of type (2,2,2,1,1) on 8 points.
pub fn core5() -> Core {
    Core::new(
        vec![
            vec![A12, A13],
            vec![A21, A23],
            vec![A31, A32],
            vec![A4],
            vec![A5],
        ],
        vec![
            vec![A21, A31, A4, A5],
            vec![A12, A32, A4, A5],
            vec![A13, A23, A4, A5],
            vec![A13, A21, A32, A5],
            vec![A12, A23, A31, A4],
        ],
    )
    .expect("core5 is a core")
}

/// Fuses a p-core and a q-core into a (p+q-1)-core whose type is
/// `(x_1, …, x_{p-1}, x_p + y_1, y_2, …, y_q)`. The second core's elements
/// are shifted past the first's.
pub fn fuse(first: &Core, second: &Core) -> Result<Core> {
    let (p, q) = (first.ell(), second.ell());
    if p < 3 || q < 3 {
        return Err(Error::Domain(format!(
            "fusion needs p, q >= 3, got p = {p}, q = {q}"
        )));
    }
    let shift = first.universe;
    let moved = |v: &Vec<usize>| v.iter().map(|e| e + shift).collect::<Vec<_>>();

    let mut classes: Vec<Vec<usize>> = first.classes[..p - 1].to_vec();
    let mut joint = first.classes[p - 1].clone();
    joint.extend(moved(&second.classes[0]));
    classes.push(joint);
    classes.extend(second.classes[1..].iter().map(moved));

    let head = moved(&second.sets[0]);
    let mut sets: Vec<Vec<usize>> = first
        .sets
        .iter()
        .map(|b| b.iter().copied().chain(head.iter().copied()).collect())
        .collect();
    let tail = &first.sets[p - 1];
    sets.extend(
        second.sets[1..]
            .iter()
            .map(|b| tail.iter().copied().chain(moved(b)).collect()),
    );
    Core::new(classes, sets)
}

/// `core5` reordered to type (1,2,2,2,1), the building block of the
/// `ell ≡ 1 (mod 4)` chain.
fn core5_ends() -> Core {
    core5()
        .permute_classes(&[3, 0, 1, 2, 4])
        .expect("permutation")
}

/// A (4m+1)-core of type (1,2,…,2,1) from m fused copies of `core5`.
fn chain5(m: usize) -> Core {
    let block = core5_ends();
    let mut acc = block.clone();
    for _ in 1..m {
        acc = fuse(&acc, &block).expect("fusion of cores");
    }
    acc
}

/// A (4m+4)-core of type (2,…,2,1).
fn chain4(m: usize) -> Core {
    if m == 0 {
        core4()
    } else {
        fuse(&core4(), &chain5(m)).expect("fusion of cores")
    }
}

/// An ℓ-core with `|U| <= 2ℓ + 1` following the fusion schedule:
/// explicit cores for 3, 4, 5; then by residue of ℓ mod 4.
pub fn build_core(ell: usize) -> Result<Core> {
    if ell < 3 {
        return Err(Error::Domain(format!("cores need ell >= 3, got {ell}")));
    }
    let core = match (ell, ell % 4) {
        (3, _) => core3(),
        (4, _) => core4(),
        (5, _) => core5(),
        (_, 1) => chain5((ell - 1) / 4),
        (_, 0) => chain4((ell - 4) / 4),
        (_, 3) => {
            // (4m+7): fuse the (4m+4)-core with core4 reordered to (1,2,2,2)
            let c4 = core4().rotate_to_front(3)?;
            fuse(&chain4((ell - 7) / 4), &c4)?
        }
        _ => {
            // (4m+6): core3 fused with the (4m+4)-core reordered to (1,2,…,2)
            let c = chain4((ell - 6) / 4);
            let last = c.ell() - 1;
            fuse(&core3(), &c.rotate_to_front(last)?)?
        }
    };
    debug_assert_eq!(core.ell(), ell);
    Ok(core)
}

/// The family `{B_i ∪ {x} : x ∈ A_i \ U}` over blocks of sizes `n_sizes`.
///
/// Blocks are realized in a rectangular layout with `n = max n_i`; the
/// positions `n_i..n` of block `i` are never used. Class `i` of the core
/// occupies the first positions of block `i`.
pub fn core_to_family(core: &Core, n_sizes: &[usize]) -> Result<Family> {
    let ell = core.ell();
    if n_sizes.len() != ell {
        return Err(Error::Domain(format!(
            "need {ell} block sizes, got {}",
            n_sizes.len()
        )));
    }
    for (i, (&ni, class)) in n_sizes.iter().zip(&core.classes).enumerate() {
        if ni < class.len() {
            return Err(Error::Precondition(format!(
                "block {i} has size {ni} but the core's class {i} needs {}",
                class.len()
            )));
        }
    }
    let n = n_sizes.iter().copied().max().unwrap_or(1).max(1);
    let layout = Layout::new(ell, n, 1)?;
    let mut position = vec![0usize; core.universe];
    for (i, class) in core.classes.iter().enumerate() {
        for (slot, &e) in class.iter().enumerate() {
            position[e] = i * n + slot;
        }
    }
    let mut members = Vec::new();
    for (i, b) in core.sets.iter().enumerate() {
        let base: Vec<usize> = b.iter().map(|&e| position[e]).collect();
        for x in core.classes[i].len()..n_sizes[i] {
            let mut elems = base.clone();
            elems.push(i * n + x);
            members.push(TransversalSet::from_elements(&layout, &elems)?);
        }
    }
    Family::new(layout, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::verify_family;

    fn pairwise_intersections(c: &Core) -> Vec<usize> {
        let mut v = Vec::new();
        for i in 0..c.ell() {
            for j in i + 1..c.ell() {
                v.push(intersection_size(&c.sets[i], &c.sets[j]));
            }
        }
        v
    }

    #[test]
    fn explicit_cores() {
        let c3 = core3();
        assert_eq!(c3.universe_size(), 6);
        assert!(pairwise_intersections(&c3).iter().all(|&x| x == 0));
        let c4 = core4();
        assert_eq!(c4.universe_size(), 7);
        assert_eq!(c4.core_type(), CoreType(vec![2, 2, 2, 1]));
        assert!(pairwise_intersections(&c4).iter().all(|&x| x % 2 == 1));
        let c5 = core5();
        assert_eq!(c5.universe_size(), 8);
        assert_eq!(c5.core_type(), CoreType(vec![2, 2, 2, 1, 1]));
        assert!(pairwise_intersections(&c5).iter().all(|&x| x % 2 == 0));
    }

    #[test]
    fn fusion_types() {
        let f = fuse(&core3(), &core3()).unwrap();
        assert_eq!(f.core_type(), CoreType(vec![2, 2, 4, 2, 2]));
        assert_eq!(f.universe_size(), 12);
        let f = fuse(&core5(), &core5()).unwrap();
        assert_eq!(f.ell(), 9);
        assert_eq!(f.universe_size(), 16);
        assert_eq!(f.core_type(), CoreType(vec![2, 2, 2, 1, 3, 2, 2, 1, 1]));
        let f = fuse(&core4(), &core3().rotate_to_front(2).unwrap()).unwrap();
        assert_eq!(f.ell(), 6);
        f.validate().unwrap();
    }

    #[test]
    fn validation_catches_broken_cores() {
        // parity: |B_0 ∩ B_3| = |{a21, a31}| = 2, and 2 + 4 is even
        let err = Core::new(
            vec![vec![A12, A13], vec![A21, A23], vec![A31, A32], vec![A4]],
            vec![
                vec![A21, A31, A4],
                vec![A12, A32, A4],
                vec![A13, A23, A4],
                vec![A12, A21, A31],
            ],
        );
        assert!(matches!(err, Err(Error::InvalidCore(_))));
        // B_0 touches its own class
        let err = Core::new(
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            vec![vec![0, 4], vec![1, 5], vec![2, 3]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn small_fusion_arguments_rejected() {
        let tiny = Core {
            classes: vec![vec![0], vec![1]],
            sets: vec![vec![1], vec![0]],
            universe: 2,
        };
        assert!(fuse(&tiny, &core3()).is_err());
        assert!(build_core(2).is_err());
    }

    #[test]
    fn schedule_types() {
        assert_eq!(
            build_core(9).unwrap().core_type(),
            CoreType(vec![1, 2, 2, 2, 2, 2, 2, 2, 1])
        );
        assert_eq!(
            build_core(8).unwrap().core_type(),
            CoreType(vec![2, 2, 2, 2, 2, 2, 2, 1])
        );
        assert_eq!(build_core(7).unwrap().core_type(), CoreType(vec![2; 7]));
        assert_eq!(
            build_core(6).unwrap().core_type(),
            CoreType(vec![2, 2, 3, 2, 2, 2])
        );
        assert_eq!(
            build_core(10).unwrap().core_type(),
            CoreType(vec![2, 2, 3, 2, 2, 2, 2, 2, 2, 2])
        );
        for ell in 3..=60 {
            let c = build_core(ell).unwrap();
            assert_eq!(c.ell(), ell);
            assert!(c.universe_size() <= 2 * ell + 1, "ell = {ell}");
        }
    }

    #[test]
    fn core_to_family_sizes() {
        let f = core_to_family(&core3(), &[2, 2, 2]).unwrap();
        assert!(f.is_empty());
        let f = core_to_family(&core3(), &[3, 3, 3]).unwrap();
        assert_eq!(f.len(), 3);
        assert!(verify_family(&f).valid);
        let f = core_to_family(&core4(), &[2, 5, 3, 4]).unwrap();
        assert_eq!(f.len(), 14 - 7);
        assert!(verify_family(&f).valid);
        assert!(core_to_family(&core3(), &[1, 3, 3]).is_err());
        assert!(core_to_family(&core3(), &[3, 3]).is_err());
    }
}
