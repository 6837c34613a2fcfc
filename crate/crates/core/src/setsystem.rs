//! Partitioned universes, transversal sets and semi-intersecting families.
//!
//! The universe is `A_0 ∪ … ∪ A_{ell-1}` with global element indices
//! `0..ell*n`; element `e` lives in block `e / n`. A transversal set meets
//! every block in exactly `k` elements. A family is semi-intersecting when
//! every two distinct members are disjoint inside an odd number of blocks,
//! which makes it a clique of the `ell`-fold xor-power of `KG(n, k)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    ell: usize,
    n: usize,
    k: usize,
}

impl Layout {
    pub fn new(ell: usize, n: usize, k: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidLayout("ell must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidLayout("k must be at least 1".into()));
        }
        if k > n {
            return Err(Error::InvalidLayout(format!(
                "k = {k} exceeds block size n = {n}"
            )));
        }
        Ok(Self { ell, n, k })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of elements in the whole universe.
    pub fn universe(&self) -> usize {
        self.ell * self.n
    }

    #[inline]
    pub fn block_of(&self, element: usize) -> usize {
        element / self.n
    }

    pub fn block_range(&self, block: usize) -> std::ops::Range<usize> {
        block * self.n..(block + 1) * self.n
    }

    /// Same layout with one more block appended.
    pub fn with_extra_block(&self) -> Self {
        Self {
            ell: self.ell + 1,
            ..*self
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ell={}, n={}, k={})", self.ell, self.n, self.k)
    }
}

/// A subset of the universe. It is a vertex of the product graph when it
/// meets every block in exactly `k` elements, see [`TransversalSet::block_counts`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransversalSet {
    bits: BitSet,
}

impl TransversalSet {
    /// Builds the set from global element indices. Indices are range checked
    /// but block uniformity is not; use [`TransversalSet::transversal`] for that.
    pub fn from_elements(layout: &Layout, elements: &[usize]) -> Result<Self> {
        let universe = layout.universe();
        let mut bits = BitSet::new(universe);
        for &e in elements {
            if e >= universe {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    universe,
                });
            }
            bits.insert(e);
        }
        Ok(Self { bits })
    }

    /// Like [`TransversalSet::from_elements`] but also requires `|S ∩ A_i| = k`.
    pub fn transversal(layout: &Layout, elements: &[usize]) -> Result<Self> {
        let s = Self::from_elements(layout, elements)?;
        if let Some((block, count)) = s.nonconforming_block(layout) {
            return Err(Error::Precondition(format!(
                "set meets block {block} in {count} elements, expected {}",
                layout.k
            )));
        }
        Ok(s)
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.bits.contains(element)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }

    /// Elements of this set inside block `block`.
    pub fn trace(&self, layout: &Layout, block: usize) -> Vec<usize> {
        let r = layout.block_range(block);
        self.bits.iter().filter(|e| r.contains(e)).collect()
    }

    pub fn block_counts(&self, layout: &Layout) -> Vec<usize> {
        let mut counts = vec![0; layout.ell];
        for e in self.bits.iter() {
            counts[layout.block_of(e)] += 1;
        }
        counts
    }

    fn nonconforming_block(&self, layout: &Layout) -> Option<(usize, usize)> {
        self.block_counts(layout)
            .into_iter()
            .enumerate()
            .find(|&(_, c)| c != layout.k)
    }

    fn conforms(&self, layout: &Layout) -> bool {
        self.bits.len() == layout.universe()
    }
}

impl fmt::Debug for TransversalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

/// Number of blocks in which `s` and `t` share no element.
pub fn disjoint_blocks(s: &TransversalSet, t: &TransversalSet, layout: &Layout) -> Result<usize> {
    for x in [s, t] {
        if !x.conforms(layout) {
            return Err(Error::LayoutMismatch {
                expected: format!("bit length {}", layout.universe()),
                found: format!("bit length {}", x.bits.len()),
            });
        }
    }
    Ok(disjoint_blocks_unchecked(s, t, layout))
}

fn disjoint_blocks_unchecked(s: &TransversalSet, t: &TransversalSet, layout: &Layout) -> usize {
    let common = s.bits.intersection(&t.bits);
    let mut hit = 0;
    let mut last = usize::MAX;
    // elements come out ascending, so equal blocks are adjacent
    for e in common.iter() {
        let b = layout.block_of(e);
        if b != last {
            hit += 1;
            last = b;
        }
    }
    layout.ell - hit
}

/// Xor-product adjacency: true iff `s ∩ t ∩ A_i = ∅` for an odd number of blocks.
pub fn xor_adjacent(s: &TransversalSet, t: &TransversalSet, layout: &Layout) -> Result<bool> {
    Ok(disjoint_blocks(s, t, layout)? % 2 == 1)
}

/// A canonically ordered, duplicate-free list of sets over one layout.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    layout: Layout,
    members: Vec<TransversalSet>,
}

impl Family {
    /// Sorts members into canonical order. Duplicates are rejected, and so
    /// are members built for a different universe size.
    pub fn new(layout: Layout, mut members: Vec<TransversalSet>) -> Result<Self> {
        for m in &members {
            if !m.conforms(&layout) {
                return Err(Error::LayoutMismatch {
                    expected: layout.to_string(),
                    found: format!("member over {} elements", m.bits.len()),
                });
            }
        }
        members.sort();
        if let Some(pos) = members.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(pos + 1));
        }
        Ok(Self { layout, members })
    }

    pub fn empty(layout: Layout) -> Self {
        Self {
            layout,
            members: Vec::new(),
        }
    }

    /// Convenience constructor from element lists.
    pub fn from_lists<I, L>(layout: Layout, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[usize]>,
    {
        let members = lists
            .into_iter()
            .map(|l| TransversalSet::from_elements(&layout, l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(layout, members)
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn members(&self) -> &[TransversalSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(TransversalSet::to_vec).collect()
    }

    /// Number of members containing `element`.
    pub fn degree(&self, element: usize) -> Result<usize> {
        let universe = self.layout.universe();
        if element >= universe {
            return Err(Error::ElementOutOfRange { element, universe });
        }
        Ok(self.members.iter().filter(|m| m.contains(element)).count())
    }

    /// Degrees of every element, indexed by global element.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.layout.universe()];
        for m in &self.members {
            for e in m.elements() {
                deg[e] += 1;
            }
        }
        deg
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("layout", &self.layout)
            .field("members", &self.members)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A member whose intersection with `block` has the wrong size.
    Malformed {
        member: usize,
        block: usize,
        count: usize,
    },
    /// Two members disjoint in an even number of blocks.
    EvenPair {
        first: usize,
        second: usize,
        disjoint_blocks: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl VerifyReport {
    fn from_violation(violation: Option<Violation>) -> Self {
        Self {
            valid: violation.is_none(),
            violation,
        }
    }
}

/// Checks block uniformity of every member and pairwise xor-adjacency.
/// The first malformed member wins; otherwise the lexicographically first
/// offending pair `(i, j)`, `i < j`, is reported.
pub fn verify_family(f: &Family) -> VerifyReport {
    let layout = &f.layout;
    for (i, m) in f.members.iter().enumerate() {
        if let Some((block, count)) = m.nonconforming_block(layout) {
            return VerifyReport::from_violation(Some(Violation::Malformed {
                member: i,
                block,
                count,
            }));
        }
    }
    VerifyReport::from_violation(first_even_pair(f))
}

fn first_even_pair_from(f: &Family, i: usize) -> Option<Violation> {
    let s = &f.members[i];
    f.members[i + 1..].iter().enumerate().find_map(|(off, t)| {
        let d = disjoint_blocks_unchecked(s, t, &f.layout);
        d.is_multiple_of(2).then_some(Violation::EvenPair {
            first: i,
            second: i + 1 + off,
            disjoint_blocks: d,
        })
    })
}

#[cfg(feature = "parallel")]
fn first_even_pair(f: &Family) -> Option<Violation> {
    use rayon::prelude::*;
    (0..f.members.len())
        .into_par_iter()
        .find_map_first(|i| first_even_pair_from(f, i))
}

#[cfg(not(feature = "parallel"))]
fn first_even_pair(f: &Family) -> Option<Violation> {
    (0..f.members.len()).find_map(|i| first_even_pair_from(f, i))
}

// ---------------------------------------------------------------------------
// Serialization

#[derive(Debug, Serialize, Deserialize)]
struct FamilyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<u32>,
    ell: usize,
    n: usize,
    k: usize,
    members: Vec<Vec<usize>>,
}

/// Line-oriented text form: `ell n k` followed by one sorted member per line.
pub fn encode(f: &Family) -> String {
    let mut out = format!("{} {} {}\n", f.layout.ell, f.layout.n, f.layout.k);
    for m in &f.members {
        let line: Vec<String> = m.elements().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn decode(text: &str) -> Result<Family> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        field: 1,
        message: "missing header `ell n k`".into(),
    })?;
    let nums = parse_numbers(header, hline + 1)?;
    if nums.len() != 3 {
        return Err(Error::Parse {
            line: hline + 1,
            field: nums.len().min(3) + 1,
            message: format!("header needs exactly 3 fields, found {}", nums.len()),
        });
    }
    let layout = Layout::new(nums[0], nums[1], nums[2]).map_err(|e| Error::Parse {
        line: hline + 1,
        field: 1,
        message: e.to_string(),
    })?;
    let mut members = Vec::new();
    for (idx, line) in lines {
        let elems = parse_numbers(line, idx + 1)?;
        if let Some(pos) = elems.iter().position(|&e| e >= layout.universe()) {
            return Err(Error::Parse {
                line: idx + 1,
                field: pos + 1,
                message: format!(
                    "element {} outside universe of size {}",
                    elems[pos],
                    layout.universe()
                ),
            });
        }
        members.push(TransversalSet::from_elements(&layout, &elems)?);
    }
    Family::new(layout, members)
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .enumerate()
        .map(|(field, tok)| {
            tok.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                field: field + 1,
                message: format!("`{tok}`: {e}"),
            })
        })
        .collect()
}

pub fn encode_json(f: &Family) -> String {
    let doc = FamilyJson {
        schema: Some(1),
        ell: f.layout.ell,
        n: f.layout.n,
        k: f.layout.k,
        members: f.member_lists(),
    };
    serde_json::to_string(&doc).expect("family serializes")
}

pub fn decode_json(text: &str) -> Result<Family> {
    let doc: FamilyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        field: e.column(),
        message: e.to_string(),
    })?;
    let layout = Layout::new(doc.ell, doc.n, doc.k)?;
    Family::from_lists(layout, &doc.members)
}

/// Accepts either the text or the JSON form.
pub fn decode_any(text: &str) -> Result<Family> {
    if text.trim_start().starts_with('{') {
        decode_json(text)
    } else {
        decode(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(layout: &Layout, e: &[usize]) -> TransversalSet {
        TransversalSet::transversal(layout, e).unwrap()
    }

    #[test]
    fn layout_rejects_bad_parameters() {
        assert!(Layout::new(0, 3, 1).is_err());
        assert!(Layout::new(2, 3, 4).is_err());
        assert!(Layout::new(2, 3, 0).is_err());
        assert!(Layout::new(2, 3, 3).is_ok());
    }

    #[test]
    fn identity_is_not_adjacent() {
        let l = Layout::new(3, 4, 2).unwrap();
        let s = set(&l, &[0, 1, 4, 5, 8, 9]);
        assert!(!xor_adjacent(&s, &s, &l).unwrap());
    }

    #[test]
    fn single_block_is_kneser() {
        let l = Layout::new(1, 5, 2).unwrap();
        let a = set(&l, &[0, 1]);
        let b = set(&l, &[2, 3]);
        let c = set(&l, &[1, 4]);
        assert!(xor_adjacent(&a, &b, &l).unwrap());
        assert!(!xor_adjacent(&a, &c, &l).unwrap());
    }

    #[test]
    fn two_blocks_of_two() {
        // K_2 · K_2: {0,2},{1,2} differ in block 0 only; {0,2},{1,3} differ in both.
        let l = Layout::new(2, 2, 1).unwrap();
        let s = set(&l, &[0, 2]);
        assert!(xor_adjacent(&s, &set(&l, &[1, 2]), &l).unwrap());
        assert!(!xor_adjacent(&s, &set(&l, &[1, 3]), &l).unwrap());
    }

    #[test]
    fn layout_mismatch_is_an_error() {
        let l = Layout::new(2, 2, 1).unwrap();
        let other = Layout::new(3, 2, 1).unwrap();
        let s = set(&l, &[0, 2]);
        let t = set(&other, &[0, 2, 4]);
        assert!(matches!(
            xor_adjacent(&s, &t, &l),
            Err(Error::LayoutMismatch { .. })
        ));
        assert!(Family::new(l, vec![t]).is_err());
    }

    #[test]
    fn transversal_checks_uniformity() {
        let l = Layout::new(2, 3, 1).unwrap();
        assert!(TransversalSet::transversal(&l, &[0, 1]).is_err());
        assert!(TransversalSet::transversal(&l, &[0, 9]).is_err());
        assert!(TransversalSet::transversal(&l, &[2, 3]).is_ok());
    }

    #[test]
    fn empty_family_is_valid() {
        let f = Family::empty(Layout::new(2, 4, 2).unwrap());
        assert!(verify_family(&f).valid);
        assert_eq!(f.degree(3).unwrap(), 0);
    }

    #[test]
    fn members_intersecting_everywhere_violate() {
        // Both members share element 0 in block 0 and element 4 in block 1.
        let l = Layout::new(2, 4, 2).unwrap();
        let f = Family::from_lists(l, [[0, 1, 4, 5], [0, 2, 4, 5]]).unwrap();
        let r = verify_family(&f);
        assert!(!r.valid);
        assert_eq!(
            r.violation,
            Some(Violation::EvenPair {
                first: 0,
                second: 1,
                disjoint_blocks: 0
            })
        );
    }

    #[test]
    fn malformed_member_is_reported() {
        let l = Layout::new(2, 4, 2).unwrap();
        let f = Family::from_lists(l, [vec![0, 1, 4, 5], vec![2, 3, 4]]).unwrap();
        let r = verify_family(&f);
        assert_eq!(
            r.violation,
            Some(Violation::Malformed {
                member: 1,
                block: 1,
                count: 1
            })
        );
    }

    #[test]
    fn duplicates_rejected() {
        let l = Layout::new(1, 4, 2).unwrap();
        assert!(matches!(
            Family::from_lists(l, [[0, 1], [2, 3], [0, 1]]),
            Err(Error::DuplicateMember(_))
        ));
    }

    #[test]
    fn degree_out_of_range() {
        let f = Family::empty(Layout::new(2, 4, 2).unwrap());
        assert!(f.degree(8).is_err());
    }

    #[test]
    fn encode_empty_family() {
        let f = Family::empty(Layout::new(3, 5, 2).unwrap());
        assert_eq!(encode(&f), "3 5 2\n");
        assert_eq!(decode("3 5 2\n").unwrap(), f);
    }

    #[test]
    fn decode_reports_positions() {
        match decode("2 4 2\n0 1 4 5\n0 x 4 5\n") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
        match decode("2 4\n") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match decode("2 4 2\n0 1 4 9\n") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_mirror() {
        let l = Layout::new(2, 2, 1).unwrap();
        let f = Family::from_lists(l, [[0, 2], [1, 2]]).unwrap();
        let text = encode_json(&f);
        assert_eq!(
            text,
            r#"{"schema":1,"ell":2,"n":2,"k":1,"members":[[0,2],[1,2]]}"#
        );
        assert_eq!(decode_any(&text).unwrap(), f);
        let bare = r#"{"ell":2,"n":2,"k":1,"members":[[1,2],[0,2]]}"#;
        assert_eq!(decode_json(bare).unwrap(), f);
    }
}
