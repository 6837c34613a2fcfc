//! Families from the projective plane PG(2, q) over the prime field.

use crate::error::{Error, Result};
use crate::setsystem::{Family, Layout, TransversalSet};

pub fn is_prime(q: usize) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Normalized homogeneous triples over Z_q: first nonzero coordinate is 1.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            pts.push([1, y, z]);
        }
    }
    for z in 0..q {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

fn incident(line: &[usize; 3], point: &[usize; 3], q: usize) -> bool {
    (line[0] * point[0] + line[1] * point[1] + line[2] * point[2]).is_multiple_of(q)
}

/// Removes the point `v = (1:0:0)`: the `q + 1` lines through it, minus `v`,
/// become the blocks, and the other `q²` lines become the members.
/// Result: `ell = q + 1`, `n = q`, `k = 1`, size `q²`.
pub fn plane_family(q: usize) -> Result<Family> {
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(Error::Precondition(format!("q = {q} must be an odd prime")));
    }
    let points = projective_points(q);
    // duality: lines use the same coordinate set
    let lines = &points;
    let v = [1, 0, 0];

    let through_v: Vec<&[usize; 3]> = lines.iter().filter(|l| incident(l, &v, q)).collect();
    debug_assert_eq!(through_v.len(), q + 1);

    let layout = Layout::new(q + 1, q, 1)?;
    let mut global = vec![usize::MAX; points.len()];
    for (block, line) in through_v.iter().enumerate() {
        let mut slot = 0;
        for (pi, p) in points.iter().enumerate() {
            if *p != v && incident(line, p, q) {
                global[pi] = block * q + slot;
                slot += 1;
            }
        }
        debug_assert_eq!(slot, q);
    }

    let mut members = Vec::with_capacity(q * q);
    for line in lines.iter().filter(|l| !incident(l, &v, q)) {
        let elems: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| incident(line, p, q))
            .map(|(pi, _)| global[pi])
            .collect();
        members.push(TransversalSet::transversal(&layout, &elems)?);
    }
    Family::new(layout, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::verify_family;

    #[test]
    fn primes() {
        let ps: Vec<usize> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn order_three() {
        let f = plane_family(3).unwrap();
        assert_eq!(f.len(), 9);
        assert_eq!(*f.layout(), Layout::new(4, 3, 1).unwrap());
        assert!(verify_family(&f).valid);
    }

    #[test]
    fn every_point_on_q_plus_one_lines() {
        for q in [3usize, 5, 7] {
            let pts = projective_points(q);
            for p in &pts {
                assert_eq!(pts.iter().filter(|l| incident(l, p, q)).count(), q + 1);
            }
        }
    }

    #[test]
    fn rejects_non_odd_primes() {
        for q in [0, 1, 2, 4, 9, 15] {
            assert!(plane_family(q).is_err(), "q = {q}");
        }
    }
}
