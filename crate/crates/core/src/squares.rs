//! Inscribed squares: two same-dimension edges of a cycle that are opposite
//! sides of a 4-cycle of the cube.

use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::hypercube::{drop_bit, insert_bit};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareKind {
    /// `h_a h_{a+1} h_b h_{b+1}` walks around the 4-cycle.
    Straight,
    /// `h_a h_{a+1} h_b h_{b+1}` crosses it: the second rim is traversed in
    /// the same direction along `rim_dim` as the first.
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InscribedSquare {
    pub rim_dim: usize,
    pub kind: SquareKind,
    /// Cycle positions where the two rims start, smaller first.
    pub rim_indexes: [usize; 2],
    pub ray_dim: usize,
}

/// Buckets the cycle's edges by dimension and probes each projection's
/// unit-distance neighbors; `O(n 2^n)` overall.
struct EdgeIndex {
    n: usize,
    // slot[i][projection] = position of the i-edge with that projection, or usize::MAX
    slot: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

impl EdgeIndex {
    fn build(h: &HamiltonianCycle) -> Self {
        let n = h.n();
        let colors = h.color();
        let half = 1usize << (n - 1);
        let mut slot = vec![vec![usize::MAX; half]; n];
        let w = h.words();
        for (k, &i) in colors.iter().enumerate() {
            slot[i][drop_bit(w[k], i) as usize] = k;
        }
        Self { n, slot, colors }
    }

    fn visit(&self, h: &HamiltonianCycle, mut f: impl FnMut(InscribedSquare) -> bool) {
        let w = h.words();
        let len = w.len();
        for i in 0..self.n {
            for k in (0..len).filter(|&k| self.colors[k] == i) {
                let p = drop_bit(w[k], i);
                for j in 0..self.n - 1 {
                    let other = self.slot[i][(p ^ (1 << j)) as usize];
                    if other == usize::MAX || other < k {
                        continue;
                    }
                    let same_direction = (w[k] >> i & 1) == (w[other] >> i & 1);
                    let kind = if same_direction { SquareKind::Twisted } else { SquareKind::Straight };
                    let ray_dim = (insert_bit(1 << j, i, 0)).trailing_zeros() as usize;
                    if !f(InscribedSquare { rim_dim: i, kind, rim_indexes: [k, other], ray_dim }) {
                        return;
                    }
                }
            }
        }
    }
}

/// All inscribed squares, ordered by rim dimension then positions.
pub fn find_squares(h: &HamiltonianCycle) -> Vec<InscribedSquare> {
    if h.n() < 2 {
        return Vec::new();
    }
    let index = EdgeIndex::build(h);
    let mut out = Vec::new();
    index.visit(h, |s| {
        out.push(s);
        true
    });
    out.sort_unstable_by_key(|s| (s.rim_dim, s.rim_indexes, s.ray_dim));
    out
}

/// Stops at the first square found.
pub fn has_square(h: &HamiltonianCycle) -> bool {
    first_square(h).is_some()
}

pub fn first_square(h: &HamiltonianCycle) -> Option<InscribedSquare> {
    if h.n() < 2 {
        return None;
    }
    let index = EdgeIndex::build(h);
    let mut found = None;
    index.visit(h, |s| {
        found = Some(s);
        false
    });
    found
}

/// Equi-independence numbers of small hypercubes.
pub mod equi_table {
    /// Exact `α_=(Q_m)` for `m = 1..=7`, computed by the exact solvers in
    /// [`crate::mis`] and re-checked by the test suite.
    pub const COMPUTED: [(usize, usize); 7] = [(1, 0), (2, 0), (3, 2), (4, 4), (5, 10), (6, 20), (7, 44)];

    /// Values as printed in the published table for `m = 3..=7`. Kept for
    /// comparison only: the entries for `m = 6` and `m = 7` are below balanced
    /// independent sets that are easy to exhibit.
    pub const PUBLISHED: [(usize, usize); 5] = [(3, 2), (4, 4), (5, 10), (6, 16), (7, 40)];

    pub fn computed(m: usize) -> Option<usize> {
        COMPUTED.iter().find(|&&(k, _)| k == m).map(|&(_, v)| v)
    }

    pub fn published(m: usize) -> Option<usize> {
        PUBLISHED.iter().find(|&&(k, _)| k == m).map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// `2^{n-2}`, the independence number of `Q_{n-1}`.
    Independence,
    /// `α_=(Q_{n-1})`.
    Equi,
}

/// Count above which a dimension is forced to carry the rims of a square.
pub fn rim_threshold(n: usize, mode: ThresholdMode) -> Result<usize> {
    rim_threshold_with(n, mode, equi_table::computed)
}

/// As [`rim_threshold`], with the `α_=` values supplied by the caller.
pub fn rim_threshold_with(
    n: usize,
    mode: ThresholdMode,
    equi: impl Fn(usize) -> Option<usize>,
) -> Result<usize> {
    if !(2..=crate::hypercube::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    match mode {
        ThresholdMode::Independence => Ok(1 << (n - 2)),
        ThresholdMode::Equi => equi(n - 1).ok_or(Error::EquiValueUnavailable(n - 1)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub threshold: usize,
    /// Dimensions whose count exceeds the threshold.
    pub obligated: Vec<usize>,
    /// Obligated dimensions with no square rimmed in them.
    pub violations: Vec<usize>,
}

impl ThresholdReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_threshold_implication(h: &HamiltonianCycle, mode: ThresholdMode) -> Result<ThresholdReport> {
    let threshold = rim_threshold(h.n(), mode)?;
    Ok(check_threshold_with(h, threshold))
}

pub fn check_threshold_with(h: &HamiltonianCycle, threshold: usize) -> ThresholdReport {
    let counts = h.chromatic_vector().counts;
    let obligated: Vec<usize> = (0..h.n()).filter(|&i| counts[i] > threshold).collect();
    let squares = if obligated.is_empty() { Vec::new() } else { find_squares(h) };
    let violations = obligated
        .iter()
        .copied()
        .filter(|&i| !squares.iter().any(|s| s.rim_dim == i))
        .collect();
    ThresholdReport { threshold, obligated, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn gray(n: usize) -> HamiltonianCycle {
        HamiltonianCycle::gray_code(n).unwrap()
    }

    /// Quadratic scan straight from the two defining index patterns.
    fn naive(h: &HamiltonianCycle) -> BTreeSet<(usize, usize, usize, SquareKind)> {
        let w = h.words();
        let len = w.len();
        let adj = |a: u32, b: u32| (a ^ b).count_ones() == 1;
        let mut out = BTreeSet::new();
        for a in 0..len {
            for b in a + 1..len {
                let (v0, v1, x, y) = (w[a], w[(a + 1) % len], w[b], w[(b + 1) % len]);
                if v0 ^ v1 != x ^ y {
                    continue;
                }
                let dim = (v0 ^ v1).trailing_zeros() as usize;
                // straight: v0 v1 v2 v3 with v2 = x, v3 = y
                if adj(v1, x) && adj(y, v0) && v1 != y {
                    out.insert((dim, a, b, SquareKind::Straight));
                }
                // twisted: v0 v1 v3 v2 with v3 = x, v2 = y
                if adj(v1, y) && adj(x, v0) && v1 != x {
                    out.insert((dim, a, b, SquareKind::Twisted));
                }
            }
        }
        out
    }

    #[test]
    fn gray2_has_straight_square() {
        let s = find_squares(&gray(2));
        assert!(s.contains(&InscribedSquare {
            rim_dim: 0,
            kind: SquareKind::Straight,
            rim_indexes: [0, 2],
            ray_dim: 1
        }));
        assert!(has_square(&gray(2)));
    }

    #[test]
    fn gray3_square_at_zero_two() {
        let s = find_squares(&gray(3));
        assert!(s.iter().any(|q| q.rim_dim == 0 && q.rim_indexes == [0, 2] && q.kind == SquareKind::Straight));
    }

    #[test]
    fn gray7_has_square() {
        assert!(has_square(&gray(7)));
    }

    #[test]
    fn detector_matches_naive_scan() {
        for n in 2..=7 {
            let h = gray(n);
            for h in [h.clone(), h.rotated(5 % h.len()), h.reversed(), h.permute_dims(&(0..n).rev().collect::<Vec<_>>()).unwrap()] {
                let fast: BTreeSet<_> =
                    find_squares(&h).iter().map(|s| (s.rim_dim, s.rim_indexes[0], s.rim_indexes[1], s.kind)).collect();
                assert_eq!(fast, naive(&h), "n = {n}");
            }
        }
    }

    #[test]
    fn rims_and_rays_form_a_four_cycle() {
        let h = gray(6);
        let w = h.words();
        for s in find_squares(&h) {
            let [a, b] = s.rim_indexes;
            let e = |k: usize| (w[k], w[(k + 1) % w.len()]);
            let ((p, q), (r, t)) = (e(a), e(b));
            assert_eq!(p ^ q, 1 << s.rim_dim);
            assert_eq!(r ^ t, 1 << s.rim_dim);
            assert_ne!(s.ray_dim, s.rim_dim);
            let lo = |x: u32| x & !(1 << s.rim_dim);
            assert_eq!(lo(p) ^ lo(r), 1 << s.ray_dim);
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(rim_threshold(3, ThresholdMode::Independence).unwrap(), 2);
        assert_eq!(rim_threshold(4, ThresholdMode::Equi).unwrap(), 2);
        assert_eq!(rim_threshold_with(7, ThresholdMode::Equi, equi_table::published).unwrap(), 16);
        assert_eq!(rim_threshold(7, ThresholdMode::Equi).unwrap(), 20);
        assert_eq!(rim_threshold(9, ThresholdMode::Equi), Err(Error::EquiValueUnavailable(8)));
        assert!(rim_threshold(1, ThresholdMode::Independence).is_err());
    }

    #[test]
    fn threshold_report_on_gray3() {
        let r = check_threshold_implication(&gray(3), ThresholdMode::Independence).unwrap();
        assert_eq!(r.obligated, vec![0]);
        assert!(r.holds());
        let vacuous = check_threshold_with(&gray(3), 100);
        assert!(vacuous.obligated.is_empty() && vacuous.holds());
    }
}
