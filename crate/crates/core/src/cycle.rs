//! Hamiltonian cycles of `Q_n` and the per-dimension operators on them.

use crate::error::{Error, Result};
use crate::hypercube::{check_dim, edge_dim, parity, parity_excluding, DimEdge, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A validated Hamiltonian cycle: `2^n` distinct words, cyclically adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycleRecord", into = "CycleRecord")]
pub struct HamiltonianCycle {
    n: usize,
    seq: Vec<u32>,
}

/// Wire form of a cycle: `{"n": 3, "seq": [0, 1, 3, 2, 6, 7, 5, 4]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub n: usize,
    pub seq: Vec<u64>,
}

impl TryFrom<CycleRecord> for HamiltonianCycle {
    type Error = Error;

    fn try_from(rec: CycleRecord) -> Result<Self> {
        check_dim(rec.n)?;
        let mut words = Vec::with_capacity(rec.seq.len());
        for &w in &rec.seq {
            if w >= 1u64 << rec.n {
                return Err(Error::VertexOutOfRange { value: w, n: rec.n });
            }
            words.push(w as u32);
        }
        HamiltonianCycle::new(rec.n, words)
    }
}

impl From<HamiltonianCycle> for CycleRecord {
    fn from(h: HamiltonianCycle) -> Self {
        CycleRecord { n: h.n, seq: h.seq.into_iter().map(u64::from).collect() }
    }
}

impl HamiltonianCycle {
    /// Validates a raw sequence.
    pub fn new(n: usize, seq: Vec<u32>) -> Result<Self> {
        check_dim(n)?;
        let len = 1usize << n;
        let mut seen = vec![false; len];
        for (index, &w) in seq.iter().enumerate() {
            if w as usize >= len {
                return Err(Error::VertexOutOfRange { value: w.into(), n });
            }
            if std::mem::replace(&mut seen[w as usize], true) {
                return Err(Error::DuplicateVertex { vertex: w, index });
            }
        }
        if seq.len() != len {
            return Err(Error::WrongLength { expected: len, found: seq.len() });
        }
        for index in 0..len - 1 {
            if edge_dim(seq[index], seq[index + 1]).is_none() {
                return Err(Error::NonAdjacentStep { index, next: index + 1 });
            }
        }
        if edge_dim(seq[len - 1], seq[0]).is_none() {
            return Err(Error::NotClosed);
        }
        Ok(Self { n, seq })
    }

    pub(crate) fn from_trusted(n: usize, seq: Vec<u32>) -> Self {
        debug_assert!(Self::new(n, seq.clone()).is_ok());
        Self { n, seq }
    }

    /// The binary reflected Gray code as a cycle.
    pub fn gray_code(n: usize) -> Result<Self> {
        let seq = crate::hypercube::gray_code_words(n)?;
        Ok(Self { n, seq })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn words(&self) -> &[u32] {
        &self.seq
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new_unchecked(self.seq[index % self.seq.len()], self.n)
    }

    pub fn to_record(&self) -> CycleRecord {
        self.clone().into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cycle serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: 1, message: e.to_string() })
    }

    /// Cyclic shift so that the entry at `start` comes first.
    pub fn rotated(&self, start: usize) -> Self {
        let start = start % self.seq.len();
        let mut seq = Vec::with_capacity(self.seq.len());
        seq.extend_from_slice(&self.seq[start..]);
        seq.extend_from_slice(&self.seq[..start]);
        Self { n: self.n, seq }
    }

    /// The same cycle traversed backwards, starting from the same vertex.
    pub fn reversed(&self) -> Self {
        let mut seq = self.seq.clone();
        seq[1..].reverse();
        Self { n: self.n, seq }
    }

    /// The sequence written backwards (last vertex first).
    pub fn reversed_sequence(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        Self { n: self.n, seq }
    }

    /// Undirected edge set, used to compare cycles independently of start and direction.
    pub fn edge_set(&self) -> HashSet<DimEdge> {
        (0..self.len()).map(|k| self.edge(k)).collect()
    }

    /// The edge `h_k h_{k+1}` (indexes cyclic).
    pub fn edge(&self, k: usize) -> DimEdge {
        let a = self.seq[k % self.len()];
        let b = self.seq[(k + 1) % self.len()];
        DimEdge::from_word(a, (a ^ b).trailing_zeros() as usize, self.n)
    }

    /// Color of each position: the dimension of the edge leaving it.
    pub fn color(&self) -> Vec<usize> {
        let len = self.seq.len();
        (0..len)
            .map(|k| (self.seq[k] ^ self.seq[(k + 1) % len]).trailing_zeros() as usize)
            .collect()
    }

    pub fn chromatic_vector(&self) -> ChromaticVector {
        let mut counts = vec![0usize; self.n];
        for c in self.color() {
            counts[c] += 1;
        }
        ChromaticVector { counts }
    }

    /// Applies a coordinate permutation to every vertex: bit `i` moves to bit `perm[i]`.
    pub fn permute_dims(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidPermutation(self.n));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidPermutation(self.n));
            }
        }
        let seq = self
            .seq
            .iter()
            .map(|&w| {
                perm.iter()
                    .enumerate()
                    .filter(|&(i, _)| w >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &p)| acc | 1 << p)
            })
            .collect();
        Ok(Self { n: self.n, seq })
    }

    /// Rotation (and, if needed, reversal) putting a dimension-`i` edge first,
    /// leaving from a vertex whose entry `i` is 0. The earliest qualifying
    /// index of the forward orientation wins; the reversed orientation is only
    /// consulted when the forward one has no candidate.
    pub fn normalize(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let qualifies = |h: &Self, k: usize| {
            let a = h.seq[k];
            let b = h.seq[(k + 1) % h.len()];
            a ^ b == 1 << i && a & (1 << i) == 0
        };
        if let Some(k) = (0..self.len()).find(|&k| qualifies(self, k)) {
            return Ok(self.rotated(k));
        }
        let rev = self.reversed_sequence();
        if let Some(k) = (0..rev.len()).find(|&k| qualifies(&rev, k)) {
            return Ok(rev.rotated(k));
        }
        Err(Error::DimensionUnused(i))
    }

    /// Index, edge, start-vertex, segment and parity lists for dimension `i`.
    pub fn dimension_profile(&self, i: usize) -> Result<DimensionProfile> {
        let h = self.normalize(i)?;
        let colors = h.color();
        let index_list: Vec<usize> = (0..h.len()).filter(|&k| colors[k] == i).collect();
        let start_vertices: Vec<Vertex> = index_list.iter().map(|&k| h.vertex(k)).collect();
        let edge_list: Vec<DimEdge> = index_list.iter().map(|&k| h.edge(k)).collect();
        let mut segments: Vec<usize> = index_list.windows(2).map(|w| w[1] - w[0]).collect();
        segments.push(h.len() - index_list[index_list.len() - 1] + index_list[0]);
        let parity_list: Vec<u8> =
            index_list.iter().map(|&k| parity_excluding(h.seq[k], i)).collect();
        let mut recurrence = Vec::with_capacity(index_list.len());
        recurrence.push(parity_excluding(h.seq[0], i));
        for k in 1..index_list.len() {
            let prev = usize::from(recurrence[k - 1]);
            recurrence.push(((prev + index_list[k] - index_list[k - 1] + 1) % 2) as u8);
        }
        Ok(DimensionProfile {
            dim: i,
            n: self.n,
            normalized: h,
            index_list,
            start_vertices,
            edge_list,
            segments,
            parity_list,
            parity_recurrence: recurrence,
        })
    }

    /// Whether the `i`-edges split evenly between the two classes of `D_in`.
    /// A `false` result is a counterexample report, not an error.
    pub fn check_balance(&self, i: usize) -> Result<bool> {
        Ok(self.dimension_profile(i)?.is_balanced())
    }

    /// Whether even- and odd-indexed segment lengths both sum to `2^{n-1}`.
    pub fn check_segment_sums(&self, i: usize) -> Result<bool> {
        Ok(self.dimension_profile(i)?.segment_sums_balanced())
    }

    /// Alternation of `par_n` along the cycle.
    pub fn parity_alternates(&self) -> bool {
        (0..self.len()).all(|k| parity(self.seq[k]) != parity(self.seq[(k + 1) % self.len()]))
    }
}

/// Per-dimension edge counts of a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticVector {
    pub counts: Vec<usize>,
}

/// Outcome of the pointwise necessary conditions on a chromatic vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticReport {
    pub all_even: bool,
    pub no_zero: bool,
    pub sum_is_order: bool,
    pub max_at_most_half: bool,
    pub min_at_least_two: bool,
    /// Permutation closure cannot be read off a single vector; it is exercised
    /// through [`HamiltonianCycle::permute_dims`].
    pub permutation_closed: Option<bool>,
}

impl ChromaticReport {
    pub fn pointwise_ok(&self) -> bool {
        self.all_even && self.no_zero && self.sum_is_order && self.max_at_most_half && self.min_at_least_two
    }
}

impl ChromaticVector {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn check_conditions(&self, n: usize) -> ChromaticReport {
        let c = &self.counts;
        let half = 1usize << n.saturating_sub(1);
        ChromaticReport {
            all_even: c.iter().all(|x| x % 2 == 0),
            no_zero: c.iter().all(|&x| x != 0),
            sum_is_order: c.len() == n && c.iter().sum::<usize>() == 1 << n,
            max_at_most_half: c.iter().all(|&x| x <= half),
            min_at_least_two: c.iter().all(|&x| x >= 2),
            permutation_closed: None,
        }
    }

    /// The vector with entry `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut counts = vec![0; self.counts.len()];
        for (i, &p) in perm.iter().enumerate() {
            counts[p] = self.counts[i];
        }
        Self { counts }
    }
}

/// Operators of a cycle at dimension `i`, computed on its normalized rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub dim: usize,
    pub n: usize,
    pub normalized: HamiltonianCycle,
    /// Positions where an `i`-edge starts; begins with 0.
    pub index_list: Vec<usize>,
    pub start_vertices: Vec<Vertex>,
    pub edge_list: Vec<DimEdge>,
    /// Cyclic gaps between consecutive entries of `index_list`.
    pub segments: Vec<usize>,
    /// Class of each `i`-edge, read directly.
    pub parity_list: Vec<u8>,
    /// The same list rebuilt from the segment lengths.
    pub parity_recurrence: Vec<u8>,
}

impl DimensionProfile {
    pub fn is_balanced(&self) -> bool {
        let ones = self.parity_list.iter().filter(|&&b| b == 1).count();
        2 * ones == self.parity_list.len()
    }

    pub fn recurrence_consistent(&self) -> bool {
        self.parity_list == self.parity_recurrence
    }

    pub fn segment_sums_balanced(&self) -> bool {
        let half = 1usize << (self.n - 1);
        let even: usize = self.segments.iter().step_by(2).sum();
        let odd: usize = self.segments.iter().skip(1).step_by(2).sum();
        even == half && odd == half
    }
}

/// Class counts of a partial matching and whether it can extend to a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingReport {
    /// `class_counts[i] = (class-0 edges, class-1 edges)` of dimension `i`.
    pub class_counts: Vec<(usize, usize)>,
    /// Frozen dimensions whose class counts differ.
    pub unbalanced_frozen: Vec<usize>,
}

impl MatchingReport {
    /// True when no Hamiltonian cycle can contain the matching while using no
    /// further edges in the frozen dimensions.
    pub fn obstructed(&self) -> bool {
        !self.unbalanced_frozen.is_empty()
    }
}

/// Checks a partial matching against the parity balance of every frozen dimension.
pub fn matching_obstruction(n: usize, matching: &[DimEdge], frozen: &[usize]) -> Result<MatchingReport> {
    check_dim(n)?;
    let mut used = HashSet::new();
    let mut class_counts = vec![(0usize, 0usize); n];
    for e in matching {
        if e.cube_dim() != n {
            return Err(Error::DimensionOutOfRange(e.cube_dim()));
        }
        for v in [e.base().value(), e.top().value()] {
            if !used.insert(v) {
                return Err(Error::NotAMatching(v));
            }
        }
        let slot = &mut class_counts[e.dim()];
        if e.class() == 0 {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
    }
    for &i in frozen {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    let mut unbalanced_frozen: Vec<usize> =
        frozen.iter().copied().filter(|&i| class_counts[i].0 != class_counts[i].1).collect();
    unbalanced_frozen.sort_unstable();
    unbalanced_frozen.dedup();
    Ok(MatchingReport { class_counts, unbalanced_frozen })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(n: usize) -> HamiltonianCycle {
        HamiltonianCycle::gray_code(n).unwrap()
    }

    #[test]
    fn validate_accepts_gray_and_square() {
        assert!(HamiltonianCycle::new(3, gray(3).words().to_vec()).is_ok());
        assert!(HamiltonianCycle::new(2, vec![0, 1, 3, 2]).is_ok());
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            HamiltonianCycle::new(3, vec![0, 1, 3, 7, 5, 4, 6]),
            Err(Error::WrongLength { expected: 8, found: 7 })
        );
        assert_eq!(
            HamiltonianCycle::new(3, vec![0, 1, 3, 7, 3, 2, 6, 4]),
            Err(Error::DuplicateVertex { vertex: 3, index: 4 })
        );
        assert_eq!(
            HamiltonianCycle::new(2, vec![0, 3, 1, 2]),
            Err(Error::NonAdjacentStep { index: 0, next: 1 })
        );
        assert_eq!(HamiltonianCycle::new(3, vec![0, 1, 3, 2, 6, 4, 5, 7]), Err(Error::NotClosed));
        assert!(matches!(HamiltonianCycle::new(2, vec![0, 1, 3, 9]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let h = gray(3);
        let s = h.to_json();
        assert_eq!(s, r#"{"n":3,"seq":[0,1,3,2,6,7,5,4]}"#);
        assert_eq!(HamiltonianCycle::from_json(&s).unwrap(), h);
        assert!(HamiltonianCycle::from_json(r#"{"n":2,"seq":[0,1,2,3]}"#).is_err());
    }

    #[test]
    fn colors_and_chromatic_vectors() {
        assert_eq!(gray(3).color(), vec![0, 1, 0, 2, 0, 1, 0, 2]);
        assert_eq!(gray(2).color(), vec![0, 1, 0, 1]);
        assert_eq!(gray(2).chromatic_vector().counts, vec![2, 2]);
        assert_eq!(gray(3).chromatic_vector().counts, vec![4, 2, 2]);
        assert_eq!(gray(4).chromatic_vector().counts, vec![8, 4, 2, 2]);
        for n in 2..=8 {
            let c = gray(n).color();
            assert!((0..c.len()).all(|k| c[k] != c[(k + 1) % c.len()]));
        }
    }

    #[test]
    fn chromatic_condition_examples() {
        assert!(ChromaticVector::new(vec![4, 2, 2]).check_conditions(3).pointwise_ok());
        let odd = ChromaticVector::new(vec![3, 3, 2]).check_conditions(3);
        assert!(!odd.all_even);
        let big = ChromaticVector::new(vec![4, 4, 2]).check_conditions(3);
        assert!(big.all_even && !big.sum_is_order);
    }

    #[test]
    fn permute_examples() {
        let h = gray(2);
        assert_eq!(h.permute_dims(&[0, 1]).unwrap(), h);
        let swapped = h.permute_dims(&[1, 0]).unwrap();
        assert_eq!(swapped.words(), &[0, 2, 3, 1]);
        assert_eq!(swapped.chromatic_vector().counts, vec![2, 2]);
        assert!(h.permute_dims(&[0, 0]).is_err());
        assert!(h.permute_dims(&[0]).is_err());
        let h4 = gray(4);
        let perm = [2, 0, 3, 1];
        assert_eq!(
            h4.permute_dims(&perm).unwrap().chromatic_vector(),
            h4.chromatic_vector().permuted(&perm)
        );
    }

    #[test]
    fn normalize_examples() {
        let h = gray(3);
        assert_eq!(h.normalize(0).unwrap(), h);
        assert_eq!(h.normalize(2).unwrap().words(), &[2, 6, 7, 5, 4, 0, 1, 3]);
        let r = h.reversed_sequence().normalize(0).unwrap();
        assert_eq!(r.words()[1] ^ r.words()[0], 1);
        assert_eq!(r.words()[0] & 1, 0);
        assert_eq!(r.edge_set(), h.edge_set());
        assert!(h.normalize(3).is_err());
    }

    #[test]
    fn profile_examples() {
        let h = gray(3);
        let p = h.dimension_profile(0).unwrap();
        assert_eq!(p.index_list, vec![0, 2, 4, 6]);
        assert_eq!(p.segments, vec![2, 2, 2, 2]);
        assert_eq!(p.parity_list, vec![0, 1, 0, 1]);
        assert!(p.recurrence_consistent() && p.is_balanced() && p.segment_sums_balanced());
        let words: Vec<u32> = p.start_vertices.iter().map(|v| v.value()).collect();
        assert_eq!(words, vec![0, 3, 6, 5]);
        let p = h.dimension_profile(2).unwrap();
        assert_eq!(p.index_list, vec![0, 4]);
        assert_eq!(p.segments, vec![4, 4]);
        assert_eq!(p.parity_list, vec![1, 0]);
        assert!(h.check_balance(0).unwrap());
        assert!(h.check_segment_sums(2).unwrap());
    }

    #[test]
    fn matching_examples() {
        let e = |w: u32| DimEdge::new(Vertex::new(w, 3).unwrap(), 0).unwrap();
        let ok = matching_obstruction(3, &[e(0), e(2)], &[0]).unwrap();
        assert_eq!(ok.class_counts[0], (1, 1));
        assert!(!ok.obstructed());
        let bad = matching_obstruction(3, &[e(0), e(6)], &[0]).unwrap();
        assert_eq!(bad.class_counts[0], (2, 0));
        assert!(bad.obstructed());
        assert!(!matching_obstruction(3, &[], &[0, 1, 2]).unwrap().obstructed());
        let f = DimEdge::new(Vertex::new(0, 3).unwrap(), 1).unwrap();
        assert_eq!(matching_obstruction(3, &[e(0), f], &[]), Err(Error::NotAMatching(0)));
    }

    #[test]
    fn parity_alternates_on_gray() {
        for n in 2..=10 {
            assert!(gray(n).parity_alternates());
        }
    }
}
