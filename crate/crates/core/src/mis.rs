//! Exact maximum independent sets and equi-independence numbers.
//!
//! Two independent routes compute `α_=` of a bipartite graph:
//!
//! * the pair reduction: `G'` has a vertex for every non-adjacent cross pair
//!   `(v0, v1)`, and an independent set of `G'` of size `k` unpacks to a
//!   balanced independent set of size `2k`;
//! * a direct branch and bound over subsets `A` of one class, where the best
//!   partner for `A` is everything in the other class outside `N(A)`.

use crate::error::{Error, Result};
use crate::graph::{Bitset, BipartiteGraph, UndirectedGraph};
use serde::{Deserialize, Serialize};

/// Default cap on solver input size.
pub const DEFAULT_SIZE_LIMIT: usize = 5000;

/// Largest input accepted by the exhaustive oracle.
pub const ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub size: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquiMethod {
    Reduction,
    Direct,
}

pub fn is_independent(g: &UndirectedGraph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(k, &u)| set[k + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

pub fn is_balanced(b: &BipartiteGraph, set: &[usize]) -> bool {
    let ones = set.iter().filter(|&&v| b.class_of(v) == 1).count();
    2 * ones == set.len()
}

/// Independent and no vertex outside can be added.
pub fn is_maximal_independent(g: &UndirectedGraph, set: &[usize]) -> bool {
    if !is_independent(g, set) {
        return false;
    }
    let mut blocked = Bitset::new(g.vertex_count());
    for &v in set {
        blocked.insert(v);
        blocked.union_with(g.neighbors(v));
    }
    blocked.count() == g.vertex_count()
}

fn check_size(vertices: usize, limit: usize) -> Result<()> {
    if vertices > limit {
        Err(Error::SizeLimitExceeded { vertices, limit })
    } else {
        Ok(())
    }
}

/// Exact independence number with a witness, with the default size limit.
pub fn max_independent_set(g: &UndirectedGraph) -> Result<IndependentSet> {
    max_independent_set_limited(g, DEFAULT_SIZE_LIMIT)
}

/// Branch and bound for a maximum clique of the complement, bounded by greedy
/// coloring. Vertices are ordered by complement degree (descending), then index.
pub fn max_independent_set_limited(g: &UndirectedGraph, size_limit: usize) -> Result<IndependentSet> {
    let n = g.vertex_count();
    check_size(n, size_limit)?;
    if n == 0 {
        return Ok(IndependentSet { size: 0, vertices: Vec::new() });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    for (k, row) in rows.iter_mut().enumerate() {
        let v = order[k];
        for (u, &p) in pos.iter().enumerate() {
            if u != v && !g.has_edge(u, v) {
                row[p >> 6] |= 1 << (p & 63);
            }
        }
    }
    let mut search = CliqueSearch { rows: &rows, best: Vec::new(), current: Vec::new() };
    let mut all = vec![0u64; words];
    for p in 0..n {
        all[p >> 6] |= 1 << (p & 63);
    }
    search.expand(all);
    let mut vertices: Vec<usize> = search.best.iter().map(|&p| order[p]).collect();
    vertices.sort_unstable();
    Ok(IndependentSet { size: vertices.len(), vertices })
}

struct CliqueSearch<'a> {
    rows: &'a [Vec<u64>],
    best: Vec<usize>,
    current: Vec<usize>,
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words.iter().position(|&w| w != 0).map(|k| k * 64 + words[k].trailing_zeros() as usize)
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut cand: Vec<u64>) {
        // Greedy coloring: each color class is independent in the complement,
        // so a clique meets it at most once.
        let min_color = (self.best.len() + 1).saturating_sub(self.current.len());
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while first_bit(&uncolored).is_some() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                uncolored[v >> 6] &= !(1 << (v & 63));
                for (a, b) in q.iter_mut().zip(&self.rows[v]) {
                    *a &= !b;
                }
                q[v >> 6] &= !(1 << (v & 63));
                if color >= min_color {
                    order.push((v, color));
                }
            }
        }
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(&self.rows[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v >> 6] &= !(1 << (v & 63));
        }
    }
}

/// `G'`: vertices are non-adjacent pairs `(v0, v1)` with `v0` in class 0 and
/// `v1` in class 1; two pairs are adjacent when they share a member or when a
/// member of one is adjacent in `G` to the opposite member of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub graph: UndirectedGraph,
    /// `pair_labels[p] = (v0, v1)` in original vertex ids, sorted lexicographically.
    pub pair_labels: Vec<(usize, usize)>,
}

impl ReducedGraph {
    /// Union of the members of the given pair-vertices.
    pub fn unpack(&self, pairs: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> =
            pairs.iter().flat_map(|&p| [self.pair_labels[p].0, self.pair_labels[p].1]).collect();
        out.sort_unstable();
        out
    }

    /// `G'` plus an edge between every two pairs `(u, v)`, `(u', v')` with
    /// `u < u'` and `v > v'`. Members of an independent set of `G'` can be
    /// re-paired in sorted order, so the independence number is unchanged
    /// while all but one pairing of each solution is cut away.
    pub fn without_crossings(&self) -> UndirectedGraph {
        let m = self.pair_labels.len();
        let rows = (0..m)
            .map(|p| {
                let (u, v) = self.pair_labels[p];
                let mut row = self.graph.neighbors(p).clone();
                for (q, &(u2, v2)) in self.pair_labels.iter().enumerate() {
                    if (u < u2 && v > v2) || (u > u2 && v < v2) {
                        row.insert(q);
                    }
                }
                row
            })
            .collect();
        UndirectedGraph::from_rows(rows)
    }
}

pub fn equi_reduction(b: &BipartiteGraph) -> ReducedGraph {
    let g = b.graph();
    let class0 = b.class(0);
    let class1 = b.class(1);
    let mut pair_labels = Vec::new();
    let mut by_first = vec![Vec::new(); g.vertex_count()];
    let mut by_second = vec![Vec::new(); g.vertex_count()];
    for &u in &class0 {
        for &v in &class1 {
            if !g.has_edge(u, v) {
                by_first[u].push(pair_labels.len());
                by_second[v].push(pair_labels.len());
                pair_labels.push((u, v));
            }
        }
    }
    let m = pair_labels.len();
    let as_bits = |ids: &[usize]| {
        let mut s = Bitset::new(m);
        for &p in ids {
            s.insert(p);
        }
        s
    };
    let first_sets: Vec<Bitset> = by_first.iter().map(|ids| as_bits(ids)).collect();
    let second_sets: Vec<Bitset> = by_second.iter().map(|ids| as_bits(ids)).collect();
    let rows = pair_labels
        .iter()
        .enumerate()
        .map(|(p, &(u, v))| {
            let mut row = first_sets[u].clone();
            row.union_with(&second_sets[v]);
            // (u, v') with v' ~ u, and (u', v) with u' ~ v
            for w in g.neighbors(u).iter() {
                row.union_with(&second_sets[w]);
            }
            for w in g.neighbors(v).iter() {
                row.union_with(&first_sets[w]);
            }
            row.remove(p);
            row
        })
        .collect();
    ReducedGraph { graph: UndirectedGraph::from_rows(rows), pair_labels }
}

/// `α_=` with a balanced independent witness.
pub fn equi_independence(b: &BipartiteGraph, method: EquiMethod) -> Result<IndependentSet> {
    equi_independence_limited(b, method, DEFAULT_SIZE_LIMIT)
}

pub fn equi_independence_limited(b: &BipartiteGraph, method: EquiMethod, size_limit: usize) -> Result<IndependentSet> {
    match method {
        EquiMethod::Reduction => {
            let pairs = b.class(0).len() * b.class(1).len() - b.graph().edge_count();
            check_size(pairs, size_limit)?;
            let reduced = equi_reduction(b);
            let inner = max_independent_set_limited(&reduced.without_crossings(), size_limit)?;
            let vertices = reduced.unpack(&inner.vertices);
            Ok(IndependentSet { size: 2 * inner.size, vertices })
        }
        EquiMethod::Direct => {
            check_size(b.vertex_count(), size_limit)?;
            Ok(direct_equi(b))
        }
    }
}

/// Branch and bound over subsets `A` of the smaller class `S`. For a given
/// `A` the best partner is `T \ N(A)`, so the value of `A` is
/// `min(|A|, |T| - |N(A)|)`; `|N(A)|` only grows along a branch.
fn direct_equi(b: &BipartiteGraph) -> IndependentSet {
    direct_equi_forced(b, &[])
}

/// As [`direct_equi`], searching only sets whose smaller-class side contains `forced`.
fn direct_equi_forced(b: &BipartiteGraph, forced: &[usize]) -> IndependentSet {
    let (c0, c1) = (b.class(0), b.class(1));
    let (side, other) = if c1.len() < c0.len() { (c1, c0) } else { (c0, c1) };
    if side.is_empty() || other.is_empty() {
        return IndependentSet { size: 0, vertices: Vec::new() };
    }
    let mut other_pos = vec![usize::MAX; b.vertex_count()];
    for (k, &v) in other.iter().enumerate() {
        other_pos[v] = k;
    }
    let words = other.len().div_ceil(64);
    let nbrs: Vec<Vec<u64>> = side
        .iter()
        .map(|&u| {
            let mut row = vec![0u64; words];
            for w in b.graph().neighbors(u).iter() {
                let k = other_pos[w];
                row[k >> 6] |= 1 << (k & 63);
            }
            row
        })
        .collect();
    let mut search = DirectSearch { nbrs: &nbrs, other_len: other.len(), best: 0, best_set: Vec::new() };
    let mut chosen: Vec<usize> =
        forced.iter().map(|&v| side.iter().position(|&u| u == v).expect("forced vertex on the smaller side")).collect();
    let mut covered = vec![0u64; words];
    for &x in &chosen {
        or_into(&mut covered, &nbrs[x]);
    }
    let mut cands: Vec<usize> = (0..side.len()).filter(|x| !chosen.contains(x)).collect();
    cands.sort_by_key(|&x| (popcount(&nbrs[x]), x));
    search.run(&mut chosen, &covered, &cands);

    let k = search.best;
    if k == 0 {
        return IndependentSet { size: 0, vertices: Vec::new() };
    }
    let mut covered = vec![0u64; words];
    for &x in &search.best_set {
        or_into(&mut covered, &nbrs[x]);
    }
    let mut vertices: Vec<usize> = search.best_set.iter().take(k).map(|&x| side[x]).collect();
    vertices.extend((0..other.len()).filter(|&t| covered[t >> 6] >> (t & 63) & 1 == 0).take(k).map(|t| other[t]));
    vertices.sort_unstable();
    IndependentSet { size: 2 * k, vertices }
}

#[inline]
fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

#[inline]
fn or_into(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a |= b;
    }
}

#[inline]
fn new_count(row: &[u64], covered: &[u64]) -> usize {
    row.iter().zip(covered).map(|(r, c)| (r & !c).count_ones() as usize).sum()
}

struct DirectSearch<'a> {
    nbrs: &'a [Vec<u64>],
    other_len: usize,
    best: usize,
    best_set: Vec<usize>,
}

impl DirectSearch<'_> {
    fn record(&mut self, chosen: &[usize], free: usize) {
        let value = chosen.len().min(free);
        if value > self.best {
            self.best = value;
            self.best_set = chosen.to_vec();
        }
    }

    fn run(&mut self, chosen: &mut Vec<usize>, covered: &[u64], cands: &[usize]) {
        let free = self.other_len - popcount(covered);
        self.record(chosen, free);
        let mut target = self.best + 1;
        if free < target || chosen.len() + cands.len() < target {
            return;
        }
        let mut costly: Vec<(usize, usize)> = Vec::with_capacity(cands.len());
        let base_len = chosen.len();
        for &x in cands {
            let m = new_count(&self.nbrs[x], covered);
            if m == 0 {
                // free to add: N(x) is already covered
                chosen.push(x);
            } else if free - m.min(free) >= target {
                costly.push((m, x));
            }
        }
        if chosen.len() > base_len {
            self.record(chosen, free);
            target = self.best + 1;
        }
        costly.sort_unstable();
        let mut next = covered.to_vec();
        for idx in 0..costly.len() {
            let remaining = costly.len() - idx;
            if chosen.len() + remaining < target {
                break;
            }
            // Reaching `target` needs `need` more vertices from costly[idx..];
            // the union of their new neighbors is at least the largest single
            // cost among them, hence at least the need-th smallest.
            let need = target.saturating_sub(chosen.len()).max(1);
            if free < target + costly[idx + need - 1].0 {
                break;
            }
            let (m, x) = costly[idx];
            if free < target + m {
                continue;
            }
            next.copy_from_slice(covered);
            or_into(&mut next, &self.nbrs[x]);
            chosen.push(x);
            let rest: Vec<usize> = costly[idx + 1..].iter().map(|&(_, y)| y).collect();
            self.run(chosen, &next, &rest);
            chosen.pop();
            target = self.best + 1;
        }
        chosen.truncate(base_len);
    }
}

/// `α_=(Q_n)`. For `n >= 4` the direct method only searches sets containing
/// the words 0 and 3: the translations by even words and the coordinate
/// permutations preserve both classes, and a side with no two words at
/// distance 2 has `|N(A)| = n|A|`, giving value at most `2^{n-1}/(n+1)`,
/// below the `2^{n-3}` per side of [`lower_bound_set`].
pub fn hypercube_equi_independence(n: usize, method: EquiMethod) -> Result<IndependentSet> {
    hypercube_equi_independence_limited(n, method, DEFAULT_SIZE_LIMIT)
}

pub fn hypercube_equi_independence_limited(n: usize, method: EquiMethod, size_limit: usize) -> Result<IndependentSet> {
    let b = BipartiteGraph::hypercube(n)?;
    if method == EquiMethod::Direct && n >= 4 {
        check_size(b.vertex_count(), size_limit)?;
        return Ok(direct_equi_forced(&b, &[0, 3]));
    }
    equi_independence_limited(&b, method, size_limit)
}

/// Exhaustive `α_=` over all vertex subsets; graphs of at most 20 vertices.
pub fn brute_force_equi(b: &BipartiteGraph) -> Result<usize> {
    let n = b.vertex_count();
    check_size(n, ORACLE_LIMIT)?;
    let adj: Vec<u32> = (0..n)
        .map(|v| b.graph().neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let class1: u32 = (0..n).filter(|&v| b.class_of(v) == 1).fold(0, |m, v| m | 1 << v);
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best || size % 2 == 1 || 2 * (mask & class1).count_ones() as usize != size {
            continue;
        }
        let mut rest = mask;
        let mut independent = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & mask != 0 {
                independent = false;
                break;
            }
        }
        if independent {
            best = size;
        }
    }
    Ok(best)
}

/// `I_0 ∪ I_1` with `I_b` the vertices whose entries 0 and 1 both equal `b`
/// and whose parity is `b`: an independent, balanced, maximal set of size `2^{n-2}`.
pub fn lower_bound_set(n: usize) -> Result<Vec<u32>> {
    crate::hypercube::check_dim(n)?;
    if n < 3 {
        return Err(Error::DimensionOutOfRange(n));
    }
    let mut out: Vec<u32> = Vec::with_capacity(1 << (n - 2));
    for b in 0..2u32 {
        let low = if b == 1 { 0b11 } else { 0 };
        out.extend((0..1u32 << (n - 2)).map(|rest| rest << 2 | low).filter(|&v| u32::from(crate::hypercube::parity(v)) == b));
    }
    Ok(out)
}
