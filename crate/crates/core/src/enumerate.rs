//! Exhaustive and sampled generation of Hamiltonian cycles of `Q_n`.
//!
//! Cycles are counted as undirected edge sets. Each one is emitted once, in
//! canonical form: starting at vertex 0, with the first edge in a lower
//! dimension than the closing edge.

use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::hypercube::{check_dim, parity_excluding};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Rotates to vertex 0 and picks the orientation whose first edge has the
/// smaller dimension.
pub fn canonical_form(h: &HamiltonianCycle) -> HamiltonianCycle {
    let start = h.words().iter().position(|&w| w == 0).expect("cycle contains vertex 0");
    let r = h.rotated(start);
    let w = r.words();
    let first = (w[0] ^ w[1]).trailing_zeros();
    let last = (w[w.len() - 1] ^ w[0]).trailing_zeros();
    if first <= last {
        r
    } else {
        r.reversed()
    }
}

/// Sound pruning predicates for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PruneConfig {
    /// Prune when a dimension's class imbalance exceeds the number of edges
    /// of the deficit class that could still be added.
    pub balance_feasibility: bool,
    /// Prune when a dimension has no used and no addable edge.
    pub dimension_liveness: bool,
}

impl PruneConfig {
    pub fn all() -> Self {
        Self { balance_feasibility: true, dimension_liveness: true }
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn subsets() -> [Self; 4] {
        [
            Self::none(),
            Self { balance_feasibility: true, dimension_liveness: false },
            Self { balance_feasibility: false, dimension_liveness: true },
            Self::all(),
        ]
    }
}

/// Path from vertex 0 plus the bookkeeping the prunes need.
struct SearchState {
    n: usize,
    len: usize,
    prunes: PruneConfig,
    path: Vec<u32>,
    visited: Vec<bool>,
    /// used[i][c]: edges of dimension i and class c on the path
    used: Vec<[usize; 2]>,
    /// addable[i][c]: unused edges of dimension i and class c with no interior endpoint
    addable: Vec<[usize; 2]>,
    undo: Vec<(usize, usize)>,
}

impl SearchState {
    fn new(n: usize, prunes: PruneConfig) -> Self {
        let len = 1usize << n;
        let per_class = 1usize << (n - 2);
        let mut visited = vec![false; len];
        visited[0] = true;
        Self {
            n,
            len,
            prunes,
            path: vec![0],
            visited,
            used: vec![[0; 2]; n],
            addable: vec![[per_class, per_class]; n],
            undo: Vec::new(),
        }
    }

    fn end(&self) -> u32 {
        *self.path.last().expect("path is never empty")
    }

    fn is_interior(&self, v: u32) -> bool {
        self.visited[v as usize] && v != 0 && v != self.end()
    }

    /// Extends the path by one edge; returns the undo mark.
    fn push(&mut self, w: u32) -> usize {
        let mark = self.undo.len();
        let u = self.end();
        let j = (u ^ w).trailing_zeros() as usize;
        let c = parity_excluding(u, j) as usize;
        self.addable[j][c] -= 1;
        self.used[j][c] += 1;
        self.undo.push((j, c));
        if u != 0 {
            let prev = (u ^ self.path[self.path.len() - 2]).trailing_zeros() as usize;
            for k in (0..self.n).filter(|&k| k != j && k != prev) {
                let x = u ^ (1 << k);
                if !self.visited[x as usize] || x == 0 {
                    let c = parity_excluding(u, k) as usize;
                    self.addable[k][c] -= 1;
                    self.undo.push((k, c + 2));
                }
            }
        }
        self.visited[w as usize] = true;
        self.path.push(w);
        mark
    }

    fn pop(&mut self, mark: usize) {
        let w = self.path.pop().expect("pop after push");
        self.visited[w as usize] = false;
        while self.undo.len() > mark {
            let (k, c) = self.undo.pop().expect("undo entry");
            if c >= 2 {
                self.addable[k][c - 2] += 1;
            } else {
                self.addable[k][c] += 1;
                self.used[k][c] -= 1;
            }
        }
    }

    fn pruned(&self) -> bool {
        if self.prunes.balance_feasibility {
            for i in 0..self.n {
                let [z, o] = self.used[i];
                let deficit = usize::from(o < z);
                if z.abs_diff(o) > self.addable[i][deficit] {
                    return true;
                }
            }
        }
        if self.prunes.dimension_liveness {
            for i in 0..self.n {
                if self.used[i] == [0, 0] && self.addable[i] == [0, 0] {
                    return true;
                }
            }
        }
        false
    }

    /// Depth-first search in increasing-dimension branch order.
    fn run(&mut self, emit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        let u = self.end();
        if self.path.len() == self.len {
            let last = u.trailing_zeros() as usize;
            if u.is_power_of_two() && (self.path[1].trailing_zeros() as usize) < last {
                return emit(&self.path);
            }
            return true;
        }
        // the closing edge must lie in a higher dimension than the first one
        if self.path.len() > 1 && !self.can_close() {
            return true;
        }
        for j in 0..self.n {
            let w = u ^ (1 << j);
            if self.visited[w as usize] {
                continue;
            }
            let mark = self.push(w);
            let keep_going = if self.pruned() { true } else { self.run(emit) };
            self.pop(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn can_close(&self) -> bool {
        let first = self.path[1].trailing_zeros() as usize;
        (first + 1..self.n).any(|d| !self.is_interior(1 << d))
    }
}

fn check_enum_dim(n: usize) -> Result<()> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::DimensionOutOfRange(n));
    }
    Ok(())
}

/// Calls `visit` on every canonical cycle, in branch order. `visit` returns
/// `false` to stop early.
pub fn for_each_cycle(n: usize, prunes: PruneConfig, mut visit: impl FnMut(&[u32]) -> bool) -> Result<()> {
    check_enum_dim(n)?;
    SearchState::new(n, prunes).run(&mut visit);
    Ok(())
}

/// All canonical cycles of `Q_n`.
pub fn enumerate(n: usize, prunes: PruneConfig) -> Result<Vec<HamiltonianCycle>> {
    let mut out = Vec::new();
    for_each_cycle(n, prunes, |w| {
        out.push(HamiltonianCycle::from_trusted(n, w.to_vec()));
        true
    })?;
    Ok(out)
}

pub fn count(n: usize, prunes: PruneConfig) -> Result<u64> {
    let mut total = 0u64;
    for_each_cycle(n, prunes, |_| {
        total += 1;
        true
    })?;
    Ok(total)
}

/// Path prefixes of `depth` edges from vertex 0, in branch order. Searching
/// below each prefix and concatenating reproduces the sequential stream.
pub fn split_prefixes(n: usize, depth: usize, prunes: PruneConfig) -> Result<Vec<Vec<u32>>> {
    check_enum_dim(n)?;
    let mut out = Vec::new();
    let mut state = SearchState::new(n, prunes);
    collect_prefixes(&mut state, depth, &mut out);
    Ok(out)
}

fn collect_prefixes(state: &mut SearchState, depth: usize, out: &mut Vec<Vec<u32>>) {
    if state.path.len() == depth + 1 || state.path.len() == state.len {
        out.push(state.path.clone());
        return;
    }
    let u = state.end();
    for j in 0..state.n {
        let w = u ^ (1 << j);
        if state.visited[w as usize] || (state.path.len() > 1 && !state.can_close()) {
            continue;
        }
        let mark = state.push(w);
        if !state.pruned() {
            collect_prefixes(state, depth, out);
        }
        state.pop(mark);
    }
}

/// Runs the search below a prefix produced by [`split_prefixes`].
pub fn for_each_cycle_from(
    n: usize,
    prefix: &[u32],
    prunes: PruneConfig,
    mut visit: impl FnMut(&[u32]) -> bool,
) -> Result<()> {
    check_enum_dim(n)?;
    if prefix.first() != Some(&0) {
        return Err(Error::Parse { line: 0, message: "prefix must start at vertex 0".into() });
    }
    let mut state = SearchState::new(n, prunes);
    for (k, &w) in prefix.iter().enumerate().skip(1) {
        let u = state.end();
        if w as usize >= state.len || state.visited[w as usize] || !(u ^ w).is_power_of_two() {
            return Err(Error::NonAdjacentStep { index: k - 1, next: k });
        }
        state.push(w);
    }
    if !state.pruned() {
        state.run(&mut visit);
    }
    Ok(())
}

/// Counts with the search tree split at `depth` and the pieces run on the
/// rayon pool.
pub fn count_parallel(n: usize, prunes: PruneConfig, depth: usize) -> Result<u64> {
    let prefixes = split_prefixes(n, depth, prunes)?;
    prefixes
        .par_iter()
        .map(|p| {
            let mut c = 0u64;
            for_each_cycle_from(n, p, prunes, |_| {
                c += 1;
                true
            })
            .map(|_| c)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Checkpoint text: one prefix per line, vertices separated by spaces.
pub fn prefixes_to_text(prefixes: &[Vec<u32>]) -> String {
    let mut s = String::new();
    for p in prefixes {
        let line: Vec<String> = p.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn parse_prefixes(text: &str) -> Result<Vec<Vec<u32>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            l.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse { line: k + 1, message: format!("bad vertex `{t}`") }))
                .collect()
        })
        .collect()
}

/// Largest dimension accepted by [`sample`].
pub const SAMPLE_MAX_DIM: usize = 16;

/// `k` cycles from independent randomized-order backtracking runs, seeded
/// from `seed`. Each run returns its first completed cycle in canonical
/// form. The result is reproducible for a fixed seed but is *not* a uniform
/// sample of the Hamiltonian cycles of `Q_n`.
pub fn sample(n: usize, seed: u64, k: usize) -> Result<Vec<HamiltonianCycle>> {
    check_enum_dim(n)?;
    if n > SAMPLE_MAX_DIM {
        return Err(Error::DimensionOutOfRange(n));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = RandomWalker::new(n);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let mut rng = ChaCha8Rng::seed_from_u64(master.gen());
        if let Some(words) = sampler.attempt(&mut rng) {
            out.push(canonical_form(&HamiltonianCycle::from_trusted(n, words)));
        }
    }
    Ok(out)
}

/// Randomized backtracking with a dead-end check: every unvisited vertex
/// must keep two neighbors that are unvisited or path endpoints.
struct RandomWalker {
    n: usize,
    len: usize,
    visited: Vec<bool>,
    /// neighbors that are not interior path vertices
    open_degree: Vec<u8>,
    path: Vec<u32>,
    budget: u64,
}

impl RandomWalker {
    fn new(n: usize) -> Self {
        let len = 1 << n;
        Self { n, len, visited: vec![false; len], open_degree: vec![n as u8; len], path: Vec::with_capacity(len), budget: 0 }
    }

    fn attempt(&mut self, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
        self.visited.iter_mut().for_each(|v| *v = false);
        self.open_degree.iter_mut().for_each(|d| *d = self.n as u8);
        self.path.clear();
        self.path.push(0);
        self.visited[0] = true;
        self.budget = 64 * self.len as u64;
        if self.search(rng) {
            Some(self.path.clone())
        } else {
            None
        }
    }

    fn ordered_dims(&self, u: u32, rng: &mut ChaCha8Rng) -> Vec<usize> {
        // random order, then stable-sorted by remaining open degree
        let mut dims: Vec<usize> = (0..self.n).collect();
        dims.shuffle(rng);
        dims.sort_by_key(|&j| self.open_degree[(u ^ (1 << j)) as usize]);
        dims
    }

    fn shift_open_degree(&mut self, u: u32, up: bool) {
        for i in 0..self.n {
            let d = &mut self.open_degree[(u ^ (1 << i)) as usize];
            if up {
                *d += 1;
            } else {
                *d -= 1;
            }
        }
    }

    /// Iterative backtracking; each frame holds the end vertex's move order.
    fn search(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let mut frames: Vec<(Vec<usize>, usize)> = vec![(self.ordered_dims(0, rng), 0)];
        loop {
            let u = *self.path.last().expect("nonempty path");
            if self.path.len() == self.len {
                if u.is_power_of_two() {
                    return true;
                }
            } else if self.budget > 0 {
                let top = frames.last_mut().expect("frame");
                if let Some(&j) = top.0.get(top.1) {
                    top.1 += 1;
                    let w = u ^ (1 << j);
                    if self.visited[w as usize] {
                        continue;
                    }
                    // u becomes interior once w is appended (unless u is the start)
                    if u != 0 {
                        self.shift_open_degree(u, false);
                    }
                    self.visited[w as usize] = true;
                    self.path.push(w);
                    if self.alive(u) {
                        if self.path.len() < self.len {
                            self.budget -= 1;
                        }
                        let dims = self.ordered_dims(w, rng);
                        frames.push((dims, 0));
                        continue;
                    }
                    self.retreat();
                    continue;
                }
            }
            if self.budget == 0 && self.path.len() < self.len {
                return false;
            }
            // frame exhausted or dead: back out one vertex
            frames.pop();
            if frames.is_empty() {
                return false;
            }
            self.retreat();
        }
    }

    fn retreat(&mut self) {
        let w = self.path.pop().expect("nonempty path");
        self.visited[w as usize] = false;
        let u = *self.path.last().expect("start stays");
        if u != 0 {
            self.shift_open_degree(u, true);
        }
    }

    fn alive(&self, old_end: u32) -> bool {
        if self.path.len() == self.len {
            return true;
        }
        // the start needs a non-interior neighbor to close through
        if self.open_degree[0] == 0 {
            return false;
        }
        (0..self.n).all(|i| {
            let x = old_end ^ (1 << i);
            self.visited[x as usize] || self.open_degree[x as usize] >= 2
        })
    }
}
