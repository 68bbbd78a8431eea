//! Property sweeps over corpora of cycles.

use std::path::PathBuf;
use std::time::Instant;

use qube_core::enumerate::{for_each_cycle_from, split_prefixes};
use qube_core::squares::{check_threshold_with, equi_table, rim_threshold_with, ThresholdMode};
use qube_core::{dimension_graph, has_square, sample, HamiltonianCycle, PruneConfig, UndirectedGraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{Mode, Property, Table};
use crate::{corpus, CliError, Workers};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CorpusKind {
    Exhaustive,
    Sample { k: usize, seed: u64 },
    File { path: String },
}

impl std::fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorpusKind::Exhaustive => write!(f, "exhaustive"),
            CorpusKind::Sample { k, seed } => write!(f, "sample of {k} (seed {seed})"),
            CorpusKind::File { path } => write!(f, "{path}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub property: String,
    pub n: usize,
    pub corpus: CorpusKind,
    pub checked: u64,
    pub violations: u64,
    /// The lexicographically smallest violating cycle, or for `isomorphism`
    /// the first failing dimension.
    pub counterexample: Option<serde_json::Value>,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Everything `verify` needs besides the corpus.
#[derive(Debug, Clone)]
pub struct VerifyJob {
    pub n: usize,
    pub property: Property,
    pub corpus: CorpusKind,
    pub mode: Mode,
    pub table: Table,
}

/// Per-cycle predicate for one property.
#[derive(Debug, Clone)]
pub struct Checker {
    property: Property,
    n: usize,
    threshold: usize,
    perms: Vec<Vec<usize>>,
}

impl Checker {
    pub fn new(property: Property, n: usize, mode: Mode, table: Table) -> Result<Self, CliError> {
        let threshold = if property == Property::Threshold {
            let mode = match mode {
                Mode::Independence => ThresholdMode::Independence,
                Mode::Equi => ThresholdMode::Equi,
            };
            match table {
                Table::Computed => rim_threshold_with(n, mode, equi_table::computed)?,
                Table::Published => rim_threshold_with(n, mode, equi_table::published)?,
            }
        } else {
            0
        };
        // a cyclic shift and the reversal of the coordinates
        let perms = vec![(0..n).map(|i| (i + 1) % n).collect(), (0..n).rev().collect()];
        Ok(Self { property, n, threshold, perms })
    }

    pub fn holds(&self, h: &HamiltonianCycle) -> bool {
        let n = self.n;
        match self.property {
            Property::Balance => (0..n).all(|i| {
                h.dimension_profile(i).map(|p| p.is_balanced() && p.recurrence_consistent()).unwrap_or(false)
            }),
            Property::Segments => (0..n).all(|i| h.check_segment_sums(i).unwrap_or(false)),
            Property::Squares => has_square(h),
            Property::Chromatic => {
                let c = h.chromatic_vector();
                c.check_conditions(n).pointwise_ok()
                    && self.perms.iter().all(|p| {
                        h.permute_dims(p).map(|q| q.chromatic_vector() == c.permuted(p)).unwrap_or(false)
                    })
            }
            Property::Threshold => check_threshold_with(h, self.threshold).holds(),
            Property::Isomorphism => true,
        }
    }
}

#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    violations: u64,
    bad: Vec<HamiltonianCycle>,
}

impl Tally {
    fn add(&mut self, h: &HamiltonianCycle, ok: bool, keep_all: bool) {
        self.checked += 1;
        if ok {
            return;
        }
        self.violations += 1;
        if keep_all || self.bad.is_empty() {
            self.bad.push(h.clone());
        } else if h.words() < self.bad[0].words() {
            self.bad[0] = h.clone();
        }
    }

    fn merge(mut self, other: Tally, keep_all: bool) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        self.bad.extend(other.bad);
        self.bad.sort_by(|a, b| a.words().cmp(b.words()));
        if !keep_all {
            self.bad.truncate(1);
        }
        self
    }
}

/// Runs the sweep. The second value lists the violating cycles: all of them
/// for `squares`, otherwise at most the reported one.
pub fn run(job: &VerifyJob, workers: &Workers) -> Result<(VerifyReport, Vec<HamiltonianCycle>), CliError> {
    let start = Instant::now();
    let n = job.n;
    let finish = |checked, violations, counterexample| VerifyReport {
        property: format!("{:?}", job.property).to_lowercase(),
        n,
        corpus: job.corpus.clone(),
        checked,
        violations,
        counterexample,
        seconds: start.elapsed().as_secs_f64(),
    };
    if job.property == Property::Isomorphism {
        if n < 2 {
            return Err(CliError::Usage("isomorphism needs n >= 2".into()));
        }
        let failing: Vec<usize> = workers.install(|| {
            (0..n).into_par_iter().filter(|&i| !projection_is_isomorphism(n, i)).collect::<Vec<_>>()
        });
        let first = failing.first().map(|&i| serde_json::json!({ "dim": i }));
        return Ok((finish(n as u64, failing.len() as u64, first), Vec::new()));
    }
    let checker = Checker::new(job.property, n, job.mode, job.table)?;
    let keep_all = job.property == Property::Squares;
    let tally = match &job.corpus {
        CorpusKind::Exhaustive => {
            let prefixes = split_prefixes(n, n + 2, PruneConfig::all())?;
            workers.install(|| {
                prefixes
                    .par_iter()
                    .map(|p| {
                        let mut t = Tally::default();
                        let mut failure = None;
                        for_each_cycle_from(n, p, PruneConfig::all(), |w| match HamiltonianCycle::new(n, w.to_vec()) {
                            Ok(h) => {
                                t.add(&h, checker.holds(&h), keep_all);
                                true
                            }
                            Err(e) => {
                                failure = Some(e);
                                false
                            }
                        })?;
                        failure.map_or(Ok(t), Err)
                    })
                    .try_reduce(Tally::default, |a, b| Ok(a.merge(b, keep_all)))
            })?
        }
        CorpusKind::Sample { k, seed } => {
            let cycles = sample(n, *seed, *k)?;
            sweep(&cycles, &checker, keep_all, workers)
        }
        CorpusKind::File { path } => {
            let cycles = corpus::read_cycles(&PathBuf::from(path))?;
            if let Some((k, h)) = cycles.iter().enumerate().find(|(_, h)| h.n() != n) {
                return Err(CliError::Usage(format!("cycle {} has n = {}, expected {n}", k + 1, h.n())));
            }
            sweep(&cycles, &checker, keep_all, workers)
        }
    };
    let counterexample = tally.bad.first().map(|h| serde_json::to_value(h.to_record()).expect("cycle serializes"));
    Ok((finish(tally.checked, tally.violations, counterexample), tally.bad))
}

fn sweep(cycles: &[HamiltonianCycle], checker: &Checker, keep_all: bool, workers: &Workers) -> Tally {
    workers.install(|| {
        cycles
            .par_iter()
            .fold(Tally::default, |mut t, h| {
                t.add(h, checker.holds(h), keep_all);
                t
            })
            .reduce(Tally::default, |a, b| a.merge(b, keep_all))
    })
}

/// The projection of `D_in` onto `Q_{n-1}` is a bijection on vertices that
/// maps edges onto edges.
pub fn projection_is_isomorphism(n: usize, i: usize) -> bool {
    let (Ok(d), Ok(q)) = (dimension_graph(n, i), UndirectedGraph::hypercube(n - 1)) else {
        return false;
    };
    let mut hit = vec![false; q.vertex_count()];
    for e in d.vertices() {
        let p = e.project().value() as usize;
        if p >= hit.len() || std::mem::replace(&mut hit[p], true) {
            return false;
        }
    }
    if !hit.iter().all(|&x| x) || d.edges().len() != q.edge_count() {
        return false;
    }
    d.edges().iter().all(|(a, b)| q.has_edge(a.project().value() as usize, b.project().value() as usize))
}
