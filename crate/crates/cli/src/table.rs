//! Equi-independence numbers of small hypercubes and the pigeonhole test
//! built on them.

use qube_core::mis::{hypercube_equi_independence, IndependentSet};
use qube_core::squares::equi_table;
use qube_core::{equi_reduction, is_balanced, is_independent, BipartiteGraph, EquiMethod, Error};
use serde::{Deserialize, Serialize};

/// Values printed in the published table, keyed by n.
pub struct PublishedRow {
    pub n: usize,
    pub alpha_eq: usize,
    pub witness: &'static [usize],
    pub pair_vertices: usize,
    pub pair_edges: usize,
}

pub const PUBLISHED: [PublishedRow; 5] = [
    PublishedRow { n: 3, alpha_eq: 2, witness: &[0, 7], pair_vertices: 4, pair_edges: 6 },
    PublishedRow { n: 4, alpha_eq: 4, witness: &[0, 7, 9, 14], pair_vertices: 32, pair_edges: 448 },
    PublishedRow {
        n: 5,
        alpha_eq: 10,
        witness: &[0, 7, 9, 19, 10, 21, 12, 22, 24, 31],
        pair_vertices: 176,
        pair_edges: 9720,
    },
    PublishedRow {
        n: 6,
        alpha_eq: 16,
        witness: &[0, 7, 9, 19, 33, 21, 10, 22, 34, 28, 36, 56, 43, 31, 45, 55],
        pair_vertices: 882,
        pair_edges: 137536,
    },
    PublishedRow {
        n: 7,
        alpha_eq: 40,
        witness: &[
            0, 7, 9, 19, 33, 67, 10, 21, 34, 69, 12, 81, 36, 22, 24, 70, 40, 82, 72, 84, 48, 31, 96, 47, 57, 79, 105,
            55, 58, 87, 106, 103, 60, 91, 108, 115, 120, 93, 117, 126,
        ],
        pair_vertices: 3648,
        pair_edges: 1577184,
    },
];

pub fn published_row(n: usize) -> Option<&'static PublishedRow> {
    PUBLISHED.iter().find(|r| r.n == n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Published {
    pub alpha_eq: usize,
    pub pair_vertices: usize,
    pub pair_edges: usize,
    /// Whether the printed witness is independent and balanced in `Q_n`.
    pub witness_valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub alpha_eq: usize,
    pub witness: Vec<usize>,
    /// Result through the pair graph, when it was run.
    pub alpha_eq_reduction: Option<usize>,
    pub pair_vertices: usize,
    pub pair_edges: usize,
    pub published: Option<Published>,
    /// Human-readable differences from the published row.
    pub flags: Vec<String>,
}

fn valid(b: &BipartiteGraph, s: &IndependentSet) -> bool {
    s.vertices.len() == s.size && is_independent(b.graph(), &s.vertices) && is_balanced(b, &s.vertices)
}

pub fn table_row(n: usize, with_reduction: bool) -> Result<TableRow, Error> {
    let b = BipartiteGraph::hypercube(n)?;
    let direct = hypercube_equi_independence(n, EquiMethod::Direct)?;
    let mut invalid = !valid(&b, &direct);
    let reduced = equi_reduction(&b);
    let alpha_eq_reduction = if with_reduction {
        let s = hypercube_equi_independence(n, EquiMethod::Reduction)?;
        invalid |= !valid(&b, &s);
        Some(s.size)
    } else {
        None
    };
    let mut row = TableRow {
        n,
        alpha_eq: direct.size,
        witness: direct.vertices,
        alpha_eq_reduction,
        pair_vertices: reduced.graph.vertex_count(),
        pair_edges: reduced.graph.edge_count(),
        published: None,
        flags: Vec::new(),
    };
    if invalid {
        row.flags.push("solver witness failed validation".into());
    }
    if let Some(r) = alpha_eq_reduction.filter(|&r| r != row.alpha_eq) {
        row.flags.push(format!("methods disagree: direct {}, reduction {r}", row.alpha_eq));
    }
    if let Some(p) = published_row(n) {
        let witness_valid = p.witness.iter().all(|&v| v < b.vertex_count())
            && is_independent(b.graph(), p.witness)
            && is_balanced(&b, p.witness);
        for (name, ours, theirs) in [
            ("alpha_eq", row.alpha_eq, p.alpha_eq),
            ("|V'|", row.pair_vertices, p.pair_vertices),
            ("|E'|", row.pair_edges, p.pair_edges),
        ] {
            if ours != theirs {
                row.flags.push(format!("{name}: computed {ours}, published {theirs}"));
            }
        }
        if !witness_valid {
            row.flags.push("published witness is not a balanced independent set".into());
        }
        row.published = Some(Published {
            alpha_eq: p.alpha_eq,
            pair_vertices: p.pair_vertices,
            pair_edges: p.pair_edges,
            witness_valid,
        });
    }
    Ok(row)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeReport {
    pub n: usize,
    pub alpha_prev: usize,
    pub product: usize,
    pub order: usize,
    /// `n * alpha_=(Q_{n-1}) < 2^n`: some dimension then carries more edges
    /// than the threshold, so every Hamiltonian cycle of `Q_n` has a square.
    pub forced: bool,
    pub message: String,
}

/// Checks `n * alpha_=(Q_{n-1}) < 2^n` with `alpha_=` taken from `equi`.
pub fn pigeonhole_report(n: usize, equi: impl Fn(usize) -> Option<usize>) -> Result<PigeonholeReport, Error> {
    if !(2..=qube_core::hypercube::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    let alpha_prev = equi(n - 1).ok_or(Error::EquiValueUnavailable(n - 1))?;
    let product = n * alpha_prev;
    let order = 1usize << n;
    let forced = product < order;
    let message = if forced {
        format!("{n}*{alpha_prev} = {product} < {order}: squares forced in every Hamiltonian cycle of Q_{n}")
    } else {
        format!("{n}*{alpha_prev} = {product} >= {order}: not forced by counting")
    };
    Ok(PigeonholeReport { n, alpha_prev, product, order, forced, message })
}

pub fn computed_table(m: usize) -> Option<usize> {
    equi_table::computed(m)
}

/// The published column, extended by the trivial values for `m < 3`.
pub fn published_table(m: usize) -> Option<usize> {
    match m {
        1 | 2 => Some(0),
        _ => equi_table::published(m),
    }
}
