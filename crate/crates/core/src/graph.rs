//! Small undirected graphs with bitset adjacency rows, plus the plain-text
//! formats `p bipartite <n0> <n1> <m>` and `p graph <n> <m>` followed by
//! `e <u> <v>` lines.

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// Fixed-length bitset over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }
}

/// Simple undirected graph on `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    rows: Vec<Bitset>,
}

impl UndirectedGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { rows: vec![Bitset::new(vertex_count); vertex_count] }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_rows(rows: Vec<Bitset>) -> Self {
        Self { rows }
    }

    /// `Q_n` on the words `0..2^n`.
    pub fn hypercube(n: usize) -> Result<Self> {
        crate::hypercube::check_dim(n)?;
        let len = 1usize << n;
        let mut rows = vec![Bitset::new(len); len];
        for (v, row) in rows.iter_mut().enumerate() {
            for i in 0..n {
                row.insert(v ^ (1 << i));
            }
        }
        Ok(Self { rows })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfRange { index: u.max(v), n });
        }
        if u == v {
            return Err(Error::Parse { line: 0, message: format!("self-loop at {u}") });
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, r)| r.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Writes `p graph <n> <m>` and one `e u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("p graph {} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let parsed = parse(text)?;
        match parsed.header {
            Header::Graph { n } => {
                let mut g = Self::new(n);
                for (line, u, v) in parsed.edges {
                    g.add_edge(u, v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
                }
                Ok(g)
            }
            Header::Bipartite { .. } => Ok(BipartiteGraph::from_parsed(parsed)?.graph),
        }
    }
}

/// Bipartite graph with explicit classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub(crate) graph: UndirectedGraph,
    class_of: Vec<u8>,
}

impl BipartiteGraph {
    /// Checks that every edge crosses the given classes.
    pub fn new(graph: UndirectedGraph, class_of: Vec<u8>) -> Result<Self> {
        if class_of.len() != graph.vertex_count() {
            return Err(Error::WrongLength { expected: graph.vertex_count(), found: class_of.len() });
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| class_of[u] == class_of[v]) {
            return Err(Error::NotBipartite(u, v));
        }
        Ok(Self { graph, class_of })
    }

    /// `Q_n` with the parity classes.
    pub fn hypercube(n: usize) -> Result<Self> {
        let graph = UndirectedGraph::hypercube(n)?;
        let class_of = (0..1u32 << n).map(crate::hypercube::parity).collect();
        Ok(Self { graph, class_of })
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn class_of(&self, v: usize) -> u8 {
        self.class_of[v]
    }

    pub fn class(&self, c: u8) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&v| self.class_of[v] == c).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Writes the bipartite text format. Vertices are renumbered so class 0
    /// comes first; the returned vector maps new ids to original ids.
    pub fn to_text(&self) -> (String, Vec<usize>) {
        let mut order = self.class(0);
        let n0 = order.len();
        order.extend(self.class(1));
        let mut new_id = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            new_id[v] = k;
        }
        let mut edges: Vec<(usize, usize)> =
            self.graph.edges().map(|(u, v)| (new_id[u].min(new_id[v]), new_id[u].max(new_id[v]))).collect();
        edges.sort_unstable();
        let mut s = format!("p bipartite {} {} {}\n", n0, order.len() - n0, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "e {u} {v}");
        }
        (s, order)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Self::from_parsed(parse(text)?)
    }

    fn from_parsed(parsed: Parsed) -> Result<Self> {
        let Header::Bipartite { n0, n1 } = parsed.header else {
            return Err(Error::Parse { line: parsed.header_line, message: "expected `p bipartite` header".into() });
        };
        let mut graph = UndirectedGraph::new(n0 + n1);
        let class_of: Vec<u8> = (0..n0 + n1).map(|v| u8::from(v >= n0)).collect();
        for (line, u, v) in parsed.edges {
            if class_of[u] == class_of[v] {
                return Err(Error::Parse { line, message: format!("edge {u}-{v} does not cross the classes") });
            }
            graph.add_edge(u, v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        }
        Ok(Self { graph, class_of })
    }
}

enum Header {
    Bipartite { n0: usize, n1: usize },
    Graph { n: usize },
}

struct Parsed {
    header: Header,
    header_line: usize,
    edges: Vec<(usize, usize, usize)>,
}

fn parse(text: &str) -> Result<Parsed> {
    let mut header: Option<(Header, usize, usize)> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| Error::Parse { line, message };
        let mut tok = raw.split_whitespace();
        let Some(tag) = tok.next() else { continue };
        if tag == "c" {
            continue;
        }
        let nums: Vec<usize> = tok
            .clone()
            .skip(usize::from(tag == "p"))
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let kind = tok.next().unwrap_or_default();
                header = Some(match (kind, nums.as_slice()) {
                    ("bipartite", &[n0, n1, m]) => (Header::Bipartite { n0, n1 }, m, line),
                    ("graph", &[n, m]) => (Header::Graph { n }, m, line),
                    _ => return Err(err(format!("malformed header `{raw}`"))),
                });
            }
            "e" => {
                let Some((h, _, _)) = &header else {
                    return Err(err("edge before header".into()));
                };
                let n = match h {
                    Header::Bipartite { n0, n1 } => n0 + n1,
                    Header::Graph { n } => *n,
                };
                match *nums.as_slice() {
                    [u, v] if u < n && v < n && u != v => edges.push((line, u, v)),
                    [_, _] => return Err(err(format!("edge `{raw}` out of range"))),
                    _ => return Err(err(format!("malformed edge `{raw}`"))),
                }
            }
            other => return Err(err(format!("unknown line tag `{other}`"))),
        }
    }
    let (header, m, header_line) = header.ok_or(Error::Parse { line: 0, message: "missing header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse { line: header_line, message: format!("header says {m} edges, found {}", edges.len()) });
    }
    Ok(Parsed { header, header_line, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basics() {
        let mut b = Bitset::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(b.count(), 3);
        b.remove(64);
        assert!(!b.contains(64));
        assert_eq!(Bitset::full(70).count(), 70);
    }

    #[test]
    fn hypercube_graph() {
        let q = UndirectedGraph::hypercube(4).unwrap();
        assert_eq!(q.vertex_count(), 16);
        assert_eq!(q.edge_count(), 32);
        let b = BipartiteGraph::hypercube(3).unwrap();
        assert_eq!(b.class(0), vec![0, 3, 5, 6]);
    }

    #[test]
    fn bipartite_text_round_trip() {
        let text = "c path a-b-c\np bipartite 2 1 2\ne 0 2\ne 1 2\n";
        let b = BipartiteGraph::parse_text(text).unwrap();
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.class(1), vec![2]);
        let (out, order) = b.to_text();
        assert_eq!(out, "p bipartite 2 1 2\ne 0 2\ne 1 2\n");
        assert_eq!(order, vec![0, 1, 2]);
    }

    #[test]
    fn text_errors() {
        assert!(BipartiteGraph::parse_text("p bipartite 1 1 1\ne 0 0\n").is_err());
        assert!(BipartiteGraph::parse_text("p bipartite 2 1 1\ne 0 1\n").is_err());
        assert!(BipartiteGraph::parse_text("p bipartite 1 1 2\ne 0 1\n").is_err());
        assert!(BipartiteGraph::parse_text("e 0 1\n").is_err());
        assert!(UndirectedGraph::parse_text("p graph 2 1\ne 0 x\n").is_err());
        let g = UndirectedGraph::parse_text("p graph 3 2\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.to_text(), "p graph 3 2\ne 0 1\ne 1 2\n");
    }

    #[test]
    fn rejects_non_bipartite_classes() {
        let g = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(BipartiteGraph::new(g.clone(), vec![0, 0, 1]).is_err());
        assert!(BipartiteGraph::new(g, vec![0, 1, 0]).is_ok());
    }
}
