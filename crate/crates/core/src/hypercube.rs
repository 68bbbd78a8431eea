//! Bit-level model of the hypercube `Q_n`.
//!
//! Entry `i` of a vertex is bit `i` of its word, least significant first, so
//! the unit vector `e_i` is `1 << i`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest supported dimension.
pub const MAX_DIM: usize = 24;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

/// A vertex of `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    value: u32,
    n: u8,
}

impl Vertex {
    pub fn new(value: u32, n: usize) -> Result<Self> {
        check_dim(n)?;
        if u64::from(value) >= 1u64 << n {
            return Err(Error::VertexOutOfRange { value: value.into(), n });
        }
        Ok(Self { value, n: n as u8 })
    }

    pub(crate) fn new_unchecked(value: u32, n: usize) -> Self {
        debug_assert!(n <= MAX_DIM && u64::from(value) < 1u64 << n);
        Self { value, n: n as u8 }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn dim(self) -> usize {
        self.n as usize
    }

    /// Hamming weight mod 2.
    pub fn parity(self) -> u8 {
        parity(self.value)
    }

    /// Deletes entry `i`, giving a vertex of `Q_{n-1}`.
    pub fn drop_entry(self, i: usize) -> Result<Vertex> {
        self.check_index(i)?;
        if self.n == 1 {
            // Q_0 is a single point; keep the word well defined.
            return Ok(Vertex { value: 0, n: 0 });
        }
        Ok(Vertex::new_unchecked(drop_bit(self.value, i), self.dim() - 1))
    }

    /// Parity of the word with entry `i` removed.
    pub fn parity_excluding(self, i: usize) -> Result<u8> {
        self.check_index(i)?;
        Ok(parity_excluding(self.value, i))
    }

    /// `[v ^ e_0, v ^ e_1, ..., v ^ e_{n-1}]`.
    pub fn neighbors(self) -> Vec<Vertex> {
        (0..self.dim())
            .map(|i| Vertex::new_unchecked(self.value ^ (1 << i), self.dim()))
            .collect()
    }

    fn check_index(self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.dim() })
        }
    }
}

#[inline]
pub fn parity(word: u32) -> u8 {
    (word.count_ones() & 1) as u8
}

/// Removes bit `i`: bits below `i` stay, bits above shift down by one.
#[inline]
pub fn drop_bit(word: u32, i: usize) -> u32 {
    let low = word & ((1u32 << i) - 1);
    let high = (word >> (i + 1)) << i;
    low | high
}

/// Inverse of [`drop_bit`] with the inserted bit set to `bit`.
#[inline]
pub fn insert_bit(word: u32, i: usize, bit: u32) -> u32 {
    let low = word & ((1u32 << i) - 1);
    let high = (word >> i) << (i + 1);
    low | (bit << i) | high
}

#[inline]
pub fn parity_excluding(word: u32, i: usize) -> u8 {
    parity(word & !(1u32 << i))
}

/// Position of the single differing bit, or `None` when `a` and `b` are not adjacent.
#[inline]
pub fn edge_dim(a: u32, b: u32) -> Option<usize> {
    let x = a ^ b;
    if x.is_power_of_two() {
        Some(x.trailing_zeros() as usize)
    } else {
        None
    }
}

/// An `i`-th dimension edge, stored by its endpoint with bit `i` clear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimEdge {
    base: u32,
    dim: u8,
    n: u8,
}

impl DimEdge {
    /// The edge `{v, v ^ e_dim}`; either endpoint may be given.
    pub fn new(v: Vertex, dim: usize) -> Result<Self> {
        v.check_index(dim)?;
        Ok(Self::from_word(v.value, dim, v.dim()))
    }

    /// The edge joining two adjacent vertices.
    pub fn between(a: Vertex, b: Vertex) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionOutOfRange(b.dim()));
        }
        let dim = edge_dim(a.value, b.value).ok_or(Error::NonAdjacentStep { index: 0, next: 1 })?;
        Ok(Self::from_word(a.value, dim, a.dim()))
    }

    pub(crate) fn from_word(word: u32, dim: usize, n: usize) -> Self {
        Self { base: word & !(1 << dim), dim: dim as u8, n: n as u8 }
    }

    pub fn base(self) -> Vertex {
        Vertex::new_unchecked(self.base, self.n as usize)
    }

    pub fn top(self) -> Vertex {
        Vertex::new_unchecked(self.base | (1 << self.dim), self.n as usize)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn cube_dim(self) -> usize {
        self.n as usize
    }

    /// Image in `Q_{n-1}` under deletion of entry `dim`.
    pub fn project(self) -> Vertex {
        Vertex { value: drop_bit(self.base, self.dim()), n: self.n - 1 }
    }

    /// Bipartition class of this edge inside its dimension graph.
    pub fn class(self) -> u8 {
        parity_excluding(self.base, self.dim())
    }
}

/// Graph whose vertices are the `i`-edges of `Q_n`, two of them adjacent when
/// they are opposite sides of a 4-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionGraph {
    n: usize,
    dim: usize,
    vertices: Vec<DimEdge>,
    edges: Vec<(DimEdge, DimEdge)>,
}

impl DimensionGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All `2^{n-1}` edges of dimension `dim`, in increasing base order.
    pub fn vertices(&self) -> &[DimEdge] {
        &self.vertices
    }

    /// Adjacent pairs, each listed once with the smaller base first.
    pub fn edges(&self) -> &[(DimEdge, DimEdge)] {
        &self.edges
    }

    pub fn are_adjacent(&self, a: DimEdge, b: DimEdge) -> bool {
        a.dim == b.dim && a.dim() == self.dim && {
            let x = a.base ^ b.base;
            x.is_power_of_two() && x != 1 << self.dim
        }
    }
}

/// The binary reflected Gray code `G_1 = [0,1]`, `G_n = join(0*G_{n-1}, 1*rev(G_{n-1}))`,
/// where the prepended bit is entry `n-1`.
pub fn gray_code_words(n: usize) -> Result<Vec<u32>> {
    check_dim(n)?;
    let mut seq = vec![0u32, 1];
    for k in 1..n {
        let top = 1u32 << k;
        let reflected: Vec<u32> = seq.iter().rev().map(|&w| w | top).collect();
        seq.extend(reflected);
    }
    Ok(seq)
}

/// Builds `D_in` from the defining relation: `{v, v+e_i}` and `{u, u+e_i}` are
/// adjacent when `u = v + e_j` for some `j != i`.
pub fn dimension_graph(n: usize, i: usize) -> Result<DimensionGraph> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::DimensionOutOfRange(n));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let vertices: Vec<DimEdge> = (0..1u32 << n)
        .filter(|w| w & (1 << i) == 0)
        .map(|w| DimEdge::from_word(w, i, n))
        .collect();
    let mut edges = Vec::new();
    for &e in &vertices {
        for j in (0..n).filter(|&j| j != i) {
            let other = DimEdge::from_word(e.base ^ (1 << j), i, n);
            if e.base < other.base {
                edges.push((e, other));
            }
        }
    }
    Ok(DimensionGraph { n, dim: i, vertices, edges })
}
