//! Structural analysis of Hamiltonian cycles in the hypercube `Q_n`:
//! parity balance of each dimension's edges, inscribed squares, the
//! equi-independence number of bipartite graphs, and exhaustive cycle
//! enumeration.

pub mod cycle;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod hypercube;
pub mod mis;
pub mod squares;

pub use cycle::{
    matching_obstruction, ChromaticReport, ChromaticVector, CycleRecord, DimensionProfile, HamiltonianCycle,
    MatchingReport,
};
pub use enumerate::{canonical_form, count, enumerate, for_each_cycle, sample, PruneConfig};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Bitset, UndirectedGraph};
pub use hypercube::{dimension_graph, gray_code_words, DimEdge, DimensionGraph, Vertex};
pub use mis::{
    brute_force_equi, equi_independence, equi_reduction, hypercube_equi_independence, is_balanced, is_independent, is_maximal_independent,
    lower_bound_set, max_independent_set, EquiMethod, IndependentSet, ReducedGraph,
};
pub use squares::{
    check_threshold_implication, find_squares, first_square, has_square, rim_threshold, InscribedSquare, SquareKind,
    ThresholdMode, ThresholdReport,
};
