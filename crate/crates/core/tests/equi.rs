use qube_core::mis::{hypercube_equi_independence, max_independent_set};
use qube_core::squares::equi_table;
use qube_core::*;

fn validate(b: &BipartiteGraph, s: &IndependentSet) {
    assert_eq!(s.vertices.len(), s.size);
    assert!(is_independent(b.graph(), &s.vertices));
    assert!(is_balanced(b, &s.vertices));
}

#[test]
fn table_matches_both_methods_up_to_six() {
    for n in 1..=6 {
        let b = BipartiteGraph::hypercube(n).unwrap();
        let want = equi_table::computed(n).unwrap();
        for method in [EquiMethod::Direct, EquiMethod::Reduction] {
            let s = equi_independence(&b, method).unwrap();
            validate(&b, &s);
            assert_eq!(s.size, want, "n = {n}, {method:?}");
            let h = hypercube_equi_independence(n, method).unwrap();
            validate(&b, &h);
            assert_eq!(h.size, want, "n = {n}, hypercube {method:?}");
        }
    }
}

#[test]
fn q4_through_plain_reduced_graph() {
    let b = BipartiteGraph::hypercube(4).unwrap();
    let r = equi_reduction(&b);
    let inner = max_independent_set(&r.graph).unwrap();
    assert_eq!(2 * inner.size, 4);
    let w = r.unpack(&inner.vertices);
    assert!(is_independent(b.graph(), &w) && is_balanced(&b, &w));
}

#[test]
fn reduction_sizes() {
    for (n, v, e) in [(3, 4, 6), (4, 32, 448), (5, 176, 9720)] {
        let r = equi_reduction(&BipartiteGraph::hypercube(n).unwrap());
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (v, e), "n = {n}");
    }
    let q6 = equi_reduction(&BipartiteGraph::hypercube(6).unwrap());
    assert_eq!(q6.graph.vertex_count(), 32 * 32 - 192);
    let half = 1usize << 6;
    let q7 = (half * half) - 7 * half;
    assert_eq!(q7, 3648);
}

#[test]
fn explicit_witnesses_above_the_printed_values() {
    // weights {0, 2} against {5, 7} in Q_7: weights differ by at least 3
    let b = BipartiteGraph::hypercube(7).unwrap();
    let set: Vec<usize> = (0..128usize).filter(|v| matches!(v.count_ones(), 0 | 2 | 5 | 7)).collect();
    assert_eq!(set.len(), 44);
    assert!(is_independent(b.graph(), &set) && is_balanced(&b, &set));

    let b6 = BipartiteGraph::hypercube(6).unwrap();
    let s6 = equi_independence(&b6, EquiMethod::Direct).unwrap();
    validate(&b6, &s6);
    assert!(s6.size > equi_table::published(6).unwrap());
}

#[test]
fn lower_bound_sets() {
    for n in 3..=10 {
        let set: Vec<usize> = lower_bound_set(n).unwrap().into_iter().map(|v| v as usize).collect();
        let b = BipartiteGraph::hypercube(n).unwrap();
        assert_eq!(set.len(), 1 << (n - 2));
        assert!(is_independent(b.graph(), &set), "n = {n}");
        assert!(is_balanced(&b, &set), "n = {n}");
        assert!(is_maximal_independent(b.graph(), &set), "n = {n}");
        if let Some(exact) = equi_table::computed(n) {
            assert!(set.len() <= exact);
        }
    }
    assert_eq!(equi_table::computed(4), Some(lower_bound_set(4).unwrap().len()));
}

#[test]
fn independence_of_small_cubes() {
    for n in 2..=5 {
        let g = UndirectedGraph::hypercube(n).unwrap();
        let s = max_independent_set(&g).unwrap();
        assert_eq!(s.size, 1 << (n - 1));
        assert!(is_independent(&g, &s.vertices));
    }
}

#[test]
fn solvers_are_deterministic() {
    let b = BipartiteGraph::hypercube(5).unwrap();
    for method in [EquiMethod::Direct, EquiMethod::Reduction] {
        assert_eq!(equi_independence(&b, method).unwrap(), equi_independence(&b, method).unwrap());
    }
}

#[test]
fn text_round_trip_of_reduced_graph() {
    let r = equi_reduction(&BipartiteGraph::hypercube(4).unwrap());
    let back = UndirectedGraph::parse_text(&r.graph.to_text()).unwrap();
    assert_eq!(back, r.graph);
}
