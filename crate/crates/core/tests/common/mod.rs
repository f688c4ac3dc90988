#![allow(dead_code)]

use qaa_core::graph::reference_graph;
use qaa_core::Graph;

pub fn reference() -> Graph {
    reference_graph()
}

pub fn triangle() -> Graph {
    Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
}

/// Five-cycle plus the chord (0, 3): four optimal partitions of cut 5.
pub fn four_solutions() -> Graph {
    Graph::new(5, [(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap()
}

/// K4 on {1, 2, 3, 4} with a pendant vertex 0 on 4: six optimal partitions of cut 5.
pub fn six_solutions() -> Graph {
    Graph::new(5, [(0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
}

/// Graphs paired with the degeneracy the oracle is expected to certify.
pub fn branch_law_graphs() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("reference", reference(), 2),
        ("four-solution", four_solutions(), 4),
        ("six-solution", six_solutions(), 6),
    ]
}
