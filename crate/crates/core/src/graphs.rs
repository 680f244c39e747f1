//! Named graph families used throughout the tests and experiments.

use alloc::vec::Vec;

use crate::multigraph::MultiGraph;

/// Cycle `C_m` on vertices `0..m` (`m >= 1`; `C_1` is a loop, `C_2` a double edge).
pub fn cycle(m: usize) -> MultiGraph {
    let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    MultiGraph::from_edges(m, &edges).expect("cycle endpoints are in range")
}

pub fn complete(n: usize) -> MultiGraph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    MultiGraph::from_edges(n, &edges).expect("complete graph endpoints are in range")
}

pub fn path(n: usize) -> MultiGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph::from_edges(n, &edges).expect("path endpoints are in range")
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    MultiGraph::from_edges(10, &edges).expect("Petersen endpoints are in range")
}

/// One vertex carrying `d` loops (a `2d`-regular bouquet of circles).
pub fn bouquet(d: usize) -> MultiGraph {
    let edges: Vec<_> = (0..d).map(|_| (0, 0)).collect();
    MultiGraph::from_edges(1, &edges).expect("bouquet endpoints are in range")
}
