//! Small constructors for frequently used graph products.
//!
//! These panic on malformed input; they are meant for tests, benchmarks and
//! examples where the arguments are literals.

use std::sync::Arc;

use crate::coefficients::VertexGroup;
use crate::context::GroupContext;
use crate::graph::Graph;

/// A graph product with the same vertex group everywhere.
///
/// # Panics
/// If the names or edges do not form a valid graph.
pub fn context(names: &[&str], edges: &[(&str, &str)], group: VertexGroup) -> Arc<GroupContext> {
    let graph = Graph::from_named_edges(names, edges.iter().copied()).expect("valid fixture graph");
    GroupContext::uniform(graph, group).expect("valid fixture context")
}

/// The 2m-vertex graph on `x1..xm, y1..ym` with edges `xi – yj` for `i ≠ j`.
/// For `m = 3` this is the hexagon.
pub fn bipartite_graph(m: usize) -> Graph {
    let names: Vec<String> = (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=m).map(|j| format!("y{j}")))
        .collect();
    let edges = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, m + j)))
        .collect::<Vec<_>>();
    Graph::new(names, edges).expect("bipartite graph is valid")
}

/// The right-angled Artin group on [`bipartite_graph`].
pub fn bipartite_context(m: usize) -> Arc<GroupContext> {
    GroupContext::uniform(bipartite_graph(m), VertexGroup::Infinite).expect("valid context")
}

/// The complete graph on `n` vertices named `x1..xn`.
pub fn complete_graph(n: usize) -> Graph {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect::<Vec<_>>();
    Graph::new(names, edges).expect("complete graph is valid")
}
