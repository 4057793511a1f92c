use std::sync::{Arc, OnceLock};

use crate::coefficients::VertexGroup;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// The ambient graph product: a graph with a cyclic group on every vertex.
#[derive(Debug)]
pub struct GroupContext {
    graph: Graph,
    groups: Vec<VertexGroup>,
    dim: OnceLock<usize>,
}

impl GroupContext {
    pub fn new(graph: Graph, groups: Vec<VertexGroup>) -> Result<Arc<GroupContext>> {
        if groups.len() != graph.vertex_count() {
            let missing = graph
                .names()
                .get(groups.len())
                .cloned()
                .unwrap_or_else(|| format!("#{}", groups.len()));
            return Err(Error::MissingGroup(missing));
        }
        for g in &groups {
            if let VertexGroup::Finite(n) = *g {
                VertexGroup::finite(n)?;
            }
        }
        Ok(Arc::new(GroupContext {
            graph,
            groups,
            dim: OnceLock::new(),
        }))
    }

    /// Every vertex gets the same group.
    pub fn uniform(graph: Graph, group: VertexGroup) -> Result<Arc<GroupContext>> {
        let n = graph.vertex_count();
        GroupContext::new(graph, vec![group; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn group(&self, v: VertexId) -> VertexGroup {
        self.groups[v.index()]
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    /// Clique number of the graph, computed once.
    pub fn dim(&self) -> usize {
        *self.dim.get_or_init(|| self.graph.dim())
    }

    /// True when every vertex group is `Z` (a right-angled Artin group).
    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| !g.is_finite())
    }

    pub fn has_two_torsion(&self) -> bool {
        self.groups.iter().any(|g| g.has_two_torsion())
    }

    pub fn all_finite(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.group(v).is_finite())
    }
}

impl PartialEq for GroupContext {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.groups == other.groups
    }
}

impl Eq for GroupContext {}

/// A nontrivial element of one vertex group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub vertex: VertexId,
    pub exp: i64,
}

impl Syllable {
    pub fn new(vertex: VertexId, exp: i64) -> Self {
        Syllable { vertex, exp }
    }
}
