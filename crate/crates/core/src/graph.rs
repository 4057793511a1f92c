//! Finite simplicial graphs and the vertex-set predicates used throughout the
//! crate: links, stars, perps, cone vertices, joins, cliques and girth.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of vertices a [`Graph`] may carry.
pub const MAX_VERTICES: usize = 256;

const WORDS: usize = MAX_VERTICES / 64;

/// Index of a vertex inside one [`Graph`]. Indices are dense and follow
/// declaration order, which also seeds every canonical form downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u16);

impl VertexId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_VERTICES, "vertex index {index} out of range");
        VertexId(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the vertices of a graph, stored as a fixed-width bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet([0; WORDS])
    }

    /// The first `n` vertices.
    pub fn full(n: usize) -> Self {
        let mut set = VertexSet::new();
        for i in 0..n {
            set.insert(VertexId::new(i));
        }
        set
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut set = VertexSet::new();
        set.insert(v);
        set
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.0[v.index() / 64] |= 1 << (v.index() % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        self.0[v.index() / 64] &= !(1 << (v.index() % 64));
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.0[v.index() / 64] >> (v.index() % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= !b;
        }
        out
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Smallest vertex of the set.
    pub fn first(&self) -> Option<VertexId> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| VertexId::new(i * 64 + w.trailing_zeros() as usize))
    }

    /// Vertices in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(VertexId::new(i * 64 + bit))
            })
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut set = VertexSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.index())).finish()
    }
}

/// A finite simplicial graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adjacency: Vec<VertexSet>,
    lookup: HashMap<String, VertexId>,
}

impl Graph {
    /// Builds a graph from vertex names and edges given by index pairs.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), VertexId::new(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut adjacency = vec![VertexSet::new(); names.len()];
        for (a, b) in edges {
            if a >= names.len() || b >= names.len() {
                return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::LoopEdge(names[a].clone()));
            }
            adjacency[a].insert(VertexId::new(b));
            adjacency[b].insert(VertexId::new(a));
        }
        Ok(Graph {
            names,
            adjacency,
            lookup,
        })
    }

    /// Builds a graph from vertex names and edges given by name pairs.
    pub fn from_named_edges<'a>(names: &[&str], edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Graph> {
        let index = |n: &str| {
            names
                .iter()
                .position(|m| *m == n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        };
        let edges = edges
            .into_iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(names.iter().copied(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId::new)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn set_of(&self, names: &[&str]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.name(v).to_string()).collect()
    }

    #[inline]
    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a.index()].contains(b)
    }

    /// Neighbours of `v`.
    #[inline]
    pub fn link(&self, v: VertexId) -> VertexSet {
        self.adjacency[v.index()]
    }

    /// `link(v) ∪ {v}`.
    pub fn star(&self, v: VertexId) -> VertexSet {
        let mut s = self.link(v);
        s.insert(v);
        s
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |a| {
            self.link(a)
                .iter()
                .filter(move |b| a < *b)
                .map(move |b| (a, b))
                .collect::<Vec<_>>()
        })
    }

    /// Vertices adjacent to every vertex of `set`. The perp of the empty set
    /// is the whole vertex set.
    pub fn perp(&self, set: &VertexSet) -> VertexSet {
        set.iter().fold(self.all(), |acc, v| acc.intersection(&self.link(v)))
    }

    /// Vertices `v ∈ set` with `set ⊆ star(v)`.
    pub fn cone_vertices(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter(|&v| set.is_subset(&self.star(v))).collect()
    }

    /// The aconical part: `set` minus its cone vertices.
    pub fn acon(&self, set: &VertexSet) -> VertexSet {
        set.difference(&self.cone_vertices(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| set.difference(&self.star(v)).is_empty())
    }

    /// Connected components of the opposite graph restricted to `set`,
    /// ordered by their smallest vertex. These are the join factors of the
    /// full subgraph spanned by `set`.
    pub fn join_factors(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = *set;
        let mut factors = Vec::new();
        while let Some(start) = remaining.first() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = component;
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in frontier.iter() {
                    let non_neighbours = set.difference(&self.star(v));
                    next = next.union(&non_neighbours);
                }
                frontier = next.difference(&component);
                component = component.union(&frontier);
            }
            remaining = remaining.difference(&component);
            factors.push(component);
        }
        factors
    }

    /// A nontrivial join decomposition `set = A ⊔ B` of the full subgraph on
    /// `set`, if one exists. `A` is the opposite-graph component holding the
    /// smallest vertex.
    pub fn join_split(&self, set: &VertexSet) -> Option<(VertexSet, VertexSet)> {
        let factors = self.join_factors(set);
        if factors.len() < 2 {
            return None;
        }
        let a = factors[0];
        Some((a, set.difference(&a)))
    }

    pub fn is_join(&self, set: &VertexSet) -> bool {
        self.join_split(set).is_some()
    }

    /// Largest cardinality of a clique (0 for the empty graph).
    pub fn dim(&self) -> usize {
        let mut best = 0;
        max_clique(self, VertexSet::new(), self.all(), &mut best);
        best
    }

    /// Length of the shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.adjacency[u].iter().map(VertexId::index) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Same vertices, complementary edge set.
    pub fn opposite(&self) -> Graph {
        let all = self.all();
        let adjacency = self.vertices().map(|v| all.difference(&self.star(v))).collect();
        Graph {
            names: self.names.clone(),
            adjacency,
            lookup: self.lookup.clone(),
        }
    }

    /// Full subgraph on `set`, keeping names and relative order.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let kept: Vec<VertexId> = set.iter().collect();
        let position: HashMap<VertexId, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges()
            .filter_map(|(a, b)| Some((*position.get(&a)?, *position.get(&b)?)))
            .collect::<Vec<_>>();
        Graph::new(kept.iter().map(|&v| self.name(v).to_string()), edges)
            .expect("induced subgraph of a valid graph is valid")
    }
}

// Branch and bound with a greedy colouring bound.
fn max_clique(graph: &Graph, current: VertexSet, candidates: VertexSet, best: &mut usize) {
    if candidates.is_empty() {
        *best = (*best).max(current.len());
        return;
    }
    let order = colour_order(graph, &candidates);
    let mut remaining = candidates;
    for &(v, colour) in order.iter().rev() {
        if current.len() + colour <= *best {
            return;
        }
        let mut next = current;
        next.insert(v);
        max_clique(graph, next, remaining.intersection(&graph.link(v)), best);
        remaining.remove(v);
    }
}

// Greedy sequential colouring; returns vertices with the number of colours
// used up to and including them.
fn colour_order(graph: &Graph, candidates: &VertexSet) -> Vec<(VertexId, usize)> {
    let mut uncoloured = *candidates;
    let mut out = Vec::with_capacity(candidates.len());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut available = uncoloured;
        while let Some(v) = available.first() {
            available.remove(v);
            available = available.difference(&graph.link(v));
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}
