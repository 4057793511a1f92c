#![allow(dead_code)]

use std::sync::Arc;

use gpw_core::{Graph, GroupContext, GroupElement, Syllable, VertexGroup, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Erdős–Rényi graph on `n ≤ 8` vertices named `a, b, …`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(NAMES[..n].iter().copied(), edges).unwrap()
}

/// A random graph with at least `min` and at most `max` vertices whose
/// clique number is at most `max_dim`.
pub fn random_graph_with_dim(rng: &mut ChaCha8Rng, min: usize, max: usize, max_dim: usize) -> Graph {
    loop {
        let n = rng.gen_range(min..=max);
        let p = rng.gen_range(0.2..0.7);
        let g = random_graph(rng, n, p);
        if g.dim() <= max_dim {
            return g;
        }
    }
}

pub fn random_context(rng: &mut ChaCha8Rng, graph: Graph, choices: &[VertexGroup]) -> Arc<GroupContext> {
    let groups = (0..graph.vertex_count())
        .map(|_| *choices.choose(rng).unwrap())
        .collect();
    GroupContext::new(graph, groups).unwrap()
}

pub fn raw_word(rng: &mut ChaCha8Rng, ctx: &GroupContext, max_len: usize) -> Vec<Syllable> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let v = VertexId::new(rng.gen_range(0..ctx.graph().vertex_count()));
            let exp = match ctx.group(v) {
                VertexGroup::Infinite => *[-2, -1, 1, 2, 3].choose(rng).unwrap(),
                VertexGroup::Finite(n) => rng.gen_range(1..n as i64),
            };
            Syllable::new(v, exp)
        })
        .collect()
}

pub fn random_element(rng: &mut ChaCha8Rng, ctx: &Arc<GroupContext>, max_len: usize) -> GroupElement {
    GroupElement::from_syllables(ctx, &raw_word(rng, ctx, max_len))
}

pub fn nonidentity_element(rng: &mut ChaCha8Rng, ctx: &Arc<GroupContext>, max_len: usize) -> GroupElement {
    loop {
        let g = random_element(rng, ctx, max_len);
        if !g.is_identity() {
            return g;
        }
    }
}

/// Returns `w` after a random number of swaps of adjacent commuting
/// syllables and insertions of a syllable next to its inverse.
pub fn scramble(rng: &mut ChaCha8Rng, ctx: &GroupContext, w: &[Syllable], insertions: usize) -> Vec<Syllable> {
    let mut w = w.to_vec();
    for _ in 0..insertions {
        let v = VertexId::new(rng.gen_range(0..ctx.graph().vertex_count()));
        let exp = match ctx.group(v) {
            VertexGroup::Infinite => 1,
            VertexGroup::Finite(n) => rng.gen_range(1..n as i64),
        };
        let at = rng.gen_range(0..=w.len());
        w.insert(at, Syllable::new(v, ctx.group(v).inverse(exp)));
        w.insert(at, Syllable::new(v, exp));
    }
    for _ in 0..3 * w.len() {
        if w.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..w.len() - 1);
        if ctx.graph().adjacent(w[i].vertex, w[i + 1].vertex) {
            w.swap(i, i + 1);
        }
    }
    w
}

pub fn finite_lcm(ctx: &GroupContext) -> usize {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    ctx.groups()
        .iter()
        .filter_map(|g| match g {
            VertexGroup::Finite(n) => Some(*n),
            VertexGroup::Infinite => None,
        })
        .fold(1u64, |acc, n| acc / gcd(acc, n) * n) as usize
}

pub const TORSION_FREE: [VertexGroup; 1] = [VertexGroup::Infinite];

pub const MIXED: [VertexGroup; 4] = [
    VertexGroup::Infinite,
    VertexGroup::Finite(2),
    VertexGroup::Finite(3),
    VertexGroup::Finite(4),
];

pub const ORDERS_UP_TO_SIX: [VertexGroup; 6] = [
    VertexGroup::Infinite,
    VertexGroup::Finite(2),
    VertexGroup::Finite(3),
    VertexGroup::Finite(4),
    VertexGroup::Finite(5),
    VertexGroup::Finite(6),
];
