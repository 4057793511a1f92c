//! Workloads shared by the criterion benchmarks.

use std::sync::Arc;

use gpw_core::fixtures::bipartite_context;
use gpw_core::{GroupContext, GroupElement, Syllable, VertexId};

/// A deterministic pseudo-random word of `len` syllables on the bipartite
/// graph with `2m` vertices, built from a linear congruential sequence so the
/// benchmarks need no RNG dependency.
pub fn lcg_word(ctx: &Arc<GroupContext>, len: usize, seed: u64) -> GroupElement {
    let n = ctx.graph().vertex_count() as u64;
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let raw: Vec<Syllable> = (0..len)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let v = (state >> 33) % n;
            let exp = if (state >> 20) & 1 == 0 { 1 } else { -1 };
            Syllable::new(VertexId::new(v as usize), exp)
        })
        .collect();
    GroupElement::from_syllables(ctx, &raw)
}

/// The bipartite context together with the letters `x1, …, xm`.
pub fn bipartite_letters(m: usize) -> (Arc<GroupContext>, Vec<GroupElement>) {
    let ctx = bipartite_context(m);
    let letters = (0..m)
        .map(|i| GroupElement::vertex_power(&ctx, VertexId::new(i), 1))
        .collect();
    (ctx, letters)
}
