//! Deliberately naive reference implementations used to cross-check the fast
//! paths in tests and in the CLI's verification mode.
//!
//! Nothing here calls into `words`, `support` or `growth`: the oracles work on
//! raw syllable vectors with their own reduction, and decide equality by
//! exploring shuffles rather than by comparing canonical forms.

use std::collections::{HashSet, VecDeque};

use crate::context::{GroupContext, Syllable};
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};

/// Reduces by repeatedly merging the first pair of syllables on one vertex
/// separated only by syllables that commute with it.
pub fn naive_reduce(ctx: &GroupContext, raw: &[Syllable]) -> Vec<Syllable> {
    let graph = ctx.graph();
    let mut w: Vec<Syllable> = raw
        .iter()
        .filter_map(|s| ctx.group(s.vertex).normalize(s.exp).map(|e| Syllable::new(s.vertex, e)))
        .collect();
    'outer: loop {
        for i in 0..w.len() {
            let v = w[i].vertex;
            for j in i + 1..w.len() {
                if w[j].vertex != v {
                    if graph.adjacent(w[j].vertex, v) {
                        continue;
                    }
                    break;
                }
                let merged = ctx.group(v).compose(w[i].exp, w[j].exp);
                w.remove(j);
                match merged {
                    Some(e) => w[i].exp = e,
                    None => {
                        w.remove(i);
                    }
                }
                continue 'outer;
            }
        }
        return w;
    }
}

fn swaps(ctx: &GroupContext, w: &[Syllable]) -> Vec<Vec<Syllable>> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| ctx.graph().adjacent(w[i].vertex, w[i + 1].vertex))
        .map(|i| {
            let mut next = w.to_vec();
            next.swap(i, i + 1);
            next
        })
        .collect()
}

/// Decides equality of two words by breadth-first search over single swaps
/// of adjacent commuting syllables, after naive reduction.
pub fn shuffle_equal(ctx: &GroupContext, w1: &[Syllable], w2: &[Syllable], budget: usize) -> Result<bool> {
    let a = naive_reduce(ctx, w1);
    let b = naive_reduce(ctx, w2);
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut sa = a.clone();
    let mut sb = b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(false);
    }
    let mut seen = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a]);
    while let Some(w) = queue.pop_front() {
        if w == b {
            return Ok(true);
        }
        for next in swaps(ctx, &w) {
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// The shortest word reachable from `raw` by swaps of commuting neighbours
/// and merges of equal-vertex neighbours, by exhaustive search.
pub fn min_closure_length(ctx: &GroupContext, raw: &[Syllable], budget: usize) -> Result<usize> {
    let start: Vec<Syllable> = raw
        .iter()
        .filter_map(|s| ctx.group(s.vertex).normalize(s.exp).map(|e| Syllable::new(s.vertex, e)))
        .collect();
    let mut best = start.len();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        best = best.min(w.len());
        let mut nexts = swaps(ctx, &w);
        for i in 0..w.len().saturating_sub(1) {
            if w[i].vertex == w[i + 1].vertex {
                let mut next = w.clone();
                let second = next.remove(i + 1);
                match ctx.group(second.vertex).compose(next[i].exp, second.exp) {
                    Some(e) => next[i].exp = e,
                    None => {
                        next.remove(i);
                    }
                }
                nexts.push(next);
            }
        }
        for next in nexts {
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(best)
}

fn invert(ctx: &GroupContext, w: &[Syllable]) -> Vec<Syllable> {
    w.iter()
        .rev()
        .map(|s| Syllable::new(s.vertex, ctx.group(s.vertex).inverse(s.exp)))
        .collect()
}

fn concat(parts: &[&[Syllable]]) -> Vec<Syllable> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// A shortest conjugate, found by trial: move any syllable that can be
/// shuffled to the front over to the back, and keep the move if the word
/// gets shorter.
pub fn cyclic_core(ctx: &GroupContext, raw: &[Syllable]) -> Vec<Syllable> {
    let graph = ctx.graph();
    let mut w = naive_reduce(ctx, raw);
    loop {
        let shorter = (0..w.len())
            .filter(|&i| w[..i].iter().all(|s| graph.adjacent(s.vertex, w[i].vertex)))
            .map(|i| {
                let mut rest = w.clone();
                let s = rest.remove(i);
                rest.push(s);
                naive_reduce(ctx, &rest)
            })
            .find(|cand| cand.len() < w.len());
        match shorter {
            Some(c) => w = c,
            None => return w,
        }
    }
}

fn vertex_set(w: &[Syllable]) -> VertexSet {
    w.iter().map(|s| s.vertex).collect()
}

/// Support as the vertex set of [`cyclic_core`].
pub fn brute_support(ctx: &GroupContext, raw: &[Syllable]) -> VertexSet {
    vertex_set(&cyclic_core(ctx, raw))
}

/// `⋂_{n=1..n_max} supp(g^n)` computed from powers by concatenation.
pub fn brute_stable_support(ctx: &GroupContext, raw: &[Syllable], n_max: usize) -> VertexSet {
    let g = naive_reduce(ctx, raw);
    let mut power = Vec::new();
    let mut acc = ctx.graph().all();
    for _ in 0..n_max {
        power = naive_reduce(ctx, &concat(&[&power, &g]));
        acc = acc.intersection(&brute_support(ctx, &power));
    }
    acc
}

/// All words of at most `max_len` syllables, with exponents `±exps` on
/// infinite vertices and every nonzero residue on finite ones.
pub fn all_words(ctx: &GroupContext, max_len: usize, exps: &[i64]) -> Vec<Vec<Syllable>> {
    let mut letters = Vec::new();
    for v in ctx.graph().vertices() {
        match ctx.group(v) {
            crate::coefficients::VertexGroup::Finite(n) => {
                letters.extend((1..n as i64).map(|e| Syllable::new(v, e)));
            }
            crate::coefficients::VertexGroup::Infinite => {
                let mut es: Vec<i64> = exps
                    .iter()
                    .flat_map(|&e| [e.abs(), -e.abs()])
                    .filter(|&e| e != 0)
                    .collect();
                es.sort_unstable();
                es.dedup();
                letters.extend(es.into_iter().map(|e| Syllable::new(v, e)));
            }
        }
    }
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last().is_some_and(|s: &Syllable| s.vertex == l.vertex) {
                    continue;
                }
                let mut x: Vec<Syllable> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Smallest union of written vertex sets of `w⁻¹ u w` over conjugators `w`
/// with at most `max_len` syllables. This is an upper bound for `supp(U)`,
/// exact once `max_len` reaches a common conjugator.
pub fn brute_support_set(ctx: &GroupContext, letters: &[Vec<Syllable>], max_len: usize, exps: &[i64]) -> VertexSet {
    let mut best: Option<VertexSet> = None;
    for w in all_words(ctx, max_len, exps) {
        let wi = invert(ctx, &w);
        let union = letters.iter().fold(VertexSet::new(), |acc, u| {
            acc.union(&vertex_set(&naive_reduce(ctx, &concat(&[&wi, u, &w]))))
        });
        if best.is_none_or(|b| union.len() < b.len()) {
            best = Some(union);
        }
    }
    best.unwrap_or_default()
}

/// Length of the shortest `w⁻¹ g w` over conjugators of at most `max_len`
/// syllables.
pub fn min_conjugate_length(ctx: &GroupContext, raw: &[Syllable], max_len: usize, exps: &[i64]) -> usize {
    all_words(ctx, max_len, exps)
        .iter()
        .map(|w| naive_reduce(ctx, &concat(&[&invert(ctx, w), raw, w])).len())
        .min()
        .unwrap_or(0)
}

/// `|U^n|` by enumerating all letter sequences and comparing the results
/// pairwise with [`shuffle_equal`].
pub fn naive_product_set(ctx: &GroupContext, letters: &[Vec<Syllable>], n: usize, budget: usize) -> Result<usize> {
    let total = letters.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut reps: Vec<Vec<Syllable>> = Vec::new();
    let mut index = vec![0usize; n];
    for _ in 0..total {
        let word: Vec<Syllable> = index.iter().flat_map(|&i| letters[i].iter().copied()).collect();
        let word = naive_reduce(ctx, &word);
        let mut fresh = true;
        for r in &reps {
            if shuffle_equal(ctx, r, &word, budget)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(word);
        }
        for digit in index.iter_mut() {
            *digit += 1;
            if *digit < letters.len() {
                break;
            }
            *digit = 0;
        }
    }
    Ok(reps.len())
}

/// Vertex-indexed syllable helper for tests: `(index, exp)` pairs.
pub fn word(pairs: &[(usize, i64)]) -> Vec<Syllable> {
    pairs.iter().map(|&(v, e)| Syllable::new(VertexId::new(v), e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::VertexGroup;
    use crate::fixtures::{bipartite_context, complete_graph, context};

    #[test]
    fn shuffle_equal_examples() {
        let hex = bipartite_context(3);
        let x1 = hex.graph().vertex("x1").unwrap().index();
        let y2 = hex.graph().vertex("y2").unwrap().index();
        assert!(shuffle_equal(&hex, &word(&[(x1, 1), (y2, 1)]), &word(&[(y2, 1), (x1, 1)]), 1000).unwrap());
        let free = context(&["a", "b"], &[], VertexGroup::Infinite);
        assert!(!shuffle_equal(&free, &word(&[(0, 1), (1, 1)]), &word(&[(1, 1), (0, 1)]), 1000).unwrap());
    }

    #[test]
    fn stable_support_examples() {
        let z2cube = crate::context::GroupContext::uniform(complete_graph(3), VertexGroup::Finite(2)).unwrap();
        assert!(brute_stable_support(&z2cube, &word(&[(0, 1), (1, 1)]), 2).is_empty());
        let z = context(&["a"], &[], VertexGroup::Infinite);
        assert_eq!(brute_stable_support(&z, &word(&[(0, 1)]), 4).len(), 1);
    }

    #[test]
    fn support_set_examples() {
        let free = context(&["a", "b", "c"], &[], VertexGroup::Infinite);
        let u = [word(&[(0, 1), (1, 1), (0, -1)]), word(&[(0, 1), (2, 1), (0, -1)])];
        let s = brute_support_set(&free, &u, 1, &[1]);
        assert_eq!(free.graph().set_names(&s), ["b", "c"]);
        let s = brute_support_set(&free, &[word(&[(1, 1)])], 0, &[1]);
        assert_eq!(free.graph().set_names(&s), ["b"]);
    }

    #[test]
    fn product_set_examples() {
        let z = context(&["a"], &[], VertexGroup::Infinite);
        assert_eq!(
            naive_product_set(&z, &[word(&[(0, 1)]), word(&[(0, -1)])], 2, 1000).unwrap(),
            3
        );
        let z2 = context(&["u"], &[], VertexGroup::Finite(2));
        assert_eq!(naive_product_set(&z2, &[word(&[(0, 1)])], 2, 1000).unwrap(), 1);
    }

    #[test]
    fn closure_and_conjugates() {
        let free = context(&["a", "b"], &[], VertexGroup::Infinite);
        let w = word(&[(0, 1), (1, 1), (0, -1)]);
        assert_eq!(min_closure_length(&free, &w, 1000).unwrap(), 3);
        assert_eq!(min_conjugate_length(&free, &w, 1, &[1]), 1);
        assert_eq!(cyclic_core(&free, &w), word(&[(1, 1)]));
        assert_eq!(all_words(&free, 1, &[1]).len(), 5);
    }
}
