//! The action of the graph product on the Bass–Serre tree `T_v` of the
//! splitting `G_St(v) *_{G_lk(v)} G_{Γ∖v}`, decided algebraically.
//!
//! An element fixes a vertex of complement type exactly when `v` is outside
//! its support, fixes a vertex of star type (but none of complement type)
//! exactly when `v` is a cone vertex of its support, and is loxodromic
//! otherwise.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::graph::VertexId;
use crate::support::{has_order_two_component, stable_support, support};
use crate::words::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeAction {
    /// Translates an axis by `tau`, always a positive even number.
    Loxodromic { tau: u64 },
    /// Fixes a vertex of complement type.
    EllipticComplement,
    /// Fixes a vertex of star type and no vertex of complement type.
    EllipticStarOnly,
}

impl TreeAction {
    pub fn is_loxodromic(self) -> bool {
        matches!(self, TreeAction::Loxodromic { .. })
    }
}

pub fn tree_action(g: &GroupElement, v: VertexId) -> TreeAction {
    let core = g.cyclic_reduce().core;
    let supp = core.written_vertices();
    if !supp.contains(v) {
        TreeAction::EllipticComplement
    } else if g.context().graph().acon(&supp).contains(v) {
        TreeAction::Loxodromic {
            tau: 2 * v_syllables(&core, v),
        }
    } else {
        TreeAction::EllipticStarOnly
    }
}

fn v_syllables(core: &GroupElement, v: VertexId) -> u64 {
    core.syllables().iter().filter(|s| s.vertex == v).count() as u64
}

/// Translation length in `T_v`; zero for elliptic elements.
///
/// A cyclically reduced loxodromic word alternates between the two factors of
/// the amalgam, and each factor from the star side contributes exactly one
/// `v` syllable: two `v` syllables separated only by link syllables would
/// merge. Each of them crosses two edges of the tree, one into and one out of
/// a star-type vertex.
pub fn translation_length(g: &GroupElement, v: VertexId) -> u64 {
    match tree_action(g, v) {
        TreeAction::Loxodromic { tau } => tau,
        _ => 0,
    }
}

/// A set of lines in the `(m, n)` plane: rows `m = c`, columns `n = c` and
/// rays `m / n = p / q` through the origin.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineCover {
    pub rows: Vec<u64>,
    pub columns: Vec<u64>,
    /// Slopes as reduced fractions `(p, q)` meaning `m / n = p / q`.
    pub rays: Vec<(u64, u64)>,
}

impl LineCover {
    pub fn len(&self) -> usize {
        self.rows.len() + self.columns.len() + self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, (m, n): (u64, u64)) -> bool {
        self.rows.contains(&m) || self.columns.contains(&n) || self.rays.contains(&slope(m, n))
    }
}

fn slope(m: u64, n: u64) -> (u64, u64) {
    let g = crate::coefficients::gcd(m, n);
    (m / g, n / g)
}

/// Exponent pairs where combining two elements loses part of the aconical
/// stable support, over a square window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalExponentReport {
    pub window: RangeInclusive<u64>,
    /// Sorted pairs `(m, n)` where the inclusion fails although neither
    /// `g^m` nor `h^n` has an irreducible component of order 2.
    pub failures: Vec<(u64, u64)>,
    /// Pairs left out because a power has an order-2 component.
    pub skipped: usize,
    /// A smallest cover of `failures` by at most `dim` rows, `dim` columns and
    /// `dim` rays, if one exists.
    pub cover: Option<LineCover>,
    pub dim: usize,
}

/// Scans `window²` for pairs `(m, n)` with
/// `acon(stsupp(g) ∪ stsupp(h)) ⊄ acon(stsupp(g^m h^n))`.
pub fn exceptional_exponents(
    g: &GroupElement,
    h: &GroupElement,
    window: RangeInclusive<u64>,
) -> ExceptionalExponentReport {
    let ctx = g.context();
    let graph = ctx.graph();
    let target = graph.acon(&stable_support(g).union(&stable_support(h)));
    let exps: Vec<u64> = window.clone().collect();
    let powers = |x: &GroupElement| -> Vec<(GroupElement, bool)> {
        exps.par_iter()
            .map(|&e| {
                let p = x.power(e as i64);
                let bad = has_order_two_component(&p);
                (p, bad)
            })
            .collect()
    };
    let gp = powers(g);
    let hp = powers(h);
    let rows: Vec<(Vec<(u64, u64)>, usize)> = exps
        .par_iter()
        .zip(gp.par_iter())
        .map(|(&m, (gm, gbad))| {
            let mut fails = Vec::new();
            let mut skipped = 0;
            for (&n, (hn, hbad)) in exps.iter().zip(&hp) {
                if *gbad || *hbad {
                    skipped += 1;
                    continue;
                }
                let prod = gm.mul_unchecked(hn);
                if !target.is_subset(&graph.acon(&stable_support(&prod))) {
                    fails.push((m, n));
                }
            }
            (fails, skipped)
        })
        .collect();
    let skipped = rows.iter().map(|r| r.1).sum();
    let failures: Vec<_> = rows.into_iter().flat_map(|r| r.0).collect();
    let dim = ctx.dim();
    let cover = min_cover(&failures, dim);
    ExceptionalExponentReport {
        window,
        failures,
        skipped,
        cover,
        dim,
    }
}

/// Smallest cover of `points` using at most `limit` lines of each kind, found
/// by exhaustive branching: the first uncovered point must lie on its own row,
/// column or ray.
pub fn min_cover(points: &[(u64, u64)], limit: usize) -> Option<LineCover> {
    for total in 0..=3 * limit {
        let mut cover = LineCover::default();
        if cover_search(points, limit, total, &mut cover) {
            return Some(cover);
        }
    }
    None
}

fn cover_search(points: &[(u64, u64)], limit: usize, budget: usize, cover: &mut LineCover) -> bool {
    let Some(&(m, n)) = points.iter().find(|&&p| !cover.covers(p)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    if cover.rows.len() < limit {
        cover.rows.push(m);
        if cover_search(points, limit, budget - 1, cover) {
            return true;
        }
        cover.rows.pop();
    }
    if cover.columns.len() < limit {
        cover.columns.push(n);
        if cover_search(points, limit, budget - 1, cover) {
            return true;
        }
        cover.columns.pop();
    }
    if cover.rays.len() < limit {
        cover.rays.push(slope(m, n));
        if cover_search(points, limit, budget - 1, cover) {
            return true;
        }
        cover.rays.pop();
    }
    false
}

/// The vertices `v` for which `g` is loxodromic in `T_v`.
pub fn loxodromic_vertices(g: &GroupElement) -> crate::graph::VertexSet {
    g.context().graph().acon(&support(g))
}
