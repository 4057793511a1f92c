//! Supports of elements and finite sets, and the classification predicates
//! built on them.
//!
//! The support of `g` is the smallest vertex set `Λ` such that `g` lies in a
//! conjugate of the parabolic subgroup generated by `Λ`. It is read off from
//! any cyclically reduced conjugate: the vertices of its syllables.

use crate::coefficients::Order;
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};
use crate::words::GroupElement;

/// Everything the classification needs to know about one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub supp: VertexSet,
    /// Cone vertices of `supp`.
    pub cone: VertexSet,
    /// Cone vertices whose projection has finite order; `supp = finite_cone ⊔ stsupp`.
    pub finite_cone: VertexSet,
    pub stsupp: VertexSet,
    /// Pairwise commuting irreducible factors whose product is the element.
    pub components: Vec<GroupElement>,
    pub irreducible: bool,
    pub stably_irreducible: bool,
    pub strongly_irreducible: bool,
    pub regular: bool,
}

pub fn support(g: &GroupElement) -> VertexSet {
    g.cyclic_reduce().core.written_vertices()
}

/// The component of `g` in the vertex group of `v`, for a cone vertex `v` of
/// `supp(g)`. Returns `None` for the identity.
///
/// Every syllable on `v` commutes past everything else in the cyclically
/// reduced core, so in a reduced word there is exactly one of them.
pub fn projection(g: &GroupElement, v: VertexId) -> Result<Option<i64>> {
    let core = g.cyclic_reduce().core;
    let supp = core.written_vertices();
    let graph = g.context().graph();
    if !graph.cone_vertices(&supp).contains(v) {
        return Err(Error::NotConeVertex(graph.name(v).to_string()));
    }
    let group = g.context().group(v);
    let mut acc = None;
    for s in core.syllables().iter().filter(|s| s.vertex == v) {
        acc = match acc {
            None => Some(s.exp),
            Some(a) => group.compose(a, s.exp),
        };
    }
    Ok(acc)
}

// Cone vertices of `supp` whose projection has finite order. For cyclic
// vertex groups these are exactly the cone vertices carrying a finite group,
// since a cone vertex in the support has a nontrivial projection.
fn finite_cone(g: &GroupElement, supp: &VertexSet) -> (VertexSet, VertexSet) {
    let ctx = g.context();
    let cone = ctx.graph().cone_vertices(supp);
    let finite = cone.iter().filter(|&v| ctx.group(v).is_finite()).collect();
    (cone, finite)
}

/// Intersection of the supports of all positive powers.
pub fn stable_support(g: &GroupElement) -> VertexSet {
    let supp = support(g);
    let (_, finite) = finite_cone(g, &supp);
    supp.difference(&finite)
}

/// Splits `g` along the join decomposition of its support.
///
/// The factors of `supp(core)` are the connected components of the opposite
/// graph; vertices in different factors commute, so the core is the product
/// of its restrictions to the factors, each conjugated back by the same
/// element.
pub fn irreducible_components(g: &GroupElement) -> Vec<GroupElement> {
    let reduction = g.cyclic_reduce();
    let core = &reduction.core;
    let ctx = g.context();
    let supp = core.written_vertices();
    let conj = &reduction.conjugator;
    let conj_inv = conj.invert();
    ctx.graph()
        .join_factors(&supp)
        .into_iter()
        .map(|factor| {
            let part: Vec<_> = core
                .syllables()
                .iter()
                .copied()
                .filter(|s| factor.contains(s.vertex))
                .collect();
            let part = GroupElement::from_syllables(ctx, &part);
            conj.mul_unchecked(&part).mul_unchecked(&conj_inv)
        })
        .collect()
}

/// True when some irreducible component of `g` has order exactly 2.
///
/// A finite-order irreducible component lives in a single vertex group (its
/// support is an irreducible clique), so this amounts to a cone vertex whose
/// projection has order 2.
pub fn has_order_two_component(g: &GroupElement) -> bool {
    let core = g.cyclic_reduce().core;
    let supp = core.written_vertices();
    let ctx = g.context();
    let cone = ctx.graph().cone_vertices(&supp);
    core.syllables()
        .iter()
        .any(|s| cone.contains(s.vertex) && matches!(ctx.group(s.vertex).order(s.exp), Ok(Order::Finite(2))))
}

/// Computes supports and the four classification flags.
///
/// Strong irreducibility asks that `supp` has at least two vertices and is
/// not contained in a join. A set `Λ` that is not itself a join lies in a join
/// `A * B` only when one side contains `Λ`, and then the other side is in
/// `Λ^⊥`; so the condition is "no join split and empty perp".
///
/// Regularity asks the same of `stsupp`, except that the perp may be nonempty
/// as long as it generates a finite group, i.e. it is a clique of finite
/// vertex groups.
pub fn classify(g: &GroupElement) -> SupportReport {
    let graph = g.context().graph();
    let ctx = g.context();
    let supp = support(g);
    let (cone, finite) = finite_cone(g, &supp);
    let stsupp = supp.difference(&finite);
    let irreducible = !supp.is_empty() && !graph.is_join(&supp);
    let stably_irreducible = !stsupp.is_empty() && !graph.is_join(&stsupp);
    let strongly_irreducible = supp.len() >= 2 && irreducible && graph.perp(&supp).is_empty();
    let regular = stsupp.len() >= 2 && stably_irreducible && {
        let perp = graph.perp(&stsupp);
        graph.is_clique(&perp) && ctx.all_finite(&perp)
    };
    SupportReport {
        supp,
        cone,
        finite_cone: finite,
        stsupp,
        components: irreducible_components(g),
        irreducible,
        stably_irreducible,
        strongly_irreducible,
        regular,
    }
}

/// Support of a finite set: the smallest `Λ` with all of `U` in one conjugate
/// of the parabolic subgroup on `Λ`.
///
/// It equals the union of `supp(x)` over `x ∈ U ∪ U²`. One inclusion holds
/// because every `x` lies in the common conjugate of the parabolic on
/// `supp(U)`, and parabolic subgroups containing `x` contain a conjugate of
/// the parabolic on `supp(x)`. For the other, a vertex `v ∈ supp(U)` that is
/// a cone vertex of `supp(U)` already lies in `supp(u)` for some `u ∈ U`
/// (project `U` to the `v` factor of the star). A non-cone vertex `v` makes
/// `⟨U⟩` act on the Bass–Serre tree of `v` without a global fixed point; by
/// Serre's lemma some `u` is loxodromic there or two letters have disjoint
/// fixed sets, and then their product is loxodromic, which places `v` in the
/// aconical part of the support of an element of `U ∪ U²`.
pub fn support_of_set(letters: &[GroupElement]) -> VertexSet {
    let mut acc = VertexSet::new();
    for_each_short_product(letters, |x| acc = acc.union(&support(x)));
    acc
}

/// Aconical part of [`support_of_set`], computed as the union of the aconical
/// parts of the supports of `U ∪ U²` (a vertex is loxodromic for `⟨U⟩` on its
/// tree exactly when it is loxodromic for some element of `U ∪ U²`).
pub fn acon_support_of_set(letters: &[GroupElement]) -> VertexSet {
    let mut acc = VertexSet::new();
    for_each_short_product(letters, |x| {
        let graph = x.context().graph();
        acc = acc.union(&graph.acon(&support(x)));
    });
    acc
}

fn for_each_short_product(letters: &[GroupElement], mut f: impl FnMut(&GroupElement)) {
    for u in letters {
        f(u);
    }
    for u in letters {
        for w in letters {
            f(&u.mul_unchecked(w));
        }
    }
}
