//! Short positive words with large support.
//!
//! Everything here builds elements of a product set `U^n` as explicit letter
//! sequences, so a result can always be replayed and checked. Exponent scans
//! run in a fixed total order (by `max(m, n)`, then `m + n`, then `m`) and
//! return the first success in that order regardless of thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};
use crate::support::{acon_support_of_set, classify, stable_support, support, support_of_set, SupportReport};
use crate::words::GroupElement;

/// An element of `U^n` together with the letters that produce it.
#[derive(Debug, Clone)]
pub struct SearchCertificate {
    pub element: GroupElement,
    /// Indices into `U`; the element is their product in order.
    pub letters: Vec<usize>,
    /// Exponents `(m, n)` of each combination step `x ← x^m · y^n`.
    pub exponent_trace: Vec<(u64, u64)>,
    /// The vertex set the search had to cover, verified to lie in the
    /// element's stable support.
    pub achieved: VertexSet,
    pub classification: SupportReport,
    /// The guaranteed upper bound on `n` for this search (saturating).
    pub bound: u128,
}

impl SearchCertificate {
    /// Word length in the letters of `U`.
    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// Multiplies the letters back together.
    pub fn replay(&self, letters: &[GroupElement]) -> GroupElement {
        let ctx = self.element.context();
        self.letters
            .iter()
            .fold(GroupElement::identity(ctx), |acc, &i| acc.mul_unchecked(&letters[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Regular,
    StronglyIrreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeasibilityReason {
    /// The aconical part of `supp(U)` has fewer than two vertices.
    AconTooSmall,
    /// The aconical part of `supp(U)` splits as a join.
    AconIsJoin,
    /// Some cone vertex of `supp(U)` carries an infinite group.
    ConeHasInfiniteGroup,
    /// The perp of the aconical part is nonempty (strong irreducibility) or
    /// is not a clique of finite groups (regularity).
    PerpObstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feasibility {
    pub target: Target,
    pub feasible: bool,
    pub reason: Option<FeasibilityReason>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ShortSearch {
    Found(SearchCertificate),
    Infeasible(Feasibility),
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// `dim(Γ)`, treated as at least 1.
fn dim_at_least_one(el: &GroupElement) -> u64 {
    el.context().dim().max(1) as u64
}

/// Exponent cap for one combination step: `6d + 5` without 2-torsion,
/// `2^(d+3)·d` otherwise.
pub fn combine_cap(el: &GroupElement) -> u64 {
    let d = dim_at_least_one(el);
    if el.context().has_two_torsion() {
        1u64.checked_shl((d + 3) as u32)
            .and_then(|p| p.checked_mul(d))
            .unwrap_or(u64::MAX)
    } else {
        6 * d + 5
    }
}

/// Pairs with `max(m, n) = k`, in scan order.
fn shell(k: u64, cap_x: u64, cap_y: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(2 * k as usize);
    for s in k + 1..=2 * k {
        let j = s - k;
        if j < k {
            out.push((j, k));
            out.push((k, j));
        } else {
            out.push((k, k));
        }
    }
    out.retain(|&(m, n)| m <= cap_x && n <= cap_y);
    out
}

/// First `(m, n)` in scan order with `1 ≤ m ≤ cap_x`, `1 ≤ n ≤ cap_y` such
/// that `accept(x^m · y^n)`.
pub fn first_pair<F>(
    x: &GroupElement,
    y: &GroupElement,
    cap_x: u64,
    cap_y: u64,
    accept: F,
) -> Option<(u64, u64, GroupElement)>
where
    F: Fn(&GroupElement) -> bool + Sync,
{
    let ctx = x.context();
    let mut xp = vec![GroupElement::identity(ctx)];
    let mut yp = vec![GroupElement::identity(ctx)];
    for k in 1..=cap_x.max(cap_y) {
        if k <= cap_x {
            xp.push(xp[k as usize - 1].mul_unchecked(x));
        }
        if k <= cap_y {
            yp.push(yp[k as usize - 1].mul_unchecked(y));
        }
        let found = shell(k, cap_x, cap_y).into_par_iter().find_map_first(|(m, n)| {
            let prod = xp[m as usize].mul_unchecked(&yp[n as usize]);
            accept(&prod).then_some((m, n, prod))
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Smallest `(m, n)` with `acon(stsupp(g) ∪ stsupp(h)) ⊆ acon(stsupp(g^m h^n))`.
pub fn combine_pair(g: &GroupElement, h: &GroupElement) -> Result<(u64, u64, GroupElement)> {
    if g.context() != h.context() {
        return Err(Error::ContextMismatch);
    }
    let graph = g.context().graph();
    let target = graph.acon(&stable_support(g).union(&stable_support(h)));
    let cap = combine_cap(g);
    first_pair(g, h, cap, cap, |p| target.is_subset(&graph.acon(&stable_support(p)))).ok_or_else(|| {
        Error::CapExceeded {
            cap,
            context: "combining aconical stable supports",
            reproduction: format!("g = {g}, h = {h}"),
        }
    })
}

// An element of U^n under construction.
#[derive(Clone)]
struct Partial {
    element: GroupElement,
    letters: Vec<usize>,
    trace: Vec<(u64, u64)>,
}

impl Partial {
    fn letters_of(&self) -> &[usize] {
        &self.letters
    }

    // x^m · y^n as a new partial; the trace of `y` is not carried over.
    fn combine(&self, m: u64, y: &[usize], n: u64, element: GroupElement) -> Partial {
        let mut letters = Vec::with_capacity(self.letters.len() * m as usize + y.len() * n as usize);
        for _ in 0..m {
            letters.extend_from_slice(&self.letters);
        }
        for _ in 0..n {
            letters.extend_from_slice(y);
        }
        let mut trace = self.trace.clone();
        trace.push((m, n));
        Partial {
            element,
            letters,
            trace,
        }
    }
}

struct Candidate {
    letters: Vec<usize>,
    element: GroupElement,
    acon_stsupp: VertexSet,
}

fn candidates(letters: &[GroupElement]) -> Vec<Candidate> {
    let graph = letters[0].context().graph();
    let mut out = Vec::with_capacity(letters.len() * (letters.len() + 1));
    let mut push = |idx: Vec<usize>, element: GroupElement| {
        let acon_stsupp = graph.acon(&stable_support(&element));
        out.push(Candidate {
            letters: idx,
            element,
            acon_stsupp,
        });
    };
    for (i, u) in letters.iter().enumerate() {
        push(vec![i], u.clone());
    }
    for (i, u) in letters.iter().enumerate() {
        for (j, w) in letters.iter().enumerate() {
            push(vec![i, j], u.mul_unchecked(w));
        }
    }
    out
}

fn check_context(letters: &[GroupElement]) -> Result<()> {
    let Some(first) = letters.first() else {
        return Err(Error::EmptyLetterSet);
    };
    if letters.iter().any(|u| u.context() != first.context()) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

fn start(letters: &[GroupElement], c: &Candidate) -> Partial {
    let element = c
        .letters
        .iter()
        .fold(GroupElement::identity(letters[0].context()), |acc, &i| {
            acc.mul_unchecked(&letters[i])
        });
    Partial {
        element,
        letters: c.letters.clone(),
        trace: Vec::new(),
    }
}

// Chooses each next piece by the coverage it guarantees once combined with
// what has been built so far, preferring single letters on ties.
fn adaptive_plan(letters: &[GroupElement], cands: &[Candidate], target: &VertexSet) -> Result<Partial> {
    let graph = letters[0].context().graph();
    let mut current: Option<(Partial, VertexSet)> = None;
    loop {
        let covered = current.as_ref().map_or(VertexSet::new(), |(_, s)| graph.acon(s));
        if target.is_subset(&covered) {
            break;
        }
        let gain = |c: &Candidate| -> usize {
            let reach = match &current {
                None => c.acon_stsupp,
                Some((_, st)) => graph.acon(&st.union(&stable_support(&c.element))),
            };
            reach.intersection(target).len()
        };
        let mut best: Option<(usize, &Candidate)> = None;
        for c in cands {
            let g = gain(c);
            if best.is_none_or(|(bg, _)| g > bg) {
                best = Some((g, c));
            }
        }
        let (g, c) = best.expect("candidates are nonempty");
        if g <= covered.intersection(target).len() {
            return Err(Error::Falsified {
                claim: "some element of U ∪ U² extends the covered aconical support",
                reproduction: format!("letters = {}", format_letters(letters)),
            });
        }
        current = Some(match current {
            None => {
                let p = start(letters, c);
                let st = stable_support(&p.element);
                (p, st)
            }
            Some((p, _)) => {
                let (m, n, prod) = combine_pair(&p.element, &c.element)?;
                let next = p.combine(m, &c.letters, n, prod);
                let st = stable_support(&next.element);
                (next, st)
            }
        });
    }
    Ok(current.expect("target nonempty means at least one step").0)
}

// Greedy cover of the target by the sets acon(stsupp(x)), x ∈ U ∪ U², then a
// left fold of the chosen pieces.
fn static_plan(letters: &[GroupElement], cands: &[Candidate], target: &VertexSet) -> Result<Partial> {
    let mut covered = VertexSet::new();
    let mut chosen = Vec::new();
    while !target.is_subset(&covered) {
        let best = cands
            .iter()
            .map(|c| (c.acon_stsupp.intersection(target).difference(&covered).len(), c))
            .fold(None::<(usize, &Candidate)>, |best, (g, c)| match best {
                Some((bg, _)) if bg >= g => best,
                _ => Some((g, c)),
            });
        match best {
            Some((g, c)) if g > 0 => {
                covered = covered.union(&c.acon_stsupp);
                chosen.push(c);
            }
            _ => {
                return Err(Error::Falsified {
                    claim: "U ∪ U² covers the aconical part of supp(U)",
                    reproduction: format!("letters = {}", format_letters(letters)),
                })
            }
        }
    }
    let mut acc = start(letters, chosen[0]);
    for c in &chosen[1..] {
        let (m, n, prod) = combine_pair(&acc.element, &c.element)?;
        acc = acc.combine(m, &c.letters, n, prod);
    }
    Ok(acc)
}

fn format_letters(letters: &[GroupElement]) -> String {
    let words: Vec<String> = letters.iter().map(|u| format!("\"{u}\"")).collect();
    format!("[{}]", words.join(", "))
}

fn full_support_partial(letters: &[GroupElement]) -> Result<(Partial, VertexSet, u128)> {
    check_context(letters)?;
    let target = acon_support_of_set(letters);
    let k = (letters.len() * letters.len()).min(letters[0].context().graph().vertex_count());
    let bound = saturating_pow(combine_cap(&letters[0]) as u128, k);
    if target.is_empty() {
        let p = Partial {
            element: letters[0].clone(),
            letters: vec![0],
            trace: Vec::new(),
        };
        return Ok((p, target, bound));
    }
    let cands = candidates(letters);
    let adaptive = adaptive_plan(letters, &cands, &target)?;
    let fixed = static_plan(letters, &cands, &target)?;
    let best = if fixed.letters.len() < adaptive.letters.len() {
        fixed
    } else {
        adaptive
    };
    if best.letters.len() as u128 > bound {
        return Err(Error::Falsified {
            claim: "the full-support element is no longer than the guaranteed bound",
            reproduction: format!("letters = {}", format_letters(letters)),
        });
    }
    Ok((best, target, bound))
}

fn certificate(p: Partial, achieved: VertexSet, bound: u128) -> SearchCertificate {
    let classification = classify(&p.element);
    SearchCertificate {
        element: p.element,
        letters: p.letters,
        exponent_trace: p.trace,
        achieved,
        classification,
        bound,
    }
}

/// An element `g ∈ U^n` with `acon(supp(U)) ⊆ stsupp(g)`.
///
/// `n` never exceeds `κ^k` with `k = min(|U|², |Γ|)` and `κ` the
/// single-step exponent cap of [`combine_cap`].
pub fn full_support_element(letters: &[GroupElement]) -> Result<SearchCertificate> {
    let (p, target, bound) = full_support_partial(letters)?;
    let cert = certificate(p, target, bound);
    if !target.is_subset(&cert.classification.stsupp) {
        return Err(Error::Falsified {
            claim: "acon(supp(U)) lies in the stable support of the combined element",
            reproduction: format!("letters = {}", format_letters(letters)),
        });
    }
    Ok(cert)
}

/// For torsion-free graph products: `g ∈ U^n` with `supp(g) = supp(U)`.
///
/// Starts from [`full_support_element`] and then absorbs one witness per
/// missing cone vertex, `h ← u^a · h^b` with `a ≤ 7d + 5` and `b ≤ 5d + 5`.
/// The bound is `(7d + 5)^(d + min(|U|², |Γ|))`.
pub fn full_support_torsion_free(letters: &[GroupElement]) -> Result<SearchCertificate> {
    check_context(letters)?;
    let ctx = letters[0].context().clone();
    if !ctx.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    let graph = ctx.graph();
    let (mut h, acon_target, _) = full_support_partial(letters)?;
    let supp_u = support_of_set(letters);
    let cone = supp_u.difference(&acon_target);
    let d = dim_at_least_one(&letters[0]);
    let k = (letters.len() * letters.len()).min(graph.vertex_count()) + d as usize;
    let bound = saturating_pow(7 * d as u128 + 5, k);
    let mut secured = acon_target.union(&support(&h.element).intersection(&cone));
    for v in cone.iter() {
        if secured.contains(v) {
            continue;
        }
        let witness = letters
            .iter()
            .position(|u| support(u).contains(v))
            .ok_or_else(|| Error::Falsified {
                claim: "every cone vertex of supp(U) lies in the support of a letter",
                reproduction: format!("letters = {}", format_letters(letters)),
            })?;
        let mut want = secured;
        want.insert(v);
        let (a, b, prod) = first_pair(&letters[witness], &h.element, 7 * d + 5, 5 * d + 5, |p| {
            want.is_subset(&support(p))
        })
        .ok_or_else(|| Error::CapExceeded {
            cap: 7 * d + 5,
            context: "absorbing a cone vertex",
            reproduction: format!("letters = {}, vertex = {}", format_letters(letters), graph.name(v)),
        })?;
        let mut lettering = Vec::new();
        for _ in 0..a {
            lettering.push(witness);
        }
        for _ in 0..b {
            lettering.extend_from_slice(h.letters_of());
        }
        let mut trace = h.trace.clone();
        trace.push((a, b));
        h = Partial {
            element: prod,
            letters: lettering,
            trace,
        };
        secured = secured.union(&support(&h.element).intersection(&supp_u));
    }
    let cert = certificate(h, supp_u, bound);
    if cert.classification.supp != supp_u || cert.classification.stsupp != supp_u || cert.n() as u128 > bound {
        return Err(Error::Falsified {
            claim: "supp(g) = stsupp(g) = supp(U) within the torsion-free bound",
            reproduction: format!("letters = {}", format_letters(letters)),
        });
    }
    Ok(cert)
}

/// Decides whether `⟨U⟩` contains an element of the requested kind, from the
/// shape of `supp(U)` alone.
pub fn feasibility(letters: &[GroupElement], target: Target) -> Result<Feasibility> {
    check_context(letters)?;
    let ctx = letters[0].context();
    let graph = ctx.graph();
    let acon = acon_support_of_set(letters);
    let cone = support_of_set(letters).difference(&acon);
    let perp = graph.perp(&acon);
    let reason = if acon.len() < 2 {
        Some(FeasibilityReason::AconTooSmall)
    } else if graph.is_join(&acon) {
        Some(FeasibilityReason::AconIsJoin)
    } else {
        match target {
            Target::StronglyIrreducible => (!perp.is_empty()).then_some(FeasibilityReason::PerpObstruction),
            Target::Regular => {
                if !ctx.all_finite(&cone) {
                    Some(FeasibilityReason::ConeHasInfiniteGroup)
                } else if !(graph.is_clique(&perp) && ctx.all_finite(&perp)) {
                    Some(FeasibilityReason::PerpObstruction)
                } else {
                    None
                }
            }
        }
    };
    Ok(Feasibility {
        target,
        feasible: reason.is_none(),
        reason,
    })
}

/// A short regular or strongly irreducible element of some `U^n`, or the
/// reason none exists in `⟨U⟩`.
///
/// When the target is feasible, any `g` with `acon(supp(U)) ⊆ stsupp(g)` has
/// the target property, so the full-support search provides the witness.
pub fn find_short(letters: &[GroupElement], target: Target) -> Result<ShortSearch> {
    let f = feasibility(letters, target)?;
    if !f.feasible {
        return Ok(ShortSearch::Infeasible(f));
    }
    let cert = full_support_element(letters)?;
    let ok = match target {
        Target::Regular => cert.classification.regular,
        Target::StronglyIrreducible => cert.classification.strongly_irreducible,
    };
    if !ok {
        return Err(Error::Falsified {
            claim: "covering acon(supp(U)) yields the target property",
            reproduction: format!("letters = {}", format_letters(letters)),
        });
    }
    Ok(ShortSearch::Found(cert))
}

/// Exponent-sum search in a right-angled Artin group.
///
/// Let `Γ_U` be the vertices on which some letter has nonzero exponent sum,
/// in vertex order `v_1, …, v_m`, and `u_j` the first letter with nonzero sum
/// on `v_j`. The element is `u_1^{n_1} ⋯ u_m^{n_m}` where each `n_j` is the
/// least value in `1..=j` keeping the sums on `v_1, …, v_j` nonzero; each of
/// those `j` vertices rules out at most one value, and the sum on `v_j`
/// cannot vanish before `u_j` is added. Hence `n ≤ (m + 1)(m + 2)/2`.
pub fn exponent_sum_search(letters: &[GroupElement]) -> Result<SearchCertificate> {
    check_context(letters)?;
    let ctx = letters[0].context().clone();
    if !ctx.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    let nv = ctx.graph().vertex_count();
    let sums: Vec<Vec<i64>> = letters
        .iter()
        .map(|u| (0..nv).map(|i| u.exponent_sum(VertexId::new(i))).collect())
        .collect();
    let gamma_u: Vec<usize> = (0..nv).filter(|&i| sums.iter().any(|p| p[i] != 0)).collect();
    let m = gamma_u.len();
    let bound = ((m + 1) * (m + 2) / 2) as u128;
    let mut running = vec![0i64; nv];
    let mut lettering = Vec::new();
    let mut trace = Vec::new();
    for (j, &vj) in gamma_u.iter().enumerate() {
        let witness = sums
            .iter()
            .position(|p| p[vj] != 0)
            .expect("vertex of Γ_U has a witness");
        let p = &sums[witness];
        let n = (1..=j as i64 + 2)
            .find(|&n| gamma_u[..=j].iter().all(|&i| running[i] + n * p[i] != 0))
            .ok_or_else(|| Error::Falsified {
                claim: "some small exponent keeps every exponent sum nonzero",
                reproduction: format!("letters = {}", format_letters(letters)),
            })?;
        for (r, &x) in running.iter_mut().zip(p) {
            *r += n * x;
        }
        lettering.extend(std::iter::repeat_n(witness, n as usize));
        if j > 0 {
            trace.push((1, n as u64));
        }
    }
    let element = lettering
        .iter()
        .fold(GroupElement::identity(&ctx), |acc, &i| acc.mul_unchecked(&letters[i]));
    let achieved: VertexSet = gamma_u.iter().map(|&i| VertexId::new(i)).collect();
    let cert = certificate(
        Partial {
            element,
            letters: lettering,
            trace,
        },
        achieved,
        bound,
    );
    if !achieved.is_subset(&cert.classification.supp) || cert.n() as u128 > bound {
        return Err(Error::Falsified {
            claim: "Γ_U ⊆ supp(g) within (m+1)(m+2)/2 letters",
            reproduction: format!("letters = {}", format_letters(letters)),
        });
    }
    Ok(cert)
}

/// `M = (2k)^k (2k + 1)`, the exponent cap for `k` simultaneous trees.
pub fn simultaneous_cap(k: usize) -> u64 {
    let base = saturating_pow(2 * k as u128, k).saturating_mul(2 * k as u128 + 1);
    u64::try_from(base).unwrap_or(u64::MAX)
}

/// Smallest `(m, n)` with `g^m h^n` loxodromic in `T_v` for every `v ∈ vertices`.
pub fn simultaneous_loxodromic(
    g: &GroupElement,
    h: &GroupElement,
    vertices: &VertexSet,
) -> Result<(u64, u64, GroupElement)> {
    if g.context() != h.context() {
        return Err(Error::ContextMismatch);
    }
    let graph = g.context().graph();
    let lg = graph.acon(&support(g));
    let lh = graph.acon(&support(h));
    if let Some(v) = vertices.iter().find(|&v| !lg.contains(v) && !lh.contains(v)) {
        return Err(Error::PreconditionFailed(format!(
            "both elements are elliptic on the tree of `{}`",
            graph.name(v)
        )));
    }
    let cap = simultaneous_cap(vertices.len());
    first_pair(g, h, cap, cap, |p| vertices.is_subset(&graph.acon(&support(p)))).ok_or_else(|| Error::CapExceeded {
        cap,
        context: "simultaneous loxodromic search",
        reproduction: format!("g = {g}, h = {h}, vertices = {:?}", graph.set_names(vertices)),
    })
}
