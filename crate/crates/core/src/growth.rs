//! Product-set enumeration and the three sharpness constructions.
//!
//! `U^n` always means products of exactly `n` letters of `U`; ball mode
//! replaces `U` by `U ∪ U⁻¹ ∪ {1}` explicitly. Elements are deduplicated by
//! canonical form, level by level.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coefficients::VertexGroup;
use crate::context::{GroupContext, Syllable};
use crate::error::{Error, Result};
use crate::fixtures::bipartite_context;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::search::{find_short, ShortSearch, Target};
use crate::support::{classify, support, support_of_set};
use crate::words::GroupElement;

/// Default cap on the size of one enumerated level.
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// `sizes[i] = |U^(i+1)|`.
    pub sizes: Vec<usize>,
    /// Set when enumeration stopped early because a level exceeded the budget.
    pub truncated: bool,
    pub ball: bool,
    /// `(α, β)` and, per computed `n`, whether `|U^n| ≥ (α|U|)^(βn)`.
    pub inequality: Option<((f64, f64), Vec<bool>)>,
    /// Ball mode only: `|B(n)|^(1/n)`, each an upper bound for the
    /// exponential growth rate. No lower bound is ever claimed.
    pub fekete_upper: Vec<f64>,
}

/// The next level `{x·u : x ∈ current, u ∈ letters}`, sorted by canonical form.
// The hash of a `GroupElement` is that of its canonical form, which the
// lazily filled cache never changes.
#[allow(clippy::mutable_key_type)]
pub fn next_level(current: &[GroupElement], letters: &[GroupElement]) -> Vec<GroupElement> {
    let set = current
        .par_iter()
        .fold(HashSet::new, |mut set, x| {
            for u in letters {
                set.insert(x.mul_unchecked(u));
            }
            set
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    let mut level: Vec<GroupElement> = set.into_iter().collect();
    level.par_sort_by(|a, b| a.canonical().cmp(b.canonical()));
    level
}

/// Calls `visit(n, U^n)` for `n = 1..=n_max`. Returns `true` if enumeration
/// stopped because a level grew beyond `max_states`.
pub fn for_each_level(
    letters: &[GroupElement],
    n_max: usize,
    max_states: usize,
    mut visit: impl FnMut(usize, &[GroupElement]),
) -> Result<bool> {
    let Some(first) = letters.first() else {
        return Err(Error::EmptyLetterSet);
    };
    let mut level = vec![GroupElement::identity(first.context())];
    for n in 1..=n_max {
        level = next_level(&level, letters);
        if level.len() > max_states {
            return Ok(true);
        }
        visit(n, &level);
    }
    Ok(false)
}

/// `U ∪ U⁻¹ ∪ {1}`, without duplicates, in first-seen order.
#[allow(clippy::mutable_key_type)]
pub fn symmetrize(letters: &[GroupElement]) -> Vec<GroupElement> {
    let Some(first) = letters.first() else {
        return Vec::new();
    };
    let mut seen = HashSet::new();
    std::iter::once(GroupElement::identity(first.context()))
        .chain(letters.iter().flat_map(|u| [u.clone(), u.invert()]))
        .filter(|x| seen.insert(x.clone()))
        .collect()
}

pub fn product_set_sizes(letters: &[GroupElement], n_max: usize, max_states: usize) -> Result<GrowthReport> {
    let mut sizes = Vec::with_capacity(n_max);
    let truncated = for_each_level(letters, n_max, max_states, |_, level| sizes.push(level.len()))?;
    Ok(GrowthReport {
        sizes,
        truncated,
        ball: false,
        inequality: None,
        fekete_upper: Vec::new(),
    })
}

/// Ball sizes `|B(n)|` for the word metric of `letters ∪ letters⁻¹`.
pub fn ball_sizes(letters: &[GroupElement], n_max: usize, max_states: usize) -> Result<GrowthReport> {
    let sym = symmetrize(letters);
    let mut report = product_set_sizes(&sym, n_max, max_states)?;
    report.ball = true;
    report.fekete_upper = report
        .sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (s as f64).powf(1.0 / (i + 1) as f64))
        .collect();
    Ok(report)
}

/// Checks `|U^n| ≥ (α|U|)^(βn)` for each computed `n`. The comparison allows
/// a relative slack of `1e-12` for floating-point rounding of the right side.
pub fn growth_inequality_check(
    letters: &[GroupElement],
    alpha: f64,
    beta: f64,
    n_max: usize,
    max_states: usize,
) -> Result<GrowthReport> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::PreconditionFailed("α and β must be positive".into()));
    }
    let mut report = product_set_sizes(letters, n_max, max_states)?;
    attach_inequality(&mut report, letters.len(), alpha, beta);
    Ok(report)
}

/// Adds inequality checks to an existing report, using `|U| = u_len`.
pub fn attach_inequality(report: &mut GrowthReport, u_len: usize, alpha: f64, beta: f64) {
    let base = alpha * u_len as f64;
    let checks = report
        .sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let rhs = base.powf(beta * (i + 1) as f64);
            s as f64 >= rhs * (1.0 - 1e-12)
        })
        .collect();
    report.inequality = Some(((alpha, beta), checks));
}

/// A construction from the sharpness examples.
#[derive(Debug, Clone)]
pub struct SharpnessInstance {
    pub context: Arc<GroupContext>,
    /// The letters the construction is about (`x_i^±1`, or `g` and `h`).
    pub letters: Vec<GroupElement>,
    pub parameter: u64,
    /// Named integer parameters of the construction.
    pub details: Vec<(&'static str, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub description: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: &'static str,
    pub parameter: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(name: &'static str, parameter: u64) -> Self {
        VerificationReport {
            name,
            parameter,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, description: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            description: description.into(),
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The bipartite graph on `x1..xm, y1..ym` with `U = {x_i^±1}`.
pub fn build_bipartite_example(m: usize) -> Result<SharpnessInstance> {
    if m < 2 {
        return Err(Error::Unsupported(format!("bipartite example needs m ≥ 2, got {m}")));
    }
    let context = bipartite_context(m);
    let letters = (0..m)
        .flat_map(|i| [1, -1].map(|e| GroupElement::vertex_power(&context, VertexId::new(i), e)))
        .collect();
    Ok(SharpnessInstance {
        context,
        letters,
        parameter: m as u64,
        details: vec![("m", m as i64)],
    })
}

/// No element of `U^k`, `k < m`, is strongly irreducible (each misses some
/// `x_i`, so `y_i` centralises it), while `x1⋯xm ∈ U^m` is.
pub fn verify_bipartite(m: usize) -> Result<VerificationReport> {
    let inst = build_bipartite_example(m)?;
    let graph = inst.context.graph();
    let mut report = VerificationReport::new("bipartite", m as u64);
    for_each_level(&inst.letters, m - 1, usize::MAX, |k, level| {
        let si = level.iter().filter(|g| classify(g).strongly_irreducible).count();
        let perp_ok = level.iter().all(|g| !graph.perp(&support(g)).is_empty());
        report.check(
            format!("U^{k}: {} elements, none strongly irreducible", level.len()),
            si == 0,
        );
        report.check(format!("U^{k}: every element has a nonempty perp"), perp_ok);
    })?;
    let witness: Vec<usize> = (0..m).map(|i| 2 * i).collect();
    let product = witness.iter().fold(GroupElement::identity(&inst.context), |acc, &i| {
        acc.mul_unchecked(&inst.letters[i])
    });
    report.check(
        format!("{product} ∈ U^{m} is strongly irreducible"),
        classify(&product).strongly_irreducible,
    );
    Ok(report)
}

/// Nonzero pairs in `rows × [-n, n]`, lexicographically.
fn nonzero_pairs(rows: std::ops::RangeInclusive<i64>, n: i64) -> Vec<(i64, i64)> {
    rows.flat_map(|a| (-n..=n).map(move |b| (a, b)))
        .filter(|&p| p != (0, 0))
        .collect()
}

/// `Z^((2N+1)² − 1)` with `g = Π x_i^(b_i)`, `h = Π x_i^(−a_i)` over an
/// enumeration `(a_i, b_i)` of the nonzero pairs in `[−N, N]²`.
pub fn build_abelian_example(n: u64) -> Result<SharpnessInstance> {
    if n == 0 {
        return Err(Error::Unsupported("abelian example needs N ≥ 1".into()));
    }
    let n = n as i64;
    let pairs = nonzero_pairs(-n..=n, n);
    let graph = crate::fixtures::complete_graph(pairs.len());
    let context = GroupContext::uniform(graph, VertexGroup::Infinite)?;
    let word = |f: &dyn Fn(&(i64, i64)) -> i64| -> GroupElement {
        let raw: Vec<Syllable> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| Syllable::new(VertexId::new(i), f(p)))
            .filter(|s| s.exp != 0)
            .collect();
        GroupElement::from_syllables(&context, &raw)
    };
    let g = word(&|&(_, b)| b);
    let h = word(&|&(a, _)| -a);
    Ok(SharpnessInstance {
        context: context.clone(),
        letters: vec![g, h],
        parameter: n as u64,
        details: vec![("N", n), ("rank", pairs.len() as i64)],
    })
}

pub fn verify_abelian(n: u64) -> Result<VerificationReport> {
    let inst = build_abelian_example(n)?;
    let (g, h) = (&inst.letters[0], &inst.letters[1]);
    let all = inst.context.graph().all();
    let n = n as i64;
    let pairs = nonzero_pairs(-n..=n, n);
    let mut report = VerificationReport::new("abelian", n as u64);
    let mut deficient = 0;
    let mut located = 0;
    let mut total = 0;
    for m in -n..=n {
        for k in -n..=n {
            total += 1;
            let supp = support(&g.power(m).mul_unchecked(&h.power(k)));
            if supp != all {
                deficient += 1;
            }
            match pairs.iter().position(|&p| p == (m, k)) {
                Some(i) if !supp.contains(VertexId::new(i)) => located += 1,
                None => located += 1,
                _ => {}
            }
        }
    }
    report.check(
        format!("{deficient} of {total} products g^m h^n miss a coordinate"),
        deficient == total,
    );
    report.check(
        format!("{located} of {total} products miss the coordinate indexed by (m, n)"),
        located == total,
    );
    report.check("supp({g, h}) is everything", support_of_set(&inst.letters) == all);
    Ok(report)
}

/// Vertex layout of the dimension example: copy one of `Λ` first (`y`, then
/// `x{i}_{j}` branch by branch), then the doubles `d_y`, `d_x{i}_{j}`.
struct StarLayout {
    s: usize,
    t: usize,
}

impl StarLayout {
    fn lambda_size(&self) -> usize {
        1 + self.s * self.t
    }

    fn x(&self, i: usize, j: usize) -> usize {
        1 + (i - 1) * self.t + (j - 1)
    }

    #[allow(clippy::needless_range_loop)]
    fn graph(&self) -> Result<Graph> {
        let n = self.lambda_size();
        let mut names = vec!["y".to_string()];
        for i in 1..=self.s {
            for j in 1..=self.t {
                names.push(format!("x{i}_{j}"));
            }
        }
        let doubles: Vec<String> = names.iter().map(|v| format!("d_{v}")).collect();
        names.extend(doubles);
        // the opposite graph of Λ is the star tree
        let mut tree = vec![vec![false; n]; n];
        let mut link = |a: usize, b: usize| {
            tree[a][b] = true;
            tree[b][a] = true;
        };
        for i in 1..=self.s {
            link(0, self.x(i, 1));
            for j in 1..self.t {
                link(self.x(i, j), self.x(i, j + 1));
            }
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !tree[a][b] {
                    edges.push((a, b));
                }
            }
            for w in 0..n {
                if w != a {
                    edges.push((n + a, w));
                }
            }
        }
        Graph::new(names, edges)
    }
}

/// The right-angled Artin group and elements `g, h` showing that the length
/// of a shortest strongly irreducible product must grow with `dim(Γ)`.
pub fn build_sharpness_example(n: u64) -> Result<SharpnessInstance> {
    if !(1..=2).contains(&n) {
        let s = (n + 1) * (2 * n + 1) - 1;
        let t = 2 * n * n + 1;
        return Err(Error::Unsupported(format!(
            "sharpness example is supported for N ∈ {{1, 2}}; N = {n} needs {} vertices and a ball of {} words",
            2 * (1 + s * t),
            5u128.saturating_pow(n as u32)
        )));
    }
    let ni = n as i64;
    let layout = StarLayout {
        s: ((n + 1) * (2 * n + 1) - 1) as usize,
        t: (2 * n * n + 1) as usize,
    };
    let context = GroupContext::uniform(layout.graph()?, VertexGroup::Infinite)?;
    let pairs = nonzero_pairs(0..=ni, ni);
    debug_assert_eq!(pairs.len(), layout.s);
    let u: Vec<GroupElement> = (1..=layout.s)
        .map(|i| {
            let raw: Vec<Syllable> = (1..=layout.t)
                .rev()
                .map(|j| Syllable::new(VertexId::new(layout.x(i, j)), 1))
                .collect();
            GroupElement::from_syllables(&context, &raw)
        })
        .collect();
    let product = |exps: &dyn Fn(usize) -> i64| -> GroupElement {
        u.iter()
            .enumerate()
            .fold(GroupElement::identity(&context), |acc, (i, ui)| {
                acc.mul_unchecked(&ui.power(exps(i)))
            })
    };
    let y = GroupElement::vertex_power(&context, VertexId::new(0), 1);
    let alpha = product(&|i| pairs[i].0).mul_unchecked(&y);
    let beta = product(&|i| pairs[i].1);
    // g = P^(-N²) α P^(N²) with P = u_1 ⋯ u_s
    let g = alpha.conjugate_by(&product(&|_| 1).power(ni * ni));
    Ok(SharpnessInstance {
        context,
        letters: vec![g, beta],
        parameter: n,
        details: vec![("N", ni), ("s", layout.s as i64), ("t", layout.t as i64)],
    })
}

/// The first copy of `Λ` inside the doubled graph.
fn lambda_vertices(inst: &SharpnessInstance) -> VertexSet {
    let n = inst.context.graph().vertex_count() / 2;
    (0..n).map(VertexId::new).collect()
}

pub fn verify_sharpness(n: u64) -> Result<VerificationReport> {
    let inst = build_sharpness_example(n)?;
    let mut report = VerificationReport::new("sharpness", n);
    let lambda = lambda_vertices(&inst);
    report.check("supp({g, h}) is the copy of Λ", support_of_set(&inst.letters) == lambda);
    let ball = symmetrize(&inst.letters);
    let mut si = 0;
    let mut size = 0;
    for_each_level(&ball, n as usize, usize::MAX, |k, level| {
        if k == n as usize {
            size = level.len();
            si = level.iter().filter(|g| classify(g).strongly_irreducible).count();
        }
    })?;
    report.check(
        format!("{{1, g, h, g⁻¹, h⁻¹}}^{n}: {size} elements, none strongly irreducible"),
        si == 0,
    );
    match find_short(&inst.letters, Target::StronglyIrreducible)? {
        ShortSearch::Found(cert) => {
            let ok = cert.classification.strongly_irreducible && cert.replay(&inst.letters) == cert.element;
            report.check(
                format!(
                    "find_short returns a strongly irreducible element of {{g, h}}^{}",
                    cert.n()
                ),
                ok,
            );
        }
        ShortSearch::Infeasible(f) => {
            report.check(format!("find_short reports infeasible ({:?})", f.reason), false);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::context;

    fn el(ctx: &Arc<GroupContext>, w: &str) -> GroupElement {
        GroupElement::parse(ctx, w).unwrap()
    }

    #[test]
    fn free_ball() {
        let free = context(&["a", "b"], &[], VertexGroup::Infinite);
        let r = ball_sizes(&[el(&free, "a"), el(&free, "b")], 6, DEFAULT_MAX_STATES).unwrap();
        let expect: Vec<usize> = (1..=6u32).map(|n| 2 * 3usize.pow(n) - 1).collect();
        assert_eq!(r.sizes, expect);
        assert!(r.ball && !r.truncated);
        assert!((r.fekete_upper[0] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn abelian_ball() {
        let z2 = context(&["a", "b"], &[("a", "b")], VertexGroup::Infinite);
        let r = ball_sizes(&[el(&z2, "a"), el(&z2, "b")], 6, DEFAULT_MAX_STATES).unwrap();
        let expect: Vec<usize> = (1..=6).map(|n| 2 * n * n + 2 * n + 1).collect();
        assert_eq!(r.sizes, expect);
    }

    #[test]
    fn hexagon_letters() {
        let inst = build_bipartite_example(3).unwrap();
        let r = product_set_sizes(&inst.letters, 1, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(r.sizes, vec![6]);
    }

    #[test]
    fn inequality_examples() {
        let free = context(&["a", "b"], &[], VertexGroup::Infinite);
        let u = symmetrize(&[el(&free, "a"), el(&free, "b")]);
        let r = growth_inequality_check(&u, 0.2, 1.0, 6, DEFAULT_MAX_STATES).unwrap();
        assert!(r.inequality.unwrap().1.iter().all(|&b| b));
        let trivial = [GroupElement::identity(&free)];
        let r = growth_inequality_check(&trivial, 2.0, 1.0, 3, DEFAULT_MAX_STATES).unwrap();
        assert!(r.inequality.unwrap().1.iter().all(|&b| !b));
        let z = context(&["a"], &[], VertexGroup::Infinite);
        let u = symmetrize(&[el(&z, "a")]);
        let r = growth_inequality_check(&u, 1.0, 1.0, 3, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(r.inequality.unwrap().1, vec![true, false, false]);
    }

    #[test]
    fn truncation_is_reported() {
        let free = context(&["a", "b"], &[], VertexGroup::Infinite);
        let r = ball_sizes(&[el(&free, "a"), el(&free, "b")], 6, 100).unwrap();
        assert!(r.truncated);
        assert_eq!(r.sizes, vec![5, 17, 53]);
    }

    #[test]
    fn bipartite_small() {
        for m in 2..=3 {
            let r = verify_bipartite(m).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_bipartite(1).is_err());
    }

    #[test]
    fn abelian_n1() {
        let inst = build_abelian_example(1).unwrap();
        assert_eq!(inst.context.graph().vertex_count(), 8);
        let r = verify_abelian(1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sharpness_layout() {
        let inst = build_sharpness_example(1).unwrap();
        let graph = inst.context.graph();
        assert_eq!(graph.vertex_count(), 32);
        let lambda = lambda_vertices(&inst);
        assert!(!graph.is_join(&lambda));
        assert!(graph.perp(&lambda).is_empty());
        // the opposite graph of Λ is a tree: connected with |Λ| - 1 edges
        let opp = graph.induced(&lambda).opposite();
        assert_eq!(opp.edges().count(), 15);
        assert!(opp.girth().is_none());
        assert!(build_sharpness_example(3).is_err());
    }
}
