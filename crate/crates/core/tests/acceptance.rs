//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use gpw_core::bass_serre::{exceptional_exponents, translation_length};
use gpw_core::growth::{ball_sizes, verify_abelian, verify_bipartite, verify_sharpness, DEFAULT_MAX_STATES};
use gpw_core::oracles;
use gpw_core::search::{
    combine_pair, exponent_sum_search, full_support_element, simultaneous_cap, simultaneous_loxodromic,
};
use gpw_core::support::{acon_support_of_set, has_order_two_component, stable_support, support};
use gpw_core::{Error, GroupElement, Result, VertexGroup, VertexId, VertexSet};
use rand::seq::IteratorRandom;
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn run(id: &str, title: &str, criterion: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let outcome = criterion().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    println!(
        "[acceptance] {id} {title}: {} ({}; {:.1}s)",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.detail,
        start.elapsed().as_secs_f64()
    );
    outcome.passed
}

fn bipartite() -> Result<Outcome> {
    let mut failed = Vec::new();
    for m in 2..=4 {
        let report = verify_bipartite(m)?;
        if !report.passed() {
            failed.push(m);
        }
    }
    Ok(Outcome::new(
        failed.is_empty(),
        format!("m = 2..4, failing m: {failed:?}"),
    ))
}

fn abelian() -> Result<Outcome> {
    let mut failed = Vec::new();
    for n in 1..=2 {
        if !verify_abelian(n)?.passed() {
            failed.push(n);
        }
    }
    Ok(Outcome::new(
        failed.is_empty(),
        format!("N = 1, 2, failing N: {failed:?}"),
    ))
}

fn sharpness() -> Result<Outcome> {
    let report = verify_sharpness(1)?;
    let detail = report
        .checks
        .iter()
        .map(|c| format!("{}{}", if c.passed { "" } else { "NOT " }, c.description))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(Outcome::new(report.passed(), detail))
}

fn combine_bound() -> Result<Outcome> {
    let mut rng = rng(0xC4);
    let (mut caps, mut other, mut worst) = (0, 0, 0u64);
    let samples = 500;
    for _ in 0..samples {
        let graph = random_graph_with_dim(&mut rng, 3, 7, 3);
        let ctx = random_context(&mut rng, graph, &TORSION_FREE);
        let g = nonidentity_element(&mut rng, &ctx, 5);
        let h = nonidentity_element(&mut rng, &ctx, 5);
        let cap = 6 * ctx.dim().max(1) as u64 + 5;
        match combine_pair(&g, &h) {
            Ok((m, n, _)) if m <= cap && n <= cap => worst = worst.max(m.max(n)),
            Ok(_) => other += 1,
            Err(Error::CapExceeded { .. }) => caps += 1,
            Err(_) => other += 1,
        }
    }
    Ok(Outcome::new(
        caps == 0 && other == 0,
        format!("{samples} pairs, {caps} cap events, {other} other failures, largest exponent {worst}"),
    ))
}

fn full_support_bound() -> Result<Outcome> {
    let mut rng = rng(0xC5);
    let mut histogram = BTreeMap::new();
    let mut bad = 0;
    let samples = 200;
    for _ in 0..samples {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let size = rng.gen_range(1..=3);
        let letters: Vec<GroupElement> = (0..size).map(|_| random_element(&mut rng, &ctx, 5)).collect();
        let cert = full_support_element(&letters)?;
        let target = acon_support_of_set(&letters);
        let stsupp = oracles::brute_stable_support(&ctx, cert.element.syllables(), finite_lcm(&ctx).max(2));
        let replayed = cert.replay(&letters) == cert.element;
        if !target.is_subset(&stsupp) || cert.n() as u128 > cert.bound || !replayed {
            bad += 1;
        }
        *histogram.entry(cert.n()).or_insert(0) += 1;
    }
    let hist = histogram
        .iter()
        .map(|(n, c)| format!("{n}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Outcome::new(
        bad == 0,
        format!("{samples} sets, {bad} violations, n histogram [{hist}]"),
    ))
}

fn exponent_sum_bound() -> Result<Outcome> {
    let mut rng = rng(0xC6);
    let mut bad = 0;
    let mut largest_m = 0;
    let samples = 200;
    for _ in 0..samples {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &TORSION_FREE);
        let size = rng.gen_range(1..=3);
        let letters: Vec<GroupElement> = (0..size).map(|_| random_element(&mut rng, &ctx, 5)).collect();
        let gamma: VertexSet = ctx
            .graph()
            .vertices()
            .filter(|&v| {
                letters.iter().any(|u| {
                    u.syllables()
                        .iter()
                        .filter(|s| s.vertex == v)
                        .map(|s| s.exp)
                        .sum::<i64>()
                        != 0
                })
            })
            .collect();
        let m = gamma.len();
        largest_m = largest_m.max(m);
        let cert = exponent_sum_search(&letters)?;
        let supp = oracles::brute_support(&ctx, cert.element.syllables());
        if !gamma.is_subset(&supp) || cert.n() > (m + 1) * (m + 2) / 2 {
            bad += 1;
        }
    }
    Ok(Outcome::new(
        bad == 0,
        format!("{samples} letter sets, {bad} violations, largest |Γ_U| = {largest_m}"),
    ))
}

fn simultaneous_bound() -> Result<Outcome> {
    let mut rng = rng(0xC7);
    let mut bad = 0;
    let mut counts = [0usize; 3];
    let mut attempts = 0;
    while counts[1] + counts[2] < 300 && attempts < 10_000 {
        attempts += 1;
        let k = if counts[1] < 150 { 1 } else { 2 };
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let g = random_element(&mut rng, &ctx, 5);
        let h = random_element(&mut rng, &ctx, 5);
        let graph = ctx.graph();
        let lox = graph.acon(&support(&g)).union(&graph.acon(&support(&h)));
        if lox.len() < k {
            continue;
        }
        let vertices: VertexSet = lox.iter().choose_multiple(&mut rng, k).into_iter().collect();
        counts[k] += 1;
        let cap = simultaneous_cap(k);
        match simultaneous_loxodromic(&g, &h, &vertices) {
            Ok((m, n, p)) => {
                let ok = m <= cap && n <= cap && vertices.is_subset(&graph.acon(&support(&p)));
                bad += usize::from(!ok);
            }
            Err(_) => bad += 1,
        }
    }
    Ok(Outcome::new(
        bad == 0 && counts[1] + counts[2] >= 300,
        format!(
            "{} pairs with k = 1, {} with k = 2, {bad} failures",
            counts[1], counts[2]
        ),
    ))
}

fn normal_form_oracle() -> Result<Outcome> {
    let mut rng = rng(0xC8);
    let (mut disagree, mut equal) = (0, 0);
    let samples = 500;
    for i in 0..samples {
        let graph = random_graph_with_dim(&mut rng, 2, 5, 5);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let w1 = raw_word(&mut rng, &ctx, 6);
        let w2 = if i % 2 == 0 {
            scramble(&mut rng, &ctx, &w1, 1)
        } else {
            raw_word(&mut rng, &ctx, 8)
        };
        let fast = GroupElement::from_syllables(&ctx, &w1).equal(&GroupElement::from_syllables(&ctx, &w2))?;
        let slow = oracles::shuffle_equal(&ctx, &w1, &w2, 2_000_000)?;
        disagree += usize::from(fast != slow);
        equal += usize::from(slow);
    }
    Ok(Outcome::new(
        disagree == 0,
        format!("{samples} pairs ({equal} equal), {disagree} disagreements"),
    ))
}

fn stable_support_oracle() -> Result<Outcome> {
    let mut rng = rng(0xC9);
    let mut disagree = 0;
    let samples = 300;
    for _ in 0..samples {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &ORDERS_UP_TO_SIX);
        let g = random_element(&mut rng, &ctx, 6);
        let brute = oracles::brute_stable_support(&ctx, g.syllables(), finite_lcm(&ctx).max(2));
        disagree += usize::from(stable_support(&g) != brute);
    }
    Ok(Outcome::new(
        disagree == 0,
        format!("{samples} elements, {disagree} disagreements"),
    ))
}

fn growth_closed_forms() -> Result<Outcome> {
    let free = gpw_core::fixtures::context(&["a", "b"], &[], VertexGroup::Infinite);
    let z2 = gpw_core::fixtures::context(&["a", "b"], &[("a", "b")], VertexGroup::Infinite);
    let gens = |ctx| -> Vec<GroupElement> {
        (0..2)
            .map(|i| GroupElement::vertex_power(ctx, VertexId::new(i), 1))
            .collect()
    };
    let f2 = ball_sizes(&gens(&free), 8, DEFAULT_MAX_STATES)?.sizes;
    let zz = ball_sizes(&gens(&z2), 8, DEFAULT_MAX_STATES)?.sizes;
    let f2_ok = f2
        .iter()
        .enumerate()
        .all(|(i, &s)| s == 2 * 3usize.pow(i as u32 + 1) - 1);
    let zz_ok = zz.iter().enumerate().all(|(i, &s)| {
        let n = i + 1;
        s == 2 * n * n + 2 * n + 1
    });
    Ok(Outcome::new(
        f2_ok && zz_ok && f2.len() == 8 && zz.len() == 8,
        format!("F2 {f2:?}, Z2 {zz:?}"),
    ))
}

fn translation_homogeneity() -> Result<Outcome> {
    let mut rng = rng(0xCB);
    let mut bad = 0;
    let mut samples = 0;
    while samples < 300 {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let g = random_element(&mut rng, &ctx, 6);
        let Some(v) = ctx.graph().acon(&support(&g)).iter().choose(&mut rng) else {
            continue;
        };
        samples += 1;
        let tau = translation_length(&g, v);
        let core = oracles::cyclic_core(&ctx, g.syllables());
        let independent = 2 * core.iter().filter(|s| s.vertex == v).count() as u64;
        let x = random_element(&mut rng, &ctx, 5);
        let homogeneous = (1..=6).all(|n| translation_length(&g.power(n), v) == n as u64 * tau);
        let invariant = translation_length(&g.conjugate_by(&x), v) == tau;
        if tau == 0 || tau != independent || !homogeneous || !invariant {
            bad += 1;
        }
    }
    Ok(Outcome::new(
        bad == 0,
        format!("{samples} loxodromic samples, {bad} violations"),
    ))
}

fn exceptional_structure() -> Result<Outcome> {
    let mut rng = rng(0xCC);
    let (mut samples, mut uncovered, mut with_failures, mut total_failures) = (0, 0, 0, 0);
    while samples < 60 {
        let graph = random_graph_with_dim(&mut rng, 2, 5, 3);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let g = nonidentity_element(&mut rng, &ctx, 4);
        let h = match rng.gen_range(0..3) {
            0 => g.invert(),
            1 => g.invert().conjugate_by(&random_element(&mut rng, &ctx, 2)),
            _ => nonidentity_element(&mut rng, &ctx, 4),
        };
        if has_order_two_component(&g) || has_order_two_component(&h) {
            continue;
        }
        samples += 1;
        let d = ctx.dim().max(1) as u64;
        let report = exceptional_exponents(&g, &h, 4 * d + 5..=4 * d + 25);
        if !report.failures.is_empty() {
            with_failures += 1;
            total_failures += report.failures.len();
        }
        uncovered += usize::from(report.cover.is_none());
    }
    Ok(Outcome::new(
        uncovered == 0,
        format!(
            "{samples} pairs, {with_failures} with exceptional pairs ({total_failures} total), {uncovered} not coverable"
        ),
    ))
}

fn main() {
    let results = [
        run("C1", "bipartite example, m = 2..4", bipartite),
        run("C2", "abelian example, N = 1, 2", abelian),
        run("C3", "dimension sharpness example, N = 1", sharpness),
        run("C4", "combine_pair within 6d+5 (torsion-free, dim ≤ 3)", combine_bound),
        run(
            "C5",
            "full_support_element covers acon(supp U) within bound",
            full_support_bound,
        ),
        run("C6", "exponent_sum_search within (m+1)(m+2)/2", exponent_sum_bound),
        run(
            "C7",
            "simultaneous_loxodromic within (2k)^k(2k+1), k ≤ 2",
            simultaneous_bound,
        ),
        run("C8", "normal form equality vs shuffle oracle", normal_form_oracle),
        run("C9", "stable support vs intersection of powers", stable_support_oracle),
        run("C10", "ball sizes of F2 and Z2, n ≤ 8", growth_closed_forms),
        run(
            "C11",
            "translation length homogeneity and conjugation invariance",
            translation_homogeneity,
        ),
        run(
            "C12",
            "exceptional exponents covered by ≤ d lines of each kind",
            exceptional_structure,
        ),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!(
        "[acceptance] {} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
