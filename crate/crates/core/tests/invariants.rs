mod common;

use common::*;
use gpw_core::bass_serre::{translation_length, tree_action};
use gpw_core::growth::{ball_sizes, product_set_sizes};
use gpw_core::search::{combine_pair, find_short, full_support_element, Target};
use gpw_core::support::{classify, irreducible_components, projection, stable_support, support};
use gpw_core::{GroupElement, ShortSearch, TreeAction};
use rand::Rng;

#[test]
fn group_axioms_hold_on_random_elements() {
    let mut rng = rng(21);
    for _ in 0..200 {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let [a, b, c] = [0; 3].map(|_| random_element(&mut rng, &ctx, 5));
        let one = GroupElement::identity(&ctx);
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        assert!(a.multiply(&a.invert()).unwrap().is_identity());
        assert_eq!(a.multiply(&one).unwrap(), a);
        assert_eq!(a.power(-3), a.invert().power(3));
    }
}

#[test]
fn supports_behave_under_conjugation_and_powers() {
    let mut rng = rng(22);
    for _ in 0..200 {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let g = random_element(&mut rng, &ctx, 5);
        let x = random_element(&mut rng, &ctx, 4);
        let s = support(&g);
        assert_eq!(support(&g.conjugate_by(&x)), s);
        assert_eq!(stable_support(&g.conjugate_by(&x)), stable_support(&g));
        assert!(stable_support(&g).is_subset(&s));
        for n in 1..=4 {
            assert!(stable_support(&g).is_subset(&support(&g.power(n))));
        }
        // projections to finite cone vertices are the only thing powers can kill
        let report = classify(&g);
        for v in report.cone.iter() {
            let p = projection(&g, v).unwrap();
            assert!(p.is_some());
        }
    }
}

#[test]
fn components_multiply_back_and_commute() {
    let mut rng = rng(23);
    for _ in 0..200 {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let g = random_element(&mut rng, &ctx, 6);
        let comps = irreducible_components(&g);
        let product = comps
            .iter()
            .fold(GroupElement::identity(&ctx), |acc, c| acc.multiply(c).unwrap());
        assert_eq!(product, g);
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                assert_eq!(a.multiply(b).unwrap(), b.multiply(a).unwrap());
            }
        }
    }
}

#[test]
fn loxodromic_components_are_unique_per_vertex() {
    let mut rng = rng(24);
    for _ in 0..150 {
        let graph = random_graph_with_dim(&mut rng, 2, 6, 6);
        let ctx = random_context(&mut rng, graph, &TORSION_FREE);
        let g = random_element(&mut rng, &ctx, 6);
        let comps = irreducible_components(&g);
        for v in ctx.graph().vertices() {
            let lox: Vec<_> = comps.iter().filter(|c| tree_action(c, v).is_loxodromic()).collect();
            assert!(lox.len() <= 1);
            if let [c] = lox[..] {
                assert_eq!(translation_length(c, v), translation_length(&g, v));
            } else {
                assert!(!tree_action(&g, v).is_loxodromic());
            }
            if let TreeAction::Loxodromic { tau } = tree_action(&g, v) {
                assert!(tau > 0 && tau % 2 == 0);
            }
        }
    }
}

#[test]
fn search_certificates_replay() {
    let mut rng = rng(25);
    for _ in 0..120 {
        let graph = random_graph_with_dim(&mut rng, 2, 5, 3);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let size = rng.gen_range(1..=3);
        let letters: Vec<_> = (0..size).map(|_| random_element(&mut rng, &ctx, 4)).collect();
        let cert = full_support_element(&letters).unwrap();
        assert_eq!(cert.replay(&letters), cert.element);
        assert!(cert.n() as u128 <= cert.bound);
        for target in [Target::Regular, Target::StronglyIrreducible] {
            if let ShortSearch::Found(c) = find_short(&letters, target).unwrap() {
                let report = classify(&c.replay(&letters));
                assert!(match target {
                    Target::Regular => report.regular,
                    Target::StronglyIrreducible => report.strongly_irreducible,
                });
            }
        }
        if size >= 2 {
            let (m, n, p) = combine_pair(&letters[0], &letters[1]).unwrap();
            assert_eq!(
                p,
                letters[0]
                    .power(m as i64)
                    .multiply(&letters[1].power(n as i64))
                    .unwrap()
            );
        }
    }
}

#[test]
fn product_sets_grow_monotonically() {
    let mut rng = rng(26);
    for _ in 0..40 {
        let graph = random_graph_with_dim(&mut rng, 2, 5, 5);
        let ctx = random_context(&mut rng, graph, &MIXED);
        let size = rng.gen_range(1..=3);
        let letters: Vec<_> = (0..size).map(|_| nonidentity_element(&mut rng, &ctx, 3)).collect();
        let report = product_set_sizes(&letters, 4, 100_000).unwrap();
        for w in report.sizes.windows(2) {
            assert!(w[1] >= w[0]);
        }
        let ball = ball_sizes(&letters, 3, 100_000).unwrap();
        for w in ball.sizes.windows(2) {
            assert!(w[1] >= w[0]);
        }
        for (i, f) in ball.fekete_upper.iter().enumerate() {
            assert!((f.powi(i as i32 + 1) - ball.sizes[i] as f64).abs() < 1e-6 * ball.sizes[i] as f64);
        }
    }
}
