mod common;

use std::collections::VecDeque;

use common::{collapsed_chi, random_gog, rng, trivial_rep};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tdlc_core::euler::chi_from_resolution;
use tdlc_core::graphs_of_groups::{build, tree_degree, GraphOfFiniteGroups, PiWord, Representation};
use tdlc_core::group::FiniteGroup;
use tdlc_core::ratlin::rat;
use tdlc_core::RationalMatrix;

#[test]
fn euler_characteristic_is_non_positive_for_infinite_fundamental_groups() {
    let mut r = rng(21);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "could not generate enough non-compact instances");
        let g = random_gog(&mut r, 4);
        assert!(g.unimodularity_check());
        let chi = g.euler_characteristic().unwrap();
        let (collapsed, compact) = collapsed_chi(&g);
        assert_eq!(chi.coeff, collapsed);
        if compact {
            assert!(chi.coeff.is_positive());
            continue;
        }
        assert!(!chi.coeff.is_positive(), "χ = {} on a non-compact instance", chi.coeff);
        checked += 1;
    }
}

#[test]
fn resolution_route_matches_the_closed_form() {
    let mut r = rng(22);
    for _ in 0..10 {
        let g = random_gog(&mut r, 5);
        let via_resolution = chi_from_resolution(&g.bass_serre_resolution()).unwrap();
        assert_eq!(via_resolution, g.euler_characteristic().unwrap());
    }
}

#[test]
fn bass_serre_balls_are_trees_with_the_expected_valencies() {
    let mut r = rng(23);
    for _ in 0..60 {
        let g = random_gog(&mut r, 3);
        let pi = g.fundamental_group(0);
        let Ok(ball) = pi.bass_serre_ball_capped(2, 20_000) else { continue };
        assert!(ball.graph.invariants().is_tree);
        for v in 0..ball.graph.num_vertices() {
            if ball.depth[v] < 2 {
                assert_eq!(ball.graph.degree(v), tree_degree(&g, ball.vertex[v]));
            }
        }
    }
}

#[test]
fn trivial_coefficients_see_the_cycle_rank() {
    let mut r = rng(24);
    for _ in 0..20 {
        let g = random_gog(&mut r, 5);
        let (h0, h1) = g.tree_action_cohomology(&trivial_rep(&g)).unwrap();
        assert_eq!((h0, h1), (1, g.graph().invariants().h1_dim));
    }
}

/// A random closed path word at vertex 0: a random walk followed by the
/// tree path home.
fn random_loop(r: &mut ChaCha8Rng, g: &GraphOfFiniteGroups) -> PiWord {
    let graph = g.graph();
    let mut at = 0;
    let mut steps = Vec::new();
    for _ in 0..r.gen_range(0..8) {
        let out = graph.out_edges(at);
        if out.is_empty() {
            break;
        }
        let e = out[r.gen_range(0..out.len())];
        steps.push((r.gen_range(0..g.vertex_group(at).order()), e));
        at = graph.terminus(e);
    }
    // Walk home along a breadth-first tree rooted at 0.
    let mut parent_edge = vec![None; graph.num_vertices()];
    let mut seen = vec![false; graph.num_vertices()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for e in graph.out_edges(v) {
            let w = graph.terminus(e);
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = Some(graph.bar(e));
                queue.push_back(w);
            }
        }
    }
    while at != 0 {
        let e = parent_edge[at].unwrap();
        steps.push((r.gen_range(0..g.vertex_group(at).order()), e));
        at = graph.terminus(e);
    }
    PiWord { start: 0, steps, tail: r.gen_range(0..g.vertex_group(0).order()) }
}

#[test]
fn words_times_inverses_are_trivial() {
    let mut r = rng(25);
    let mut gogs: Vec<GraphOfFiniteGroups> = (0..20).map(|_| random_gog(&mut r, 4)).collect();
    gogs.push(build(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)], vec![(0, 1, FiniteGroup::cyclic(1), vec![], vec![])]).unwrap());
    for i in 0..10_000 {
        let g = &gogs[i % gogs.len()];
        let pi = g.fundamental_group(0);
        let w = random_loop(&mut r, g);
        let inv = pi.inverse(&w).unwrap();
        assert!(pi.is_identity(&pi.mul(&w, &inv).unwrap()).unwrap());
        assert!(pi.is_identity(&pi.mul(&inv, &w).unwrap()).unwrap());
        let n = pi.normalize(&w).unwrap();
        assert_eq!(pi.normalize(&n).unwrap(), n);
    }
}

/// Image of a word under a homomorphism to a finite group given on vertex
/// groups and edge letters; used to check that normal forms represent the
/// same element.
fn image(target: &FiniteGroup, vertex_maps: &[Vec<usize>], letters: &[usize], w: &PiWord, g: &GraphOfFiniteGroups) -> usize {
    let mut at = w.start;
    let mut acc = target.identity();
    for &(x, e) in &w.steps {
        acc = target.mul(acc, vertex_maps[at][x]);
        acc = target.mul(acc, letters[e]);
        at = g.graph().terminus(e);
    }
    target.mul(acc, vertex_maps[at][w.tail])
}

#[test]
fn normal_forms_preserve_images_in_finite_quotients() {
    let mut r = rng(26);
    // C2 * C3 onto S3.
    let psl = build(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)], vec![(0, 1, FiniteGroup::cyclic(1), vec![], vec![])]).unwrap();
    let s3 = FiniteGroup::symmetric(3);
    let (t, c) = (s3.generators()[0], s3.generators()[1]);
    let maps = vec![
        FiniteGroup::cyclic(2).extend_homomorphism(&s3, &[t]).unwrap(),
        FiniteGroup::cyclic(3).extend_homomorphism(&s3, &[c]).unwrap(),
    ];
    let letters = vec![s3.identity(); 2];
    // C4 with a loop amalgamating C2 = ⟨2⟩ on both sides, onto D4 with the
    // letter acting as a reflection.
    let hnn = build(vec![FiniteGroup::cyclic(4)], vec![(0, 0, FiniteGroup::cyclic(2), vec![2], vec![2])]).unwrap();
    let d4 = FiniteGroup::dihedral(4);
    let hnn_maps = vec![FiniteGroup::cyclic(4).extend_homomorphism(&d4, &[1]).unwrap()];
    let hnn_letters = vec![4, d4.inv(4)];
    for _ in 0..2_000 {
        for (g, target, vm, lt) in [(&psl, &s3, &maps, &letters), (&hnn, &d4, &hnn_maps, &hnn_letters)] {
            let pi = g.fundamental_group(0);
            let w = random_loop(&mut r, g);
            let n = pi.normalize(&w).unwrap();
            assert_eq!(image(target, vm, lt, &w, g), image(target, vm, lt, &n, g));
            let w2 = random_loop(&mut r, g);
            let prod = pi.mul(&w, &w2).unwrap();
            assert_eq!(
                image(target, vm, lt, &prod, g),
                target.mul(image(target, vm, lt, &w, g), image(target, vm, lt, &w2, g))
            );
        }
    }
}

#[test]
fn sign_representation_of_the_infinite_dihedral_group() {
    let g = build(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)], vec![(0, 1, FiniteGroup::cyclic(1), vec![], vec![])]).unwrap();
    let minus = RationalMatrix::from_rows(1, &[vec![rat(-1)]]).unwrap();
    let rep = Representation {
        dim: 1,
        vertex_generators: vec![vec![minus.clone()], vec![minus]],
        edge_letters: vec![RationalMatrix::identity(1)],
    };
    assert_eq!(g.tree_action_cohomology(&rep).unwrap(), (0, 1));
}
