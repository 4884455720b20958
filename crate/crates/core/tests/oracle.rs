//! Brute-force oracles written straight from the definitions, compared against the
//! library on small random instances.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hfreg::counting::{automorphism_count, count_copies, count_labeled, hf_coefficient};
use hfreg::harness::generate::{random_bipartite, random_kpartite};
use hfreg::harness::suites::random_pattern_pair;
use hfreg::level::{int, ratio, Level};
use hfreg::model::{BipartiteGraph, KPartiteGraph, Pattern, PatternPair};
use hfreg::regularity::{check_bipartite_regular, check_hf_regular, CheckBudget};
use hfreg::semiblowup::build_blowup;

fn transversals(g: &KPartiteGraph) -> Vec<Vec<usize>> {
    (0..g.k())
        .map(|i| g.class(i).collect::<Vec<_>>())
        .multi_cartesian_product()
        .collect()
}

/// Labeled copies: bijections pattern vertex -> transversal vertex preserving edges.
/// Unlabeled copies: distinct edge sets those bijections produce.
fn oracle_counts(p: &Pattern, g: &KPartiteGraph) -> (u128, u128) {
    let mut labeled = 0u128;
    let mut unlabeled = 0u128;
    for t in transversals(g) {
        let mut images = BTreeSet::new();
        for perm in (0..p.k()).permutations(p.k()) {
            let image: BTreeSet<(usize, usize)> = p
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (t[perm[a]], t[perm[b]]);
                    (x.min(y), x.max(y))
                })
                .collect();
            if image.iter().all(|&(x, y)| g.has_edge(x, y)) {
                labeled += 1;
                images.insert(image);
            }
        }
        unlabeled += images.len() as u128;
    }
    (labeled, unlabeled)
}

fn oracle_count_on(p: &Pattern, g: &KPartiteGraph, subsets: &[Vec<usize>]) -> u128 {
    oracle_counts(p, &g.induced_subgraph(subsets).unwrap()).1
}

fn nonempty_subsets(items: Vec<usize>) -> Vec<Vec<usize>> {
    (1..=items.len())
        .flat_map(|r| items.iter().copied().combinations(r))
        .collect()
}

/// Bipartite regularity straight from the definition, with rational arithmetic.
fn oracle_bipartite_regular(g0: &BipartiteGraph, eps: &BigRational) -> bool {
    let d = g0.density();
    let (n1, n2) = (g0.left_size(), g0.right_size());
    for s1 in nonempty_subsets(g0.left().collect()) {
        if int(s1.len() as u64) < eps * int(n1 as u64) {
            continue;
        }
        for s2 in nonempty_subsets(g0.right().collect()) {
            if int(s2.len() as u64) < eps * int(n2 as u64) {
                continue;
            }
            let e = g0.edges_between(&s1, &s2) as u64;
            let dd = ratio(e, (s1.len() * s2.len()) as u64) - &d;
            if dd.abs() > *eps {
                return false;
            }
        }
    }
    true
}

fn oracle_hf_regular(g: &KPartiteGraph, pp: &PatternPair, eps: &BigRational) -> Option<bool> {
    let nf = oracle_counts(pp.f(), g).1;
    if nf == 0 {
        return None;
    }
    let coeff = ratio(oracle_counts(pp.h(), g).1 as u64, nf as u64);
    let families: Vec<Vec<Vec<usize>>> = (0..g.k())
        .map(|i| nonempty_subsets(g.class(i).collect()))
        .collect();
    for u in families.iter().multi_cartesian_product() {
        let u: Vec<Vec<usize>> = u.into_iter().cloned().collect();
        let nf_u = oracle_count_on(pp.f(), g, &u);
        if int(nf_u as u64) < eps * int(nf as u64) || nf_u == 0 {
            continue;
        }
        let c = ratio(oracle_count_on(pp.h(), g, &u) as u64, nf_u as u64);
        if (c - &coeff).abs() > *eps {
            return Some(false);
        }
    }
    Some(true)
}

fn random_graph(rng: &mut ChaCha8Rng, k: usize, max_size: usize) -> KPartiteGraph {
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_size)).collect();
    let p = ratio(rng.gen_range(0..=4u64), 4);
    random_kpartite(&sizes, &p, rng.gen()).unwrap()
}

#[test]
fn copy_counts_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let k = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, k, if k == 4 { 2 } else { 3 });
        let pp = random_pattern_pair(&mut rng, k);
        for p in [pp.h(), pp.f()] {
            let (labeled, unlabeled) = oracle_counts(p, &g);
            let view = g.full_view();
            assert_eq!(count_labeled(p, &view).unwrap().value, labeled.into());
            assert_eq!(count_copies(p, &view).unwrap().value, unlabeled.into());
        }
    }
}

#[test]
fn clustering_coefficient_on_blowup_of_triangle() {
    let k3 = build_blowup(&Pattern::complete(3), &[2, 2, 2]).unwrap();
    let c = hf_coefficient(&PatternPair::clustering(), &k3).unwrap();
    // every transversal is a triangle containing three paths
    assert_eq!(c.value, ratio(1, 3));
}

#[test]
fn bipartite_checker_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let levels = [
        ratio(1, 1),
        ratio(1, 2),
        ratio(2, 5),
        ratio(1, 4),
        ratio(1, 10),
    ];
    for _ in 0..300 {
        let (n1, n2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let g0 = random_bipartite(n1, n2, &ratio(rng.gen_range(0..=4u64), 4), rng.gen()).unwrap();
        let eps = levels[rng.gen_range(0..levels.len())].clone();
        let v = check_bipartite_regular(&g0, &Level::rational(eps.clone()), &CheckBudget::exact())
            .unwrap();
        assert_eq!(
            v.is_regular(),
            oracle_bipartite_regular(&g0, &eps),
            "{g0:?} eps={eps}"
        );
    }
}

#[test]
fn hf_checker_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let levels = [ratio(1, 2), ratio(1, 4), ratio(1, 10)];
    for _ in 0..60 {
        let k = rng.gen_range(2..=3);
        let g = random_graph(&mut rng, k, if k == 2 { 3 } else { 2 });
        let pp = random_pattern_pair(&mut rng, k);
        let eps = levels[rng.gen_range(0..levels.len())].clone();
        let v = check_hf_regular(
            &g,
            &pp,
            &Level::rational(eps.clone()),
            &CheckBudget::exact(),
        )
        .unwrap();
        match oracle_hf_regular(&g, &pp, &eps) {
            None => assert!(!v.is_regular() && !v.is_irregular()),
            Some(r) => assert_eq!(v.is_regular(), r),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labeled_is_unlabeled_times_automorphisms(seed in any::<u64>(), k in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, k, 2);
        let pp = random_pattern_pair(&mut rng, k);
        for p in [pp.h(), pp.f()] {
            let view = g.full_view();
            let l = count_labeled(p, &view).unwrap().value;
            let u = count_copies(p, &view).unwrap().value;
            prop_assert_eq!(l, u * automorphism_count(p));
        }
    }

    #[test]
    fn automorphisms_match_permutation_oracle(seed in any::<u64>(), k in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pp = random_pattern_pair(&mut rng, k);
        let p = pp.h();
        let edges: BTreeSet<(usize, usize)> = p.edges().iter().copied().collect();
        let oracle = (0..k).permutations(k).filter(|perm| {
            let image: BTreeSet<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
                .collect();
            image == edges
        }).count() as u64;
        prop_assert_eq!(automorphism_count(p), oracle);
    }
}
