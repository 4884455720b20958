//! Seeded random search for violating subset tuples. A miss proves nothing.

use num_bigint::BigUint;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::weights::TransversalWeights;
use super::{validate_eps, CheckBudget};
use crate::error::Result;
use crate::level::{ratio, Level};
use crate::model::{
    BipartiteGraph, Notion, PatternPair, RegularityVerdict, Status, TupleView, Witness,
};

#[derive(Clone, Debug)]
pub enum ProbeTarget<'a> {
    Bipartite(&'a BipartiteGraph),
    Hf {
        view: TupleView<'a>,
        pattern: &'a PatternPair,
    },
}

/// Sample `i` draws from its own stream of the seeded generator, so the transcript is
/// independent of the worker count.
fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// A uniformly sized, then uniformly drawn, subset of `0..n` with at least `min` elements.
fn draw(rng: &mut ChaCha8Rng, n: usize, min: usize) -> Vec<usize> {
    let size = rng.gen_range(min..=n);
    let mut s = index::sample(rng, n, size).into_vec();
    s.sort_unstable();
    s
}

pub fn sampled_irregularity_probe(
    target: ProbeTarget<'_>,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    validate_eps(eps)?;
    match target {
        ProbeTarget::Bipartite(g0) => Ok(probe_bipartite(g0, eps, budget)),
        ProbeTarget::Hf { view, pattern } => {
            let w = TransversalWeights::new(&view, pattern)?;
            Ok(probe_hf(&view, &w, eps, budget))
        }
    }
}

fn probe_bipartite(g0: &BipartiteGraph, eps: &Level, budget: &CheckBudget) -> RegularityVerdict {
    let (n1, n2) = (g0.left_size(), g0.right_size());
    let t1 = eps.min_count(n1).max(1);
    let t2 = eps.min_count(n2).max(1);
    let nn = (n1 * n2) as u128;
    let total_edges = g0.edge_count() as u128;
    let graph = g0.graph();
    let found = (0..budget.sample_count)
        .into_par_iter()
        .find_map_first(|i| {
            let mut rng = sample_rng(budget.seed, i);
            let s1 = draw(&mut rng, n1, t1);
            let s2: Vec<usize> = draw(&mut rng, n2, t2).into_iter().map(|v| v + n1).collect();
            let e = s1
                .iter()
                .map(|&u| s2.iter().filter(|&&v| graph.has_edge(u, v)).count() as u128)
                .sum::<u128>();
            let ss = (s1.len() * s2.len()) as u128;
            let dev = (e * nn).abs_diff(total_edges * ss);
            eps.exceeded_by(dev, ss * nn).then_some((i, s1, s2, e))
        });
    match found {
        None => RegularityVerdict::new(Notion::Bipartite, eps.clone(), Status::NoWitnessFound)
            .with_enumerated(budget.sample_count),
        Some((i, s1, s2, e)) => {
            let observed = ratio(e as u64, (s1.len() * s2.len()) as u64);
            let mut w = Witness::new(vec![s1, s2], g0.density(), observed);
            w.sample = Some(i);
            RegularityVerdict::new(Notion::Bipartite, eps.clone(), Status::Irregular)
                .with_witness(w)
                .with_enumerated(i + 1)
        }
    }
}

fn probe_hf(
    view: &TupleView<'_>,
    w: &TransversalWeights,
    eps: &Level,
    budget: &CheckBudget,
) -> RegularityVerdict {
    let (nh, nf) = w.totals();
    if nf == 0 {
        return RegularityVerdict::new(Notion::Hf, eps.clone(), Status::Undefined);
    }
    let found = (0..budget.sample_count)
        .into_par_iter()
        .find_map_first(|i| {
            let mut rng = sample_rng(budget.seed, i);
            let local: Vec<Vec<usize>> = w.sizes.iter().map(|&s| draw(&mut rng, s, 1)).collect();
            let refs: Vec<&[usize]> = local.iter().map(Vec::as_slice).collect();
            let (h, f) = w.sum(&refs);
            if f == 0 || !eps.reached_by(f, nf) {
                return None;
            }
            let dev = (h * nf).abs_diff(nh * f);
            eps.exceeded_by(dev, f * nf).then_some((i, local, h, f))
        });
    match found {
        None => RegularityVerdict::new(Notion::Hf, eps.clone(), Status::NoWitnessFound)
            .with_enumerated(budget.sample_count),
        Some((i, local, h, f)) => {
            let subsets = local
                .iter()
                .enumerate()
                .map(|(s, l)| l.iter().map(|&j| view.slots()[s][j]).collect())
                .collect();
            let mut wit = Witness::new(
                subsets,
                ratio(BigUint::from(nh), BigUint::from(nf)),
                ratio(BigUint::from(h), BigUint::from(f)),
            );
            wit.support = Some((BigUint::from(f), BigUint::from(nf)));
            wit.sample = Some(i);
            RegularityVerdict::new(Notion::Hf, eps.clone(), Status::Irregular)
                .with_witness(wit)
                .with_enumerated(i + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;
    use crate::regularity::check_bipartite_regular;

    fn half_graph(m: usize) -> BipartiteGraph {
        BipartiteGraph::from_sides(m, m, (0..m).flat_map(|i| (i..m).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn complete_has_no_witness() {
        let g = BipartiteGraph::from_sides(5, 5, (0..5).flat_map(|i| (0..5).map(move |j| (i, j))))
            .unwrap();
        let v = check_bipartite_regular(&g, &ratio(1, 4).into(), &CheckBudget::sampled(500, 1))
            .unwrap();
        assert_eq!(v.status, Status::NoWitnessFound);
        assert!(!v.regular);
    }

    #[test]
    fn half_graph_witness_is_genuine_and_reproducible() {
        let g = half_graph(16);
        let eps: Level = ratio(1, 4).into();
        let budget = CheckBudget::sampled(10_000, 42);
        let v = check_bipartite_regular(&g, &eps, &budget).unwrap();
        assert!(v.is_irregular());
        let w = v.witness.clone().unwrap();
        let e = g.edges_between(&w.subsets[0], &w.subsets[1]);
        let observed = ratio(e as u64, (w.subsets[0].len() * w.subsets[1].len()) as u64);
        assert_eq!(observed, w.observed);
        assert_eq!(eps.cmp_rational(&w.deviation), std::cmp::Ordering::Less);
        assert!(w.subsets[0].len() >= 4 && w.subsets[1].len() >= 4);
        assert_eq!(check_bipartite_regular(&g, &eps, &budget).unwrap(), v);
    }
}
