//! Partition-level regularity: irregular pair mass for bipartite graphs, exceptional
//! copy mass for (H,F).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::weights::TransversalWeights;
use super::{check_bipartite_regular, check_hf_regular_view, validate_eps, CheckBudget};
use crate::error::{Error, Result};
use crate::level::Level;
use crate::model::{
    BipartiteGraph, KPartiteGraph, MassReport, Notion, PatternPair, RegularityVerdict, Status,
    TupleView, VertexPartition, Witness,
};

fn covers_graph(p: &VertexPartition, n: usize) -> Result<()> {
    let ground = p.ground();
    if ground.len() != n || ground.iter().enumerate().any(|(i, &v)| i != v) {
        return Err(Error::InvalidPartition(format!(
            "partition must cover exactly the vertices 0..{n}"
        )));
    }
    Ok(())
}

/// Every cluster lies within one side.
pub fn is_side_pure(g0: &BipartiteGraph, q: &VertexPartition) -> bool {
    q.clusters().iter().all(|c| {
        c.iter().all(|&v| g0.left().contains(&v)) || c.iter().all(|&v| g0.right().contains(&v))
    })
}

/// Sub-verdict aggregation shared by both partition notions.
fn combine(
    notion: Notion,
    eps: &Level,
    verdicts: &[(u128, RegularityVerdict)],
    total: u128,
    witness: Option<Witness>,
) -> RegularityVerdict {
    let mut mass = 0u128;
    let mut irregular_groups = 0;
    let mut unsure = false;
    let mut enumerated = 0u64;
    for (weight, v) in verdicts {
        enumerated = enumerated.saturating_add(v.enumerated);
        match v.status {
            Status::Regular => {}
            Status::NoWitnessFound => unsure = true,
            Status::Irregular | Status::Undefined => {
                mass += weight;
                irregular_groups += 1;
            }
        }
    }
    let status = if eps.exceeded_by(mass, total) {
        Status::Irregular
    } else if unsure {
        Status::NoWitnessFound
    } else {
        Status::Regular
    };
    let report = MassReport {
        mass: BigUint::from(mass),
        total: BigUint::from(total),
        allowance: eps.floor_mul(&BigUint::from(total)),
        irregular_groups,
        groups: verdicts.len(),
    };
    let mut out = RegularityVerdict::new(notion, eps.clone(), status)
        .with_mass(report)
        .with_enumerated(enumerated);
    if status == Status::Irregular {
        out.witness = witness;
    }
    out
}

/// A side-pure partition `Q` of `V(G_0)` is eps-regular when the cross-side cluster
/// pairs that are not eps-regular have `Σ |Y_1||Y_2| ≤ eps·n²`, `n = |V(G_0)|`.
pub fn check_regular_partition(
    g0: &BipartiteGraph,
    q: &VertexPartition,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    bipartite_partition_verdict(g0, q, eps, |y1, y2| {
        check_bipartite_regular(&g0.restrict(y1, y2)?, eps, budget)
    })
}

/// [`check_regular_partition`] with a caller-supplied pair checker, which receives the
/// left and right cluster and returns a verdict in local ids of `G_0[Y_1, Y_2]`.
pub fn bipartite_partition_verdict<C>(
    g0: &BipartiteGraph,
    q: &VertexPartition,
    eps: &Level,
    pair_check: C,
) -> Result<RegularityVerdict>
where
    C: Fn(&[usize], &[usize]) -> Result<RegularityVerdict> + Sync,
{
    validate_eps(eps)?;
    let n = g0.graph().vertex_count();
    covers_graph(q, n)?;
    if !is_side_pure(g0, q) {
        return Err(Error::InvalidPartition(
            "partition is not side-pure: a cluster meets both sides".into(),
        ));
    }
    let (left, right): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) =
        q.clusters().iter().partition(|c| g0.left().contains(&c[0]));
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = left
        .iter()
        .flat_map(|&a| right.iter().map(move |&b| (a, b)))
        .collect();
    let verdicts: Vec<(u128, RegularityVerdict)> = pairs
        .par_iter()
        .map(|(a, b)| Ok(((a.len() * b.len()) as u128, pair_check(a, b)?)))
        .collect::<Result<_>>()?;
    let witness = pairs.iter().zip(&verdicts).find_map(|((a, b), (_, v))| {
        let mut w = v.witness.clone()?;
        // back to ids of G_0
        w.subsets = vec![
            w.subsets[0].iter().map(|&x| a[x]).collect(),
            w.subsets[1].iter().map(|&x| b[x - a.len()]).collect(),
        ];
        Some(w)
    });
    Ok(combine(
        Notion::BipartitePartition,
        eps,
        &verdicts,
        (n * n) as u128,
        witness,
    ))
}

/// A partition `P` of `V(G)` is eps-(H,F)-regular when all but at most `eps·n_H(G)`
/// transversal H-copies lie in cluster tuples whose tuple view is eps-(H,F)-regular.
pub fn check_hf_regular_partition(
    g: &KPartiteGraph,
    p: &VertexPartition,
    pp: &PatternPair,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    hf_partition_verdict(g, p, pp, eps, |view| {
        check_hf_regular_view(view, pp, eps, budget)
    })
}

/// [`check_hf_regular_partition`] with a caller-supplied tuple checker.
pub fn hf_partition_verdict<C>(
    g: &KPartiteGraph,
    p: &VertexPartition,
    pp: &PatternPair,
    eps: &Level,
    tuple_check: C,
) -> Result<RegularityVerdict>
where
    C: Fn(&TupleView<'_>) -> Result<RegularityVerdict> + Sync,
{
    validate_eps(eps)?;
    covers_graph(p, g.vertex_count())?;
    let full = g.full_view();
    let w = TransversalWeights::new(&full, pp)?;
    let (nh, _) = w.totals();
    if nh == 0 {
        return Ok(RegularityVerdict::new(
            Notion::HfPartition,
            eps.clone(),
            Status::Undefined,
        ));
    }
    let starts: Vec<usize> = (0..g.k()).map(|i| g.class(i).start).collect();
    let mut groups: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
    for t in full.transversals() {
        let local: Vec<usize> = t.iter().zip(&starts).map(|(v, s)| v - s).collect();
        let (h, _) = w.at(&local);
        if h > 0 {
            let key = t
                .iter()
                .map(|&v| p.cluster_of(v).expect("covered"))
                .collect();
            *groups.entry(key).or_insert(0) += h as u128;
        }
    }
    let groups: Vec<(Vec<usize>, u128)> = groups.into_iter().collect();
    let verdicts: Vec<(u128, RegularityVerdict)> = groups
        .par_iter()
        .map(|(key, copies)| {
            let clusters: Vec<&[usize]> = key.iter().map(|&c| p.clusters()[c].as_slice()).collect();
            let view = g.induced_tuple_subgraph(&clusters)?;
            Ok((*copies, tuple_check(&view)?))
        })
        .collect::<Result<_>>()?;
    let witness = verdicts.iter().find_map(|(_, v)| v.witness.clone());
    Ok(combine(Notion::HfPartition, eps, &verdicts, nh, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;
    use crate::semiblowup::{build_blowup, build_semi_blowup};

    fn eps(p: i64, q: i64) -> Level {
        ratio(p, q).into()
    }

    fn matching(m: usize) -> BipartiteGraph {
        BipartiteGraph::from_sides(m, m, (0..m).map(|i| (i, i))).unwrap()
    }

    fn sides(m: usize) -> VertexPartition {
        VertexPartition::new(vec![(0..m).collect(), (m..2 * m).collect()]).unwrap()
    }

    #[test]
    fn complete_sides_partition() {
        let g = BipartiteGraph::from_sides(3, 3, (0..3).flat_map(|i| (0..3).map(move |j| (i, j))))
            .unwrap();
        let v = check_regular_partition(&g, &sides(3), &eps(1, 10), &CheckBudget::exact()).unwrap();
        assert!(v.is_regular());
        assert_eq!(v.mass.unwrap().mass, 0u32.into());
    }

    #[test]
    fn singletons_are_regular() {
        let g = matching(4);
        let q = VertexPartition::singletons(0..8).unwrap();
        let v = check_regular_partition(&g, &q, &eps(1, 100), &CheckBudget::exact()).unwrap();
        assert!(v.is_regular());
        assert_eq!(v.mass.unwrap().groups, 16);
    }

    #[test]
    fn matching_sides_partition() {
        // the single cross pair is irregular; its mass 16 equals (1/4)·64, which passes
        let v = check_regular_partition(&matching(4), &sides(4), &eps(1, 4), &CheckBudget::exact())
            .unwrap();
        let m = v.mass.clone().unwrap();
        assert_eq!(
            (m.mass, m.total, m.allowance),
            (16u32.into(), 64u32.into(), 16u32.into())
        );
        assert_eq!(m.irregular_groups, 1);
        assert!(v.is_regular());
        let v = check_regular_partition(&matching(4), &sides(4), &eps(1, 5), &CheckBudget::exact())
            .unwrap();
        assert!(v.is_irregular());
        assert_eq!(v.mass.unwrap().allowance, 12u32.into());
        assert_eq!(v.witness.unwrap().subsets, vec![vec![0], vec![4]]);
    }

    #[test]
    fn side_purity_required() {
        let q = VertexPartition::new(vec![vec![0, 4], vec![1, 2, 3, 5, 6, 7]]).unwrap();
        assert!(matches!(
            check_regular_partition(&matching(4), &q, &eps(1, 4), &CheckBudget::exact()),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn hf_class_partition_of_blowup() {
        let pp = PatternPair::clustering();
        let g = build_blowup(pp.h(), &[2, 2, 2]).unwrap();
        let p = VertexPartition::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let v =
            check_hf_regular_partition(&g, &p, &pp, &eps(1, 100), &CheckBudget::exact()).unwrap();
        assert!(v.is_regular());
        assert_eq!(v.mass.unwrap().mass, 0u32.into());
    }

    #[test]
    fn hf_matching_semi_blowup_partition() {
        let pp = PatternPair::clustering();
        let g0 = matching(2);
        let g = build_semi_blowup(&pp, &g0, &[2], true).unwrap();
        let p = VertexPartition::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let v =
            check_hf_regular_partition(&g, &p, &pp, &eps(1, 100), &CheckBudget::exact()).unwrap();
        assert!(v.is_irregular());
        let m = v.mass.unwrap();
        assert_eq!(m.mass, 4u32.into());
        assert_eq!(m.total, 4u32.into());
        assert_eq!(m.groups, 1);
        assert!(
            check_hf_regular_partition(&g, &p, &pp, &eps(1, 1), &CheckBudget::exact())
                .unwrap()
                .is_regular()
        );
    }

    #[test]
    fn hf_undefined_without_h_copies() {
        let pp = PatternPair::clustering();
        let g = build_semi_blowup(
            &pp,
            &BipartiteGraph::from_sides(2, 2, []).unwrap(),
            &[2],
            true,
        )
        .unwrap();
        let p = VertexPartition::singletons(0..6).unwrap();
        let v = check_hf_regular_partition(&g, &p, &pp, &eps(1, 2), &CheckBudget::exact()).unwrap();
        assert_eq!(v.status, Status::Undefined);
    }
}
