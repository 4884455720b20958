use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::subsets::{admissible_subset_count, lex_subsets, members};
use super::{validate_eps, CheckBudget, Mode};
use crate::error::{Error, Result};
use crate::level::{ratio, Level};
use crate::model::{BipartiteGraph, Notion, RegularityVerdict, Status, Witness};

/// Largest side size the exact bipartite checker accepts.
pub const MAX_EXACT_SIDE: usize = 63;

/// ε-regularity of a bipartite graph: every `S_1 ⊆ V_1`, `S_2 ⊆ V_2` with
/// `|S_i| ≥ eps·|V_i|` has `|d(S_1,S_2) − d(G_0)| ≤ eps`.
pub fn check_bipartite_regular(
    g0: &BipartiteGraph,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    validate_eps(eps)?;
    if budget.mode == Mode::Sampled {
        return super::sampled_irregularity_probe(super::ProbeTarget::Bipartite(g0), eps, budget);
    }
    let (n1, n2) = (g0.left_size(), g0.right_size());
    if n1 > MAX_EXACT_SIDE || n2 > MAX_EXACT_SIDE {
        return Err(Error::Precondition(format!(
            "exact bipartite check supports at most {MAX_EXACT_SIDE} vertices per side, got {n1}+{n2}"
        )));
    }
    let t1 = eps.min_count(n1).max(1);
    let t2 = eps.min_count(n2).max(1);
    let m1 = admissible_subset_count(n1, t1);
    let m2 = admissible_subset_count(n2, t2);
    let needed = (&m1 * &m2).to_u128().unwrap_or(u128::MAX);
    budget.guard(needed)?;

    let masks = g0.left_masks().expect("side sizes checked");
    let total_edges = g0.edge_count() as u128;
    let nn = (n1 * n2) as u128;
    // deviation numerators at or above thresholds[s1][s2] are violations
    let thresholds: Vec<Vec<u128>> = (0..=n1)
        .map(|s1| {
            (0..=n2)
                .map(|s2| {
                    let scale = BigUint::from((s1 * s2) as u128 * nn);
                    (eps.floor_mul(&scale) + 1u32)
                        .to_u128()
                        .unwrap_or(u128::MAX)
                })
                .collect()
        })
        .collect();

    let left = lex_subsets(n1, t1);
    let right = lex_subsets(n2, t2);
    let scan = |(i, &a): (usize, &u64)| -> Option<(usize, usize, u128)> {
        let s1 = a.count_ones() as usize;
        let rows: Vec<u64> = members(a).into_iter().map(|v| masks[v]).collect();
        right.iter().enumerate().find_map(|(j, &b)| {
            let s2 = b.count_ones() as usize;
            let e: u128 = rows.iter().map(|r| (r & b).count_ones() as u128).sum();
            let dev = (e * nn).abs_diff(total_edges * (s1 * s2) as u128);
            (dev >= thresholds[s1][s2]).then_some((i, j, e))
        })
    };
    let found = if needed >= 1 << 12 {
        left.par_iter().enumerate().find_map_first(scan)
    } else {
        left.iter().enumerate().find_map(scan)
    };

    let reference = g0.density();
    Ok(match found {
        None => RegularityVerdict::new(Notion::Bipartite, eps.clone(), Status::Regular)
            .with_enumerated((left.len() * right.len()) as u64),
        Some((i, j, e)) => {
            let s1: Vec<usize> = members(left[i]);
            let s2: Vec<usize> = members(right[j]).into_iter().map(|v| v + n1).collect();
            let observed = ratio(e as u64, (s1.len() * s2.len()) as u64);
            RegularityVerdict::new(Notion::Bipartite, eps.clone(), Status::Irregular)
                .with_witness(Witness::new(vec![s1, s2], reference, observed))
                .with_enumerated((i * right.len() + j + 1) as u64)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;

    fn matching(m: usize) -> BipartiteGraph {
        BipartiteGraph::from_sides(m, m, (0..m).map(|i| (i, i))).unwrap()
    }

    fn exact(g: &BipartiteGraph, p: i64, q: i64) -> RegularityVerdict {
        check_bipartite_regular(g, &ratio(p, q).into(), &CheckBudget::exact()).unwrap()
    }

    #[test]
    fn complete_is_regular() {
        let g = BipartiteGraph::from_sides(3, 4, (0..3).flat_map(|i| (0..4).map(move |j| (i, j))))
            .unwrap();
        for q in 1..6 {
            assert!(exact(&g, 1, q).is_regular());
        }
    }

    #[test]
    fn matching_witness() {
        let v = exact(&matching(4), 1, 4);
        assert_eq!(v.status, Status::Irregular);
        let w = v.witness.unwrap();
        assert_eq!(w.subsets, vec![vec![0], vec![4]]);
        assert_eq!(w.observed, ratio(1, 1));
        assert_eq!(w.reference, ratio(1, 4));
        assert_eq!(v.enumerated, 1);
    }

    #[test]
    fn single_edge_sparse_is_regular() {
        let g = BipartiteGraph::from_sides(4, 4, [(0, 0)]).unwrap();
        assert!(exact(&g, 2, 5).is_regular());
    }

    #[test]
    fn boundary_is_not_a_violation() {
        // density 1/2, subpair {0}x{0} has density 1: deviation exactly 1/2
        let g = BipartiteGraph::from_sides(1, 2, [(0, 0)]).unwrap();
        assert!(exact(&g, 1, 2).is_regular());
        assert!(exact(&g, 1, 3).is_irregular());
    }

    #[test]
    fn budget_refusal() {
        let g = matching(20);
        let err = check_bipartite_regular(
            &g,
            &ratio(1, 20).into(),
            &CheckBudget::exact().with_max_enumerations(1000),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn eps_one_is_regular() {
        assert!(exact(&matching(5), 1, 1).is_regular());
    }
}
