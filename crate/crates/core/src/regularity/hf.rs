use num_bigint::BigUint;
use rayon::prelude::*;

use super::subsets::{lex_subsets, members};
use super::weights::TransversalWeights;
use super::{validate_eps, CheckBudget, Mode};
use crate::error::{Error, Result};
use crate::level::{ratio, Level};
use crate::model::{
    KPartiteGraph, Notion, PatternPair, RegularityVerdict, Status, TupleView, Witness,
};

/// ε-(H,F)-regularity of a k-partite graph: every nonempty `(U_1, .., U_k)` with
/// `n_F(G[U]) ≥ eps·n_F(G)` has `|coeff(G[U]) − coeff(G)| ≤ eps`.
pub fn check_hf_regular(
    g: &KPartiteGraph,
    pp: &PatternPair,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    check_hf_regular_view(&g.full_view(), pp, eps, budget)
}

/// As [`check_hf_regular`], with the slots of a tuple view playing the classes.
pub fn check_hf_regular_view(
    view: &TupleView<'_>,
    pp: &PatternPair,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    validate_eps(eps)?;
    if budget.mode == Mode::Sampled {
        return super::sampled_irregularity_probe(
            super::ProbeTarget::Hf {
                view: view.clone(),
                pattern: pp,
            },
            eps,
            budget,
        );
    }
    find_deviation(view, pp, eps, eps, budget)
}

/// Exhaustive search for a nonempty sub-tuple `U` with `n_F(U) ≥ support·n_F` and
/// `|coeff(U) − coeff| > tolerance`. The verdict carries `tolerance` as its level.
pub fn find_deviation(
    view: &TupleView<'_>,
    pp: &PatternPair,
    support: &Level,
    tolerance: &Level,
    budget: &CheckBudget,
) -> Result<RegularityVerdict> {
    if view.slots().iter().any(|s| s.len() > 63) {
        return Err(Error::Precondition(
            "exact (H,F) check supports at most 63 vertices per class".into(),
        ));
    }
    let needed = view
        .slots()
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul((1u128 << s.len()) - 1))
        .unwrap_or(u128::MAX);
    budget.guard(needed)?;
    let w = TransversalWeights::new(view, pp)?;
    Ok(exact_with_weights(view, &w, support, tolerance))
}

pub(crate) fn exact_with_weights(
    view: &TupleView<'_>,
    w: &TransversalWeights,
    support: &Level,
    tolerance: &Level,
) -> RegularityVerdict {
    let eps = tolerance;
    let (nh, nf) = w.totals();
    if nf == 0 {
        return RegularityVerdict::new(Notion::Hf, eps.clone(), Status::Undefined);
    }
    let k = w.k();
    if w.sizes.contains(&0) {
        // a view with an empty slot has no transversals, so nf = 0 above
        unreachable!("empty slot with positive n_F");
    }
    let lists: Vec<Vec<Vec<usize>>> = w
        .sizes
        .iter()
        .map(|&s| lex_subsets(s, 1).into_iter().map(members).collect())
        .collect();
    // tuples per choice of the first slot
    let inner: u128 = lists[1..].iter().map(|l| l.len() as u128).product();

    let scan = |(i, first): (usize, &Vec<usize>)| -> Option<(u128, Vec<usize>, u128, u128)> {
        let mut idx = vec![0usize; k];
        idx[0] = i;
        let mut pos: u128 = 0;
        loop {
            let chosen: Vec<&[usize]> = std::iter::once(first.as_slice())
                .chain((1..k).map(|s| lists[s][idx[s]].as_slice()))
                .collect();
            let (h, f) = w.sum(&chosen);
            if f > 0 && support.reached_by(f, nf) {
                let dev = (h * nf).abs_diff(nh * f);
                if tolerance.exceeded_by(dev, f * nf) {
                    return Some((pos, idx, h, f));
                }
            }
            pos += 1;
            // odometer over slots 1..k, last slot fastest
            let mut s = k - 1;
            loop {
                if s == 0 {
                    return None;
                }
                idx[s] += 1;
                if idx[s] < lists[s].len() {
                    break;
                }
                idx[s] = 0;
                s -= 1;
            }
        }
    };
    let total = lists[0].len() as u128 * inner;
    let found = if total >= 1 << 12 {
        lists[0].par_iter().enumerate().find_map_first(scan)
    } else {
        lists[0].iter().enumerate().find_map(scan)
    };

    let reference = ratio(nh as u64, nf as u64);
    match found {
        None => RegularityVerdict::new(Notion::Hf, eps.clone(), Status::Regular)
            .with_enumerated(total as u64),
        Some((pos, idx, h, f)) => {
            let subsets: Vec<Vec<usize>> = (0..k)
                .map(|s| {
                    lists[s][idx[s]]
                        .iter()
                        .map(|&j| view.slots()[s][j])
                        .collect()
                })
                .collect();
            let mut witness = Witness::new(
                subsets,
                reference,
                ratio(BigUint::from(h), BigUint::from(f)),
            );
            witness.support = Some((BigUint::from(f), BigUint::from(nf)));
            RegularityVerdict::new(Notion::Hf, eps.clone(), Status::Irregular)
                .with_witness(witness)
                .with_enumerated((idx[0] as u128 * inner + pos + 1) as u64)
        }
    }
}
