//! Exact transversal copy counts, densities and (H,F)-coefficients.
//!
//! A copy of a `k`-vertex pattern in a k-partite graph uses one vertex from each class.
//! For a transversal `(v_1, .., v_k)` the labeled copies on it are the permutations `σ`
//! with `{v_σ(i), v_σ(j)}` an edge for every pattern edge `{i, j}`; the unlabeled count
//! divides that by `|Aut(P)|`. Only the induced `k`-vertex graph of the transversal
//! (its *type*, a mask over pair indices) matters, so enumeration builds a histogram of
//! types and each distinct type is evaluated once.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{pair_index, BipartiteGraph, KPartiteGraph, Pattern, PatternPair, TupleView};

/// Default ceiling on the number of transversals an exact count may visit.
pub const DEFAULT_TRANSVERSAL_BUDGET: u128 = 1_000_000_000;

const PARALLEL_THRESHOLD: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Unlabeled,
    Labeled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyCount {
    pub value: BigUint,
    pub convention: Convention,
}

/// An exact `n_H / n_F`, keeping both counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub value: BigRational,
    pub numerator: BigUint,
    pub denominator: BigUint,
}

/// Number of permutations `σ` of `[k]` mapping every pattern edge onto a pair in `host`
/// (a pair-index mask).
pub fn embeddings_into(pattern: &Pattern, host: u64) -> u64 {
    let k = pattern.k();
    let mut nbrs = vec![Vec::new(); k];
    for &(u, v) in pattern.edges() {
        // only constrain against earlier-assigned vertices
        let (a, b) = (u.min(v), u.max(v));
        nbrs[b].push(a);
    }
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn go(
        i: usize,
        k: usize,
        host: u64,
        nbrs: &[Vec<usize>],
        image: &mut [usize],
        used: &mut [bool],
    ) -> u64 {
        if i == k {
            return 1;
        }
        let mut total = 0;
        for t in 0..k {
            if used[t] {
                continue;
            }
            if nbrs[i]
                .iter()
                .all(|&j| host >> pair_index(k, image[j], t) & 1 == 1)
            {
                used[t] = true;
                image[i] = t;
                total += go(i + 1, k, host, nbrs, image, used);
                used[t] = false;
            }
        }
        total
    }
    go(0, k, host, &nbrs, &mut image, &mut used)
}

/// `|Aut(P)|` by exhaustive permutation check.
pub fn automorphism_count(pattern: &Pattern) -> u64 {
    // An embedding of P into its own edge set that preserves the edge count is an
    // automorphism.
    embeddings_into(pattern, pattern.pair_mask())
}

/// Multiset of transversal types of a view.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeHistogram {
    k: usize,
    counts: BTreeMap<u64, u64>,
}

impl TypeHistogram {
    pub fn of(view: &TupleView<'_>) -> Result<Self> {
        Self::with_budget(view, DEFAULT_TRANSVERSAL_BUDGET)
    }

    pub fn with_budget(view: &TupleView<'_>, budget: u128) -> Result<Self> {
        let total = view.transversal_count();
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                limit: budget,
            });
        }
        let k = view.k();
        let mut counts = BTreeMap::new();
        if total == 0 {
            return Ok(TypeHistogram { k, counts });
        }
        // classes by ascending size, then vertex id
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&c| (view.slots()[c].len(), c));
        let walker = Walker {
            view,
            order: &order,
        };
        let first = &view.slots()[order[0]];
        let merged: HashMap<u64, u64> = if total >= PARALLEL_THRESHOLD {
            first
                .par_iter()
                .map(|&v| {
                    let mut local = HashMap::new();
                    walker.start(v, &mut local);
                    local
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (t, c) in b {
                        *a.entry(t).or_insert(0) += c;
                    }
                    a
                })
        } else {
            let mut local = HashMap::new();
            for &v in first {
                walker.start(v, &mut local);
            }
            local
        };
        counts.extend(merged);
        Ok(TypeHistogram { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn transversals(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Labeled copies of `pattern` summed over all transversals.
    pub fn labeled(&self, pattern: &Pattern) -> u128 {
        self.counts
            .iter()
            .map(|(&t, &c)| c as u128 * embeddings_into(pattern, t) as u128)
            .sum()
    }

    pub fn unlabeled(&self, pattern: &Pattern) -> u128 {
        let labeled = self.labeled(pattern);
        let aut = automorphism_count(pattern) as u128;
        debug_assert_eq!(labeled % aut, 0);
        labeled / aut
    }
}

struct Walker<'a, 'g> {
    view: &'a TupleView<'g>,
    order: &'a [usize],
}

impl Walker<'_, '_> {
    fn start(&self, v: usize, acc: &mut HashMap<u64, u64>) {
        let mut chosen = vec![usize::MAX; self.view.k()];
        chosen[self.order[0]] = v;
        self.descend(1, 0, &mut chosen, acc);
    }

    fn descend(&self, depth: usize, mask: u64, chosen: &mut [usize], acc: &mut HashMap<u64, u64>) {
        let k = self.view.k();
        if depth == k {
            *acc.entry(mask).or_insert(0) += 1;
            return;
        }
        let g = self.view.graph();
        let c = self.order[depth];
        for &v in &self.view.slots()[c] {
            let mut m = mask;
            for &prev in &self.order[..depth] {
                if g.has_edge(chosen[prev], v) {
                    m |= 1 << pair_index(k, prev, c);
                }
            }
            chosen[c] = v;
            self.descend(depth + 1, m, chosen, acc);
        }
    }
}

/// Pair-index mask of the transversal `t` (`t[i]` in class `i`).
pub fn transversal_type(g: &KPartiteGraph, t: &[usize]) -> u64 {
    let k = t.len();
    let mut m = 0;
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(t[i], t[j]) {
                m |= 1 << pair_index(k, i, j);
            }
        }
    }
    m
}

fn check_order(pattern: &Pattern, k: usize) -> Result<()> {
    if pattern.k() != k {
        return Err(Error::InvalidPattern(format!(
            "pattern has {} vertices but the graph has {k} classes",
            pattern.k()
        )));
    }
    Ok(())
}

/// Unlabeled transversal copies of `pattern` in the view.
pub fn count_copies(pattern: &Pattern, view: &TupleView<'_>) -> Result<CopyCount> {
    check_order(pattern, view.k())?;
    let h = TypeHistogram::of(view)?;
    Ok(CopyCount {
        value: BigUint::from(h.unlabeled(pattern)),
        convention: Convention::Unlabeled,
    })
}

/// Labeled transversal copies (injective edge-preserving maps) of `pattern`.
pub fn count_labeled(pattern: &Pattern, view: &TupleView<'_>) -> Result<CopyCount> {
    check_order(pattern, view.k())?;
    let h = TypeHistogram::of(view)?;
    Ok(CopyCount {
        value: BigUint::from(h.labeled(pattern)),
        convention: Convention::Labeled,
    })
}

/// Shorthand for [`count_copies`] on the full graph.
pub fn n_copies(pattern: &Pattern, g: &KPartiteGraph) -> Result<BigUint> {
    Ok(count_copies(pattern, &g.full_view())?.value)
}

pub fn density(g0: &BipartiteGraph) -> BigRational {
    g0.density()
}

/// `n_H / n_F` on a view, or [`Error::ZeroDenominator`] when `n_F = 0`.
pub fn hf_coefficient_view(pp: &PatternPair, view: &TupleView<'_>) -> Result<Coefficient> {
    check_order(pp.h(), view.k())?;
    let hist = TypeHistogram::of(view)?;
    let nh = BigUint::from(hist.unlabeled(pp.h()));
    let nf = BigUint::from(hist.unlabeled(pp.f()));
    if nf.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Coefficient {
        value: BigRational::new(BigInt::from(nh.clone()), BigInt::from(nf.clone())),
        numerator: nh,
        denominator: nf,
    })
}

pub fn hf_coefficient(pp: &PatternPair, g: &KPartiteGraph) -> Result<Coefficient> {
    hf_coefficient_view(pp, &g.full_view())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;

    fn p2() -> Pattern {
        Pattern::new(3, [(0, 2), (1, 2)]).unwrap()
    }

    fn triangle() -> KPartiteGraph {
        KPartiteGraph::new(&[1, 1, 1], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&Pattern::complete(3)), 6);
        assert_eq!(automorphism_count(&p2()), 2);
        assert_eq!(automorphism_count(&Pattern::empty(3)), 6);
        assert_eq!(automorphism_count(&Pattern::complete(4)), 24);
        // path on 4 vertices 0-1-2-3
        let p3 = Pattern::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(automorphism_count(&p3), 2);
    }

    #[test]
    fn triangle_counts() {
        let g = triangle();
        assert_eq!(n_copies(&Pattern::complete(3), &g).unwrap(), 1u32.into());
        assert_eq!(n_copies(&p2(), &g).unwrap(), 3u32.into());
        let lab = count_labeled(&p2(), &g.full_view()).unwrap();
        assert_eq!(lab.value, 6u32.into());
        assert_eq!(lab.convention, Convention::Labeled);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let g = triangle();
        assert!(count_copies(&Pattern::complete(2), &g.full_view()).is_err());
    }

    #[test]
    fn clustering_coefficient_of_triangle() {
        let c = hf_coefficient(&PatternPair::clustering(), &triangle()).unwrap();
        assert_eq!(c.value, ratio(1, 3));
    }

    #[test]
    fn density_specialisation() {
        let g = BipartiteGraph::from_sides(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let c = hf_coefficient(&PatternPair::density(), g.graph()).unwrap();
        assert_eq!(c.value, ratio(3, 4));
        assert_eq!(c.value, density(&g));
    }

    #[test]
    fn undefined_coefficient() {
        // star-free tripartite graph: only the edge (0,1)
        let g = KPartiteGraph::new(&[1, 1, 1], [(0, 1)]).unwrap();
        assert!(matches!(
            hf_coefficient(&PatternPair::clustering(), &g),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn budget_guard() {
        let g = KPartiteGraph::new(&[3, 3, 3], []).unwrap();
        let err = TypeHistogram::with_budget(&g.full_view(), 26).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 27, .. }));
    }
}
