//! Per-transversal H- and F-copy counts of a tuple view, stored densely so that
//! sub-tuple counts are plain sums.

use std::collections::HashMap;

use crate::counting::{automorphism_count, embeddings_into, transversal_type};
use crate::error::{Error, Result};
use crate::model::{PatternPair, TupleView};

/// Largest number of transversals held in memory.
pub(crate) const MAX_WEIGHT_TABLE: u128 = 1 << 22;

pub(crate) struct TransversalWeights {
    pub sizes: Vec<usize>,
    strides: Vec<usize>,
    h: Vec<u32>,
    f: Vec<u32>,
}

impl TransversalWeights {
    pub fn new(view: &TupleView<'_>, pp: &PatternPair) -> Result<Self> {
        if pp.k() != view.k() {
            return Err(Error::InvalidPattern(format!(
                "pattern has {} vertices but the graph has {} classes",
                pp.k(),
                view.k()
            )));
        }
        let total = view.transversal_count();
        if total > MAX_WEIGHT_TABLE {
            return Err(Error::BudgetExceeded {
                needed: total,
                limit: MAX_WEIGHT_TABLE,
            });
        }
        let k = view.k();
        let sizes: Vec<usize> = view.slots().iter().map(Vec::len).collect();
        let mut strides = vec![1; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let aut_h = automorphism_count(pp.h());
        let aut_f = automorphism_count(pp.f());
        let mut cache: HashMap<u64, (u32, u32)> = HashMap::new();
        let mut h = Vec::with_capacity(total as usize);
        let mut f = Vec::with_capacity(total as usize);
        // transversals() yields the first slot slowest, matching `strides`
        for t in view.transversals() {
            let ty = transversal_type(view.graph(), &t);
            let (wh, wf) = *cache.entry(ty).or_insert_with(|| {
                (
                    (embeddings_into(pp.h(), ty) / aut_h) as u32,
                    (embeddings_into(pp.f(), ty) / aut_f) as u32,
                )
            });
            h.push(wh);
            f.push(wf);
        }
        Ok(TransversalWeights {
            sizes,
            strides,
            h,
            f,
        })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn totals(&self) -> (u128, u128) {
        (
            self.h.iter().map(|&x| x as u128).sum(),
            self.f.iter().map(|&x| x as u128).sum(),
        )
    }

    /// Weights of a single transversal given by slot-local indices.
    pub fn at(&self, local: &[usize]) -> (u32, u32) {
        let idx: usize = local.iter().zip(&self.strides).map(|(i, s)| i * s).sum();
        (self.h[idx], self.f[idx])
    }

    /// `(n_H, n_F)` over the product of the given slot-local index sets.
    pub fn sum(&self, members: &[&[usize]]) -> (u128, u128) {
        self.sum_from(0, 0, members)
    }

    fn sum_from(&self, depth: usize, base: usize, members: &[&[usize]]) -> (u128, u128) {
        if depth + 1 == self.k() {
            let mut acc = (0u128, 0u128);
            for &i in members[depth] {
                acc.0 += self.h[base + i] as u128;
                acc.1 += self.f[base + i] as u128;
            }
            return acc;
        }
        let mut acc = (0, 0);
        for &i in members[depth] {
            let (a, b) = self.sum_from(depth + 1, base + i * self.strides[depth], members);
            acc.0 += a;
            acc.1 += b;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::n_copies;
    use crate::model::KPartiteGraph;

    #[test]
    fn totals_match_counting() {
        let g = KPartiteGraph::new(
            &[2, 2, 2],
            [
                (0, 2),
                (0, 3),
                (1, 2),
                (0, 4),
                (2, 4),
                (3, 5),
                (1, 5),
                (2, 5),
            ],
        )
        .unwrap();
        let pp = PatternPair::clustering();
        let w = TransversalWeights::new(&g.full_view(), &pp).unwrap();
        let (h, f) = w.totals();
        assert_eq!(h, n_copies(pp.h(), &g).unwrap().try_into().unwrap());
        assert_eq!(f, n_copies(pp.f(), &g).unwrap().try_into().unwrap());
        let all = [0, 1];
        assert_eq!(w.sum(&[&all, &all, &all]), (h, f));
        let (h0, f0) = w.sum(&[&[0], &all, &all]);
        let (h1, f1) = w.sum(&[&[1], &all, &all]);
        assert_eq!((h0 + h1, f0 + f1), (h, f));
    }
}
