//! Exhaustive minimum-order search over set partitions in restricted-growth-string
//! order.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::Level;
use crate::model::{
    BipartiteGraph, KPartiteGraph, PatternPair, RegularityVerdict, Status, VertexPartition,
};
use crate::regularity::{
    bipartite_partition_verdict, check_bipartite_regular, check_hf_regular_view,
    hf_partition_verdict, CheckBudget,
};

/// Default ground-set ceiling (Bell(12) ≈ 4.2 million partitions).
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Clone, Debug)]
pub enum SearchNotion {
    /// Side-pure partitions of a bipartite graph, checked as regular partitions.
    Bipartite,
    /// All partitions, checked as (H,F)-regular partitions.
    Hf(PatternPair),
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub notion: &'static str,
    pub eps: Level,
    pub order: usize,
    pub partition: VertexPartition,
    /// Admissible partitions checked, in canonical order, up to and including the
    /// returned one.
    pub examined: u64,
    pub verdict: RegularityVerdict,
}

/// Restricted growth strings of length `n` with exactly `r` blocks, in lexicographic
/// order. With `side`, a block never mixes vertices of different sides.
pub fn restricted_growth_strings(n: usize, r: usize, side: Option<&[u8]>) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if r == 0 || r > n {
        return out;
    }
    let mut a = vec![0u8; n];
    let mut block_side = vec![0u8; r];
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        used: usize,
        n: usize,
        r: usize,
        side: Option<&[u8]>,
        a: &mut Vec<u8>,
        block_side: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if i == n {
            if used == r {
                out.push(a.clone());
            }
            return;
        }
        // every remaining vertex may open a new block at most
        if used + (n - i) < r {
            return;
        }
        for b in 0..=used.min(r - 1) {
            if b < used {
                if let Some(s) = side {
                    if block_side[b] != s[i] {
                        continue;
                    }
                }
                a[i] = b as u8;
                go(i + 1, used, n, r, side, a, block_side, out);
            } else {
                if let Some(s) = side {
                    block_side[b] = s[i];
                }
                a[i] = b as u8;
                go(i + 1, used + 1, n, r, side, a, block_side, out);
            }
        }
    }
    go(0, 0, n, r, side, &mut a, &mut block_side, &mut out);
    out
}

fn to_partition(rgs: &[u8]) -> VertexPartition {
    let r = *rgs.iter().max().unwrap() as usize + 1;
    let mut clusters = vec![Vec::new(); r];
    for (v, &b) in rgs.iter().enumerate() {
        clusters[b as usize].push(v);
    }
    VertexPartition::new(clusters).expect("restricted growth string")
}

fn mask(vs: &[usize], offset: usize) -> usize {
    vs.iter().map(|v| 1 << (v - offset)).sum()
}

/// Smallest order of an admissible partition passing the exact partition check at
/// `eps`, with ties broken by restricted-growth-string order.
pub fn min_partition_order(
    g: &KPartiteGraph,
    notion: &SearchNotion,
    eps: &Level,
    max_n: usize,
    budget: &CheckBudget,
) -> Result<SearchResult> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            limit: max_n as u128,
        });
    }
    match notion {
        SearchNotion::Bipartite => {
            let g0 = BipartiteGraph::new(g.clone())?;
            search_bipartite(&g0, eps, budget)
        }
        SearchNotion::Hf(pp) => search_hf(g, pp, eps, budget),
    }
}

fn search_orders<F>(
    n: usize,
    side: Option<&[u8]>,
    notion: &'static str,
    eps: &Level,
    check: F,
) -> Result<SearchResult>
where
    F: Fn(&VertexPartition) -> Result<RegularityVerdict> + Sync,
{
    let mut examined = 0u64;
    for r in 1..=n {
        let all = restricted_growth_strings(n, r, side);
        let hit = all.par_iter().enumerate().find_map_first(|(i, rgs)| {
            let p = to_partition(rgs);
            match check(&p) {
                Ok(v) if v.status == Status::Undefined => Some(Err(Error::Precondition(
                    "the partition notion is undefined on this graph".into(),
                ))),
                Ok(v) if v.is_regular() => Some(Ok((i, p, v))),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        });
        match hit {
            Some(Ok((i, partition, verdict))) => {
                return Ok(SearchResult {
                    notion,
                    eps: eps.clone(),
                    order: r,
                    partition,
                    examined: examined + i as u64 + 1,
                    verdict,
                })
            }
            Some(Err(e)) => return Err(e),
            None => examined += all.len() as u64,
        }
    }
    Err(Error::Precondition("no admissible partition passes".into()))
}

fn search_bipartite(
    g0: &BipartiteGraph,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<SearchResult> {
    let (n1, n2) = (g0.left_size(), g0.right_size());
    let n = n1 + n2;
    // verdict for every pair of nonempty subsets (A ⊆ V_1, B ⊆ V_2)
    let cells: Vec<(usize, usize)> = (1..1usize << n1)
        .flat_map(|a| (1..1usize << n2).map(move |b| (a, b)))
        .collect();
    let verdicts: Vec<RegularityVerdict> = cells
        .par_iter()
        .map(|&(a, b)| {
            let s1: Vec<usize> = (0..n1).filter(|i| a >> i & 1 == 1).collect();
            let s2: Vec<usize> = (0..n2)
                .filter(|i| b >> i & 1 == 1)
                .map(|i| i + n1)
                .collect();
            check_bipartite_regular(&g0.restrict(&s1, &s2)?, eps, budget)
        })
        .collect::<Result<_>>()?;
    let width = (1usize << n2) - 1;
    let table = |a: usize, b: usize| &verdicts[(a - 1) * width + (b - 1)];
    let side: Vec<u8> = (0..n).map(|v| (v >= n1) as u8).collect();
    search_orders(n, Some(&side), "bipartite", eps, |p| {
        bipartite_partition_verdict(g0, p, eps, |y1, y2| {
            Ok(table(mask(y1, 0), mask(y2, n1)).clone())
        })
    })
}

fn search_hf(
    g: &KPartiteGraph,
    pp: &PatternPair,
    eps: &Level,
    budget: &CheckBudget,
) -> Result<SearchResult> {
    let cache: RwLock<HashMap<Vec<Vec<usize>>, RegularityVerdict>> = RwLock::new(HashMap::new());
    search_orders(g.vertex_count(), None, "hf", eps, |p| {
        hf_partition_verdict(g, p, pp, eps, |view| {
            let key = view.slots().to_vec();
            if let Some(v) = cache.read().unwrap().get(&key) {
                return Ok(v.clone());
            }
            let v = check_hf_regular_view(view, pp, eps, budget)?;
            cache.write().unwrap().insert(key, v.clone());
            Ok(v)
        })
    })
}
