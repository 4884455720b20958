//! Partition restriction, side refinement, slicing, witness lifting and the reduction
//! from (H,F)-regular partitions of a balanced semi-blowup to regular partitions of the
//! embedded bipartite graph.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count_copies, hf_coefficient_view, n_copies};
use crate::error::{Error, Result};
use crate::level::{big_pow, factorial, int, ratio, Level};
use crate::model::{
    BipartiteGraph, KPartiteGraph, PatternPair, RegularityVerdict, Status, VertexPartition,
};
use crate::regularity::{
    bipartite_partition_verdict, check_bipartite_regular, check_hf_regular,
    check_hf_regular_partition, find_deviation, CheckBudget,
};
use crate::semiblowup::{balanced_semi_blowup, build_semi_blowup, is_semi_blowup_of};
use crate::serde_util;

fn big(n: usize) -> BigRational {
    int(n as u64)
}

/// `k^{2k}` as a rational.
pub fn k_power(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(big_pow(k as u64, 2 * k as u32)))
}

/// The clusters of a partition that keep a `delta`-fraction of themselves inside `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Restriction {
    pub delta: Level,
    /// Indices into the partition's clusters, in partition order.
    pub kept: Vec<usize>,
    /// `Σ_{X kept} |X ∩ V|`.
    pub coverage: usize,
}

impl Restriction {
    pub fn clusters<'p>(&self, p: &'p VertexPartition) -> Vec<&'p Vec<usize>> {
        self.kept.iter().map(|&i| &p.clusters()[i]).collect()
    }
}

fn sorted_subset(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn intersection_size(x: &[usize], v: &[usize]) -> usize {
    x.iter().filter(|a| v.binary_search(a).is_ok()).count()
}

/// `P′ = {X ∈ P : |X ∩ V| ≥ delta·|X|}`.
pub fn filter_clusters(p: &VertexPartition, v: &[usize], delta: &Level) -> Restriction {
    let v = sorted_subset(v);
    let mut kept = Vec::new();
    let mut coverage = 0;
    for (i, x) in p.clusters().iter().enumerate() {
        let inside = intersection_size(x, &v);
        if delta.reached_by(inside as u128, x.len() as u128) {
            kept.push(i);
            coverage += inside;
        }
    }
    Restriction {
        delta: delta.clone(),
        kept,
        coverage,
    }
}

/// Approximate restriction with `delta = alpha·|V|/|ground(P)|`.
pub fn restrict_partition(
    p: &VertexPartition,
    v: &[usize],
    alpha: &BigRational,
) -> Result<Restriction> {
    let v = sorted_subset(v);
    if v.is_empty() {
        return Err(Error::InvalidSubset("V must be nonempty".into()));
    }
    if let Some(&x) = v.iter().find(|&&x| !p.contains(x)) {
        return Err(Error::InvalidSubset(format!(
            "vertex {x} is not covered by the partition"
        )));
    }
    if *alpha <= BigRational::zero() || *alpha > BigRational::one() {
        return Err(Error::Domain(format!(
            "alpha must lie in (0,1], got {alpha}"
        )));
    }
    let delta = alpha * big(v.len()) / big(p.ground().len());
    Ok(filter_clusters(p, &v, &delta.into()))
}

/// `Q_1 ∪ Q_2` with `Q_i = {X ∩ V_i : X ∈ P, X ∩ V_i ≠ ∅}`, `Q_1` first, each in the
/// order of `P`.
pub fn side_refinement(p: &VertexPartition, v1: &[usize], v2: &[usize]) -> Result<VertexPartition> {
    let (v1, v2) = (sorted_subset(v1), sorted_subset(v2));
    if let Some(x) = v1.iter().find(|x| v2.binary_search(x).is_ok()) {
        return Err(Error::InvalidSubset(format!(
            "vertex {x} lies on both sides"
        )));
    }
    if let Some(&x) = v1.iter().chain(&v2).find(|&&x| !p.contains(x)) {
        return Err(Error::InvalidSubset(format!(
            "vertex {x} is not covered by the partition"
        )));
    }
    let mut clusters = Vec::new();
    for side in [&v1, &v2] {
        for x in p.clusters() {
            let part: Vec<usize> = x
                .iter()
                .copied()
                .filter(|a| side.binary_search(a).is_ok())
                .collect();
            if !part.is_empty() {
                clusters.push(part);
            }
        }
    }
    VertexPartition::new(clusters)
}

/// A bipartite irregularity witness lifted to the semi-blowup, with the inequalities
/// that certify it violates (H,F)-regularity.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedWitness {
    /// `(S_1, S_2, V_3, .., V_k)` in the semi-blowup's vertex ids.
    pub subsets: Vec<Vec<usize>>,
    #[serde(serialize_with = "serde_util::ratio")]
    pub eps: BigRational,
    /// `sqrt(eps)·k^{2k}`, the bipartite level the witness violates.
    pub eps_prime: Level,
    #[serde(serialize_with = "serde_util::biguint")]
    pub nf_tuple: BigUint,
    #[serde(serialize_with = "serde_util::biguint")]
    pub nf_graph: BigUint,
    #[serde(serialize_with = "serde_util::ratio")]
    pub d: BigRational,
    #[serde(serialize_with = "serde_util::ratio")]
    pub d_star: BigRational,
    #[serde(serialize_with = "serde_util::ratio")]
    pub coeff_graph: BigRational,
    #[serde(serialize_with = "serde_util::ratio")]
    pub coeff_tuple: BigRational,
    /// `n_F(tuple) ≥ |S_1||S_2||V_3|⋯|V_k|`.
    pub product_bound: bool,
    /// `|S_1||S_2||V_3|⋯ ≥ eps′²·|V_1|⋯|V_k| ≥ (eps′²/k!)·n_F(G) ≥ eps·n_F(G)`.
    pub support_chain: bool,
    /// `n_F(tuple) ≥ eps·n_F(G)`.
    pub support: bool,
    /// `|f(d*) − f(d)| > eps`, with `f(d)` equal to the coefficients above.
    pub deviation: bool,
}

impl LiftedWitness {
    pub fn certified(&self) -> bool {
        self.product_bound && self.support_chain && self.support && self.deviation
    }
}

/// Lifts a bipartite witness `(S_1, S_2)` of `G_0` at level `sqrt(eps)·k^{2k}` to the
/// tuple `(S_1, S_2, V_3, .., V_k)` of `H ⊙_e G_0` (classes 3.. of sizes `rest`).
pub fn lift_irregularity_witness(
    pp: &PatternPair,
    g0: &BipartiteGraph,
    rest: &[usize],
    s1: &[usize],
    s2: &[usize],
    eps: &BigRational,
) -> Result<LiftedWitness> {
    let k = pp.k();
    if *eps <= BigRational::zero() {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let kp = k_power(k);
    if eps * &kp > BigRational::one() {
        return Err(Error::Vacuous(format!(
            "eps = {eps} exceeds 1/k^(2k) = 1/{kp}; the claim holds trivially"
        )));
    }
    let eps_prime = Level::root_times(eps.clone(), 2, kp.clone());
    let (s1, s2) = (sorted_subset(s1), sorted_subset(s2));
    let (n1, n2) = (g0.left_size(), g0.right_size());
    if s1.iter().any(|v| !g0.left().contains(v)) || s2.iter().any(|v| !g0.right().contains(v)) {
        return Err(Error::Precondition(
            "S_1 ⊆ V_1 and S_2 ⊆ V_2 required".into(),
        ));
    }
    if !eps_prime.reached_by(s1.len() as u128, n1 as u128)
        || !eps_prime.reached_by(s2.len() as u128, n2 as u128)
        || s1.is_empty()
        || s2.is_empty()
    {
        return Err(Error::Precondition(format!(
            "witness sides must have |S_i| ≥ {eps_prime}·|V_i|"
        )));
    }
    let d = g0.density();
    let d_star = ratio(
        g0.edges_between(&s1, &s2) as u64,
        (s1.len() * s2.len()) as u64,
    );
    let gap = if d_star > d {
        &d_star - &d
    } else {
        &d - &d_star
    };
    if eps_prime.cmp_rational(&gap) != Ordering::Less {
        return Err(Error::Precondition(format!(
            "(S_1, S_2) is not a witness: |d* − d| = {gap} ≤ {eps_prime}"
        )));
    }

    let g = build_semi_blowup(pp, g0, rest, false)?;
    let mut subsets = vec![s1.clone(), s2.clone()];
    subsets.extend((2..k).map(|i| g.class(i).collect::<Vec<_>>()));
    let refs: Vec<&[usize]> = subsets.iter().map(Vec::as_slice).collect();
    let view = g.induced_tuple_subgraph(&refs)?;
    let nf_tuple = count_copies(pp.f(), &view)?.value;
    let nf_graph = n_copies(pp.f(), &g)?;
    let coeff_tuple = hf_coefficient_view(pp, &view)?.value;
    let coeff_graph = hf_coefficient_view(pp, &g.full_view())?.value;

    let slice_product: BigUint = subsets.iter().map(|s| BigUint::from(s.len())).product();
    let full_product: BigUint = (0..k).map(|i| BigUint::from(g.class_size(i))).product();
    let as_rat = |n: &BigUint| BigRational::from_integer(BigInt::from(n.clone()));
    let eps_prime_sq = eps * &kp * &kp;
    let kf = as_rat(&factorial(k));
    let support_chain = as_rat(&slice_product) >= &eps_prime_sq * as_rat(&full_product)
        && &eps_prime_sq * as_rat(&full_product) >= &eps_prime_sq / &kf * as_rat(&nf_graph)
        && &eps_prime_sq / &kf * as_rat(&nf_graph) >= eps * as_rat(&nf_graph);
    let coeff_gap = if coeff_tuple > coeff_graph {
        &coeff_tuple - &coeff_graph
    } else {
        &coeff_graph - &coeff_tuple
    };
    let coeffs = crate::semiblowup::pattern_coefficients(pp);
    let f_matches = coeffs.f(&d)? == coeff_graph && coeffs.f(&d_star)? == coeff_tuple;
    Ok(LiftedWitness {
        subsets,
        eps: eps.clone(),
        eps_prime,
        product_bound: nf_tuple >= slice_product,
        support: as_rat(&nf_tuple) >= eps * as_rat(&nf_graph),
        support_chain,
        deviation: f_matches && coeff_gap > *eps,
        nf_tuple,
        nf_graph,
        d,
        d_star,
        coeff_graph,
        coeff_tuple,
    })
}

/// Outcome of checking the slicing estimates on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct SliceCertificate {
    #[serde(serialize_with = "serde_util::ratio")]
    pub eps: BigRational,
    /// `eps·k!/(δ_1⋯δ_k)`.
    #[serde(serialize_with = "serde_util::ratio")]
    pub eps_prime: BigRational,
    pub vacuous: bool,
    #[serde(serialize_with = "serde_util::biguint")]
    pub nf_slice: BigUint,
    #[serde(serialize_with = "serde_util::biguint")]
    pub nf_host: BigUint,
    /// `n_F(G) ≥ (Δ/k!)·n_F(T)`.
    pub nf_bound: bool,
    /// Status of `T` at level eps.
    pub host_status: Status,
    /// When `T` is eps-regular: no sub-tuple of the slice with `n_F ≥ eps′·n_F(G)`
    /// deviates from `coeff(G)` by more than `2·eps`.
    pub transfer: Option<bool>,
    /// When `T` is eps-regular and `eps′ ≤ 1`: the slice is eps′-(H,F)-regular.
    pub slice_regular: Option<bool>,
}

impl SliceCertificate {
    pub fn holds(&self) -> bool {
        self.nf_bound && self.transfer != Some(false) && self.slice_regular != Some(false)
    }
}

/// Checks the slicing estimates for `G = T[Y_1, .., Y_k]` with `|Y_i| ≥ δ_i|X_i|`.
pub fn slice_check(
    pp: &PatternPair,
    t: &KPartiteGraph,
    y: &[Vec<usize>],
    deltas: &[BigRational],
    eps: &BigRational,
    budget: &CheckBudget,
) -> Result<SliceCertificate> {
    let k = pp.k();
    if t.k() != k || y.len() != k || deltas.len() != k {
        return Err(Error::InvalidSubset(format!(
            "expected {k} classes, slices and deltas"
        )));
    }
    for (i, (yi, di)) in y.iter().zip(deltas).enumerate() {
        if *di <= BigRational::zero() || *di > BigRational::one() {
            return Err(Error::Domain(format!("delta_{} must lie in (0,1]", i + 1)));
        }
        if big(yi.len()) < di * big(t.class_size(i)) {
            return Err(Error::InvalidSubset(format!(
                "|Y_{}| = {} is below delta_{}·|X_{}|",
                i + 1,
                yi.len(),
                i + 1,
                i + 1
            )));
        }
    }
    let (g, _) = t.induced_subgraph_with_map(y)?;
    if !is_semi_blowup_of(pp, &g) {
        return Err(Error::Precondition(
            "the slice is not a semi-blowup of H".into(),
        ));
    }
    let delta: BigRational = deltas.iter().product();
    let kf = BigRational::from_integer(BigInt::from(factorial(k)));
    let eps_prime = eps * &kf / &delta;
    let vacuous = eps_prime >= BigRational::one();
    let nf_slice = n_copies(pp.f(), &g)?;
    let nf_host = n_copies(pp.f(), t)?;
    let as_rat = |n: &BigUint| BigRational::from_integer(BigInt::from(n.clone()));
    let nf_bound = as_rat(&nf_slice) >= &delta / &kf * as_rat(&nf_host);

    let eps_level = Level::rational(eps.clone());
    let host = check_hf_regular(t, pp, &eps_level, budget)?;
    let (transfer, slice_regular) = if host.is_regular() {
        let support = Level::rational(eps_prime.clone().min(BigRational::one()));
        let tolerance = Level::rational((eps * int(2)).min(BigRational::one()));
        let spread = find_deviation(&g.full_view(), pp, &support, &tolerance, budget)?;
        let slice_regular = (!vacuous)
            .then(|| check_hf_regular(&g, pp, &support, budget).map(|v| v.is_regular()))
            .transpose()?;
        (Some(spread.status == Status::Regular), slice_regular)
    } else {
        (None, None)
    };
    Ok(SliceCertificate {
        eps: eps.clone(),
        eps_prime,
        vacuous,
        nf_slice,
        nf_host,
        nf_bound,
        host_status: host.status,
        transfer,
        slice_regular,
    })
}

#[derive(Clone, Debug, Default)]
pub struct ReduceOptions {
    /// Replaces the filter fractions `δ_1 = δ_2 = eps′/2`, `δ_i = 1/(2k)`.
    pub deltas: Option<Vec<Level>>,
    /// Skip verifying that `P` is eps-(H,F)-regular.
    pub trusted: bool,
    pub budget: CheckBudget,
}

/// Survival of the clusters of `P` under the filter on class `i`.
#[derive(Clone, Debug, Serialize)]
pub struct FilterStage {
    pub class: usize,
    pub delta: Level,
    pub kept: usize,
    /// `Σ_{X kept} |X ∩ V_i|`.
    pub coverage: usize,
}

/// A mass compared with a bound.
#[derive(Clone, Debug, Serialize)]
pub struct Bounded {
    #[serde(serialize_with = "serde_util::biguint")]
    pub mass: BigUint,
    pub bound: Level,
    pub holds: bool,
}

impl Bounded {
    fn new(mass: u128, bound: Level) -> Self {
        let holds = bound.cmp_rational(&int(mass)) != Ordering::Less;
        Bounded {
            mass: BigUint::from(mass),
            bound,
            holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub k: usize,
    /// Common class size `n` of the balanced semi-blowup.
    pub n: usize,
    pub input_order: usize,
    pub output_order: usize,
    #[serde(serialize_with = "serde_util::ratio")]
    pub eps_in: BigRational,
    /// `eps^{1/4}·k^{2k}`.
    pub eps_out: Level,
    /// `eps_out ≥ 1`: every partition is trivially eps_out-regular.
    pub vacuous: bool,
    /// Verdict for `P`, absent when trusted.
    pub input_verdict: Option<RegularityVerdict>,
    /// Verdict for `Q` at level `min(eps_out, 1)`.
    pub output_verdict: RegularityVerdict,
    pub output_partition: VertexPartition,
    pub filters: Vec<FilterStage>,
    /// `Σ |G_0[Y_1, Y_2]|` over irregular pairs of `P_1* × P_2*`, against `eps·2^k·|G_0|`.
    pub filtered_edge_mass: Bounded,
    /// `Σ |Y_1||Y_2|` over the same pairs, against `(eps_out/2)·n²`.
    pub filtered_pair_mass: Bounded,
    /// `Σ |Y_1||Y_2|` over pairs of `Q_1 × Q_2` outside `P_1* × P_2*`, against
    /// `δ_1·|V(G)|·n`.
    pub complement_mass: Bounded,
    /// Irregular mass of `Q` against `eps_out·n²` with `n` the class size.
    pub class_size_goal: Bounded,
}

impl ReductionReport {
    /// `Q` is an eps_out-regular partition of `G_0` (possibly vacuously).
    pub fn passed(&self) -> bool {
        self.vacuous || self.output_verdict.is_regular()
    }
}

/// Runs the partition reduction for a balanced semi-blowup `H ⊙_e G_0` and a partition
/// `P` of its vertex set.
pub fn reduce_partition(
    pp: &PatternPair,
    g0: &BipartiteGraph,
    p: &VertexPartition,
    eps: &BigRational,
    options: &ReduceOptions,
) -> Result<ReductionReport> {
    let k = pp.k();
    let n = g0.left_size();
    if g0.right_size() != n {
        return Err(Error::Precondition(format!(
            "balanced semi-blowup needs |V_1| = |V_2|, got {}+{}",
            n,
            g0.right_size()
        )));
    }
    if *eps <= BigRational::zero() || *eps > BigRational::one() {
        return Err(Error::Domain(format!("eps must lie in (0,1], got {eps}")));
    }
    let g = balanced_semi_blowup(pp, g0)?;
    let total = g.vertex_count();
    if p.ground().len() != total || p.ground().iter().enumerate().any(|(i, &v)| i != v) {
        return Err(Error::InvalidPartition(format!(
            "P must partition the {total} vertices of the semi-blowup"
        )));
    }
    let budget = &options.budget;
    let eps_level = Level::rational(eps.clone());
    let input_verdict = if options.trusted {
        None
    } else {
        Some(check_hf_regular_partition(&g, p, pp, &eps_level, budget)?)
    };

    let kp = k_power(k);
    let eps_out = Level::root_times(eps.clone(), 4, kp);
    let vacuous = eps_out.at_least_one();
    let check_level = if vacuous {
        Level::rational(BigRational::one())
    } else {
        eps_out.clone()
    };

    let v1: Vec<usize> = g.class(0).collect();
    let v2: Vec<usize> = g.class(1).collect();
    let q = side_refinement(p, &v1, &v2)?;

    // every cross pair of Q, checked once
    let (q1, q2): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) =
        q.clusters().iter().partition(|c| c[0] < n);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = q1
        .iter()
        .flat_map(|&a| q2.iter().map(move |&b| (a, b)))
        .collect();
    let verdicts: Vec<RegularityVerdict> = pairs
        .par_iter()
        .map(|(a, b)| check_bipartite_regular(&g0.restrict(a, b)?, &check_level, budget))
        .collect::<Result<_>>()?;
    let cache: HashMap<(&[usize], &[usize]), &RegularityVerdict> = pairs
        .iter()
        .map(|(a, b)| (a.as_slice(), b.as_slice()))
        .zip(&verdicts)
        .collect();
    let output_verdict =
        bipartite_partition_verdict(g0, &q, &check_level, |a, b| Ok(cache[&(a, b)].clone()))?;

    let deltas = match &options.deltas {
        Some(d) if d.len() == k => d.clone(),
        Some(d) => {
            return Err(Error::Config(format!(
                "expected {k} deltas, got {}",
                d.len()
            )))
        }
        None => {
            let half = ratio(1, 2);
            let mut d = vec![eps_out.scaled(&half), eps_out.scaled(&half)];
            d.extend((2..k).map(|_| Level::rational(ratio(1, 2 * k as u64))));
            d
        }
    };
    let filters: Vec<Restriction> = (0..k)
        .map(|i| {
            let vi: Vec<usize> = g.class(i).collect();
            filter_clusters(p, &vi, &deltas[i])
        })
        .collect();
    let starred = |i: usize| -> Vec<Vec<usize>> {
        filters[i]
            .kept
            .iter()
            .map(|&c| {
                p.clusters()[c]
                    .iter()
                    .copied()
                    .filter(|v| g.class(i).contains(v))
                    .collect()
            })
            .collect()
    };
    let (p1, p2) = (starred(0), starred(1));
    let mut edge_mass = 0u128;
    let mut pair_mass = 0u128;
    let mut complement = 0u128;
    for ((a, b), v) in pairs.iter().zip(&verdicts) {
        let inside = p1.contains(a) && p2.contains(b);
        if !inside {
            complement += (a.len() * b.len()) as u128;
        } else if !v.is_regular() {
            edge_mass += g0.edges_between(a, b) as u128;
            pair_mass += (a.len() * b.len()) as u128;
        }
    }
    let g0_edges = g0.edge_count() as u64;
    let two_k = BigRational::from_integer(BigInt::from(big_pow(2, k as u32)));
    let filtered_edge_mass = Bounded::new(edge_mass, Level::rational(eps * two_k * int(g0_edges)));
    let filtered_pair_mass = Bounded::new(pair_mass, eps_out.scaled(&(ratio(1, 2) * big(n * n))));
    let complement_mass = Bounded::new(complement, deltas[0].scaled(&big(total * n)));
    let q_mass = output_verdict
        .mass
        .as_ref()
        .map(|m| m.mass.clone())
        .unwrap_or_default();
    let class_size_goal = Bounded::new(
        u128::try_from(q_mass).unwrap_or(u128::MAX),
        check_level.scaled(&big(n * n)),
    );
    Ok(ReductionReport {
        k,
        n,
        input_order: p.order(),
        output_order: q.order(),
        eps_in: eps.clone(),
        eps_out,
        vacuous,
        input_verdict,
        output_verdict,
        output_partition: q,
        filters: filters
            .iter()
            .enumerate()
            .map(|(i, r)| FilterStage {
                class: i,
                delta: r.delta.clone(),
                kept: r.kept.len(),
                coverage: r.coverage,
            })
            .collect(),
        filtered_edge_mass,
        filtered_pair_mass,
        complement_mass,
        class_size_goal,
    })
}
