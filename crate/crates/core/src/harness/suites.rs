//! Seeded property suites, one per identity or claim the reduction is built from.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::{half_graph, matching, random_bipartite, random_kpartite};
use super::search::{min_partition_order, SearchNotion, DEFAULT_MAX_N};
use crate::counting::{hf_coefficient, n_copies};
use crate::error::{Error, Result};
use crate::level::{big_pow, factorial, int, ratio, Level};
use crate::model::io::serialize_pattern_pair;
use crate::model::{
    serialize_graph, BipartiteGraph, KPartiteGraph, Pattern, PatternPair, VertexPartition,
};
use crate::reduction::{
    lift_irregularity_witness, reduce_partition, restrict_partition, slice_check, ReduceOptions,
};
use crate::regularity::{check_bipartite_regular, check_hf_regular, CheckBudget};
use crate::semiblowup::{add_isolated_vertices, build_semi_blowup, pattern_coefficients};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lemma3,
    Obs2,
    Claim4,
    Claim5,
    Claim6,
    Fact7,
    Theorem2,
    SparseObs,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma3,
        Suite::Obs2,
        Suite::Claim4,
        Suite::Claim5,
        Suite::Claim6,
        Suite::Fact7,
        Suite::Theorem2,
        Suite::SparseObs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma3 => "lemma3",
            Suite::Obs2 => "obs2",
            Suite::Claim4 => "claim4",
            Suite::Claim5 => "claim5",
            Suite::Claim6 => "claim6",
            Suite::Fact7 => "fact7",
            Suite::Theorem2 => "theorem2",
            Suite::SparseObs => "sparse_obs",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub trials: usize,
    pub seed: u64,
    /// Fixes the pattern pair for suites that otherwise draw one at random.
    pub pattern: Option<PatternPair>,
    /// Where counterexample files are written on failure.
    pub counterexample_dir: Option<PathBuf>,
    pub budget: CheckBudget,
}

impl SuiteOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        SuiteOptions {
            trials,
            seed,
            pattern: None,
            counterexample_dir: None,
            budget: CheckBudget::exact(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub passed: bool,
    pub note: String,
    /// Tags counted into the report's statistics.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub stats: BTreeMap<&'static str, usize>,
    pub outcomes: Vec<TrialOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn stat(&self, tag: &str) -> usize {
        self.stats.get(tag).copied().unwrap_or(0)
    }
}

/// What a failing trial leaves behind.
struct Trial {
    passed: bool,
    note: String,
    tags: Vec<&'static str>,
    dump: String,
}

impl Trial {
    fn new(passed: bool, note: impl Into<String>, dump: String) -> Self {
        Trial {
            passed,
            note: note.into(),
            tags: Vec::new(),
            dump,
        }
    }

    fn tag(mut self, t: &'static str) -> Self {
        self.tags.push(t);
        self
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn dump(pp: &PatternPair, g: &KPartiteGraph) -> String {
    format!(
        "# pattern (relabelled so that e = (1,2))\n{}# graph\n{}",
        serialize_pattern_pair(pp),
        serialize_graph(g)
    )
}

fn rat(n: &BigUint) -> BigRational {
    int(num_bigint::BigInt::from(n.clone()))
}

/// Random `F ⊊ H` on `[k]` with `e ∈ H ∖ F`.
pub fn random_pattern_pair(rng: &mut impl Rng, k: usize) -> PatternPair {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let mut h: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    if h.is_empty() {
        h.push(*pairs.choose(rng).unwrap());
    }
    let e = *h.choose(rng).unwrap();
    let f: Vec<(usize, usize)> = h
        .iter()
        .copied()
        .filter(|&x| x != e && rng.gen_bool(0.5))
        .collect();
    PatternPair::new(Pattern::new(k, h).unwrap(), Pattern::new(k, f).unwrap(), e)
        .expect("F ⊊ H and e ∈ H ∖ F by construction")
}

/// Random pair whose F is connected (so k ≥ 3).
pub fn random_connected_pair(rng: &mut impl Rng, k: usize) -> PatternPair {
    assert!(k >= 3, "a connected spanning F ⊊ H needs k ≥ 3");
    loop {
        let pp = random_pattern_pair(rng, k);
        if pp.f().is_connected() {
            return pp;
        }
    }
}

fn random_density(rng: &mut impl Rng) -> BigRational {
    [
        ratio(0, 1),
        ratio(1, 4),
        ratio(1, 2),
        ratio(3, 4),
        ratio(1, 1),
    ]
    .choose(rng)
    .unwrap()
    .clone()
}

struct SemiBlowupInstance {
    pp: PatternPair,
    g0: BipartiteGraph,
    g: KPartiteGraph,
}

fn random_semi_blowup(
    rng: &mut ChaCha8Rng,
    fixed: Option<&PatternPair>,
) -> Result<SemiBlowupInstance> {
    let pp = match fixed {
        Some(pp) => pp.clone(),
        None => {
            let k = rng.gen_range(2..=4);
            random_pattern_pair(rng, k)
        }
    };
    let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let p = random_density(rng);
    let g0 = random_bipartite(n1, n2, &p, rng.gen())?;
    let rest: Vec<usize> = (2..pp.k()).map(|_| rng.gen_range(1..=4)).collect();
    let g = build_semi_blowup(&pp, &g0, &rest, false)?;
    Ok(SemiBlowupInstance { pp, g0, g })
}

fn product_of_classes(g: &KPartiteGraph) -> BigUint {
    (0..g.k()).map(|i| BigUint::from(g.class_size(i))).product()
}

fn lemma3(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<Trial> {
    let SemiBlowupInstance { pp, g0, g } = random_semi_blowup(rng, opts.pattern.as_ref())?;
    let c = pattern_coefficients(&pp);
    let d = g0.density();
    let prod = rat(&product_of_classes(&g));
    let nf = rat(&n_copies(pp.f(), &g)?);
    let formula = (int(c.a) + int(c.b) * &d) * &prod;
    let kf = factorial(pp.k());
    let ok = nf == formula && c.a >= 1 && BigUint::from(c.a + c.b) <= kf;
    Ok(Trial::new(
        ok,
        format!(
            "k={} a={} b={} d={} n_F={} formula={}",
            pp.k(),
            c.a,
            c.b,
            d,
            nf,
            formula
        ),
        dump(&pp, &g),
    ))
}

fn obs2(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<Trial> {
    let SemiBlowupInstance { pp, g0, g } = random_semi_blowup(rng, opts.pattern.as_ref())?;
    let c = pattern_coefficients(&pp);
    let d = g0.density();
    let prod = rat(&product_of_classes(&g));
    let nh = rat(&n_copies(pp.h(), &g)?);
    let nf = rat(&n_copies(pp.f(), &g)?);
    let coeff = hf_coefficient(&pp, &g)?.value;
    let expected = &d / (int(c.a) + int(c.b) * &d);
    let ok = nh == &d * &prod && nf >= prod && coeff == expected;
    Ok(Trial::new(
        ok,
        format!(
            "k={} d={} n_H={} coeff={} expected={}",
            pp.k(),
            d,
            nh,
            coeff,
            expected
        ),
        dump(&pp, &g),
    ))
}

fn claim4(rng: &mut ChaCha8Rng, opts: &SuiteOptions, trial: usize) -> Result<Trial> {
    let pp = match &opts.pattern {
        Some(pp) => pp.clone(),
        None if trial % 4 == 3 => random_pattern_pair(rng, 3),
        None => PatternPair::density(),
    };
    let k = pp.k();
    let kp = big_pow(k as u64, 2 * k as u32);
    // eps = r^2 keeps eps' = r·k^{2k} rational
    let target: BigRational = if k == 2 {
        [ratio(1, 2), ratio(1, 3), ratio(1, 4), ratio(1, 5)]
            .choose(rng)
            .unwrap()
            .clone()
    } else {
        ratio(1, 2)
    };
    let r = &target / int(num_bigint::BigInt::from(kp.clone()));
    let eps = &r * &r;
    let eps_prime = Level::rational(target.clone());
    for attempt in 0..200 {
        let (n1, n2) = if k == 2 {
            (rng.gen_range(2..=6), rng.gen_range(2..=6))
        } else {
            (rng.gen_range(2..=4), rng.gen_range(2..=4))
        };
        let g0 = match attempt % 3 {
            0 if n1 == n2 => half_graph(n1),
            1 if n1 == n2 => matching(n1),
            _ => random_bipartite(n1, n2, &random_density(rng), rng.gen())?,
        };
        let verdict = check_bipartite_regular(&g0, &eps_prime, &opts.budget)?;
        let Some(w) = verdict.witness else { continue };
        let rest: Vec<usize> = (2..k).map(|_| rng.gen_range(1..=2)).collect();
        let lifted =
            lift_irregularity_witness(&pp, &g0, &rest, &w.subsets[0], &w.subsets[1], &eps)?;
        let g = build_semi_blowup(&pp, &g0, &rest, false)?;
        let confirm = check_hf_regular(&g, &pp, &Level::rational(eps.clone()), &opts.budget)?;
        let ok = lifted.certified() && confirm.is_irregular();
        return Ok(Trial::new(
            ok,
            format!(
                "k={k} eps={eps} eps'={target} witness={:?} certified={} hf_irregular={}",
                w.subsets,
                lifted.certified(),
                confirm.is_irregular()
            ),
            dump(&pp, &g),
        ));
    }
    Ok(Trial::new(
        false,
        "no bipartite witness found in 200 attempts",
        String::new(),
    ))
}

fn claim5(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = rng.gen_range(1..=30);
    let r = rng.gen_range(1..=n);
    let mut clusters = vec![Vec::new(); r];
    for v in 0..n {
        clusters[rng.gen_range(0..r)].push(v);
    }
    clusters.retain(|c| !c.is_empty());
    let p = VertexPartition::new(clusters)?;
    let size = rng.gen_range(1..=n);
    let v = index::sample(rng, n, size).into_vec();
    let q = rng.gen_range(1..=20u64);
    let alpha = ratio(rng.gen_range(1..=q), q);
    let res = restrict_partition(&p, &v, &alpha)?;
    let bound = (BigRational::one() - &alpha) * int(size as u64);
    let ok = int(res.coverage as u64) >= bound;
    let mut text = String::new();
    for c in p.clusters() {
        let _ = writeln!(text, "{c:?}");
    }
    let _ = writeln!(text, "V = {v:?}\nalpha = {alpha}");
    Ok(Trial::new(
        ok,
        format!(
            "|U|={n} |P|={} |V|={size} alpha={alpha} coverage={} bound={bound}",
            p.order(),
            res.coverage
        ),
        text,
    ))
}

fn claim6(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<Trial> {
    let pp = match &opts.pattern {
        Some(pp) => pp.clone(),
        None => random_pattern_pair(rng, 3),
    };
    let k = pp.k();
    let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let g0 = random_bipartite(n1, n2, &random_density(rng), rng.gen())?;
    let rest: Vec<usize> = (2..k).map(|_| rng.gen_range(1..=3)).collect();
    let t = build_semi_blowup(&pp, &g0, &rest, false)?;
    let mut y = Vec::new();
    let mut deltas = Vec::new();
    for i in 0..k {
        let class: Vec<usize> = t.class(i).collect();
        let size = rng.gen_range(1..=class.len());
        let mut pick: Vec<usize> = index::sample(rng, class.len(), size)
            .into_iter()
            .map(|j| class[j])
            .collect();
        pick.sort_unstable();
        deltas.push(ratio(size as u64, class.len() as u64));
        y.push(pick);
    }
    let eps = [
        ratio(1, 2),
        ratio(1, 4),
        ratio(1, 10),
        ratio(1, 100),
        ratio(1, 1000),
    ]
    .choose(rng)
    .unwrap()
    .clone();
    let cert = slice_check(&pp, &t, &y, &deltas, &eps, &opts.budget)?;
    let mut trial = Trial::new(
        cert.holds(),
        format!(
            "eps={eps} eps'={} vacuous={} nf_bound={} host={:?} transfer={:?} slice_regular={:?}",
            cert.eps_prime,
            cert.vacuous,
            cert.nf_bound,
            cert.host_status,
            cert.transfer,
            cert.slice_regular
        ),
        format!("{}# slices\n{y:?}\n", dump(&pp, &t)),
    );
    if cert.transfer.is_some() {
        trial = trial.tag("host_regular");
    }
    Ok(trial)
}

fn fact7(rng: &mut ChaCha8Rng, opts: &SuiteOptions, trial: usize) -> Result<Trial> {
    let eps = [ratio(1, 2), ratio(2, 5), ratio(1, 4)][trial % 3].clone();
    let (n1, n2) = (rng.gen_range(2..=8), rng.gen_range(2..=8));
    let cube = &eps * &eps * &eps;
    let max_edges: u64 = num_integer::Integer::div_floor(
        &(cube.numer() * num_bigint::BigInt::from((n1 * n2) as u64)),
        cube.denom(),
    )
    .try_into()
    .unwrap_or(0);
    let m = rng.gen_range(0..=max_edges) as usize;
    let edges: Vec<(usize, usize)> = index::sample(rng, n1 * n2, m)
        .into_iter()
        .map(|x| (x / n2, x % n2))
        .collect();
    let g0 = BipartiteGraph::from_sides(n1, n2, edges)?;
    let v = check_bipartite_regular(&g0, &Level::rational(eps.clone()), &opts.budget)?;
    Ok(Trial::new(
        v.is_regular(),
        format!("eps={eps} {n1}+{n2} edges={m} d={}", g0.density()),
        serialize_graph(g0.graph()),
    ))
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Result<VertexPartition> {
    let r = rng.gen_range(1..=n);
    let mut clusters = vec![Vec::new(); r];
    for v in 0..n {
        clusters[rng.gen_range(0..r)].push(v);
    }
    clusters.retain(|c| !c.is_empty());
    VertexPartition::new(clusters)
}

fn theorem2(rng: &mut ChaCha8Rng, opts: &SuiteOptions, trial: usize) -> Result<Trial> {
    let k3 = trial % 3 == 2;
    let pp = match &opts.pattern {
        Some(pp) => pp.clone(),
        None if k3 => PatternPair::clustering(),
        None => PatternPair::density(),
    };
    let k = pp.k();
    let n = if k == 2 {
        rng.gen_range(2..=5)
    } else {
        rng.gen_range(2..=3)
    };
    let g0 = random_bipartite(n, n, &random_density(rng), rng.gen())?;
    let eps = if k == 2 {
        [20u32, 24, 28, 32]
            .map(|e| ratio(1, 1u64 << e))
            .choose(rng)
            .unwrap()
            .clone()
    } else {
        // 2^-4·3^-24 gives eps' = 1/2 for k = 3; the others are vacuous
        let tiny = ratio(1, 16) / int(num_bigint::BigInt::from(big_pow(3, 24)));
        [tiny, ratio(1, 2), ratio(1, 100)]
            .choose(rng)
            .unwrap()
            .clone()
    };
    let g = build_semi_blowup(&pp, &g0, &vec![n; k - 2], true)?;
    let p = if trial.is_multiple_of(2) || g.vertex_count() > DEFAULT_MAX_N {
        random_partition(rng, g.vertex_count())?
    } else {
        match min_partition_order(
            &g,
            &SearchNotion::Hf(pp.clone()),
            &Level::rational(eps.clone()),
            DEFAULT_MAX_N,
            &opts.budget,
        ) {
            Ok(found) => found.partition,
            // n_H = 0: no partition is certified; fall back to a random one
            Err(Error::Precondition(_)) => random_partition(rng, g.vertex_count())?,
            Err(e) => return Err(e),
        }
    };
    let report = reduce_partition(
        &pp,
        &g0,
        &p,
        &eps,
        &ReduceOptions {
            budget: opts.budget,
            ..ReduceOptions::default()
        },
    )?;
    let input_regular = report
        .input_verdict
        .as_ref()
        .is_some_and(|v| v.is_regular());
    let output_regular = report.passed();
    // the forward statement and its contrapositive
    let mut ok = !input_regular || output_regular;
    if input_regular {
        ok &= report.filtered_edge_mass.holds && report.complement_mass.holds;
    }
    let mut text = dump(&pp, &g);
    for c in p.clusters() {
        let _ = writeln!(text, "# cluster {c:?}");
    }
    let mut t = Trial::new(
        ok,
        format!(
            "k={k} n={n} eps={eps} eps'={} vacuous={} |P|={} |Q|={} P_regular={input_regular} Q_regular={output_regular}",
            report.eps_out, report.vacuous, report.input_order, report.output_order
        ),
        text,
    );
    if input_regular {
        t = t.tag("certified");
        if !report.vacuous {
            t = t.tag("certified_non_vacuous");
        }
    }
    if !output_regular {
        t = t.tag("output_irregular");
    }
    if !report.vacuous {
        t = t.tag("non_vacuous");
    }
    Ok(t)
}

/// Checks the isolated-vertex observation on one instance.
pub fn check_sparse_observation(
    pp: &PatternPair,
    g: &KPartiteGraph,
    extra: &[usize],
    eps: &Level,
    budget: &CheckBudget,
) -> Result<(bool, String)> {
    if !pp.f().is_connected() {
        return Err(Error::Precondition(
            "the isolated-vertex observation needs a connected F".into(),
        ));
    }
    let padded = add_isolated_vertices(g, extra)?;
    let counts_equal = n_copies(pp.f(), g)? == n_copies(pp.f(), &padded)?
        && n_copies(pp.h(), g)? == n_copies(pp.h(), &padded)?;
    if n_copies(pp.f(), g)?.is_zero() {
        return Ok((
            counts_equal,
            format!("counts_equal={counts_equal} undefined"),
        ));
    }
    let padded_v = check_hf_regular(&padded, pp, eps, budget)?;
    let original_v = check_hf_regular(g, pp, eps, budget)?;
    let implication = !padded_v.is_regular() || original_v.is_regular();
    Ok((
        counts_equal && implication,
        format!(
            "counts_equal={counts_equal} padded={:?} original={:?}",
            padded_v.status, original_v.status
        ),
    ))
}

fn sparse_obs(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<Trial> {
    let pp = match &opts.pattern {
        Some(pp) => pp.clone(),
        None => {
            let k = rng.gen_range(3..=4);
            random_connected_pair(rng, k)
        }
    };
    let k = pp.k();
    let (max_size, max_extra) = if k <= 3 { (3, 2) } else { (2, 1) };
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_size)).collect();
    let g = random_kpartite(&sizes, &random_density(rng), rng.gen())?;
    let extra: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=max_extra)).collect();
    let eps = [ratio(1, 2), ratio(1, 4), ratio(1, 10)]
        .choose(rng)
        .unwrap()
        .clone();
    let (ok, note) =
        check_sparse_observation(&pp, &g, &extra, &Level::rational(eps.clone()), &opts.budget)?;
    Ok(Trial::new(
        ok,
        format!("eps={eps} extra={extra:?} {note}"),
        format!("{}# extra {extra:?}\n", dump(&pp, &g)),
    ))
}

fn run_trial(suite: Suite, opts: &SuiteOptions, trial: usize) -> Result<Trial> {
    let mut rng = trial_rng(opts.seed, trial);
    match suite {
        Suite::Lemma3 => lemma3(&mut rng, opts),
        Suite::Obs2 => obs2(&mut rng, opts),
        Suite::Claim4 => claim4(&mut rng, opts, trial),
        Suite::Claim5 => claim5(&mut rng),
        Suite::Claim6 => claim6(&mut rng, opts),
        Suite::Fact7 => fact7(&mut rng, opts, trial),
        Suite::Theorem2 => theorem2(&mut rng, opts, trial),
        Suite::SparseObs => sparse_obs(&mut rng, opts),
    }
}

/// Runs `opts.trials` seeded trials of a suite. Trials are independent and run in
/// parallel; the report lists them in trial order.
pub fn verify_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    if suite == Suite::SparseObs {
        if let Some(pp) = &opts.pattern {
            if !pp.f().is_connected() {
                return Err(Error::Precondition("sparse_obs needs a connected F".into()));
            }
        }
    }
    if let Some(dir) = &opts.counterexample_dir {
        std::fs::create_dir_all(dir)?;
    }
    let outcomes: Vec<TrialOutcome> = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let trial = run_trial(suite, opts, i)
                .unwrap_or_else(|e| Trial::new(false, format!("error: {e}"), String::new()));
            let counterexample = match (&opts.counterexample_dir, trial.passed) {
                (Some(dir), false) => {
                    let path = dir.join(format!("{}-trial{i}.txt", suite.name()));
                    let body = format!("# {}\n{}", trial.note, trial.dump);
                    std::fs::write(&path, body)?;
                    Some(path.display().to_string())
                }
                _ => None,
            };
            Ok(TrialOutcome {
                trial: i,
                passed: trial.passed,
                note: trial.note,
                tags: trial.tags,
                counterexample,
            })
        })
        .collect::<Result<_>>()?;
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut stats = BTreeMap::new();
    for o in &outcomes {
        for &t in &o.tags {
            *stats.entry(t).or_insert(0) += 1;
        }
    }
    Ok(SuiteReport {
        suite,
        trials: opts.trials,
        seed: opts.seed,
        passed,
        failed: outcomes.len() - passed,
        stats,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma4".parse::<Suite>().is_err());
    }

    #[test]
    fn random_pairs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 2..=5 {
            for _ in 0..50 {
                let pp = random_pattern_pair(&mut rng, k);
                assert!(pp.f().is_subgraph_of(pp.h()));
                assert!(pp.h().has_edge(0, 1) && !pp.f().has_edge(0, 1));
            }
        }
    }

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let r = verify_suite(s, &SuiteOptions::new(6, 11)).unwrap();
            assert!(r.all_passed(), "{}: {:?}", s.name(), r.outcomes);
        }
    }

    #[test]
    fn sparse_obs_refuses_disconnected_f() {
        let pp = PatternPair::new(
            Pattern::complete(3),
            Pattern::new(3, [(1, 2)]).unwrap(),
            (0, 1),
        )
        .unwrap();
        let opts = SuiteOptions {
            pattern: Some(pp),
            ..SuiteOptions::new(3, 1)
        };
        assert!(matches!(
            verify_suite(Suite::SparseObs, &opts),
            Err(Error::Precondition(_))
        ));
    }
}
