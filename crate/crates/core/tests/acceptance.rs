//! Acceptance criteria, one line of output per criterion. Exits nonzero on any failure.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hfreg::harness::generate::{complete_bipartite, half_graph, matching, random_bipartite};
use hfreg::harness::suites::random_pattern_pair;
use hfreg::harness::{min_partition_order, tower, verify_suite, SearchNotion, Suite, SuiteOptions};
use hfreg::level::{big_pow, ratio, Level};
use hfreg::model::{BipartiteGraph, PatternPair};
use hfreg::reduction::{k_power, reduce_partition, ReduceOptions};
use hfreg::regularity::{check_bipartite_regular, check_hf_regular, CheckBudget};
use hfreg::semiblowup::Transfer;
use hfreg::semiblowup::{balanced_semi_blowup, pattern_coefficients, SemiBlowupCoefficients};

const SEED: u64 = 20240601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn suite(s: Suite, trials: usize) -> Outcome {
    match verify_suite(s, &SuiteOptions::new(trials, SEED)) {
        Ok(r) => {
            let first_failure = r
                .outcomes
                .iter()
                .find(|o| !o.passed)
                .map(|o| format!("; trial {}: {}", o.trial, o.note))
                .unwrap_or_default();
            outcome(
                r.all_passed() && r.trials >= trials,
                format!(
                    "{}: {}/{} trials passed{first_failure}",
                    s.name(),
                    r.passed,
                    r.trials
                ),
            )
        }
        Err(e) => outcome(false, format!("{}: {e}", s.name())),
    }
}

/// Exact checks of f, g and the derivative bound for one coefficient pair.
fn transfer_holds(
    c: &SemiBlowupCoefficients,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let mut xs: Vec<BigRational> = (0..100)
        .map(|_| {
            let q = rng.gen_range(1..=1000u64);
            ratio(rng.gen_range(0..=q), q)
        })
        .collect();
    xs.sort();
    xs.dedup();
    let f = |x: &BigRational| c.f(x).map_err(|e| e.to_string());
    for x in &xs {
        let back = c.g(&f(x)?).map_err(|e| e.to_string())?;
        if back != *x {
            return Err(format!("g(f({x})) = {back}"));
        }
    }
    for w in xs.windows(2) {
        if f(&w[0])? >= f(&w[1])? {
            return Err(format!("f not increasing at {} < {}", w[0], w[1]));
        }
    }
    if f(&BigRational::one())? != ratio(1, c.a + c.b) {
        return Err("f(1) != 1/(a+b)".into());
    }
    let bound = k_power(k);
    let proviso = c.derivative_proviso().unwrap_or_else(BigRational::one);
    for x in &xs {
        for eps in [
            proviso.clone(),
            &proviso * ratio(rng.gen_range(1..=100u64), 100),
        ] {
            let y = f(x)? + &eps;
            let slope = c
                .evaluate(Transfer::GPrime, &y)
                .map_err(|e| e.to_string())?;
            if slope > bound {
                return Err(format!("g'(f({x}) + {eps}) = {slope} > {bound}"));
            }
        }
    }
    Ok(())
}

fn criterion_transfer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = std::collections::BTreeMap::new();
    for _ in 0..500 {
        let k = rng.gen_range(2..=4);
        let c = pattern_coefficients(&random_pattern_pair(&mut rng, k));
        // the bound is weakest for the smallest k an (a,b) pair occurs with
        let slot = pairs.entry((c.a, c.b)).or_insert((c, k));
        slot.1 = slot.1.min(k);
    }
    for (c, k) in pairs.values() {
        if let Err(e) = transfer_holds(c, *k, &mut rng) {
            return outcome(false, format!("(a,b) = ({},{}): {e}", c.a, c.b));
        }
    }
    outcome(
        true,
        format!("{} distinct (a,b) pairs, 100 rationals each", pairs.len()),
    )
}

fn g0_family(n: usize) -> Vec<(String, BipartiteGraph)> {
    let mut out = vec![
        (format!("complete {n}+{n}"), complete_bipartite(n, n)),
        (format!("matching {n}"), matching(n)),
        (format!("half graph {n}"), half_graph(n)),
    ];
    for seed in 0..4 {
        for p in [ratio(1, 2), ratio(3, 4)] {
            let g = random_bipartite(n, n, &p, 100 * n as u64 + seed).unwrap();
            if g.edge_count() > 0 {
                out.push((format!("G({n},{n},{p}) seed {seed}"), g));
            }
        }
    }
    out
}

struct Case {
    certified: bool,
    vacuous: bool,
    passed: bool,
}

fn run_case(pp: &PatternPair, g0: &BipartiteGraph, eps: &BigRational) -> Result<Case, String> {
    let g = balanced_semi_blowup(pp, g0).map_err(|e| e.to_string())?;
    let budget = CheckBudget::exact();
    let found = min_partition_order(
        &g,
        &SearchNotion::Hf(pp.clone()),
        &Level::rational(eps.clone()),
        12,
        &budget,
    )
    .map_err(|e| e.to_string())?;
    let report = reduce_partition(pp, g0, &found.partition, eps, &ReduceOptions::default())
        .map_err(|e| e.to_string())?;
    let certified = report
        .input_verdict
        .as_ref()
        .is_some_and(|v| v.is_regular());
    Ok(Case {
        certified,
        vacuous: report.vacuous,
        passed: report.passed() && report.output_verdict.is_regular(),
    })
}

fn criterion_theorem2() -> Outcome {
    let k3 = PatternPair::clustering();
    let (mut curated, mut vacuous, mut bad) = (0, 0, Vec::new());
    for n in [3, 4] {
        for (name, g0) in g0_family(n) {
            for eps in [ratio(1, 2), ratio(1, 4)] {
                match run_case(&k3, &g0, &eps) {
                    Ok(c) if c.certified && c.passed => {
                        curated += 1;
                        vacuous += c.vacuous as usize;
                    }
                    Ok(_) => bad.push(format!("K3 over {name} at {eps}")),
                    Err(e) => bad.push(format!("K3 over {name} at {eps}: {e}")),
                }
            }
        }
    }
    let density = PatternPair::density();
    let mut non_vacuous = 0;
    for n in 2..=5 {
        for (name, g0) in g0_family(n).into_iter().take(5) {
            let eps = ratio(1, 1u64 << 20);
            match run_case(&density, &g0, &eps) {
                Ok(c) if c.certified && c.passed => non_vacuous += !c.vacuous as usize,
                Ok(_) => bad.push(format!("K2 over {name}")),
                Err(e) => bad.push(format!("K2 over {name}: {e}")),
            }
        }
    }
    let randomized = suite(Suite::Theorem2, 200);
    let passed = bad.is_empty() && curated >= 20 && non_vacuous >= 5 && randomized.passed;
    outcome(
        passed,
        format!(
            "{curated} curated K3 cases ({vacuous} vacuous), {non_vacuous} non-vacuous k=2 cases, {}{}",
            randomized.detail,
            bad.first().map(|b| format!("; failed: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_tower() -> Outcome {
    let small: Vec<String> = (0..=4).map(|n| tower(n).unwrap().to_string()).collect();
    let top = tower(5).unwrap();
    let ok =
        small == ["1", "2", "4", "16", "65536"] && top.bits() == 65537 && top == big_pow(2, 65536);
    outcome(
        ok,
        format!(
            "tower(0..4) = {}, bits(tower(5)) = {}",
            small.join(", "),
            top.bits()
        ),
    )
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn cli(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_hfreg"))
        .args(args)
        .output()
        .map(|o| o.stdout)
        .unwrap_or_default()
}

fn criterion_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let g_str = g.to_str().unwrap().to_string();
    std::fs::write(
        &g,
        cli(&[
            "semiblowup",
            "--descriptor",
            data("half4.semi").to_str().unwrap(),
        ]),
    )
    .unwrap();
    let (half, k3) = (data("half4.txt"), data("k3.txt"));
    let (half, k3) = (half.to_str().unwrap(), k3.to_str().unwrap());
    let commands: Vec<Vec<&str>> = vec![
        vec!["count", "--graph", &g_str, "--pattern", k3],
        vec!["coeff", "--graph", &g_str, "--pattern", k3],
        vec![
            "check",
            "--graph",
            half,
            "--notion",
            "bipartite",
            "--eps",
            "1/5",
        ],
        vec![
            "check",
            "--graph",
            &g_str,
            "--notion",
            "hf",
            "--pattern",
            k3,
            "--eps",
            "1/10",
        ],
        vec![
            "check",
            "--graph",
            half,
            "--notion",
            "bipartite",
            "--eps",
            "1/4",
            "--mode",
            "sampled",
            "--seed",
            "9",
        ],
        vec![
            "search-min",
            "--graph",
            half,
            "--notion",
            "bipartite",
            "--eps",
            "1/8",
        ],
        vec![
            "verify", "--suite", "claim6", "--trials", "50", "--seed", "1",
        ],
        vec![
            "verify", "--suite", "theorem2", "--trials", "20", "--seed", "1",
        ],
    ];
    for args in &commands {
        let runs: Vec<Vec<u8>> = [None, Some("1"), Some("4")]
            .iter()
            .map(|w| {
                let mut full: Vec<&str> = w.map(|w| vec!["--workers", w]).unwrap_or_default();
                full.extend(args);
                cli(&full)
            })
            .collect();
        if runs[0].is_empty() || runs.iter().any(|r| *r != runs[0]) || cli(args) != runs[0] {
            return outcome(false, format!("output differs for {args:?}"));
        }
    }
    // library-level: first witnesses under explicit pools of different sizes
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut compared = 0;
    for _ in 0..40 {
        let g0 = random_bipartite(
            rng.gen_range(6..=12),
            rng.gen_range(6..=12),
            &ratio(1, 2),
            rng.gen(),
        )
        .unwrap();
        let eps = Level::rational(ratio(1, rng.gen_range(4..=8u64)));
        let pp = random_pattern_pair(&mut rng, 3);
        let g = balanced_semi_blowup(
            &pp,
            &random_bipartite(3, 3, &ratio(1, 2), rng.gen()).unwrap(),
        )
        .unwrap();
        let at = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                let b = check_bipartite_regular(&g0, &eps, &CheckBudget::exact()).unwrap();
                let h = check_hf_regular(&g, &pp, &eps, &CheckBudget::exact()).ok();
                serde_json::to_string(&(b, h)).unwrap()
            })
        };
        if at(1) != at(8) {
            return outcome(false, "exact witnesses depend on the worker count");
        }
        compared += 1;
    }
    outcome(
        true,
        format!("{} CLI commands byte-identical across reruns and 1/4 workers; {compared} witness pairs match with 1 and 8 threads", commands.len()),
    )
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "n_F of semi-blowups",
            Box::new(|| suite(Suite::Lemma3, 500)),
        ),
        (
            "n_H and the coefficient of semi-blowups",
            Box::new(|| suite(Suite::Obs2, 500)),
        ),
        ("transfer functions", Box::new(criterion_transfer)),
        (
            "lifted irregularity witnesses",
            Box::new(|| suite(Suite::Claim4, 100)),
        ),
        (
            "restriction coverage",
            Box::new(|| suite(Suite::Claim5, 1000)),
        ),
        (
            "sparse graphs are regular",
            Box::new(|| suite(Suite::Fact7, 500)),
        ),
        (
            "partition reduction end to end",
            Box::new(criterion_theorem2),
        ),
        (
            "isolated vertices",
            Box::new(|| suite(Suite::SparseObs, 200)),
        ),
        ("tower values", Box::new(criterion_tower)),
        ("determinism", Box::new(criterion_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {}: {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += !o.passed as usize;
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
