use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hfreg::counting::{count_copies, count_labeled, hf_coefficient};
use hfreg::harness::{
    min_partition_order, run_experiment, tower, verify_suite, SearchNotion, Suite, SuiteOptions,
};
use hfreg::level::{format_rational, parse_rational};
use hfreg::model::io::{serialize_partition, SemiBlowupDescriptor};
use hfreg::model::{
    parse_instance, parse_partition, parse_pattern_pair, serialize_graph, BipartiteGraph,
    KPartiteGraph, PatternPair, RegularityVerdict, Status,
};
use hfreg::reduction::{reduce_partition, side_refinement, ReduceOptions};
use hfreg::regularity::{
    check_bipartite_regular, check_hf_regular, check_hf_regular_partition, check_regular_partition,
    CheckBudget, Mode, DEFAULT_MAX_ENUMERATIONS, DEFAULT_SAMPLE_COUNT,
};
use hfreg::semiblowup::{build_blowup, build_semi_blowup, from_descriptor};
use hfreg::{Error, Level, Result};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_UNDEFINED: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "hfreg", version, about = "Exact (H,F)-regularity toolkit")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    H,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum NotionArg {
    Bipartite,
    Hf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Count transversal copies of H or F.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "h")]
        of: Which,
        #[arg(long)]
        labeled: bool,
    },
    /// The (H,F)-coefficient n_H/n_F.
    Coeff {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Edge density of a bipartite graph.
    Density {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Blowup of H (or F) with the given class sizes.
    Blowup {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "h")]
        of: Which,
    },
    /// Semi-blowup from a descriptor file, or from a pattern and G_0.
    Semiblowup {
        #[arg(long, conflicts_with_all = ["pattern", "g0"])]
        descriptor: Option<PathBuf>,
        #[arg(long, requires = "g0")]
        pattern: Option<PathBuf>,
        #[arg(long)]
        g0: Option<PathBuf>,
        /// Size of classes 3..k (default |V_1(G_0)|).
        #[arg(long)]
        n: Option<usize>,
        /// Require all classes to have the same size.
        #[arg(long)]
        balanced: bool,
    },
    /// Check regularity of a graph, or of a partition with --partition.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        notion: NotionArg,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        eps: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATIONS)]
        max_enum: u64,
        /// Include the elapsed time (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Common refinement of a partition with the first two classes.
    Refine {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Reduce a partition of the balanced semi-blowup over G_0.
    Reduce {
        #[arg(long)]
        g0: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        eps: String,
        /// Skip verifying the input partition.
        #[arg(long)]
        trusted: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATIONS)]
        max_enum: u64,
    },
    /// Exhaustive minimum-order regular partition.
    SearchMin {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        notion: NotionArg,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = hfreg::harness::search::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Directory for counterexample files.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
    /// Run an experiment from a TOML config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// twr(n) for n ≤ 5.
    Tower { n: u32 },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_graph(path: &Path) -> Result<KPartiteGraph> {
    parse_instance(&read(path)?)
}

fn load_bipartite(path: &Path) -> Result<BipartiteGraph> {
    BipartiteGraph::new(load_graph(path)?)
}

fn load_pattern(path: &Path) -> Result<PatternPair> {
    parse_pattern_pair(&read(path)?)
}

fn need_pattern(p: &Option<PathBuf>) -> Result<PatternPair> {
    match p {
        Some(p) => load_pattern(p),
        None => Err(Error::Config(
            "--pattern is required for the hf notion".into(),
        )),
    }
}

fn eps_level(text: &str) -> Result<Level> {
    Ok(Level::rational(parse_rational(text)?))
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn verdict_code(v: &RegularityVerdict) -> u8 {
    match v.status {
        Status::Regular | Status::NoWitnessFound => EXIT_PASS,
        Status::Irregular => EXIT_FAIL,
        Status::Undefined => EXIT_UNDEFINED,
    }
}

/// Runs a command, returning the report text and exit code.
fn run(cli: &Cli) -> Result<(String, u8)> {
    Ok(match &cli.command {
        Command::Count {
            graph,
            pattern,
            of,
            labeled,
        } => {
            let g = load_graph(graph)?;
            let pp = load_pattern(pattern)?;
            let (name, p) = match of {
                Which::H => ("H", pp.h()),
                Which::F => ("F", pp.f()),
            };
            let c = if *labeled {
                count_labeled(p, &g.full_view())?
            } else {
                count_copies(p, &g.full_view())?
            };
            let report = json!({
                "pattern": name,
                "convention": c.convention,
                "count": c.value.to_string(),
            });
            (json_text(&report)?, EXIT_PASS)
        }
        Command::Coeff { graph, pattern } => {
            let g = load_graph(graph)?;
            let pp = load_pattern(pattern)?;
            match hf_coefficient(&pp, &g) {
                Ok(c) => (
                    json_text(&json!({
                        "n_h": c.numerator.to_string(),
                        "n_f": c.denominator.to_string(),
                        "coefficient": format_rational(&c.value),
                    }))?,
                    EXIT_PASS,
                ),
                Err(Error::ZeroDenominator) => (
                    json_text(&json!({ "n_f": "0", "coefficient": null, "undefined": true }))?,
                    EXIT_UNDEFINED,
                ),
                Err(e) => return Err(e),
            }
        }
        Command::Density { graph } => {
            let g = load_bipartite(graph)?;
            let report = json!({
                "left": g.left_size(),
                "right": g.right_size(),
                "edges": g.edge_count(),
                "density": format_rational(&g.density()),
            });
            (json_text(&report)?, EXIT_PASS)
        }
        Command::Blowup { pattern, sizes, of } => {
            let pp = load_pattern(pattern)?;
            let p = match of {
                Which::H => pp.h(),
                Which::F => pp.f(),
            };
            (serialize_graph(&build_blowup(p, sizes)?), EXIT_PASS)
        }
        Command::Semiblowup {
            descriptor,
            pattern,
            g0,
            n,
            balanced,
        } => {
            let g = match (descriptor, pattern, g0) {
                (Some(d), _, _) => {
                    let desc = SemiBlowupDescriptor::parse(&read(d)?)?;
                    let base = d.parent().unwrap_or(Path::new("."));
                    from_descriptor(&desc, base)?.1
                }
                (None, Some(p), Some(g0)) => {
                    let pp = load_pattern(p)?;
                    let g0 = load_bipartite(g0)?;
                    let n = n.unwrap_or(g0.left_size());
                    build_semi_blowup(&pp, &g0, &vec![n; pp.k() - 2], *balanced)?
                }
                _ => {
                    return Err(Error::Config(
                        "give --descriptor, or --pattern with --g0".into(),
                    ))
                }
            };
            (serialize_graph(&g), EXIT_PASS)
        }
        Command::Check {
            graph,
            notion,
            pattern,
            partition,
            eps,
            mode,
            seed,
            samples,
            max_enum,
            timing,
        } => {
            let eps = eps_level(eps)?;
            let budget = CheckBudget {
                mode: match mode {
                    ModeArg::Exact => Mode::Exact,
                    ModeArg::Sampled => Mode::Sampled,
                },
                max_enumerations: *max_enum,
                sample_count: *samples,
                seed: *seed,
            };
            let start = Instant::now();
            let partition = partition
                .as_ref()
                .map(|p| read(p).and_then(|t| parse_partition(&t)));
            let mut verdict = match (notion, partition) {
                (NotionArg::Bipartite, None) => {
                    check_bipartite_regular(&load_bipartite(graph)?, &eps, &budget)?
                }
                (NotionArg::Bipartite, Some(q)) => {
                    check_regular_partition(&load_bipartite(graph)?, &q?, &eps, &budget)?
                }
                (NotionArg::Hf, None) => {
                    check_hf_regular(&load_graph(graph)?, &need_pattern(pattern)?, &eps, &budget)?
                }
                (NotionArg::Hf, Some(p)) => check_hf_regular_partition(
                    &load_graph(graph)?,
                    &p?,
                    &need_pattern(pattern)?,
                    &eps,
                    &budget,
                )?,
            };
            if *timing {
                verdict.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            (json_text(&verdict)?, verdict_code(&verdict))
        }
        Command::Refine { graph, partition } => {
            let g = load_graph(graph)?;
            let p = parse_partition(&read(partition)?)?;
            let v1: Vec<usize> = g.class(0).collect();
            let v2: Vec<usize> = g.class(1).collect();
            (
                serialize_partition(&side_refinement(&p, &v1, &v2)?),
                EXIT_PASS,
            )
        }
        Command::Reduce {
            g0,
            pattern,
            partition,
            eps,
            trusted,
            max_enum,
        } => {
            let g0 = load_bipartite(g0)?;
            let pp = load_pattern(pattern)?;
            let p = parse_partition(&read(partition)?)?;
            let opts = ReduceOptions {
                trusted: *trusted,
                budget: CheckBudget::exact().with_max_enumerations(*max_enum),
                ..ReduceOptions::default()
            };
            let report = reduce_partition(&pp, &g0, &p, &parse_rational(eps)?, &opts)?;
            let code = if report.vacuous {
                EXIT_UNDEFINED
            } else if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            (json_text(&report)?, code)
        }
        Command::SearchMin {
            graph,
            notion,
            pattern,
            eps,
            max_n,
        } => {
            let g = load_graph(graph)?;
            let notion = match notion {
                NotionArg::Bipartite => SearchNotion::Bipartite,
                NotionArg::Hf => SearchNotion::Hf(need_pattern(pattern)?),
            };
            let r =
                min_partition_order(&g, &notion, &eps_level(eps)?, *max_n, &CheckBudget::exact())?;
            (json_text(&r)?, EXIT_PASS)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            pattern,
            counterexamples,
        } => {
            let suite: Suite = suite.parse()?;
            let opts = SuiteOptions {
                pattern: pattern.as_ref().map(|p| load_pattern(p)).transpose()?,
                counterexample_dir: counterexamples.clone(),
                ..SuiteOptions::new(*trials, *seed)
            };
            let report = verify_suite(suite, &opts)?;
            let code = if report.all_passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            (json_text(&report)?, code)
        }
        Command::Experiment { config } => {
            let out = run_experiment(config)?;
            let summary = json!({
                "report": out.report.display().to_string(),
                "table": out.table.display().to_string(),
                "truncated": out.truncated,
            });
            (json_text(&summary)?, EXIT_PASS)
        }
        Command::Tower { n } => (format!("{}\n", tower(*n)?), EXIT_PASS),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
