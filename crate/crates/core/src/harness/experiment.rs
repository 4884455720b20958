//! Config-driven pipeline: generate `G_0`, build the balanced semi-blowup, search for
//! minimum-order regular partitions and reduce the (H,F) one.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::generate::{generate, GeneratorSpec};
use super::search::{min_partition_order, SearchNotion, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::level::{parse_rational, Level};
use crate::model::{parse_pattern_pair, BipartiteGraph, PatternPair};
use crate::reduction::{reduce_partition, ReduceOptions, ReductionReport};
use crate::regularity::CheckBudget;
use crate::semiblowup::balanced_semi_blowup;
use crate::serde_util;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentNotion {
    Bipartite,
    Hf,
}

fn default_notions() -> Vec<ExperimentNotion> {
    vec![ExperimentNotion::Bipartite, ExperimentNotion::Hf]
}

fn default_max_n() -> usize {
    DEFAULT_MAX_N
}

/// TOML experiment description. Relative paths resolve against the config file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub pattern: PathBuf,
    pub generator: GeneratorSpec,
    /// Rationals `p/q` in (0,1].
    pub eps: Vec<String>,
    #[serde(default = "default_notions")]
    pub notions: Vec<ExperimentNotion>,
    #[serde(default)]
    pub budget: CheckBudget,
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    /// Output directory for `report.json` and `table.csv`.
    pub output: PathBuf,
    /// Record wall-clock runtimes (reports are then no longer reproducible).
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.generator.validate()?;
        if self.eps.is_empty() {
            return Err(Error::Config("eps schedule is empty".into()));
        }
        for e in &self.eps {
            let v = parse_rational(e)?;
            if v <= num_traits::Zero::zero() || v > num_traits::One::one() {
                return Err(Error::Config(format!("eps = {e} is outside (0,1]")));
            }
        }
        if self.notions.is_empty() {
            return Err(Error::Config("no notions selected".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub eps: String,
    pub notion: ExperimentNotion,
    pub order: Option<usize>,
    pub examined: Option<u64>,
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(serialize_with = "serde_util::opt_biguint")]
    pub mass: Option<num_bigint::BigUint>,
    pub vacuous: Option<bool>,
    pub reduction: Option<ReductionReport>,
    /// Set when a budget or size guard stopped this row.
    pub truncated: Option<String>,
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub g0_sizes: (usize, usize),
    pub g0_edges: usize,
    pub semi_blowup_vertices: usize,
    pub truncated: bool,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("eps,notion,order,mass,vacuous,runtime\n");
        for r in &self.rows {
            let notion = match r.notion {
                ExperimentNotion::Bipartite => "bipartite",
                ExperimentNotion::Hf => "hf",
            };
            let order = r.order.map_or("truncated".to_string(), |o| o.to_string());
            let mass = r.mass.as_ref().map_or(String::new(), |m| m.to_string());
            let vacuous = r.vacuous.map_or(String::new(), |v| v.to_string());
            // wall-clock milliseconds with timing on, otherwise partitions examined
            let runtime = match (r.runtime_ms, r.examined) {
                (Some(ms), _) => format!("{ms}ms"),
                (None, Some(n)) => n.to_string(),
                (None, None) => String::new(),
            };
            let _ = writeln!(out, "{},{notion},{order},{mass},{vacuous},{runtime}", r.eps);
        }
        out
    }
}

fn truncation(e: &Error) -> Option<String> {
    matches!(e, Error::BudgetExceeded { .. }).then(|| e.to_string())
}

/// Runs the pipeline and returns the report without writing files.
pub fn run_pipeline(cfg: &ExperimentConfig, pp: &PatternPair) -> Result<ExperimentReport> {
    cfg.validate()?;
    let g0 = BipartiteGraph::new(generate(&cfg.generator)?)
        .map_err(|_| Error::Config("the generator must produce a bipartite graph".into()))?;
    let g = balanced_semi_blowup(pp, &g0)?;
    let mut rows = Vec::new();
    for eps_text in &cfg.eps {
        let eps = parse_rational(eps_text)?;
        let level = Level::rational(eps.clone());
        for &notion in &cfg.notions {
            let start = Instant::now();
            let (graph, search) = match notion {
                ExperimentNotion::Bipartite => (g0.graph(), SearchNotion::Bipartite),
                ExperimentNotion::Hf => (&g, SearchNotion::Hf(pp.clone())),
            };
            let mut row = ExperimentRow {
                eps: eps_text.clone(),
                notion,
                order: None,
                examined: None,
                partition: None,
                mass: None,
                vacuous: None,
                reduction: None,
                truncated: None,
                runtime_ms: None,
            };
            match min_partition_order(graph, &search, &level, cfg.max_n, &cfg.budget) {
                Ok(found) => {
                    row.order = Some(found.order);
                    row.examined = Some(found.examined);
                    row.mass = found.verdict.mass.as_ref().map(|m| m.mass.clone());
                    row.partition = Some(found.partition.clusters().to_vec());
                    if notion == ExperimentNotion::Hf {
                        let opts = ReduceOptions {
                            trusted: true,
                            budget: cfg.budget,
                            ..ReduceOptions::default()
                        };
                        match reduce_partition(pp, &g0, &found.partition, &eps, &opts) {
                            Ok(report) => {
                                row.vacuous = Some(report.vacuous);
                                row.reduction = Some(report);
                            }
                            Err(e) => row.truncated = Some(truncation(&e).ok_or(e)?),
                        }
                    } else {
                        row.vacuous = Some(false);
                    }
                }
                Err(e) => row.truncated = Some(truncation(&e).ok_or(e)?),
            }
            if cfg.timing {
                row.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            rows.push(row);
        }
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        g0_sizes: (g0.left_size(), g0.right_size()),
        g0_edges: g0.edge_count(),
        semi_blowup_vertices: g.vertex_count(),
        truncated: rows.iter().any(|r| r.truncated.is_some()),
        rows,
    })
}

/// Paths of the files written by [`run_experiment`].
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub report: PathBuf,
    pub table: PathBuf,
    pub truncated: bool,
}

/// Loads the config at `path`, runs it and writes `report.json` and `table.csv`.
pub fn run_experiment(path: &Path) -> Result<ExperimentOutput> {
    let cfg = ExperimentConfig::from_toml(&std::fs::read_to_string(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let pp = parse_pattern_pair(&std::fs::read_to_string(base.join(&cfg.pattern))?)?;
    let report = run_pipeline(&cfg, &pp)?;
    let out = base.join(&cfg.output);
    std::fs::create_dir_all(&out)?;
    let json = out.join("report.json");
    let csv = out.join("table.csv");
    std::fs::write(&json, serde_json::to_string_pretty(&report)? + "\n")?;
    std::fs::write(&csv, report.csv())?;
    Ok(ExperimentOutput {
        report: json,
        table: csv,
        truncated: report.truncated,
    })
}
