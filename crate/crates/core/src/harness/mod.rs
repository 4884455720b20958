//! Instance generators, the exhaustive minimum-order oracle, property suites,
//! experiments and the tower function.

pub mod experiment;
pub mod generate;
pub mod search;
pub mod suites;
mod tower;

pub use experiment::{run_experiment, run_pipeline, ExperimentConfig, ExperimentReport};
pub use generate::{generate, GeneratorKind, GeneratorSpec};
pub use search::{min_partition_order, SearchNotion, SearchResult};
pub use suites::{verify_suite, Suite, SuiteOptions, SuiteReport};
pub use tower::{tower, MAX_TOWER};
