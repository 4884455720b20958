//! Graphs, patterns, partitions and verdicts shared by every other module.

mod graph;
pub mod io;
mod partition;
mod pattern;
mod verdict;

pub use graph::{BipartiteGraph, KPartiteGraph, TupleView};
pub use io::{parse_instance, parse_partition, parse_pattern_pair, serialize_graph};
pub use partition::VertexPartition;
pub use pattern::{pair_index, Pattern, PatternPair, MAX_PATTERN_ORDER};
pub use verdict::{MassReport, Notion, RegularityVerdict, Status, Witness};
