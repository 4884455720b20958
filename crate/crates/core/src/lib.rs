//! Exact machinery for (H,F)-regularity of k-partite graphs.
//!
//! The crate counts transversal pattern copies, evaluates (H,F)-coefficients, builds
//! semi-blowups `H ⊙_e G_0`, checks ε-regularity of bipartite graphs and
//! ε-(H,F)-regularity of k-partite graphs (and of partitions) with witnesses, and runs
//! the partition reduction that turns an (H,F)-regular partition of a balanced
//! semi-blowup into a regular partition of the embedded bipartite graph.
//!
//! All correctness-bearing arithmetic is exact: counts are integers, densities and
//! coefficients are [`num_rational::BigRational`], and irrational thresholds are
//! [`Level`]s compared by exponentiation.

pub mod counting;
pub mod error;
pub mod harness;
pub mod level;
pub mod model;
pub mod reduction;
pub mod regularity;
pub mod semiblowup;
mod serde_util;

pub use error::{Error, Result};
pub use level::Level;
