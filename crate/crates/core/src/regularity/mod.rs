//! Exact and sampled checkers for the four regularity notions.
//!
//! Exact checkers enumerate every admissible subset tuple and report the
//! lexicographically first violation, where tuples are ordered slot by slot and each
//! subset by its sorted vertex sequence. Parallel workers race over the outermost
//! subset but the reported witness does not depend on the schedule.

mod bipartite;
mod hf;
mod partition;
mod sampled;
mod subsets;
mod weights;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level::Level;

pub use bipartite::check_bipartite_regular;
pub use hf::{check_hf_regular, check_hf_regular_view, find_deviation};
pub use partition::{
    bipartite_partition_verdict, check_hf_regular_partition, check_regular_partition,
    hf_partition_verdict, is_side_pure,
};
pub use sampled::{sampled_irregularity_probe, ProbeTarget};
pub use subsets::{admissible_subset_count, lex_subsets};

/// Default ceiling on the number of subset tuples an exact check may enumerate.
pub const DEFAULT_MAX_ENUMERATIONS: u64 = 1 << 24;
pub const DEFAULT_SAMPLE_COUNT: u64 = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exact,
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

/// Resource limits and sampling parameters for a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckBudget {
    pub mode: Mode,
    pub max_enumerations: u64,
    pub sample_count: u64,
    pub seed: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget {
            mode: Mode::Exact,
            max_enumerations: DEFAULT_MAX_ENUMERATIONS,
            sample_count: DEFAULT_SAMPLE_COUNT,
            seed: 0,
        }
    }
}

impl CheckBudget {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn sampled(sample_count: u64, seed: u64) -> Self {
        CheckBudget {
            mode: Mode::Sampled,
            sample_count,
            seed,
            ..Self::default()
        }
    }

    pub fn with_max_enumerations(mut self, max: u64) -> Self {
        self.max_enumerations = max;
        self
    }

    pub(crate) fn guard(&self, needed: u128) -> Result<()> {
        if needed > self.max_enumerations as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                limit: self.max_enumerations as u128,
            });
        }
        Ok(())
    }
}

/// Checkers accept `0 < eps ≤ 1`.
pub(crate) fn validate_eps(eps: &Level) -> Result<()> {
    if eps.is_zero() {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if eps.cmp_rational(&num_traits::One::one()) == std::cmp::Ordering::Greater {
        return Err(Error::Domain(format!("eps must be at most 1, got {eps}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;

    #[test]
    fn eps_range() {
        assert!(validate_eps(&ratio(1, 2).into()).is_ok());
        assert!(validate_eps(&ratio(1, 1).into()).is_ok());
        assert!(validate_eps(&ratio(0, 1).into()).is_err());
        assert!(validate_eps(&ratio(3, 2).into()).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("sampled".parse::<Mode>().unwrap(), Mode::Sampled);
        assert!("fast".parse::<Mode>().is_err());
    }
}
