use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::level::Level;
use crate::serde_util;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Regular,
    Irregular,
    /// The notion is undefined on this input (no copy of F, or no copy of H for
    /// partition checks).
    Undefined,
    /// Sampling found no violation. Not a regularity certificate.
    NoWitnessFound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    Bipartite,
    Hf,
    BipartitePartition,
    HfPartition,
}

/// A subset tuple violating the checked inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subsets: Vec<Vec<usize>>,
    #[serde(serialize_with = "serde_util::ratio")]
    pub reference: BigRational,
    #[serde(serialize_with = "serde_util::ratio")]
    pub observed: BigRational,
    #[serde(serialize_with = "serde_util::ratio")]
    pub deviation: BigRational,
    /// `(n_F(witness), n_F(G))` for (H,F) checks.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serde_util::opt_pair"
    )]
    pub support: Option<(BigUint, BigUint)>,
    /// Index of the sample that produced the witness, for sampled checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
}

impl Witness {
    pub fn new(subsets: Vec<Vec<usize>>, reference: BigRational, observed: BigRational) -> Self {
        let deviation = (&observed - &reference).abs();
        Witness {
            subsets,
            reference,
            observed,
            deviation,
            support: None,
            sample: None,
        }
    }
}

/// Irregular-mass accounting for partition-level checks. The partition is regular iff
/// `mass ≤ eps · total`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassReport {
    #[serde(serialize_with = "serde_util::biguint")]
    pub mass: BigUint,
    /// `n²` for bipartite partitions, `n_H(G)` for (H,F) partitions.
    #[serde(serialize_with = "serde_util::biguint")]
    pub total: BigUint,
    /// Largest integer mass still allowed: `floor(eps · total)`.
    #[serde(serialize_with = "serde_util::biguint")]
    pub allowance: BigUint,
    /// Number of irregular cluster pairs or cluster tuples carrying copies.
    pub irregular_groups: usize,
    /// Number of cluster pairs or tuples examined.
    pub groups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub notion: Notion,
    pub eps: Level,
    pub status: Status,
    pub regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<MassReport>,
    /// Candidates examined in canonical order, up to and including the witness.
    pub enumerated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RegularityVerdict {
    pub fn new(notion: Notion, eps: Level, status: Status) -> Self {
        RegularityVerdict {
            notion,
            eps,
            status,
            regular: status == Status::Regular,
            witness: None,
            mass: None,
            enumerated: 0,
            elapsed_ms: None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.status == Status::Regular
    }

    pub fn is_irregular(&self) -> bool {
        self.status == Status::Irregular
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_mass(mut self, mass: MassReport) -> Self {
        self.mass = Some(mass);
        self
    }

    pub fn with_enumerated(mut self, enumerated: u64) -> Self {
        self.enumerated = enumerated;
        self
    }
}
