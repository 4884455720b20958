//! Deterministic instance generators.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level::parse_rational;
use crate::model::{BipartiteGraph, KPartiteGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Complete,
    Empty,
    Matching,
    HalfGraph,
    RandomBipartite,
    RandomKpartite,
}

impl GeneratorKind {
    pub fn is_random(self) -> bool {
        matches!(
            self,
            GeneratorKind::RandomBipartite | GeneratorKind::RandomKpartite
        )
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" => GeneratorKind::Complete,
            "empty" => GeneratorKind::Empty,
            "matching" => GeneratorKind::Matching,
            "half_graph" => GeneratorKind::HalfGraph,
            "random_bipartite" => GeneratorKind::RandomBipartite,
            "random_kpartite" => GeneratorKind::RandomKpartite,
            other => return Err(Error::Config(format!("unknown generator `{other}`"))),
        })
    }
}

/// `sizes` are the class sizes; matching and half-graph take a single `m` (or `[m, m]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub sizes: Vec<usize>,
    /// Edge probability `p/q` for the random kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.kind.is_random() {
            if self.seed.is_none() {
                return Err(Error::Config(format!(
                    "generator {:?} is randomized and needs a seed",
                    self.kind
                )));
            }
            self.probability()?;
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::Config("class sizes must be positive".into()));
        }
        match self.kind {
            GeneratorKind::Matching | GeneratorKind::HalfGraph => {
                if !(self.sizes.len() == 1
                    || self.sizes.len() == 2 && self.sizes[0] == self.sizes[1])
                {
                    return Err(Error::Config(
                        "matching and half_graph take sizes = [m]".into(),
                    ));
                }
            }
            GeneratorKind::RandomBipartite if self.sizes.len() != 2 => {
                return Err(Error::Config("random_bipartite takes two sizes".into()))
            }
            _ if self.sizes.len() < 2 => {
                return Err(Error::Config("need at least two classes".into()))
            }
            _ => {}
        }
        Ok(())
    }

    fn probability(&self) -> Result<BigRational> {
        let text = self
            .p
            .as_deref()
            .ok_or_else(|| Error::Config("random generators need p".into()))?;
        let p = parse_rational(text)?;
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::Config(format!("p = {text} is not a probability")));
        }
        Ok(p)
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<KPartiteGraph> {
    spec.validate()?;
    let s = &spec.sizes;
    match spec.kind {
        GeneratorKind::Complete => Ok(complete_kpartite(s)),
        GeneratorKind::Empty => Ok(KPartiteGraph::new(s, [])?),
        GeneratorKind::Matching => Ok(matching(s[0]).into_graph()),
        GeneratorKind::HalfGraph => Ok(half_graph(s[0]).into_graph()),
        GeneratorKind::RandomBipartite | GeneratorKind::RandomKpartite => {
            let p = spec.probability()?;
            random_kpartite(s, &p, spec.seed.unwrap_or_default())
        }
    }
}

pub fn complete_kpartite(sizes: &[usize]) -> KPartiteGraph {
    let mut edges = Vec::new();
    let mut start = vec![0];
    for s in sizes {
        start.push(start.last().unwrap() + s);
    }
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            for u in start[i]..start[i + 1] {
                for v in start[j]..start[j + 1] {
                    edges.push((u, v));
                }
            }
        }
    }
    KPartiteGraph::new(sizes, edges).expect("valid sizes")
}

pub fn complete_bipartite(n1: usize, n2: usize) -> BipartiteGraph {
    BipartiteGraph::new(complete_kpartite(&[n1, n2])).expect("two classes")
}

/// `m` disjoint edges `(i, i)`.
pub fn matching(m: usize) -> BipartiteGraph {
    BipartiteGraph::from_sides(m, m, (0..m).map(|i| (i, i))).expect("valid matching")
}

/// Edges `(i, j)` for `i ≤ j` on `m + m` vertices.
pub fn half_graph(m: usize) -> BipartiteGraph {
    BipartiteGraph::from_sides(m, m, (0..m).flat_map(|i| (i..m).map(move |j| (i, j))))
        .expect("valid half-graph")
}

/// Each cross-class pair becomes an edge independently with probability `p`.
pub fn random_kpartite(sizes: &[usize], p: &BigRational, seed: u64) -> Result<KPartiteGraph> {
    let num = p
        .numer()
        .to_u64()
        .ok_or_else(|| Error::Config("p too large".into()))?;
    let den = p
        .denom()
        .to_u64()
        .ok_or_else(|| Error::Config("p too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = vec![0];
    for s in sizes {
        start.push(start.last().unwrap() + s);
    }
    let n = *start.last().unwrap();
    let class_of = |v: usize| start.iter().rposition(|&s| s <= v).unwrap();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if class_of(u) != class_of(v) && rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    KPartiteGraph::new(sizes, edges)
}

pub fn random_bipartite(
    n1: usize,
    n2: usize,
    p: &BigRational,
    seed: u64,
) -> Result<BipartiteGraph> {
    BipartiteGraph::new(random_kpartite(&[n1, n2], p, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::ratio;

    #[test]
    fn fixed_families() {
        let m = matching(3);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.density(), ratio(1, 3));
        let h = half_graph(3);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.density(), ratio(2, 3));
        assert!(h.graph().has_edge(0, 5) && !h.graph().has_edge(2, 3));
        assert_eq!(complete_kpartite(&[2, 2, 2]).edge_count(), 12);
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_bipartite(4, 4, &ratio(1, 2), 7).unwrap();
        let b = random_bipartite(4, 4, &ratio(1, 2), 7).unwrap();
        assert_eq!(a, b);
        let full = random_bipartite(3, 3, &ratio(1, 1), 1).unwrap();
        assert_eq!(full.edge_count(), 9);
    }

    #[test]
    fn spec_validation() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::RandomBipartite,
            sizes: vec![3, 3],
            p: Some("1/2".into()),
            seed: None,
        };
        assert!(matches!(generate(&spec), Err(Error::Config(_))));
        let spec = GeneratorSpec {
            seed: Some(3),
            ..spec
        };
        assert_eq!(generate(&spec).unwrap().k(), 2);
        let bad = GeneratorSpec {
            kind: GeneratorKind::Matching,
            sizes: vec![2, 3],
            p: None,
            seed: None,
        };
        assert!(generate(&bad).is_err());
    }
}
