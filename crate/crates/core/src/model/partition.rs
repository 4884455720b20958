use serde::Serialize;

use crate::error::{Error, Result};

/// Disjoint nonempty clusters covering a ground set. Each cluster is kept sorted; cluster
/// order is the order given at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    clusters: Vec<Vec<usize>>,
    #[serde(skip)]
    ground: Vec<usize>,
    // cluster index per vertex id, u32::MAX when the id is outside the ground set
    #[serde(skip)]
    lookup: Vec<u32>,
}

impl VertexPartition {
    pub fn new(clusters: Vec<Vec<usize>>) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::InvalidPartition(
                "a partition needs at least one cluster".into(),
            ));
        }
        let max = clusters.iter().flatten().copied().max().unwrap_or(0);
        let mut lookup = vec![u32::MAX; max + 1];
        let mut sorted = Vec::with_capacity(clusters.len());
        for (i, mut c) in clusters.into_iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "cluster {} is empty",
                    i + 1
                )));
            }
            c.sort_unstable();
            for &v in &c {
                if lookup[v] != u32::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears more than once"
                    )));
                }
                lookup[v] = i as u32;
            }
            sorted.push(c);
        }
        let mut ground: Vec<usize> = sorted.iter().flatten().copied().collect();
        ground.sort_unstable();
        Ok(VertexPartition {
            clusters: sorted,
            ground,
            lookup,
        })
    }

    /// Builds a partition and checks that it covers exactly `ground`.
    pub fn covering(clusters: Vec<Vec<usize>>, ground: &[usize]) -> Result<Self> {
        let p = VertexPartition::new(clusters)?;
        let mut g = ground.to_vec();
        g.sort_unstable();
        g.dedup();
        if p.ground != g {
            return Err(Error::InvalidPartition(
                "clusters do not cover the ground set exactly".into(),
            ));
        }
        Ok(p)
    }

    pub fn singletons(ground: impl IntoIterator<Item = usize>) -> Result<Self> {
        VertexPartition::new(ground.into_iter().map(|v| vec![v]).collect())
    }

    /// Builds from a restricted-growth labelling: `labels[i]` is the cluster of `ground[i]`.
    pub fn from_labels(ground: &[usize], labels: &[usize]) -> Result<Self> {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut clusters = vec![Vec::new(); blocks];
        for (&v, &l) in ground.iter().zip(labels) {
            clusters[l].push(v);
        }
        VertexPartition::new(clusters)
    }

    pub fn order(&self) -> usize {
        self.clusters.len()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn contains(&self, v: usize) -> bool {
        self.cluster_of(v).is_some()
    }

    pub fn cluster_of(&self, v: usize) -> Option<usize> {
        match self.lookup.get(v) {
            Some(&c) if c != u32::MAX => Some(c as usize),
            _ => None,
        }
    }

    /// Same clusters, ordered by smallest element.
    pub fn canonical(&self) -> VertexPartition {
        let mut clusters = self.clusters.clone();
        clusters.sort();
        VertexPartition::new(clusters).expect("reordering keeps validity")
    }
}
