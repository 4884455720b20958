use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Dense symmetric adjacency bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }
}

/// A k-partite graph on vertices `0..n`. Classes are consecutive id ranges, so class
/// membership is a lookup; edges are canonical `(min, max)` pairs in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPartiteGraph {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adj: BitMatrix,
}

impl KPartiteGraph {
    /// Validates and builds a graph. Every constructor goes through here.
    pub fn new(
        class_sizes: &[usize],
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if class_sizes.is_empty() {
            return Err(Error::InvalidGraph(
                "at least one vertex class is required".into(),
            ));
        }
        if let Some(i) = class_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidGraph(format!("class {} is empty", i + 1)));
        }
        let mut offsets = Vec::with_capacity(class_sizes.len() + 1);
        offsets.push(0);
        for &s in class_sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let n = *offsets.last().unwrap();
        let class_of: Vec<usize> = class_sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
            .collect();
        let mut adj = BitMatrix::new(n);
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) names a vertex outside 0..{n}"
                )));
            }
            if class_of[u] == class_of[v] {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) joins two vertices of class {}",
                    class_of[u] + 1
                )));
            }
            let (a, b) = (u.min(v), u.max(v));
            if adj.get(a, b) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
            adj.set(a, b);
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(KPartiteGraph {
            offsets,
            class_of,
            edges: canon,
            adj,
        })
    }

    pub fn k(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// Product of all class sizes: the number of class transversals.
    pub fn transversal_count(&self) -> u128 {
        self.class_sizes().iter().map(|&s| s as u128).product()
    }

    /// `G[U_1, .., U_k]` with vertices renumbered densely, class by class, in increasing
    /// id order.
    pub fn induced_subgraph(&self, subsets: &[Vec<usize>]) -> Result<KPartiteGraph> {
        let (sub, _) = self.induced_subgraph_with_map(subsets)?;
        Ok(sub)
    }

    /// Like [`induced_subgraph`](Self::induced_subgraph), also returning `old_ids[new] = old`.
    pub fn induced_subgraph_with_map(
        &self,
        subsets: &[Vec<usize>],
    ) -> Result<(KPartiteGraph, Vec<usize>)> {
        if subsets.len() != self.k() {
            return Err(Error::InvalidSubset(format!(
                "expected {} subsets, got {}",
                self.k(),
                subsets.len()
            )));
        }
        let mut old_ids = Vec::new();
        let mut sizes = Vec::with_capacity(self.k());
        for (i, u) in subsets.iter().enumerate() {
            let mut u = u.clone();
            u.sort_unstable();
            u.dedup();
            if u.is_empty() {
                return Err(Error::InvalidSubset(format!("U_{} is empty", i + 1)));
            }
            let class = self.class(i);
            if let Some(&v) = u.iter().find(|v| !class.contains(v)) {
                return Err(Error::InvalidSubset(format!(
                    "vertex {v} is not in class {}",
                    i + 1
                )));
            }
            sizes.push(u.len());
            old_ids.extend(u);
        }
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old] = new;
        }
        let edges = self.edges.iter().filter_map(|&(a, b)| {
            let (x, y) = (new_id[a], new_id[b]);
            (x != usize::MAX && y != usize::MAX).then_some((x, y))
        });
        Ok((KPartiteGraph::new(&sizes, edges)?, old_ids))
    }

    /// The view whose transversals are all class transversals of the graph.
    pub fn full_view(&self) -> TupleView<'_> {
        TupleView {
            graph: self,
            slots: (0..self.k()).map(|i| self.class(i).collect()).collect(),
        }
    }

    /// The tuple-view `G[X_1, .., X_k]` for possibly repeating clusters: slot `i` holds
    /// `X_i ∩ V_i`, so transversals are `(v_1, .., v_k)` with `v_i ∈ X_i ∩ V_i`.
    pub fn induced_tuple_subgraph(&self, clusters: &[&[usize]]) -> Result<TupleView<'_>> {
        if clusters.len() != self.k() {
            return Err(Error::InvalidSubset(format!(
                "expected {} clusters, got {}",
                self.k(),
                clusters.len()
            )));
        }
        let mut slots = Vec::with_capacity(self.k());
        for (i, x) in clusters.iter().enumerate() {
            if let Some(&v) = x.iter().find(|&&v| v >= self.vertex_count()) {
                return Err(Error::InvalidSubset(format!("unknown vertex {v}")));
            }
            let class = self.class(i);
            let mut slot: Vec<usize> = x.iter().copied().filter(|v| class.contains(v)).collect();
            slot.sort_unstable();
            slot.dedup();
            slots.push(slot);
        }
        Ok(TupleView { graph: self, slots })
    }
}

/// A choice of one vertex subset per class of an ambient graph. The transversals of the
/// view are the tuples `(v_1, .., v_k)` with `v_i` in slot `i`.
#[derive(Clone, Debug)]
pub struct TupleView<'g> {
    graph: &'g KPartiteGraph,
    slots: Vec<Vec<usize>>,
}

impl<'g> TupleView<'g> {
    /// Slots must be sorted subsets of the respective classes.
    pub fn from_slots(graph: &'g KPartiteGraph, slots: Vec<Vec<usize>>) -> Result<Self> {
        if slots.len() != graph.k() {
            return Err(Error::InvalidSubset(
                "one slot per class is required".into(),
            ));
        }
        for (i, s) in slots.iter().enumerate() {
            let class = graph.class(i);
            if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|v| !class.contains(v)) {
                return Err(Error::InvalidSubset(format!(
                    "slot {} is not a sorted subset of class {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(TupleView { graph, slots })
    }

    pub fn graph(&self) -> &'g KPartiteGraph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Vec<usize>] {
        &self.slots
    }

    pub fn transversal_count(&self) -> u128 {
        self.slots.iter().map(|s| s.len() as u128).product()
    }

    /// All transversals, first slot varying slowest.
    pub fn transversals(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for slot in &self.slots {
            out = out
                .into_iter()
                .flat_map(|t| {
                    slot.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

/// A k-partite graph with exactly two classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph(KPartiteGraph);

impl BipartiteGraph {
    pub fn new(graph: KPartiteGraph) -> Result<Self> {
        if graph.k() != 2 {
            return Err(Error::InvalidGraph(format!(
                "a bipartite graph needs 2 classes, got {}",
                graph.k()
            )));
        }
        Ok(BipartiteGraph(graph))
    }

    /// Builds from side sizes and edges `(i, j)` with `i < left` and `j < right` local.
    pub fn from_sides(
        left: usize,
        right: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut mapped = Vec::new();
        for (i, j) in edges {
            if i >= left || j >= right {
                return Err(Error::InvalidGraph(format!(
                    "local edge ({i},{j}) outside a {left}x{right} bipartite graph"
                )));
            }
            mapped.push((i, left + j));
        }
        Ok(BipartiteGraph(KPartiteGraph::new(&[left, right], mapped)?))
    }

    pub fn graph(&self) -> &KPartiteGraph {
        &self.0
    }

    pub fn into_graph(self) -> KPartiteGraph {
        self.0
    }

    pub fn left(&self) -> Range<usize> {
        self.0.class(0)
    }

    pub fn right(&self) -> Range<usize> {
        self.0.class(1)
    }

    pub fn left_size(&self) -> usize {
        self.0.class_size(0)
    }

    pub fn right_size(&self) -> usize {
        self.0.class_size(1)
    }

    pub fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    /// `|E| / (|V_1| |V_2|)`, exactly.
    pub fn density(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.edge_count()),
            BigInt::from(self.left_size() * self.right_size()),
        )
    }

    /// Neighbourhood of each left vertex as a bitmask over local right indices.
    /// Requires at most 64 right vertices.
    pub fn left_masks(&self) -> Option<Vec<u64>> {
        if self.right_size() > 64 {
            return None;
        }
        let off = self.left_size();
        let mut masks = vec![0u64; self.left_size()];
        for &(a, b) in self.0.edges() {
            masks[a] |= 1 << (b - off);
        }
        Some(masks)
    }

    /// `G_0[S_1, S_2]` as a bipartite graph.
    pub fn restrict(&self, s1: &[usize], s2: &[usize]) -> Result<BipartiteGraph> {
        Ok(BipartiteGraph(
            self.0.induced_subgraph(&[s1.to_vec(), s2.to_vec()])?,
        ))
    }

    /// Number of edges between two vertex sets (global ids).
    pub fn edges_between(&self, s1: &[usize], s2: &[usize]) -> usize {
        s1.iter()
            .map(|&u| s2.iter().filter(|&&v| self.0.has_edge(u, v)).count())
            .sum()
    }
}

impl TryFrom<KPartiteGraph> for BipartiteGraph {
    type Error = Error;

    fn try_from(graph: KPartiteGraph) -> Result<Self> {
        BipartiteGraph::new(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> KPartiteGraph {
        KPartiteGraph::new(&[1, 1, 1], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn validation_rejects_bad_edges() {
        assert!(matches!(
            KPartiteGraph::new(&[2, 2], [(0, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(KPartiteGraph::new(&[2, 2], [(0, 2), (2, 0)]).is_err());
        assert!(KPartiteGraph::new(&[2, 2], [(0, 4)]).is_err());
        assert!(KPartiteGraph::new(&[2, 0], []).is_err());
    }

    #[test]
    fn identity_restriction() {
        let g = triangle();
        let sub = g.induced_subgraph(&[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(sub, g);
    }

    #[test]
    fn restriction_rejects_foreign_vertices() {
        let g = KPartiteGraph::new(&[2, 2], [(0, 2)]).unwrap();
        assert!(g.induced_subgraph(&[vec![0], vec![1]]).is_err());
        assert!(g.induced_subgraph(&[vec![0], vec![]]).is_err());
    }

    #[test]
    fn restriction_renumbers_densely() {
        let g = KPartiteGraph::new(&[2, 2, 2], [(1, 3), (1, 5), (3, 5), (0, 2)]).unwrap();
        let (sub, map) = g
            .induced_subgraph_with_map(&[vec![1], vec![3], vec![5]])
            .unwrap();
        assert_eq!(map, vec![1, 3, 5]);
        assert_eq!(sub.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn tuple_view_slots() {
        // tripartite, two vertices per class
        let g = KPartiteGraph::new(&[2, 2, 2], []).unwrap();
        let x: Vec<usize> = (0..4).collect();
        let v3: Vec<usize> = (4..6).collect();
        let view = g.induced_tuple_subgraph(&[&x, &x, &v3]).unwrap();
        assert_eq!(view.slots(), &[vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(view.transversal_count(), 8);
        let ts = view.transversals();
        assert_eq!(ts.len(), 8);
        assert!(ts.iter().all(|t| t[0] < 2 && (2..4).contains(&t[1])));

        let empty = g.induced_tuple_subgraph(&[&[2, 3], &x, &v3]).unwrap();
        assert_eq!(empty.transversal_count(), 0);
    }

    #[test]
    fn bipartite_density() {
        let g = BipartiteGraph::from_sides(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.density(), BigRational::new(3.into(), 4.into()));
        let e = BipartiteGraph::from_sides(3, 4, []).unwrap();
        assert_eq!(e.density(), BigRational::from_integer(0.into()));
        assert_eq!(g.left_masks().unwrap(), vec![0b11, 0b01]);
    }
}
