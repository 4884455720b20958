use std::fmt;

use crate::error::{Error, Result};

/// Largest pattern order supported. Pair masks for `k` vertices need `k(k-1)/2 ≤ 64` bits.
pub const MAX_PATTERN_ORDER: usize = 11;

/// Index of the unordered pair `{i, j}` among the `k(k-1)/2` pairs of `[k]`.
#[inline]
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// A graph on the vertex set `{0, .., k-1}`. Edges are stored canonically (smaller endpoint
/// first) and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k == 0 || k > MAX_PATTERN_ORDER {
            return Err(Error::InvalidPattern(format!(
                "pattern order {k} outside 1..={MAX_PATTERN_ORDER}"
            )));
        }
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidPattern(format!("self-loop at {u}")));
            }
            if u >= k || v >= k {
                return Err(Error::InvalidPattern(format!(
                    "edge ({u},{v}) has an endpoint outside the {k} pattern vertices"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        if canon.len() != before {
            return Err(Error::InvalidPattern("duplicate edge".into()));
        }
        Ok(Pattern { k, edges: canon })
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        Pattern::new(k, edges).expect("complete graph is valid")
    }

    pub fn empty(k: usize) -> Self {
        Pattern::new(k, []).expect("empty graph is valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Bitmask over [`pair_index`] positions.
    pub fn pair_mask(&self) -> u64 {
        self.edges
            .iter()
            .fold(0u64, |m, &(u, v)| m | 1 << pair_index(self.k, u, v))
    }

    pub fn is_subgraph_of(&self, other: &Pattern) -> bool {
        self.k == other.k && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn without_edge(&self, e: (usize, usize)) -> Pattern {
        let e = (e.0.min(e.1), e.0.max(e.1));
        Pattern {
            k: self.k,
            edges: self.edges.iter().copied().filter(|&x| x != e).collect(),
        }
    }

    /// Image of the pattern under the vertex map `i -> perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Pattern {
        Pattern::new(self.k, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling a valid pattern by a permutation")
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for Pattern {
    /// Edge list with 1-based vertex labels, e.g. `(1,2) (2,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|(u, v)| format!("({},{})", u + 1, v + 1))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The fixed triple `(H, F, e)`: `F` a proper spanning subgraph of `H` and `e` an edge of `H`
/// that `F` misses.
///
/// Vertices are relabeled on construction so that `e = (0, 1)`; every semi-blowup
/// places the replacement bipartite graph between classes 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPair {
    h: Pattern,
    f: Pattern,
    /// `relabeling[old] = new`.
    relabeling: Vec<usize>,
}

impl PatternPair {
    pub fn new(h: Pattern, f: Pattern, e: (usize, usize)) -> Result<Self> {
        let k = h.k();
        if k < 2 {
            return Err(Error::InvalidPattern("k must be at least 2".into()));
        }
        if f.k() != k {
            return Err(Error::InvalidPattern(format!(
                "H has {k} vertices but F has {}",
                f.k()
            )));
        }
        if !f.is_subgraph_of(&h) {
            return Err(Error::InvalidPattern("F is not a subgraph of H".into()));
        }
        if f.edge_count() == h.edge_count() {
            return Err(Error::InvalidPattern(
                "F must be a proper subgraph of H".into(),
            ));
        }
        let (a, b) = e;
        if a == b || a >= k || b >= k {
            return Err(Error::InvalidPattern(format!(
                "e = ({a},{b}) is not a pair of [k]"
            )));
        }
        if !h.has_edge(a, b) {
            return Err(Error::InvalidPattern("e is not an edge of H".into()));
        }
        if f.has_edge(a, b) {
            return Err(Error::InvalidPattern("e must not be an edge of F".into()));
        }
        let mut relabeling = vec![0; k];
        relabeling[a] = 0;
        relabeling[b] = 1;
        let mut next = 2;
        for (v, slot) in relabeling.iter_mut().enumerate() {
            if v != a && v != b {
                *slot = next;
                next += 1;
            }
        }
        Ok(PatternPair {
            h: h.relabel(&relabeling),
            f: f.relabel(&relabeling),
            relabeling,
        })
    }

    /// `(K_2, empty, {1,2})`: the coefficient is the edge density.
    pub fn density() -> Self {
        PatternPair::new(Pattern::complete(2), Pattern::empty(2), (0, 1)).unwrap()
    }

    /// `(K_3, P_2, {1,2})` with `P_2` the path `1-3-2`: the clustering coefficient.
    pub fn clustering() -> Self {
        let p2 = Pattern::new(3, [(0, 2), (1, 2)]).unwrap();
        PatternPair::new(Pattern::complete(3), p2, (0, 1)).unwrap()
    }

    pub fn k(&self) -> usize {
        self.h.k()
    }

    pub fn h(&self) -> &Pattern {
        &self.h
    }

    pub fn f(&self) -> &Pattern {
        &self.f
    }

    /// Always `(0, 1)` after canonical relabeling.
    pub fn e(&self) -> (usize, usize) {
        (0, 1)
    }

    /// `H` with `e` removed.
    pub fn h_minus(&self) -> Pattern {
        self.h.without_edge(self.e())
    }

    pub fn relabeling(&self) -> &[usize] {
        &self.relabeling
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_dense() {
        let k = 5;
        let mut seen: Vec<usize> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| pair_index(k, i, j)))
            .collect();
        seen.sort();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
        assert_eq!(pair_index(k, 3, 1), pair_index(k, 1, 3));
    }

    #[test]
    fn rejects_invalid_patterns() {
        assert!(Pattern::new(3, [(0, 0)]).is_err());
        assert!(Pattern::new(3, [(0, 3)]).is_err());
        assert!(Pattern::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn pattern_pair_invariants() {
        let k3 = Pattern::complete(3);
        let p2 = Pattern::new(3, [(0, 2), (1, 2)]).unwrap();
        // F = H
        assert!(PatternPair::new(k3.clone(), k3.clone(), (0, 1)).is_err());
        // e in F
        assert!(PatternPair::new(k3.clone(), p2.clone(), (0, 2)).is_err());
        // F not inside H
        let h = Pattern::new(3, [(0, 1)]).unwrap();
        assert!(PatternPair::new(h, p2.clone(), (0, 1)).is_err());
        assert!(PatternPair::new(k3, p2, (0, 1)).is_ok());
    }

    #[test]
    fn relabels_e_to_first_two_classes() {
        // H = path 1-2-3 plus edge {1,3}; F = {1,2}; e = {2,3}
        let h = Pattern::complete(3);
        let f = Pattern::new(3, [(0, 1)]).unwrap();
        let pp = PatternPair::new(h, f, (1, 2)).unwrap();
        assert_eq!(pp.relabeling(), &[2, 0, 1]);
        assert_eq!(pp.f().edges(), &[(0, 2)]);
        assert!(!pp.f().has_edge(0, 1));
    }

    #[test]
    fn connectivity() {
        assert!(Pattern::new(3, [(0, 2), (1, 2)]).unwrap().is_connected());
        assert!(!Pattern::new(3, [(0, 1)]).unwrap().is_connected());
        assert!(Pattern::empty(1).is_connected());
    }
}
