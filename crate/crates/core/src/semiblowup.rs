//! Blowups, semi-blowups `H ⊙_e G_0`, the constants `(a, b)` with
//! `n_F(H ⊙_e G_0) = (a + b·d)·∏|V_i|`, and the transfer maps `f(x) = x/(a+bx)` and
//! `g(x) = ax/(1-bx)`.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::counting::n_copies;
use crate::error::{Error, Result};
use crate::level::{factorial, int};
use crate::model::io::{parse_instance, parse_pattern_parts, SemiBlowupDescriptor};
use crate::model::{BipartiteGraph, KPartiteGraph, Pattern, PatternPair};

/// Replaces vertex `i` of `h` by an independent set of `sizes[i]` vertices; pattern edges
/// become complete bipartite graphs, non-edges empty ones.
pub fn build_blowup(h: &Pattern, sizes: &[usize]) -> Result<KPartiteGraph> {
    if sizes.len() != h.k() {
        return Err(Error::InvalidGraph(format!(
            "{} class sizes for a pattern on {} vertices",
            sizes.len(),
            h.k()
        )));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidGraph(
            "blowup class sizes must be positive".into(),
        ));
    }
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(sizes.iter().scan(0, |acc, &s| {
            *acc += s;
            Some(*acc)
        }))
        .collect();
    let mut edges = Vec::new();
    for &(i, j) in h.edges() {
        for u in offsets[i]..offsets[i + 1] {
            for v in offsets[j]..offsets[j + 1] {
                edges.push((u, v));
            }
        }
    }
    KPartiteGraph::new(sizes, edges)
}

/// `H ⊙_e G_0`: the blowup of `H` with classes `(V_1(G_0), V_2(G_0), n_3, .., n_k)` whose
/// `(1,2)` bipartite graph is `G_0`. With `balanced`, all classes must have equal size.
pub fn build_semi_blowup(
    pp: &PatternPair,
    g0: &BipartiteGraph,
    rest: &[usize],
    balanced: bool,
) -> Result<KPartiteGraph> {
    let k = pp.k();
    if rest.len() != k - 2 {
        return Err(Error::InvalidGraph(format!(
            "a semi-blowup of a {k}-vertex pattern needs {} further class sizes, got {}",
            k - 2,
            rest.len()
        )));
    }
    let mut sizes = vec![g0.left_size(), g0.right_size()];
    sizes.extend_from_slice(rest);
    if sizes.contains(&0) {
        return Err(Error::InvalidGraph("class sizes must be positive".into()));
    }
    if balanced && sizes.iter().any(|&s| s != sizes[0]) {
        return Err(Error::InvalidGraph(format!(
            "balanced semi-blowup requires equal class sizes, got {sizes:?}"
        )));
    }
    let blowup = build_blowup(&pp.h_minus(), &sizes)?;
    let edges = blowup
        .edges()
        .iter()
        .copied()
        .chain(g0.graph().edges().iter().copied());
    KPartiteGraph::new(&sizes, edges)
}

/// The balanced semi-blowup with every class of size `|V_1(G_0)|`.
pub fn balanced_semi_blowup(pp: &PatternPair, g0: &BipartiteGraph) -> Result<KPartiteGraph> {
    let n = g0.left_size();
    build_semi_blowup(pp, g0, &vec![n; pp.k() - 2], true)
}

/// Whether `g` has the shape `H ⊙_e G_0` for some `G_0` on its first two classes.
pub fn is_semi_blowup_of(pp: &PatternPair, g: &KPartiteGraph) -> bool {
    let k = pp.k();
    if g.k() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if (i, j) == (0, 1) {
                continue;
            }
            let want = pp.h().has_edge(i, j);
            for u in g.class(i) {
                for v in g.class(j) {
                    if g.has_edge(u, v) != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The bipartite graph between classes 1 and 2 of a k-partite graph.
pub fn embedded_bipartite(g: &KPartiteGraph) -> Result<BipartiteGraph> {
    if g.k() < 2 {
        return Err(Error::InvalidGraph("need at least two classes".into()));
    }
    let left = g.class_size(0);
    let off = g.class(1).start;
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| g.class_of(u) == 0 && g.class_of(v) == 1)
        .map(|&(u, v)| (u, v - off));
    BipartiteGraph::from_sides(left, g.class_size(1), edges)
}

/// Regenerates a semi-blowup from a descriptor; relative paths resolve against `base`.
/// The descriptor's `e` (1-based, in the pattern file's labels) selects the replaced edge.
pub fn from_descriptor(
    desc: &SemiBlowupDescriptor,
    base: &Path,
) -> Result<(PatternPair, KPartiteGraph)> {
    let pattern_text = std::fs::read_to_string(base.join(&desc.pattern))?;
    let (h, f, _) = parse_pattern_parts(&pattern_text)?;
    let (a, b) = desc.e;
    if a == 0 || b == 0 {
        return Err(Error::Config("descriptor e uses 1-based labels".into()));
    }
    let pp = PatternPair::new(h, f, (a - 1, b - 1))?;
    let g0 = BipartiteGraph::new(parse_instance(&std::fs::read_to_string(
        base.join(&desc.g0),
    )?)?)?;
    let rest = vec![desc.n; pp.k() - 2];
    let g = build_semi_blowup(&pp, &g0, &rest, false)?;
    Ok((pp, g))
}

/// `(a, b)` with `a = n_F(H^-)`, `a + b = n_F(H)`, unlabeled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemiBlowupCoefficients {
    pub a: u64,
    pub b: u64,
}

pub fn pattern_coefficients(pp: &PatternPair) -> SemiBlowupCoefficients {
    let ones = vec![1; pp.k()];
    let host_minus = build_blowup(&pp.h_minus(), &ones).expect("unit blowup");
    let host = build_blowup(pp.h(), &ones).expect("unit blowup");
    let a = n_copies(pp.f(), &host_minus).expect("single transversal");
    let total = n_copies(pp.f(), &host).expect("single transversal");
    let a: u64 = a.try_into().expect("at most k! copies");
    let total: u64 = total.try_into().expect("at most k! copies");
    assert!(a >= 1, "F avoids e, so F itself is a copy inside H^-");
    assert!(
        BigInt::from(total) <= BigInt::from(factorial(pp.k())),
        "n_F(H) is bounded by k!"
    );
    SemiBlowupCoefficients { a, b: total - a }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transfer {
    F,
    G,
    FPrime,
    GPrime,
}

impl std::str::FromStr for Transfer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(Transfer::F),
            "g" => Ok(Transfer::G),
            "f'" | "fprime" => Ok(Transfer::FPrime),
            "g'" | "gprime" => Ok(Transfer::GPrime),
            _ => Err(Error::Domain(format!("unknown transfer function {s:?}"))),
        }
    }
}

impl SemiBlowupCoefficients {
    fn ab(&self) -> (BigRational, BigRational) {
        (int(self.a), int(self.b))
    }

    /// `f(x) = x / (a + b x)` on `[0, 1]`.
    pub fn f(&self, x: &BigRational) -> Result<BigRational> {
        self.evaluate(Transfer::F, x)
    }

    /// `g(x) = a x / (1 - b x)` on `[0, 1/b)`.
    pub fn g(&self, x: &BigRational) -> Result<BigRational> {
        self.evaluate(Transfer::G, x)
    }

    pub fn evaluate(&self, which: Transfer, x: &BigRational) -> Result<BigRational> {
        let (a, b) = self.ab();
        let one = BigRational::one();
        match which {
            Transfer::F | Transfer::FPrime => {
                if x.is_negative() || *x > one {
                    return Err(Error::Domain(format!("f is defined on [0,1], got {x}")));
                }
                let den = &a + &b * x;
                Ok(match which {
                    Transfer::F => x / den,
                    _ => &a / (&den * &den),
                })
            }
            Transfer::G | Transfer::GPrime => {
                let den = &one - &b * x;
                if x.is_negative() || !den.is_positive() {
                    return Err(Error::Domain(format!(
                        "g is defined on [0, 1/b) with b = {}, got {x}",
                        self.b
                    )));
                }
                Ok(match which {
                    Transfer::G => &a * x / den,
                    _ => &a / (&den * &den),
                })
            }
        }
    }

    /// `a / (2 b (a + b))`: the largest `eps` for which the derivative bound on `g` is
    /// stated. `None` when `b = 0` (no restriction).
    pub fn derivative_proviso(&self) -> Option<BigRational> {
        (self.b > 0)
            .then(|| BigRational::new(self.a.into(), (2 * self.b * (self.a + self.b)).into()))
    }
}

pub fn evaluate_transfer(
    coeffs: &SemiBlowupCoefficients,
    which: Transfer,
    x: &BigRational,
) -> Result<BigRational> {
    coeffs.evaluate(which, x)
}

/// Appends `extra[i]` isolated vertices to class `i`. Vertex `v` of class `c` becomes
/// `v + extra[0] + .. + extra[c-1]`.
pub fn add_isolated_vertices(g: &KPartiteGraph, extra: &[usize]) -> Result<KPartiteGraph> {
    if extra.len() != g.k() {
        return Err(Error::InvalidGraph(format!(
            "{} padding sizes for {} classes",
            extra.len(),
            g.k()
        )));
    }
    let mut shift = vec![0; g.k()];
    for c in 1..g.k() {
        shift[c] = shift[c - 1] + extra[c - 1];
    }
    let sizes: Vec<usize> = g
        .class_sizes()
        .iter()
        .zip(extra)
        .map(|(s, e)| s + e)
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (u + shift[g.class_of(u)], v + shift[g.class_of(v)]));
    KPartiteGraph::new(&sizes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::hf_coefficient;
    use crate::level::ratio;
    use num_traits::Zero;

    fn in_unit_interval(x: &BigRational) -> bool {
        !x.is_negative() && *x <= BigRational::one()
    }

    fn matching_2x2() -> BipartiteGraph {
        BipartiteGraph::from_sides(2, 2, [(0, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn blowups() {
        let k2 = build_blowup(&Pattern::complete(2), &[2, 3]).unwrap();
        assert_eq!(k2.edge_count(), 6);
        let e3 = build_blowup(&Pattern::empty(3), &[1, 1, 1]).unwrap();
        assert_eq!(e3.edge_count(), 0);
        let k3 = build_blowup(&Pattern::complete(3), &[2, 2, 2]).unwrap();
        assert_eq!(k3.edge_count(), 12);
        assert!(build_blowup(&Pattern::complete(3), &[2, 0, 2]).is_err());
    }

    #[test]
    fn minimal_semi_blowup_is_a_triangle() {
        let g0 = BipartiteGraph::from_sides(1, 1, [(0, 0)]).unwrap();
        let g = build_semi_blowup(&PatternPair::clustering(), &g0, &[1], false).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn empty_replacement_has_no_h_copies() {
        let g0 = BipartiteGraph::from_sides(2, 2, []).unwrap();
        let pp = PatternPair::clustering();
        let g = build_semi_blowup(&pp, &g0, &[2], true).unwrap();
        assert!(n_copies(pp.h(), &g).unwrap().is_zero());
    }

    #[test]
    fn balanced_mode_rejects_unequal_sizes() {
        let g0 = BipartiteGraph::from_sides(2, 3, []).unwrap();
        assert!(build_semi_blowup(&PatternPair::clustering(), &g0, &[2], true).is_err());
        assert!(build_semi_blowup(&PatternPair::clustering(), &g0, &[2], false).is_ok());
    }

    #[test]
    fn semi_blowup_shape() {
        let pp = PatternPair::clustering();
        let g = build_semi_blowup(&pp, &matching_2x2(), &[2], false).unwrap();
        assert!(is_semi_blowup_of(&pp, &g));
        assert_eq!(embedded_bipartite(&g).unwrap(), matching_2x2());
        let k3 = build_blowup(&Pattern::complete(3), &[2, 2, 2]).unwrap();
        assert!(is_semi_blowup_of(&pp, &k3));
        // drop (0,4): classes 1 and 3 are no longer complete to each other
        let broken = KPartiteGraph::new(
            &[2, 2, 2],
            k3.edges().iter().copied().filter(|&e| e != (0, 4)),
        )
        .unwrap();
        assert!(!is_semi_blowup_of(&pp, &broken));
    }

    #[test]
    fn coefficients_of_standard_pairs() {
        assert_eq!(
            pattern_coefficients(&PatternPair::density()),
            SemiBlowupCoefficients { a: 1, b: 0 }
        );
        assert_eq!(
            pattern_coefficients(&PatternPair::clustering()),
            SemiBlowupCoefficients { a: 1, b: 2 }
        );
    }

    #[test]
    fn transfer_values() {
        let c = SemiBlowupCoefficients { a: 1, b: 2 };
        assert!(c.f(&int(0)).unwrap().is_zero());
        assert!(c.g(&int(0)).unwrap().is_zero());
        assert_eq!(c.f(&int(1)).unwrap(), ratio(1, 3));
        let x = ratio(3, 4);
        assert_eq!(c.g(&c.f(&x).unwrap()).unwrap(), x);
        assert!(c.g(&ratio(1, 2)).is_err());
        assert!(c.f(&ratio(5, 4)).is_err());
        assert_eq!(c.evaluate(Transfer::FPrime, &int(0)).unwrap(), int(1));
        assert_eq!(c.evaluate(Transfer::GPrime, &ratio(1, 4)).unwrap(), int(4));
        // b = 0: g is defined everywhere on [0, inf)
        let d = SemiBlowupCoefficients { a: 1, b: 0 };
        assert_eq!(d.g(&int(7)).unwrap(), int(7));
        assert_eq!(d.derivative_proviso(), None);
    }

    #[test]
    fn coefficient_formula_on_matching() {
        let pp = PatternPair::clustering();
        let g = build_semi_blowup(&pp, &matching_2x2(), &[2], false).unwrap();
        let c = hf_coefficient(&pp, &g).unwrap();
        // d = 1/2, (a,b) = (1,2): d/(a+bd) = 1/4
        assert_eq!(c.value, ratio(1, 4));
        assert!(in_unit_interval(&c.value));
    }

    #[test]
    fn isolated_vertices() {
        let tri = KPartiteGraph::new(&[1, 1, 1], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(add_isolated_vertices(&tri, &[0, 0, 0]).unwrap(), tri);
        let padded = add_isolated_vertices(&tri, &[1, 0, 2]).unwrap();
        assert_eq!(padded.class_sizes(), vec![2, 1, 3]);
        assert_eq!(padded.edges(), &[(0, 2), (0, 3), (2, 3)]);
        let pp = PatternPair::clustering();
        assert_eq!(
            n_copies(pp.h(), &padded).unwrap(),
            n_copies(pp.h(), &tri).unwrap()
        );
        assert_eq!(
            n_copies(pp.f(), &padded).unwrap(),
            n_copies(pp.f(), &tri).unwrap()
        );
    }
}
