//! Text formats for graphs, pattern pairs, partitions and semi-blowup descriptors.
//!
//! Graph file:
//!
//! ```text
//! k=2
//! classes 2 2
//! edges (0,2) (0,3) (1,2)
//! ```
//!
//! Vertex `i` belongs to the class whose cumulative id range contains it. Pairs after
//! `edges` may continue over further lines. `;` is accepted as a line separator, so
//! `k=2; classes 2 2; edges (0,2)(0,3)(1,2)` parses to the same graph.
//!
//! Pattern file (1-based labels): `k=3; H=(1,2) (1,3) (2,3); F=(1,3) (2,3); e=(1,2)`.
//!
//! Partition file: one cluster per line, whitespace-separated vertex ids.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::model::{KPartiteGraph, Pattern, PatternPair, VertexPartition};

/// Non-empty segments of `text` with their 1-based line numbers. Lines are split on `;`;
/// `#` starts a comment.
fn segments(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for seg in line.split(';') {
            let seg = seg.trim();
            if !seg.is_empty() {
                out.push((i + 1, seg));
            }
        }
    }
    out
}

/// Parses `(a,b)(c,d) (e, f)`.
pub(crate) fn parse_pairs(text: &str, line: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(line, format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::parse(line, "unterminated pair"))?;
        let (a, b) = body[..close]
            .split_once(',')
            .ok_or_else(|| Error::parse(line, format!("pair {:?} lacks ','", &body[..close])))?;
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad vertex id {:?}", s.trim())))
        };
        out.push((num(a)?, num(b)?));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

fn parse_header_int(seg: &str, key: &str, line: usize) -> Result<usize> {
    let value = seg
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=<int>`, found {seg:?}")))?;
    value
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("`{key}` is not a nonnegative integer")))
}

/// Parses a graph file, reporting the line of the first offending token.
pub fn parse_instance(text: &str) -> Result<KPartiteGraph> {
    let segs = segments(text);
    let mut it = segs.into_iter();
    let (line, seg) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `k=<int>` header"))?;
    let k = parse_header_int(seg, "k", line)?;
    if k == 0 {
        return Err(Error::parse(line, "k must be positive"));
    }

    let (line, seg) = it
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing `classes` line"))?;
    let sizes_text = seg
        .strip_prefix("classes")
        .ok_or_else(|| Error::parse(line, format!("expected `classes ...`, found {seg:?}")))?;
    let sizes: Vec<usize> = sizes_text
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad class size {t:?}")))
        })
        .collect::<Result<_>>()?;
    if sizes.len() != k {
        return Err(Error::parse(
            line,
            format!("k={k} but {} class sizes given", sizes.len()),
        ));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::parse(line, format!("class {} has size 0", i + 1)));
    }

    let (line, seg) = it
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing `edges` line"))?;
    let first = seg
        .strip_prefix("edges")
        .ok_or_else(|| Error::parse(line, format!("expected `edges ...`, found {seg:?}")))?;

    let mut class_of = Vec::new();
    for (c, &s) in sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat_n(c, s));
    }
    let n = class_of.len();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut chunk = |line: usize, text: &str| -> Result<()> {
        for (u, v) in parse_pairs(text, line)? {
            if u >= n || v >= n {
                return Err(Error::parse(
                    line,
                    format!("edge ({u},{v}): unknown vertex (ids are 0..{n})"),
                ));
            }
            if class_of[u] == class_of[v] {
                return Err(Error::parse(
                    line,
                    format!(
                        "edge ({u},{v}): intra-class edge in class {}",
                        class_of[u] + 1
                    ),
                ));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(line, format!("duplicate edge ({u},{v})")));
            }
            edges.push((u, v));
        }
        Ok(())
    };
    chunk(line, first)?;
    for (line, seg) in it {
        chunk(line, seg)?;
    }
    KPartiteGraph::new(&sizes, edges)
}

/// Canonical graph file text.
pub fn serialize_graph(g: &KPartiteGraph) -> String {
    let mut s = format!("k={}\nclasses", g.k());
    for size in g.class_sizes() {
        write!(s, " {size}").unwrap();
    }
    s.push_str("\nedges");
    for (u, v) in g.edges() {
        write!(s, " ({u},{v})").unwrap();
    }
    s.push('\n');
    s
}

fn one_based(pairs: Vec<(usize, usize)>, k: usize, line: usize) -> Result<Vec<(usize, usize)>> {
    pairs
        .into_iter()
        .map(|(a, b)| {
            if a == 0 || b == 0 || a > k || b > k {
                Err(Error::parse(
                    line,
                    format!("pattern vertex labels run from 1 to {k}, got ({a},{b})"),
                ))
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect()
}

/// Parses `k=<int>; H=<pairs>; F=<pairs>; e=(a,b)` with 1-based labels.
pub fn parse_pattern_pair(text: &str) -> Result<PatternPair> {
    let (h, f, e) = parse_pattern_parts(text)?;
    PatternPair::new(h, f, e)
}

/// `(H, F, e)` of a pattern file in its own (0-based) labels, before validation as a pair.
pub fn parse_pattern_parts(text: &str) -> Result<(Pattern, Pattern, (usize, usize))> {
    let mut k = None;
    let mut h = None;
    let mut f = None;
    let mut e = None;
    let mut last_line = 1;
    for (line, seg) in segments(text) {
        last_line = line;
        let (key, value) = seg
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, found {seg:?}")))?;
        match key.trim() {
            "k" => {
                k = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line, "k is not an integer"))?,
                )
            }
            "H" => h = Some((line, parse_pairs(value, line)?)),
            "F" => f = Some((line, parse_pairs(value, line)?)),
            "e" => e = Some((line, parse_pairs(value, line)?)),
            other => return Err(Error::parse(line, format!("unknown key {other:?}"))),
        }
    }
    let k = k.ok_or_else(|| Error::parse(last_line, "missing k"))?;
    let (hl, h) = h.ok_or_else(|| Error::parse(last_line, "missing H"))?;
    let (fl, f) = f.ok_or_else(|| Error::parse(last_line, "missing F"))?;
    let (el, e) = e.ok_or_else(|| Error::parse(last_line, "missing e"))?;
    let h = Pattern::new(k, one_based(h, k, hl)?)?;
    let f = Pattern::new(k, one_based(f, k, fl)?)?;
    let e = one_based(e, k, el)?;
    if e.len() != 1 {
        return Err(Error::parse(el, "e must be exactly one pair"));
    }
    Ok((h, f, e[0]))
}

pub fn serialize_pattern_pair(pp: &PatternPair) -> String {
    format!("k={}; H={}; F={}; e=(1,2)\n", pp.k(), pp.h(), pp.f())
}

pub fn parse_partition(text: &str) -> Result<VertexPartition> {
    let mut clusters = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut cluster = Vec::new();
        for t in line.split_whitespace() {
            let v: usize = t
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad vertex id {t:?}")))?;
            if !seen.insert(v) {
                return Err(Error::parse(i + 1, format!("vertex {v} listed twice")));
            }
            cluster.push(v);
        }
        clusters.push(cluster);
    }
    VertexPartition::new(clusters)
}

pub fn serialize_partition(p: &VertexPartition) -> String {
    let mut s = String::new();
    for c in p.clusters() {
        let ids: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        s.push_str(&ids.join(" "));
        s.push('\n');
    }
    s
}

/// `semiblowup: pattern=<file> e=(a,b) g0=<file> n=<int>`; `e` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiBlowupDescriptor {
    pub pattern: PathBuf,
    pub e: (usize, usize),
    pub g0: PathBuf,
    pub n: usize,
}

impl SemiBlowupDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let (line, seg) = segments(text)
            .into_iter()
            .next()
            .ok_or_else(|| Error::parse(1, "empty descriptor"))?;
        let body = seg
            .strip_prefix("semiblowup:")
            .ok_or_else(|| Error::parse(line, "descriptor must start with `semiblowup:`"))?;
        let (mut pattern, mut e, mut g0, mut n) = (None, None, None, None);
        for field in body.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| {
                Error::parse(line, format!("expected key=value, found {field:?}"))
            })?;
            match key {
                "pattern" => pattern = Some(PathBuf::from(value)),
                "g0" => g0 = Some(PathBuf::from(value)),
                "e" => {
                    let pairs = parse_pairs(value, line)?;
                    if pairs.len() != 1 {
                        return Err(Error::parse(line, "e must be one pair"));
                    }
                    e = Some(pairs[0]);
                }
                "n" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|_| Error::parse(line, "n is not an integer"))?,
                    )
                }
                other => return Err(Error::parse(line, format!("unknown field {other:?}"))),
            }
        }
        let missing = |what: &str| Error::parse(line, format!("descriptor lacks {what}"));
        Ok(SemiBlowupDescriptor {
            pattern: pattern.ok_or_else(|| missing("pattern"))?,
            e: e.ok_or_else(|| missing("e"))?,
            g0: g0.ok_or_else(|| missing("g0"))?,
            n: n.ok_or_else(|| missing("n"))?,
        })
    }

    pub fn serialize(&self) -> String {
        format!(
            "semiblowup: pattern={} e=({},{}) g0={} n={}\n",
            self.pattern.display(),
            self.e.0,
            self.e.1,
            self.g0.display(),
            self.n
        )
    }
}
