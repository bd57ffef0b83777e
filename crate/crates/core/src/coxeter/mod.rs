//! Coxeter graphs, their canonical representation and root systems.
//!
//! The canonical bilinear form has `⟨α_s, α_t⟩ = -cos(π / m_st)` (and `-1` when `m_st = ∞`).
//! Internally the doubled form `2⟨·,·⟩` is used: its entries `2cos(π/m)` lie in `Z` for bonds
//! 2, 3 and ∞ and in `Z[θ]` for a single quadratic irrationality `θ ∈ {√2, φ, √3}` for bonds
//! 4, 5 and 6, so roots have exact coordinates in those cases.
//!
//! Words act on the left, letters applied right to left: `s_1 … s_k` acts as
//! `ρ_{s_1} ∘ … ∘ ρ_{s_k}`.

mod classify;
mod scalar;
mod system;

use std::fmt;

pub use classify::{catalog_type, classify_type, CoxeterType};
pub use scalar::{Exact, Float64, QuadField, Scalar, ScalarMode};
pub use system::{AnySystem, Depth, FormMatrix, Root, RootEntry, System};

use crate::{Error, Result};

/// A bond label `m_st`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_infinite(self) -> bool {
        matches!(self, Bond::Infinite)
    }

    /// Whether the pair is joined by an edge in the Coxeter graph (`m ≥ 3`).
    pub fn is_edge(self) -> bool {
        !matches!(self, Bond::Finite(1 | 2))
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter graph on labelled vertices. Pairs without an explicit bond commute (`m = 2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    labels: Vec<String>,
    bonds: Vec<Vec<Bond>>,
}

impl CoxeterGraph {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::GraphSyntax {
                    line: 0,
                    message: format!("duplicate vertex `{l}`"),
                });
            }
        }
        let n = labels.len();
        let mut bonds = vec![vec![Bond::Finite(2); n]; n];
        for (i, row) in bonds.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        Ok(CoxeterGraph { labels, bonds })
    }

    /// Vertices labelled `1 … n`, bonds from a matrix where `0` means `∞`.
    pub fn from_matrix(matrix: &[Vec<u32>]) -> Result<Self> {
        let n = matrix.len();
        let mut g = CoxeterGraph::new((1..=n).map(|i| i.to_string()))?;
        for s in 0..n {
            for t in s + 1..n {
                let m = if matrix[s][t] == 0 {
                    Bond::Infinite
                } else {
                    Bond::Finite(matrix[s][t])
                };
                g.set_bond(s, t, m)?;
            }
        }
        Ok(g)
    }

    /// Path graph `1 – 2 – … – n` with the given consecutive labels.
    pub fn chain(labels: &[u32]) -> Self {
        let n = labels.len() + 1;
        let mut g = CoxeterGraph::new((1..=n).map(|i| i.to_string())).expect("distinct labels");
        for (i, &m) in labels.iter().enumerate() {
            let b = if m == 0 {
                Bond::Infinite
            } else {
                Bond::Finite(m)
            };
            g.set_bond(i, i + 1, b).expect("valid bond");
        }
        g
    }

    /// The type `A_n` chain.
    pub fn a(n: usize) -> Self {
        Self::chain(&vec![3; n.saturating_sub(1)])
    }

    pub fn set_bond(&mut self, s: usize, t: usize, m: Bond) -> Result<()> {
        if s == t || matches!(m, Bond::Finite(0 | 1)) {
            return Err(Error::InvalidBond {
                s: self.labels[s].clone(),
                t: self.labels[t].clone(),
                label: m.to_string(),
            });
        }
        self.bonds[s][t] = m;
        self.bonds[t][s] = m;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.bonds[s][t]
    }

    pub fn neighbours(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&t| t != s && self.bonds[s][t].is_edge())
    }

    /// All bonds `s < t` with `m_st ≠ 2`.
    pub fn edges(&self) -> Vec<(usize, usize, Bond)> {
        let mut out = Vec::new();
        for s in 0..self.len() {
            for t in s + 1..self.len() {
                if self.bonds[s][t].is_edge() {
                    out.push((s, t, self.bonds[s][t]));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(s) = stack.pop() {
                members.push(s);
                for t in self.neighbours(s) {
                    if comp[t] == usize::MAX {
                        comp[t] = id;
                        stack.push(t);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// All bonds in `{2, 3}`.
    pub fn is_small_type(&self) -> bool {
        self.edges().iter().all(|&(_, _, m)| m == Bond::Finite(3))
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn subgraph(&self, vertices: &[usize]) -> CoxeterGraph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let bonds = vertices
            .iter()
            .map(|&s| vertices.iter().map(|&t| self.bonds[s][t]).collect())
            .collect();
        CoxeterGraph { labels, bonds }
    }

    /// Parses the graph file format:
    ///
    /// ```text
    /// # comment
    /// vertices: a b c
    /// bond a b 3
    /// bond b c inf
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<CoxeterGraph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::GraphSyntax {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if graph.is_some() {
                    return Err(syntax("vertices declared twice".into()));
                }
                graph = Some(
                    CoxeterGraph::new(rest.split_whitespace()).map_err(|e| match e {
                        Error::GraphSyntax { message, .. } => syntax(message),
                        other => other,
                    })?,
                );
            } else if let Some(rest) = line.strip_prefix("bond ") {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| syntax("bond before vertices line".into()))?;
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b, m] = parts[..] else {
                    return Err(syntax(format!("expected `bond <a> <b> <m>`, got `{line}`")));
                };
                let (s, t) = (g.index_of(a)?, g.index_of(b)?);
                let bond = match m {
                    "inf" | "∞" => Bond::Infinite,
                    _ => Bond::Finite(
                        m.parse()
                            .map_err(|_| syntax(format!("bad bond label `{m}`")))?,
                    ),
                };
                if s == t || bond == Bond::Finite(0) || bond == Bond::Finite(1) {
                    return Err(Error::InvalidBond {
                        s: a.into(),
                        t: b.into(),
                        label: m.into(),
                    });
                }
                g.set_bond(s, t, bond)?;
            } else {
                return Err(syntax(format!("unrecognized line `{line}`")));
            }
        }
        graph.ok_or(Error::GraphSyntax {
            line: 0,
            message: "missing `vertices:` line".into(),
        })
    }

    /// Parses a whitespace-separated word of vertex labels.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        text.split_whitespace()
            .map(|t| self.index_of(t))
            .collect::<Result<Vec<_>>>()
            .map(GroupWord)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        let parts: Vec<&str> = w.0.iter().map(|&s| self.label(s)).collect();
        parts.join(" ")
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.labels.join(" "))?;
        for (s, t, m) in self.edges() {
            writeln!(f, "bond {} {} {}", self.labels[s], self.labels[t], m)?;
        }
        Ok(())
    }
}

/// A word in the Coxeter generators, by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(pub Vec<usize>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reversed word; this is the inverse element since generators are involutions.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord(self.0.repeat(k))
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }
}

impl From<Vec<usize>> for GroupWord {
    fn from(v: Vec<usize>) -> Self {
        GroupWord(v)
    }
}

/// `ω(a, b : m)`: the alternating word `a b a …` of length `m`.
pub fn relation_word<T: Clone>(a: T, b: T, m: Bond) -> Result<Vec<T>> {
    match m {
        Bond::Infinite => Err(Error::InfiniteRelation),
        Bond::Finite(m) => Ok((0..m)
            .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
            .collect()),
    }
}
