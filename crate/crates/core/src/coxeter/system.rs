//! The canonical representation of a Coxeter group and its root system.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{
    classify_type, CoxeterGraph, CoxeterType, Exact, Float64, GroupWord, Scalar, ScalarMode,
};
use crate::{Error, Result};

/// A vector in the span of the simple roots, by coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Root<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        Root { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Root {
            coeffs: coeffs.iter().map(|&c| S::from_int(c)).collect(),
        }
    }

    /// The simple root `α_s`.
    pub fn simple(rank: usize, s: usize) -> Self {
        Root {
            coeffs: (0..rank).map(|t| S::from_int((s == t) as i64)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// All coefficients `≥ 0` and not all zero.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| c.signum() >= 0) && self.coeffs.iter().any(|c| c.signum() > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coeffs.iter().all(|c| c.signum() <= 0) && self.coeffs.iter().any(|c| c.signum() < 0)
    }

    /// `1` for positive, `-1` for negative, `0` for zero or mixed-sign vectors.
    pub fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn neg(&self) -> Self {
        Root {
            coeffs: self.coeffs.iter().map(S::neg).collect(),
        }
    }

    /// The positive one of `±self`.
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Sum of coefficients, as a float.
    pub fn height(&self) -> f64 {
        self.coeffs.iter().map(S::to_f64).sum()
    }

    pub fn is_simple(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.rank())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        match nonzero[..] {
            [s] if self.coeffs[s] == S::from_int(1) => Some(s),
            _ => None,
        }
    }
}

impl<S: Scalar> fmt::Display for Root<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Search bound for [`System::positive_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Roots `w α_s` with `ℓ(w) < d`.
    Levels(usize),
    /// The whole of `Φ^+` (finite type only).
    Full,
}

/// A positive root together with the breadth-first level at which it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEntry<S> {
    pub root: Root<S>,
    pub depth: usize,
}

/// The canonical bilinear form, stored doubled: `entry2(s, t) = 2⟨α_s, α_t⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix<S> {
    doubled: Vec<Vec<S>>,
}

impl<S: Scalar> FormMatrix<S> {
    pub fn entry2(&self, s: usize, t: usize) -> &S {
        &self.doubled[s][t]
    }

    /// `⟨α_s, α_t⟩` as a float.
    pub fn entry(&self, s: usize, t: usize) -> f64 {
        self.doubled[s][t].to_f64() / 2.0
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.doubled
    }
}

impl<S: Scalar> fmt::Display for FormMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.doubled {
            let cells: Vec<String> = row.iter().map(|c| format!("({c})/2")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A Coxeter graph with its canonical representation over the scalar type `S`.
#[derive(Debug, Clone)]
pub struct System<S> {
    graph: CoxeterGraph,
    mode: ScalarMode,
    form: FormMatrix<S>,
}

impl<S: Scalar> System<S> {
    pub fn new(graph: &CoxeterGraph, mode: ScalarMode) -> Result<Self> {
        let n = graph.len();
        let mut doubled = vec![vec![S::zero(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let m = graph.bond(s, t);
                let c = S::two_cos_in(m, mode).ok_or_else(|| Error::ScalarMode {
                    mode: mode.to_string(),
                    bond: match m {
                        super::Bond::Finite(m) => m,
                        super::Bond::Infinite => 0,
                    },
                })?;
                doubled[s][t] = if s == t { S::from_int(2) } else { c.neg() };
            }
        }
        Ok(System {
            graph: graph.clone(),
            mode,
            form: FormMatrix { doubled },
        })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    /// The Gram matrix of the canonical form.
    pub fn canonical_form(&self) -> &FormMatrix<S> {
        &self.form
    }

    pub fn simple(&self, s: usize) -> Root<S> {
        Root::simple(self.rank(), s)
    }

    /// `2⟨x, y⟩`.
    pub fn form2(&self, x: &Root<S>, y: &Root<S>) -> S {
        let mut acc = S::zero();
        for (s, xs) in x.coeffs.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            for (t, yt) in y.coeffs.iter().enumerate() {
                if yt.is_zero() {
                    continue;
                }
                acc = acc.add(&xs.mul(yt).mul(&self.form.doubled[s][t]));
            }
        }
        acc
    }

    /// `ρ_s(x) = x - 2⟨x, α_s⟩ α_s`.
    pub fn apply_generator(&self, s: usize, x: &Root<S>) -> Root<S> {
        let mut pairing = S::zero();
        for (t, xt) in x.coeffs.iter().enumerate() {
            if !xt.is_zero() {
                pairing = pairing.add(&xt.mul(&self.form.doubled[t][s]));
            }
        }
        let mut coeffs = x.coeffs.clone();
        coeffs[s] = coeffs[s].sub(&pairing);
        Root { coeffs }
    }

    /// `w · x`, applying the letters of `w` from right to left.
    pub fn act(&self, w: &GroupWord, x: &Root<S>) -> Root<S> {
        w.0.iter()
            .rev()
            .fold(x.clone(), |acc, &s| self.apply_generator(s, &acc))
    }

    /// `r_β(x) = x - 2⟨x, β⟩ β`, for a root `β` of unit norm.
    pub fn reflection_in_root(&self, beta: &Root<S>, x: &Root<S>) -> Result<Root<S>> {
        if self.form2(beta, beta) != S::from_int(2) {
            return Err(Error::NotUnitRoot);
        }
        Ok(self.reflect_unchecked(beta, x))
    }

    pub(crate) fn reflect_unchecked(&self, beta: &Root<S>, x: &Root<S>) -> Root<S> {
        let c = self.form2(x, beta);
        let coeffs = x
            .coeffs
            .iter()
            .zip(&beta.coeffs)
            .map(|(xi, bi)| xi.sub(&c.mul(bi)))
            .collect();
        Root { coeffs }
    }

    /// `+1` if `ℓ(ws) = ℓ(w) + 1` (i.e. `w α_s > 0`), `-1` otherwise.
    pub fn descent_step(&self, w: &GroupWord, s: usize) -> i32 {
        if self.act(w, &self.simple(s)).is_positive() {
            1
        } else {
            -1
        }
    }

    /// `Φ_w = {β > 0 : wβ < 0}`, built letter by letter:
    /// `Φ_{ws} = s(Φ_w \ {α_s}) ∪ {α_s}` when `α_s ∉ Φ_w`, and `s(Φ_w \ {α_s})` otherwise.
    pub fn inversion_set(&self, w: &GroupWord) -> Vec<Root<S>> {
        let mut set: Vec<Root<S>> = Vec::new();
        for &s in &w.0 {
            let alpha = self.simple(s);
            let had = set.iter().position(|r| *r == alpha);
            if let Some(i) = had {
                set.remove(i);
            }
            set = set.iter().map(|r| self.apply_generator(s, r)).collect();
            if had.is_none() {
                set.push(alpha);
            }
        }
        set
    }

    /// Coxeter length `ℓ(w) = |Φ_w|`.
    pub fn length(&self, w: &GroupWord) -> usize {
        self.inversion_set(w).len()
    }

    /// Length computed by accumulating descent steps along the word.
    pub fn length_by_descents(&self, w: &GroupWord) -> usize {
        let mut len: i64 = 0;
        for i in 0..w.len() {
            let prefix = GroupWord(w.0[..i].to_vec());
            len += self.descent_step(&prefix, w.0[i]) as i64;
        }
        len as usize
    }

    /// A reduced word for the same element, found by peeling right descents.
    pub fn reduced_word(&self, w: &GroupWord) -> GroupWord {
        let mut current = w.clone();
        let mut peeled = Vec::new();
        loop {
            let descent = (0..self.rank()).find(|&s| self.descent_step(&current, s) < 0);
            match descent {
                Some(s) => {
                    current.0.push(s);
                    peeled.push(s);
                }
                None => break,
            }
        }
        peeled.reverse();
        GroupWord(peeled)
    }

    /// Whether `w` acts trivially (the canonical representation is faithful).
    pub fn is_identity(&self, w: &GroupWord) -> bool {
        (0..self.rank()).all(|s| self.act(w, &self.simple(s)) == self.simple(s))
    }

    /// Breadth-first enumeration of positive roots from the simple roots.
    pub fn positive_roots(&self, depth: Depth) -> Result<Vec<RootEntry<S>>> {
        let limit = match depth {
            Depth::Levels(d) => d,
            Depth::Full => {
                let ty = classify_type(&self.graph)?;
                if ty != CoxeterType::Finite {
                    return Err(Error::InfiniteRootSystem(ty.name()));
                }
                usize::MAX
            }
        };
        let mut seen: HashSet<Root<S>> = HashSet::new();
        let mut out = Vec::new();
        let mut frontier: Vec<Root<S>> = Vec::new();
        if limit > 0 {
            for s in 0..self.rank() {
                let a = self.simple(s);
                seen.insert(a.clone());
                frontier.push(a);
            }
        }
        let mut level = 0;
        while !frontier.is_empty() && level < limit {
            let mut next = Vec::new();
            for r in &frontier {
                out.push(RootEntry {
                    root: r.clone(),
                    depth: level,
                });
            }
            if level + 1 < limit {
                for r in &frontier {
                    for s in 0..self.rank() {
                        let image = self.apply_generator(s, r);
                        if image.is_positive() && seen.insert(image.clone()) {
                            next.push(image);
                        }
                    }
                }
            }
            frontier = next;
            level += 1;
        }
        Ok(out)
    }

    /// All elements of a finite group by breadth-first search, keyed by the images of the
    /// simple roots. Each entry is a reduced word. Stops after `limit` elements.
    pub fn enumerate_elements(&self, limit: usize) -> Vec<GroupWord> {
        let key = |w: &GroupWord| -> Vec<Root<S>> {
            (0..self.rank())
                .map(|s| self.act(w, &self.simple(s)))
                .collect()
        };
        let mut seen: HashMap<Vec<Root<S>>, ()> = HashMap::new();
        let mut out = vec![GroupWord::identity()];
        seen.insert(key(&GroupWord::identity()), ());
        let mut i = 0;
        while i < out.len() && out.len() < limit {
            for s in 0..self.rank() {
                let w = out[i].concat(&GroupWord(vec![s]));
                let k = key(&w);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                    e.insert(());
                    out.push(w);
                }
            }
            i += 1;
        }
        out.truncate(limit);
        out
    }
}

/// A [`System`] over whichever scalar type the mode calls for.
#[derive(Debug, Clone)]
pub enum AnySystem {
    Exact(System<Exact>),
    Float(System<Float64>),
}

impl AnySystem {
    pub fn new(graph: &CoxeterGraph, mode: ScalarMode) -> Result<Self> {
        Ok(match mode {
            ScalarMode::Float => AnySystem::Float(System::new(graph, mode)?),
            _ => AnySystem::Exact(System::new(graph, mode)?),
        })
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            AnySystem::Exact(s) => s.mode(),
            AnySystem::Float(s) => s.mode(),
        }
    }
}

/// Runs `$body` with `$sys` bound to the concrete [`System`] inside an [`AnySystem`].
#[macro_export]
macro_rules! with_system {
    ($any:expr, $sys:ident => $body:expr) => {
        match $any {
            $crate::coxeter::AnySystem::Exact($sys) => $body,
            $crate::coxeter::AnySystem::Float($sys) => $body,
        }
    };
}
