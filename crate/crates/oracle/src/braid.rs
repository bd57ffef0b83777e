//! Word-rewriting oracles for braid groups.
//!
//! Words are `Vec<i64>`: `k` is `σ_k`, `-k` is `σ_k^{-1}`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// All positive words reachable from `word` by the braid relations applied at every position.
pub fn positive_class(word: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for next in positive_moves(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn positive_moves(w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        if p + 1 < w.len() && w[p].abs_diff(w[p + 1]) >= 2 {
            let mut v = w.to_vec();
            v.swap(p, p + 1);
            out.push(v);
        }
        if p + 2 < w.len() && w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
            let mut v = w.to_vec();
            let (a, b) = (w[p], w[p + 1]);
            v[p] = b;
            v[p + 1] = a;
            v[p + 2] = b;
            out.push(v);
        }
    }
    out
}

/// Every positive word of length `len` over `n - 1` generators.
pub fn all_positive_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * (n - 1));
        for w in &words {
            for g in 1..n {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words = next;
    }
    words
}

/// Positive word for the half twist.
pub fn delta_word(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for top in (1..n).rev() {
        out.extend(1..=top);
    }
    out
}

/// A positive word `x` with `x σ_i = Δ`: the half twist with a trailing `σ_i` removed.
fn delta_without_last(n: usize, i: usize) -> Vec<usize> {
    let delta = delta_word(n);
    positive_class(&delta)
        .into_iter()
        .find(|w| *w.last().unwrap() == i)
        .map(|mut w| {
            w.pop();
            w
        })
        .expect("every generator right-divides the half twist")
}

/// Rewrites a signed word as `Δ^{-k} P` with `P` positive, using
/// `σ_i^{-1} = Δ^{-1} x_i` where `x_i σ_i = Δ`, and `X Δ^{-1} = Δ^{-1} flip(X)`.
pub fn delta_split(word: &[i64], n: usize) -> (usize, Vec<usize>) {
    let complements: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            if i == 0 {
                Vec::new()
            } else {
                delta_without_last(n, i)
            }
        })
        .collect();
    let flip = |g: usize| n - g;
    let mut k = 0usize;
    let mut pos: Vec<usize> = Vec::new();
    for &l in word {
        if l > 0 {
            pos.push(l as usize);
        } else {
            // P σ_i^{-1} = P Δ^{-1} x_i = Δ^{-1} flip(P) x_i
            for g in pos.iter_mut() {
                *g = flip(*g);
            }
            pos.extend_from_slice(&complements[(-l) as usize]);
            k += 1;
        }
    }
    (k, pos)
}

/// Reference solution of the word problem: Garside's embedding of the positive monoid
/// plus exhaustive rewriting of positive words.
#[derive(Default)]
pub struct EqualityOracle {
    classes: HashMap<Vec<usize>, usize>,
    next_id: usize,
}

impl EqualityOracle {
    pub fn new() -> Self {
        Self::default()
    }

    fn class_id(&mut self, w: &[usize]) -> usize {
        if let Some(&id) = self.classes.get(w) {
            return id;
        }
        let id = self.next_id;
        self.next_id += 1;
        for v in positive_class(w) {
            self.classes.insert(v, id);
        }
        id
    }

    /// Whether `u` and `v` represent the same element of `B_n`.
    pub fn equal(&mut self, u: &[i64], v: &[i64], n: usize) -> bool {
        if exponent_sum(u) != exponent_sum(v) || permutation(u, n) != permutation(v, n) {
            return false;
        }
        let (a, mut p) = delta_split(u, n);
        let (b, mut q) = delta_split(v, n);
        // Δ^{-a} P = Δ^{-b} Q  <=>  Δ^{b-c} P = Δ^{a-c} Q
        let c = a.min(b);
        let delta = delta_word(n);
        let mut lhs = Vec::new();
        for _ in c..b {
            lhs.extend_from_slice(&delta);
        }
        lhs.append(&mut p);
        let mut rhs = Vec::new();
        for _ in c..a {
            rhs.extend_from_slice(&delta);
        }
        rhs.append(&mut q);
        if lhs.len() != rhs.len() {
            return false;
        }
        self.class_id(&lhs) == self.class_id(&rhs)
    }

    pub fn is_identity(&mut self, u: &[i64], n: usize) -> bool {
        self.equal(u, &[], n)
    }
}

pub fn exponent_sum(w: &[i64]) -> i64 {
    w.iter().map(|l| l.signum()).sum()
}

/// Underlying permutation: entry `i` is the final position of the strand starting at `i`.
pub fn permutation(w: &[i64], n: usize) -> Vec<usize> {
    let mut at: Vec<usize> = (0..n).collect(); // at[pos] = strand
    for &l in w {
        let i = l.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    let mut perm = vec![0; n];
    for (pos, &strand) in at.iter().enumerate() {
        perm[strand] = pos;
    }
    perm
}

pub fn invert(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|l| -l).collect()
}

/// Membership of `h` in the standard parabolic subgroup generated by `σ_x, x ∈ subset`.
///
/// Standard parabolic subgroups of braid groups are convex, so a geodesic for a member uses
/// only letters from the subset; it suffices to search subset words no longer than `h`.
pub fn parabolic_member(
    oracle: &mut EqualityOracle,
    h: &[i64],
    subset: &[usize],
    n: usize,
) -> bool {
    let e = exponent_sum(h);
    let letters: Vec<i64> = subset
        .iter()
        .flat_map(|&x| [x as i64, -(x as i64)])
        .collect();
    let mut frontier: Vec<Vec<i64>> = vec![Vec::new()];
    for len in 0..=h.len() {
        for g in &frontier {
            if exponent_sum(g) == e && oracle.equal(g, h, n) {
                return true;
            }
        }
        if len == h.len() {
            break;
        }
        let mut next = Vec::new();
        for g in &frontier {
            for &l in &letters {
                if g.last() == Some(&-l) {
                    continue;
                }
                let mut v = g.clone();
                v.push(l);
                next.push(v);
            }
        }
        frontier = next;
    }
    false
}

/// Searches representatives of `w` (relations in all sign patterns, free cancellation and
/// insertion, length at most `max_len`) for one in which the largest generator index occurs
/// with a single sign. Returns `(index, sign)` if found, `(0, 0)` if the empty word is reached.
pub fn single_sign_form(w: &[i64], n: usize, max_len: usize) -> Option<(usize, i64)> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(v) = queue.pop_front() {
        if let Some(found) = single_sign(&v) {
            return Some(found);
        }
        for next in signed_moves(&v, n, max_len) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    None
}

fn single_sign(v: &[i64]) -> Option<(usize, i64)> {
    let top = v
        .iter()
        .map(|l| l.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    if top == 0 {
        return Some((0, 0));
    }
    let signs: BTreeSet<i64> = v
        .iter()
        .filter(|l| l.unsigned_abs() as usize == top)
        .map(|l| l.signum())
        .collect();
    (signs.len() == 1).then(|| (top, *signs.iter().next().unwrap()))
}

fn signed_moves(v: &[i64], n: usize, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let idx = |l: i64| l.unsigned_abs() as usize;
    for p in 0..v.len() {
        if p + 1 < v.len() {
            if idx(v[p]).abs_diff(idx(v[p + 1])) >= 2 {
                let mut w = v.to_vec();
                w.swap(p, p + 1);
                out.push(w);
            }
            if v[p] == -v[p + 1] {
                let mut w = v.to_vec();
                w.drain(p..p + 2);
                out.push(w);
            }
        }
        if p + 2 < v.len() {
            // a^e b^d a^{-e}... all length-3 identities x y z = y' z' x' between adjacent generators
            let (x, y, z) = (v[p], v[p + 1], v[p + 2]);
            if idx(x) == idx(z) && idx(x).abs_diff(idx(y)) == 1 {
                if let Some(rep) = three_letter_rewrite(x, y, z) {
                    let mut w = v.to_vec();
                    w[p..p + 3].copy_from_slice(&rep);
                    out.push(w);
                }
            }
        }
    }
    if v.len() + 2 <= max_len {
        for p in 0..=v.len() {
            for g in 1..n as i64 {
                for l in [g, -g] {
                    let mut w = v.to_vec();
                    w.splice(p..p, [l, -l]);
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Identities `a^e b^d a^f = b^{f'} a^{d} b^{e'}`-style between adjacent generators:
/// `a b a = b a b`, `a^{-1} b^{-1} a^{-1} = b^{-1} a^{-1} b^{-1}`, and
/// `a^e b^d a^{-e} = b^{-e} a^d b^e`.
fn three_letter_rewrite(x: i64, y: i64, z: i64) -> Option<[i64; 3]> {
    let (a, b) = (x.unsigned_abs() as i64, y.unsigned_abs() as i64);
    let (e, d, f) = (x.signum(), y.signum(), z.signum());
    if e == f && e == d {
        Some([e * b, e * a, e * b])
    } else if e == -f {
        Some([-e * b, d * a, e * b])
    } else {
        None
    }
}
