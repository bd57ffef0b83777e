//! Garside structure of the positive braid monoid `B_n^+`.
//!
//! Simple elements (left divisors of the half twist `Δ`) are stored as permutations. A positive
//! word is simple exactly when no two strands cross twice, and left divisibility between simples
//! is containment of their sets of crossing strand pairs. Everything else in this module (meets,
//! complements, left-weighting, normal forms) is built on that correspondence.

use std::fmt;

use crate::words::{BraidWord, Letter};
use crate::{Error, Result};

/// A permutation braid. `perm[i]` is the final position of the strand that starts at position `i`
/// (positions are 0-based here; generator indices elsewhere are 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFactor {
    perm: Vec<usize>,
}

impl SimpleFactor {
    pub fn identity(strands: usize) -> Self {
        SimpleFactor {
            perm: (0..strands).collect(),
        }
    }

    /// The half twist `Δ`: `i ↦ n - 1 - i`.
    pub fn delta(strands: usize) -> Self {
        SimpleFactor {
            perm: (0..strands).rev().collect(),
        }
    }

    /// The generator `σ_i` (1-based).
    pub fn atom(strands: usize, i: usize) -> Self {
        assert!(i >= 1 && i < strands, "generator index {i} out of range");
        let mut perm: Vec<usize> = (0..strands).collect();
        perm.swap(i - 1, i);
        SimpleFactor { perm }
    }

    /// Builds a simple from its permutation; `None` if `perm` is not a bijection of `0..n`.
    pub fn from_permutation(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(SimpleFactor { perm })
    }

    /// The permutation of a positive word if the word is simple, `None` if two strands cross twice.
    pub fn from_word(strands: usize, letters: &[usize]) -> Option<Self> {
        let mut at: Vec<usize> = (0..strands).collect();
        for &i in letters {
            let (a, b) = (at[i - 1], at[i]);
            if a > b {
                return None;
            }
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        Some(SimpleFactor { perm })
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.perm.len();
        self.perm.iter().enumerate().all(|(i, &p)| p == n - 1 - i)
    }

    /// Word length, i.e. the number of crossings.
    pub fn crossings(&self) -> usize {
        let n = self.perm.len();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.perm[a] > self.perm[b] {
                    count += 1;
                }
            }
        }
        count
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// `self ≤_L other`: every crossing of `self` is a crossing of `other`.
    pub fn left_divides(&self, other: &SimpleFactor) -> bool {
        let n = self.perm.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.perm[a] < self.perm[b] || other.perm[a] > other.perm[b])
        })
    }

    /// `self ≤_R other`.
    pub fn right_divides(&self, other: &SimpleFactor) -> bool {
        self.reverse().left_divides(&other.reverse())
    }

    /// Permutation of the reversed word.
    pub fn reverse(&self) -> SimpleFactor {
        SimpleFactor {
            perm: self.inverse_perm(),
        }
    }

    /// `{i : σ_i ≤_L self}` (1-based).
    pub fn starting_set(&self) -> Vec<usize> {
        (1..self.perm.len())
            .filter(|&i| self.perm[i - 1] > self.perm[i])
            .collect()
    }

    /// `{i : σ_i ≤_R self}` (1-based).
    pub fn finishing_set(&self) -> Vec<usize> {
        self.reverse().starting_set()
    }

    fn starts_with(&self, i: usize) -> bool {
        self.perm[i - 1] > self.perm[i]
    }

    fn finishes_with(&self, i: usize, inv: &[usize]) -> bool {
        let _ = self;
        inv[i - 1] > inv[i]
    }

    /// Permutation of the concatenation `self · other`, whether or not it is simple.
    fn compose(&self, other: &SimpleFactor) -> SimpleFactor {
        SimpleFactor {
            perm: self.perm.iter().map(|&p| other.perm[p]).collect(),
        }
    }

    /// `self · other` if the product is again simple.
    pub fn try_mul(&self, other: &SimpleFactor) -> Option<SimpleFactor> {
        let n = self.perm.len();
        let prod = self.compose(other);
        // simple iff every pair crossing in `self` is still crossed in the product
        for a in 0..n {
            for b in a + 1..n {
                if self.perm[a] > self.perm[b] && prod.perm[a] < prod.perm[b] {
                    return None;
                }
            }
        }
        Some(prod)
    }

    /// The simple `c` with `self · c = Δ`.
    pub fn right_complement(&self) -> SimpleFactor {
        let n = self.perm.len();
        let inv = self.inverse_perm();
        SimpleFactor {
            perm: (0..n).map(|p| n - 1 - inv[p]).collect(),
        }
    }

    /// The simple `c` with `c · self = Δ`.
    pub fn left_complement(&self) -> SimpleFactor {
        let n = self.perm.len();
        let inv = self.inverse_perm();
        SimpleFactor {
            perm: (0..n).map(|i| inv[n - 1 - i]).collect(),
        }
    }

    /// `self^{-1} · other`, assuming `self ≤_L other`.
    pub fn left_quotient(&self, other: &SimpleFactor) -> SimpleFactor {
        debug_assert!(self.left_divides(other));
        let inv = self.inverse_perm();
        SimpleFactor {
            perm: inv.iter().map(|&i| other.perm[i]).collect(),
        }
    }

    /// `other · self^{-1}`, assuming `self ≤_R other`.
    pub fn right_quotient(&self, other: &SimpleFactor) -> SimpleFactor {
        debug_assert!(self.right_divides(other));
        let inv = self.inverse_perm();
        SimpleFactor {
            perm: other.perm.iter().map(|&p| inv[p]).collect(),
        }
    }

    /// Conjugation by `Δ`, which sends `σ_i` to `σ_{n-i}`.
    pub fn flip(&self) -> SimpleFactor {
        let n = self.perm.len();
        SimpleFactor {
            perm: (0..n).map(|i| n - 1 - self.perm[n - 1 - i]).collect(),
        }
    }

    /// Greatest common left divisor.
    pub fn left_meet(&self, other: &SimpleFactor) -> SimpleFactor {
        assert_eq!(self.strands(), other.strands());
        let n = self.perm.len();
        // at[pos] = strand currently at pos after the meet built so far
        let mut at: Vec<usize> = (0..n).collect();
        loop {
            let step = (1..n).find(|&i| {
                let (a, b) = (at[i - 1], at[i]);
                a < b && self.perm[a] > self.perm[b] && other.perm[a] > other.perm[b]
            });
            match step {
                Some(i) => at.swap(i - 1, i),
                None => break,
            }
        }
        let mut perm = vec![0; n];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        SimpleFactor { perm }
    }

    /// Greatest common right divisor.
    pub fn right_meet(&self, other: &SimpleFactor) -> SimpleFactor {
        self.reverse().left_meet(&other.reverse()).reverse()
    }

    /// Least common right multiple in the prefix order, via `∂(x ∨_L y) = ∂x ∧_R ∂y`.
    pub fn left_join(&self, other: &SimpleFactor) -> SimpleFactor {
        self.right_complement()
            .right_meet(&other.right_complement())
            .left_complement()
    }

    /// A shortest positive word, peeling off the smallest starting generator each time.
    pub fn to_word(&self) -> Vec<usize> {
        let mut rest = self.clone();
        let mut word = Vec::with_capacity(self.crossings());
        while let Some(&i) = rest.starting_set().first() {
            word.push(i);
            rest = SimpleFactor::atom(rest.strands(), i).left_quotient(&rest);
        }
        word
    }

    /// Compact token: `D` for `Δ`, `e` for the identity, otherwise the letters joined by `,`.
    pub fn token(&self) -> String {
        if self.is_delta() && self.strands() > 1 {
            "D".to_string()
        } else if self.is_identity() {
            "e".to_string()
        } else {
            let letters: Vec<String> = self.to_word().iter().map(|i| i.to_string()).collect();
            letters.join(",")
        }
    }

    /// One-line notation with 1-based values, e.g. `[3 2 1]`.
    pub fn one_line(&self) -> String {
        let vals: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        format!("[{}]", vals.join(" "))
    }

    /// All simple elements of `B_n^+`, in lexicographic permutation order.
    pub fn all(strands: usize) -> Vec<SimpleFactor> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..strands).collect();
        permutations(&mut perm, 0, &mut out);
        out.sort();
        out
    }
}

fn permutations(perm: &mut Vec<usize>, k: usize, out: &mut Vec<SimpleFactor>) {
    if k == perm.len() {
        out.push(SimpleFactor { perm: perm.clone() });
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, out);
        perm.swap(k, i);
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Whether `(f, g)` is left-weighted: every generator starting `g` already finishes `f`,
/// equivalently `π_L(f·g) = f`.
pub fn is_left_weighted(f: &SimpleFactor, g: &SimpleFactor) -> bool {
    let inv = f.inverse_perm();
    (1..g.strands()).all(|i| !g.starts_with(i) || f.finishes_with(i, &inv))
}

/// Moves as much of `g` as possible into `f`: returns `(f·t, t^{-1}·g)` with `t = ∂f ∧_L g`.
pub fn make_left_weighted(f: &SimpleFactor, g: &SimpleFactor) -> (SimpleFactor, SimpleFactor) {
    let t = f.right_complement().left_meet(g);
    if t.is_identity() {
        return (f.clone(), g.clone());
    }
    (f.compose(&t), t.left_quotient(g))
}

/// Puts an arbitrary product of simples into left normal form: all adjacent pairs left-weighted,
/// no identity factors. Leading factors equal to `Δ` are kept in the list.
pub fn normalize(mut factors: Vec<SimpleFactor>) -> Vec<SimpleFactor> {
    loop {
        let mut changed = false;
        for j in (0..factors.len().saturating_sub(1)).rev() {
            if !is_left_weighted(&factors[j], &factors[j + 1]) {
                let (f, g) = make_left_weighted(&factors[j], &factors[j + 1]);
                factors[j] = f;
                factors[j + 1] = g;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|f| !f.is_identity());
    factors
}

/// A positive braid, stored as a word in the atoms. Its length is the norm `ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveBraid {
    strands: usize,
    letters: Vec<usize>,
}

impl PositiveBraid {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self> {
        BraidWord::positive(strands, &letters)?;
        Ok(PositiveBraid { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        PositiveBraid {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn from_factors(strands: usize, factors: &[SimpleFactor]) -> Self {
        let letters = factors.iter().flat_map(|f| f.to_word()).collect();
        PositiveBraid { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// The norm `ν`: number of atoms (the relations are length-homogeneous).
    pub fn norm(&self) -> usize {
        self.letters.len()
    }

    pub fn concat(&self, other: &PositiveBraid) -> Result<PositiveBraid> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(PositiveBraid {
            strands: self.strands,
            letters,
        })
    }

    pub fn to_word(&self) -> BraidWord {
        BraidWord::from_letters_unchecked(
            self.strands,
            self.letters.iter().map(|&i| Letter::pos(i)).collect(),
        )
    }
}

impl TryFrom<&BraidWord> for PositiveBraid {
    type Error = Error;

    fn try_from(w: &BraidWord) -> Result<Self> {
        if !w.is_positive() {
            return Err(Error::MalformedToken(format!("{w} is not a positive word")));
        }
        Ok(PositiveBraid {
            strands: w.strands(),
            letters: w.letters().iter().map(|l| l.index).collect(),
        })
    }
}

/// The permutation of `w` if `w ≤_L Δ`, `None` otherwise.
pub fn simple_from_word(w: &PositiveBraid) -> Option<SimpleFactor> {
    SimpleFactor::from_word(w.strands, &w.letters)
}

/// `x ∧_L y` on simple elements.
pub fn left_meet(x: &SimpleFactor, y: &SimpleFactor) -> SimpleFactor {
    x.left_meet(y)
}

/// Left normal form `π_L(a) · π_L(∂_L a) · …` of a positive braid. Empty for the identity.
pub fn normal_form_positive(a: &PositiveBraid) -> Vec<SimpleFactor> {
    let n = a.strands;
    let mut factors: Vec<SimpleFactor> = Vec::with_capacity(a.letters.len());
    for &i in &a.letters {
        factors.push(SimpleFactor::atom(n, i));
        factors = normalize(factors);
    }
    factors
}

/// `π_L(a) = Δ ∧_L a`, the largest simple left divisor.
pub fn pi_l(a: &PositiveBraid) -> SimpleFactor {
    normal_form_positive(a)
        .into_iter()
        .next()
        .unwrap_or_else(|| SimpleFactor::identity(a.strands))
}

/// `∂_L(a)`, defined by `a = π_L(a) · ∂_L(a)`.
pub fn partial_l(a: &PositiveBraid) -> PositiveBraid {
    let nf = normal_form_positive(a);
    PositiveBraid::from_factors(a.strands, nf.get(1..).unwrap_or(&[]))
}

/// The normal form `a_p^{-1} … a_1^{-1} b_1 … b_q` of a braid, with `a ∧_L b = 1`.
///
/// `negative` holds `[a_p, …, a_1]` in reading order, so the element is
/// `negative[0]^{-1} ⋯ negative[p-1]^{-1} · positive[0] ⋯ positive[q-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    strands: usize,
    negative: Vec<SimpleFactor>,
    positive: Vec<SimpleFactor>,
}

impl GarsideNormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn negative(&self) -> &[SimpleFactor] {
        &self.negative
    }

    pub fn positive(&self) -> &[SimpleFactor] {
        &self.positive
    }

    pub fn is_identity(&self) -> bool {
        self.negative.is_empty() && self.positive.is_empty()
    }

    /// Number of factors, `p + q`.
    pub fn canonical_length(&self) -> usize {
        self.negative.len() + self.positive.len()
    }

    /// Reconstructs a word for the element.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        for f in &self.negative {
            letters.extend(f.to_word().iter().rev().map(|&i| Letter::neg(i)));
        }
        for f in &self.positive {
            letters.extend(f.to_word().into_iter().map(Letter::pos));
        }
        BraidWord::from_letters_unchecked(self.strands, letters)
    }

    /// Factor tokens in reading order, inverse factors prefixed with `~`.
    pub fn tokens(&self) -> Vec<String> {
        self.negative
            .iter()
            .map(|f| format!("~{}", f.token()))
            .chain(self.positive.iter().map(|f| f.token()))
            .collect()
    }
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        f.write_str(&self.tokens().join("."))
    }
}

/// Computes `Δ^r · P` for `w`, with `P` in left normal form and not starting with `Δ`.
fn delta_form(w: &BraidWord) -> (i64, Vec<SimpleFactor>) {
    let n = w.strands();
    let mut power = 0i64;
    let mut factors: Vec<SimpleFactor> = Vec::new();
    for l in w.letters() {
        if l.inverse {
            // Δ^r P σ_i^{-1} = Δ^{r-1} flip(P) x_i  with  x_i σ_i = Δ
            for f in factors.iter_mut() {
                *f = f.flip();
            }
            power -= 1;
            factors.push(SimpleFactor::atom(n, l.index).left_complement());
        } else {
            factors.push(SimpleFactor::atom(n, l.index));
        }
        factors = normalize(factors);
        let deltas = factors.iter().take_while(|f| f.is_delta()).count();
        if deltas > 0 {
            factors.drain(..deltas);
            power += deltas as i64;
        }
    }
    (power, factors)
}

/// Divides the normal form `factors` on the left by a simple `m ≤_L factors[0]`.
fn left_divide(m: &SimpleFactor, mut factors: Vec<SimpleFactor>) -> Vec<SimpleFactor> {
    factors[0] = m.left_quotient(&factors[0]);
    normalize(factors)
}

/// The normal form `a^{-1} b` of `w` with `a ∧_L b = 1`.
pub fn group_normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands();
    let (power, body) = delta_form(w);
    if power >= 0 {
        let mut positive = vec![SimpleFactor::delta(n); power as usize];
        positive.extend(body);
        return GarsideNormalForm {
            strands: n,
            negative: Vec::new(),
            positive,
        };
    }
    let mut a = vec![SimpleFactor::delta(n); (-power) as usize];
    let mut b = body;
    // cancel the greatest common left divisor of a and b
    while !a.is_empty() && !b.is_empty() {
        let m = a[0].left_meet(&b[0]);
        if m.is_identity() {
            break;
        }
        a = left_divide(&m, a);
        b = left_divide(&m, b);
    }
    a.reverse();
    GarsideNormalForm {
        strands: n,
        negative: a,
        positive: b,
    }
}

/// Whether `u = v` in `B_n`, by comparing normal forms.
pub fn equals(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::StrandMismatch(u.strands(), v.strands()));
    }
    if u.exponent_sum() != v.exponent_sum() {
        return Ok(false);
    }
    Ok(group_normal_form(u) == group_normal_form(v))
}

/// `true` iff `w` is the identity in `B_n`.
pub fn is_identity(w: &BraidWord) -> bool {
    w.exponent_sum() == 0 && group_normal_form(w).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use braidforge_oracle::braid as oracle;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn s(n: usize, letters: &[usize]) -> SimpleFactor {
        SimpleFactor::from_word(n, letters).unwrap()
    }

    fn pb(n: usize, letters: &[usize]) -> PositiveBraid {
        PositiveBraid::new(n, letters.to_vec()).unwrap()
    }

    fn bw(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, letters).unwrap()
    }

    /// Left divisibility decided by rewriting: some representative of `a` starts with a
    /// representative of `x`.
    fn oracle_left_divides(x: &[usize], a: &[usize]) -> bool {
        let xs = oracle::positive_class(x);
        oracle::positive_class(a)
            .iter()
            .any(|w| xs.iter().any(|p| w.starts_with(p)))
    }

    /// π_L by exhaustive search over all simples.
    fn oracle_pi_l(n: usize, a: &[usize]) -> SimpleFactor {
        SimpleFactor::all(n)
            .into_iter()
            .filter(|x| oracle_left_divides(&x.to_word(), a))
            .max_by_key(|x| x.crossings())
            .unwrap()
    }

    #[test]
    fn simple_membership() {
        let x = simple_from_word(&pb(3, &[1, 2])).unwrap();
        // complement σ_1 completes it to Δ
        assert!(x.try_mul(&SimpleFactor::atom(3, 1)).unwrap().is_delta());
        assert!(oracle_left_divides(&[1, 2], &[1, 2, 1]));
        assert_eq!(simple_from_word(&pb(3, &[1, 1])), None);
        assert!(!oracle_left_divides(&[1, 1], &[1, 2, 1]));
        assert!(simple_from_word(&pb(3, &[])).unwrap().is_identity());
    }

    #[test]
    fn meet_examples() {
        let a1 = SimpleFactor::atom(3, 1);
        let a2 = SimpleFactor::atom(3, 2);
        assert!(left_meet(&a1, &a2).is_identity());
        assert_eq!(left_meet(&s(3, &[1, 2]), &a1), a1);
        for x in SimpleFactor::all(4) {
            assert_eq!(x.left_meet(&SimpleFactor::delta(4)), x);
        }
    }

    #[test]
    fn meet_matches_divisor_enumeration() {
        for n in [3, 4] {
            let all = SimpleFactor::all(n);
            for x in &all {
                for y in &all {
                    let common: Vec<&SimpleFactor> = all
                        .iter()
                        .filter(|z| z.left_divides(x) && z.left_divides(y))
                        .collect();
                    let m = x.left_meet(y);
                    assert!(common.contains(&&m));
                    assert!(common.iter().all(|z| z.left_divides(&m)));
                }
            }
        }
    }

    #[test]
    fn left_divides_matches_rewriting() {
        for x in SimpleFactor::all(3) {
            for y in SimpleFactor::all(3) {
                assert_eq!(
                    x.left_divides(&y),
                    oracle_left_divides(&x.to_word(), &y.to_word())
                );
            }
        }
    }

    #[test]
    fn lattice_laws_exhaustive_b3() {
        let all = SimpleFactor::all(3);
        assert_eq!(all.len(), 6);
        for x in &all {
            assert_eq!(x.left_meet(x), *x);
            for y in &all {
                assert_eq!(x.left_meet(y), y.left_meet(x));
                assert!(x.left_meet(y).left_divides(x));
                let j = x.left_join(y);
                assert!(x.left_divides(&j) && y.left_divides(&j));
                for z in &all {
                    assert_eq!(x.left_meet(y).left_meet(z), x.left_meet(&y.left_meet(z)));
                }
            }
        }
    }

    #[test]
    fn complements() {
        for n in 2..=5 {
            let delta = SimpleFactor::delta(n);
            for x in SimpleFactor::all(n) {
                let c = x.right_complement();
                assert_eq!(x.try_mul(&c), Some(delta.clone()));
                let l = x.left_complement();
                assert_eq!(l.try_mul(&x), Some(delta.clone()));
                assert_eq!(x.crossings() + c.crossings(), n * (n - 1) / 2);
            }
        }
    }

    #[test]
    fn pi_l_examples() {
        let a = pb(3, &[1, 1]);
        assert_eq!(pi_l(&a), SimpleFactor::atom(3, 1));
        assert_eq!(partial_l(&a).letters(), &[1]);
        let a = pb(3, &[1, 2, 1, 1]);
        assert!(pi_l(&a).is_delta());
        assert_eq!(partial_l(&a).letters(), &[1]);
        let a = PositiveBraid::identity(3);
        assert!(pi_l(&a).is_identity());
        assert_eq!(partial_l(&a).norm(), 0);
    }

    #[test]
    fn pi_l_matches_exhaustive_divisors() {
        for (n, max_len) in [(3, 5), (4, 4)] {
            for len in 0..=max_len {
                for w in oracle::all_positive_words(n, len) {
                    let a = pb(n, &w);
                    let p = pi_l(&a);
                    assert_eq!(p, oracle_pi_l(n, &w), "word {w:?}");
                    assert_eq!(partial_l(&a).norm(), a.norm() - p.crossings());
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form_positive(&pb(3, &[1, 2, 1, 1]));
        assert_eq!(nf, vec![SimpleFactor::delta(3), SimpleFactor::atom(3, 1)]);
        let nf = normal_form_positive(&pb(3, &[2, 1, 1, 2]));
        assert_eq!(nf, vec![s(3, &[2, 1]), s(3, &[1, 2])]);
        assert!(normal_form_positive(&PositiveBraid::identity(3)).is_empty());
    }

    #[test]
    fn left_weighted_examples() {
        let d = SimpleFactor::delta(3);
        let a1 = SimpleFactor::atom(3, 1);
        let a2 = SimpleFactor::atom(3, 2);
        assert!(is_left_weighted(&d, &a1));
        assert!(is_left_weighted(&a1, &a1));
        assert!(!is_left_weighted(&a1, &a2));
    }

    #[test]
    fn left_weighted_means_pi_l_is_first() {
        for f in SimpleFactor::all(4) {
            for g in SimpleFactor::all(4) {
                let mut w = f.to_word();
                w.extend(g.to_word());
                let lw = is_left_weighted(&f, &g);
                assert_eq!(
                    lw,
                    pi_l(&pb(4, &w)) == f || f.is_identity() && g.is_identity()
                );
            }
        }
    }

    #[test]
    fn norm_is_additive() {
        let a = pb(4, &[1, 3, 2]);
        let b = pb(4, &[2, 2, 1]);
        assert_eq!(a.concat(&b).unwrap().norm(), a.norm() + b.norm());
        let total: usize = normal_form_positive(&a.concat(&b).unwrap())
            .iter()
            .map(|f| f.crossings())
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn group_normal_form_examples() {
        let nf = group_normal_form(&bw(3, &[-2, 1]));
        assert_eq!(nf.negative(), &[SimpleFactor::atom(3, 2)]);
        assert_eq!(nf.positive(), &[SimpleFactor::atom(3, 1)]);
        assert!(group_normal_form(&bw(3, &[1, -1])).is_identity());
        let a = group_normal_form(&bw(3, &[1, 2, 1]));
        assert_eq!(a, group_normal_form(&bw(3, &[2, 1, 2])));
        assert_eq!(a.positive(), &[SimpleFactor::delta(3)]);
    }

    #[test]
    fn equals_examples() {
        assert!(equals(&bw(3, &[1, 2, 1]), &bw(3, &[2, 1, 2])).unwrap());
        assert!(equals(&bw(4, &[1, 3]), &bw(4, &[3, 1])).unwrap());
        assert!(!equals(&bw(3, &[1]), &bw(3, &[2])).unwrap());
        assert!(equals(&bw(3, &[1]), &bw(4, &[1])).is_err());
    }

    #[test]
    fn delta_inverse_normal_form() {
        let nf = group_normal_form(&bw(3, &[-1, -2, -1]));
        assert_eq!(nf.negative(), &[SimpleFactor::delta(3)]);
        assert!(nf.positive().is_empty());
        assert_eq!(nf.to_string(), "~D");
    }

    #[test]
    fn positive_normal_form_separates_rewriting_classes_b3() {
        let mut seen: std::collections::HashMap<Vec<SimpleFactor>, Vec<usize>> = Default::default();
        for len in 0..=5 {
            let mut done: BTreeSet<Vec<usize>> = BTreeSet::new();
            for w in oracle::all_positive_words(3, len) {
                if done.contains(&w) {
                    continue;
                }
                let class = oracle::positive_class(&w);
                let nf = normal_form_positive(&pb(3, &w));
                for v in &class {
                    assert_eq!(normal_form_positive(&pb(3, v)), nf);
                }
                assert!(seen.insert(nf, w.clone()).is_none());
                done.extend(class);
            }
        }
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let k = (n - 1) as i64;
        prop::collection::vec((1..=k, any::<bool>()), 0..max_len).prop_map(move |v| {
            let s: Vec<i64> = v
                .into_iter()
                .map(|(i, neg)| if neg { -i } else { i })
                .collect();
            BraidWord::from_signed(n, &s).unwrap()
        })
    }

    proptest! {
        #[test]
        fn normal_form_reconstructs(w in arb_word(4, 16)) {
            let nf = group_normal_form(&w);
            prop_assert_eq!(group_normal_form(&nf.to_word()), nf.clone());
            prop_assert_eq!(nf.to_word().exponent_sum(), w.exponent_sum());
            prop_assert!(is_identity(&nf.to_word().concat(&w.invert()).unwrap()));
        }

        #[test]
        fn normal_form_invariants(w in arb_word(5, 16)) {
            let nf = group_normal_form(&w);
            for pair in nf.positive().windows(2) {
                prop_assert!(is_left_weighted(&pair[0], &pair[1]));
            }
            for pair in nf.negative().windows(2) {
                prop_assert!(is_left_weighted(&pair[1], &pair[0]));
            }
            prop_assert!(nf.positive().iter().chain(nf.negative()).all(|f| !f.is_identity()));
            if let (Some(a), Some(b)) = (nf.negative().last(), nf.positive().first()) {
                prop_assert!(a.left_meet(b).is_identity());
            }
        }

        #[test]
        fn free_insertion_invariance(w in arb_word(4, 12), pos in 0usize..13, g in 1usize..4, inv in any::<bool>()) {
            let mut letters = w.letters().to_vec();
            let l = if inv { Letter::neg(g) } else { Letter::pos(g) };
            let p = pos.min(letters.len());
            letters.splice(p..p, [l, l.inv()]);
            let v = BraidWord::new(4, letters).unwrap();
            prop_assert_eq!(group_normal_form(&v), group_normal_form(&w));
        }

        #[test]
        fn agrees_with_oracle_b3(u in arb_word(3, 7), v in arb_word(3, 7)) {
            let mut o = oracle::EqualityOracle::new();
            prop_assert_eq!(equals(&u, &v).unwrap(), o.equal(&u.to_signed(), &v.to_signed(), 3));
        }
    }
}
