//! Braid words over the Artin generators `σ_1, …, σ_{n-1}`.
//!
//! The text format is a whitespace-separated list of nonzero integers: `k` stands for `σ_k`
//! and `-k` for `σ_k^{-1}`. The strand count is never inferred from the text.

use std::fmt;

use crate::{Error, Result};

/// One letter `σ_index^{±1}`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter {
            index,
            inverse: false,
        }
    }

    pub fn neg(index: usize) -> Self {
        Letter {
            index,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn to_signed(self) -> i64 {
        self.sign() * self.index as i64
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A word in the generators of `B_n`. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::IndexOutOfRange {
                index: bad.to_signed(),
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices, e.g. `[1, -2]` for `σ_1 σ_2^{-1}`.
    pub fn from_signed(strands: usize, indices: &[i64]) -> Result<Self> {
        let mut letters = Vec::with_capacity(indices.len());
        for &k in indices {
            if k == 0 || k.unsigned_abs() as usize >= strands.max(1) {
                return Err(Error::IndexOutOfRange { index: k, strands });
            }
            let index = k.unsigned_abs() as usize;
            letters.push(if k > 0 {
                Letter::pos(index)
            } else {
                Letter::neg(index)
            });
        }
        Self::new(strands, letters)
    }

    /// The positive word `σ_{i_1} σ_{i_2} …`.
    pub fn positive(strands: usize, indices: &[usize]) -> Result<Self> {
        Self::new(strands, indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    pub(crate) fn from_letters_unchecked(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index < strands));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Sum of the exponents. Invariant under the braid relations.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Largest generator index occurring in the word, 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^k`; negative exponents use the inverse word.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` and `σ_i^{-1} σ_i` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Half twist `Δ = (σ_1 … σ_{n-1})(σ_1 … σ_{n-2}) … σ_1`.
    pub fn delta(strands: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for top in (1..strands).rev() {
            letters.extend((1..=top).map(Letter::pos));
        }
        Self::new(strands, letters)
    }
}

/// Parses a braid word such as `"1 -2 1"` on `strands` strands.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::TooFewStrands(strands));
    }
    let mut indices = Vec::new();
    for token in text.split_whitespace() {
        let k: i64 = token
            .parse()
            .map_err(|_| Error::MalformedToken(token.to_string()))?;
        if k == 0 {
            return Err(Error::MalformedToken(token.to_string()));
        }
        indices.push(k);
    }
    BraidWord::from_signed(strands, &indices)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, s: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, s).unwrap()
    }

    #[test]
    fn parses_signed_tokens() {
        let word = parse_braid("1 -2", 3).unwrap();
        assert_eq!(word.letters(), &[Letter::pos(1), Letter::neg(2)]);
        assert_eq!(word.len(), 2);
    }

    #[test]
    fn empty_text_is_identity() {
        let word = parse_braid("", 4).unwrap();
        assert!(word.is_empty());
        assert_eq!(word.strands(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_braid("3", 3),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            parse_braid("-3", 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_braid("1 x", 3),
            Err(Error::MalformedToken(_))
        ));
        assert!(matches!(parse_braid("0", 3), Err(Error::MalformedToken(_))));
        assert_eq!(parse_braid("1", 1), Err(Error::TooFewStrands(1)));
    }

    #[test]
    fn group_operations() {
        let a = w(3, &[1]);
        let b = w(3, &[-1]);
        assert!(a.concat(&b).unwrap().free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2]).invert(), w(3, &[-2, -1]));
        assert_eq!(w(3, &[1, 2, -2, 1]).free_reduce(), w(3, &[1, 1]));
        assert_eq!(a.concat(&w(4, &[1])), Err(Error::StrandMismatch(3, 4)));
    }

    #[test]
    fn delta_word() {
        assert_eq!(BraidWord::delta(3).unwrap(), w(3, &[1, 2, 1]));
        assert_eq!(BraidWord::delta(4).unwrap().len(), 6);
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
        fn free_reduce_idempotent(u in arb_word(4, 20)) {
            let r = u.free_reduce();
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn inverse_cancels(u in arb_word(5, 20)) {
            prop_assert!(u.concat(&u.invert()).unwrap().free_reduce().is_empty());
        }

        #[test]
        fn exponent_sum_survives_reduction(u in arb_word(4, 20)) {
            prop_assert_eq!(u.free_reduce().exponent_sum(), u.exponent_sum());
        }
    }
}
