//! The Dehornoy order on `B_n`.
//!
//! A braid is `σ_k`-positive if it has a representative in which `σ_k` occurs, only with
//! positive exponent, and every other letter has index below `k`. Every nontrivial braid is
//! either `σ_k`-positive or `σ_k`-negative for exactly one `k`, and the union of the positive
//! classes is the positive cone of a left-invariant total order.
//!
//! The sign is found by handle reduction. A `σ_k`-handle is a factor `σ_k^e v σ_k^{-e}` where
//! every letter of `v` has index below `k`; it is replaced by `v` with each `σ_{k-1}^d`
//! substituted by `σ_{k-1}^{-e} σ_k^d σ_{k-1}^e`. A word without handles has a single sign on
//! its largest generator, and that word is returned as the certificate.

use std::cmp::Ordering;
use std::fmt;

use crate::words::{BraidWord, Letter};
use crate::{Error, Result};

/// Step budget for handle reduction; reduction always terminates, so hitting it is a bug.
pub const STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaVerdict {
    /// `σ_k`-positive: lies in `P_k ⊂ B_{k+1}`.
    Positive(usize),
    /// `σ_k`-negative.
    Negative(usize),
    Identity,
}

impl SigmaVerdict {
    pub fn is_positive(self) -> bool {
        matches!(self, SigmaVerdict::Positive(_))
    }

    /// Verdict for the inverse element.
    pub fn inverse(self) -> SigmaVerdict {
        match self {
            SigmaVerdict::Positive(k) => SigmaVerdict::Negative(k),
            SigmaVerdict::Negative(k) => SigmaVerdict::Positive(k),
            SigmaVerdict::Identity => SigmaVerdict::Identity,
        }
    }
}

impl fmt::Display for SigmaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaVerdict::Positive(k) => write!(f, "positive({k})"),
            SigmaVerdict::Negative(k) => write!(f, "negative({k})"),
            SigmaVerdict::Identity => f.write_str("identity"),
        }
    }
}

/// Result of handle reduction: the verdict and the handle-free word witnessing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub verdict: SigmaVerdict,
    pub certificate: BraidWord,
    pub steps: usize,
}

/// Position `(start, end)` of the handle whose closing letter is leftmost.
fn first_handle(letters: &[Letter], strands: usize) -> Option<(usize, usize)> {
    // open[k]: last position of σ_k with no letter of index ≥ k after it
    let mut open: Vec<Option<usize>> = vec![None; strands];
    for (j, l) in letters.iter().enumerate() {
        let k = l.index;
        if let Some(i) = open[k] {
            if letters[i].inverse != l.inverse {
                return Some((i, j));
            }
        }
        for slot in open.iter_mut().take(k) {
            *slot = None;
        }
        open[k] = Some(j);
    }
    None
}

fn reduce_handle(letters: &[Letter], start: usize, end: usize) -> Vec<Letter> {
    let k = letters[start].index;
    let e_inverse = letters[start].inverse;
    let mut out = Vec::with_capacity(letters.len() + 2 * (end - start));
    out.extend_from_slice(&letters[..start]);
    for &l in &letters[start + 1..end] {
        if l.index + 1 == k {
            let outer = Letter {
                index: k - 1,
                inverse: !e_inverse,
            };
            out.push(outer);
            out.push(Letter {
                index: k,
                inverse: l.inverse,
            });
            out.push(outer.inv());
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&letters[end + 1..]);
    out
}

/// Reduces all handles of `w` and reports the resulting sign.
pub fn handle_reduce(w: &BraidWord) -> Result<Reduction> {
    let n = w.strands();
    let mut letters = w.free_reduce().letters().to_vec();
    let mut steps = 0;
    while let Some((start, end)) = first_handle(&letters, n) {
        steps += 1;
        if steps > STEP_BUDGET {
            return Err(Error::StepBudgetExceeded(STEP_BUDGET));
        }
        letters = reduce_handle(&letters, start, end);
    }
    let certificate = BraidWord::new(n, letters)?;
    let k = certificate.max_index();
    let verdict = if k == 0 {
        SigmaVerdict::Identity
    } else if certificate
        .letters()
        .iter()
        .any(|l| l.index == k && !l.inverse)
    {
        SigmaVerdict::Positive(k)
    } else {
        SigmaVerdict::Negative(k)
    };
    Ok(Reduction {
        verdict,
        certificate,
        steps,
    })
}

/// Which of `P_k`, `P_k^{-1}` or `{1}` the braid lies in.
pub fn main_verdict(w: &BraidWord) -> Result<SigmaVerdict> {
    Ok(handle_reduce(w)?.verdict)
}

/// Membership in the positive cone `P_1 ⊔ … ⊔ P_{n-1}`.
pub fn is_dehornoy_positive(w: &BraidWord) -> Result<bool> {
    Ok(main_verdict(w)?.is_positive())
}

/// Outcome of [`compare`]: the order and the reduced form of `u^{-1} v` certifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    pub certificate: BraidWord,
    pub verdict: SigmaVerdict,
}

/// `u < v` iff `u^{-1} v` is Dehornoy-positive.
pub fn compare(u: &BraidWord, v: &BraidWord) -> Result<Comparison> {
    let quotient = u.invert().concat(v)?;
    let red = handle_reduce(&quotient)?;
    let ordering = match red.verdict {
        SigmaVerdict::Identity => Ordering::Equal,
        SigmaVerdict::Positive(_) => Ordering::Less,
        SigmaVerdict::Negative(_) => Ordering::Greater,
    };
    Ok(Comparison {
        ordering,
        certificate: red.certificate,
        verdict: red.verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside;
    use braidforge_oracle::braid as oracle;
    use proptest::prelude::*;

    fn bw(n: usize, s: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, s).unwrap()
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(
            main_verdict(&bw(3, &[1, -2, 1])).unwrap(),
            SigmaVerdict::Negative(2)
        );
        let red = handle_reduce(&bw(3, &[2, 1, -2])).unwrap();
        assert_eq!(red.verdict, SigmaVerdict::Positive(2));
        assert_eq!(red.certificate, bw(3, &[-1, 2, 1]));
        assert_eq!(
            main_verdict(&bw(3, &[-1, -1, -1])).unwrap(),
            SigmaVerdict::Negative(1)
        );
    }

    #[test]
    fn positivity_examples() {
        assert!(is_dehornoy_positive(&bw(4, &[3, 1, 2, 2])).unwrap());
        assert!(!is_dehornoy_positive(&bw(3, &[])).unwrap());
        assert!(is_dehornoy_positive(&bw(3, &[-1, 2])).unwrap());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare(&bw(3, &[1]), &bw(3, &[2])).unwrap().ordering,
            Ordering::Less
        );
        assert_eq!(
            compare(&bw(3, &[]), &bw(3, &[1])).unwrap().ordering,
            Ordering::Less
        );
        assert_eq!(
            compare(&bw(3, &[1, 2, 1]), &bw(3, &[2, 1, 2]))
                .unwrap()
                .ordering,
            Ordering::Equal
        );
    }

    #[test]
    fn handle_substitution_is_an_identity() {
        let mut o = oracle::EqualityOracle::new();
        for e in [1i64, -1] {
            for d in [1i64, -1] {
                let handle = [2 * e, d, -2 * e];
                let reduced = reduce_handle(bw(3, &handle).letters(), 0, 2);
                let reduced = BraidWord::new(3, reduced).unwrap();
                assert!(o.equal(&handle, &reduced.to_signed(), 3));
            }
        }
    }

    #[test]
    fn certificate_equals_input_and_has_one_sign() {
        for len in 0..=5 {
            for w in all_signed_words(3, len) {
                let word = bw(3, &w);
                let red = handle_reduce(&word).unwrap();
                assert!(garside::equals(&word, &red.certificate).unwrap());
                if let SigmaVerdict::Positive(k) | SigmaVerdict::Negative(k) = red.verdict {
                    let signs: Vec<bool> = red
                        .certificate
                        .letters()
                        .iter()
                        .filter(|l| l.index == k)
                        .map(|l| l.inverse)
                        .collect();
                    assert!(signs.windows(2).all(|p| p[0] == p[1]));
                }
            }
        }
    }

    #[test]
    fn agrees_with_rewriting_search_b3() {
        for len in 0..=4 {
            for w in all_signed_words(3, len) {
                let verdict = main_verdict(&bw(3, &w)).unwrap();
                match oracle::single_sign_form(&w, 3, w.len() + 2) {
                    Some((0, _)) => assert_eq!(verdict, SigmaVerdict::Identity, "{w:?}"),
                    Some((k, 1)) => assert_eq!(verdict, SigmaVerdict::Positive(k), "{w:?}"),
                    Some((k, _)) => assert_eq!(verdict, SigmaVerdict::Negative(k), "{w:?}"),
                    None => {}
                }
            }
        }
    }

    fn all_signed_words(n: usize, len: usize) -> Vec<Vec<i64>> {
        let gens: Vec<i64> = (1..n as i64).flat_map(|g| [g, -g]).collect();
        let mut words = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| {
                    gens.iter().map(move |&g| {
                        let mut v: Vec<i64> = w.clone();
                        v.push(g);
                        v
                    })
                })
                .collect();
        }
        words
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
        fn inverse_has_opposite_verdict(w in arb_word(5, 14)) {
            let v = main_verdict(&w).unwrap();
            prop_assert_eq!(main_verdict(&w.invert()).unwrap(), v.inverse());
        }

        #[test]
        fn positive_words_are_positive(w in prop::collection::vec(1usize..5, 1..12)) {
            prop_assert!(is_dehornoy_positive(&BraidWord::positive(5, &w).unwrap()).unwrap());
        }

        #[test]
        fn cone_is_a_semigroup(u in arb_word(4, 8), v in arb_word(4, 8)) {
            if is_dehornoy_positive(&u).unwrap() && is_dehornoy_positive(&v).unwrap() {
                prop_assert!(is_dehornoy_positive(&u.concat(&v).unwrap()).unwrap());
            }
        }

        #[test]
        fn left_invariant(z in arb_word(4, 6), u in arb_word(4, 6), v in arb_word(4, 6)) {
            let plain = compare(&u, &v).unwrap().ordering;
            let shifted = compare(&z.concat(&u).unwrap(), &z.concat(&v).unwrap()).unwrap().ordering;
            prop_assert_eq!(plain, shifted);
        }

        #[test]
        fn equality_matches_garside(u in arb_word(4, 8), v in arb_word(4, 8)) {
            let eq = compare(&u, &v).unwrap().ordering == Ordering::Equal;
            prop_assert_eq!(eq, garside::equals(&u, &v).unwrap());
        }
    }
}
