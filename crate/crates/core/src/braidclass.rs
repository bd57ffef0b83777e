//! Algebraic Nielsen–Thurston classification of braids through their action on the set of
//! proper nontrivial parabolic subgroups `g (B_n)_X g^{-1}`.
//!
//! Periodicity is decided exactly (a braid is periodic iff a power is a power of the central
//! `Δ²`). Reducibility is only semi-decided: we look for a parabolic with a finite orbit among
//! conjugators of bounded canonical length, and report `NoWitnessFound` otherwise.

use std::fmt;

use rayon::prelude::*;

use crate::garside::{equals, group_normal_form, is_left_weighted, SimpleFactor};
use crate::words::BraidWord;
use crate::Result;

/// A parabolic subgroup `g (B_n)_X g^{-1}`; `support` holds 1-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicRep {
    pub conjugator: BraidWord,
    pub support: Vec<usize>,
}

impl ParabolicRep {
    pub fn standard(strands: usize, support: &[usize]) -> Self {
        let mut support = support.to_vec();
        support.sort_unstable();
        support.dedup();
        ParabolicRep {
            conjugator: BraidWord::identity(strands).expect("valid strand count"),
            support,
        }
    }

    /// The same subgroup conjugated by `h`.
    pub fn conjugate_by(&self, h: &BraidWord) -> Self {
        let conjugator = h
            .concat(&self.conjugator)
            .expect("same strand count")
            .free_reduce();
        ParabolicRep {
            conjugator,
            support: self.support.clone(),
        }
    }
}

impl fmt::Display for ParabolicRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = self.support.iter().map(usize::to_string).collect();
        write!(f, "[{}]{{{}}}", self.conjugator, x.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassVerdict {
    /// `f^m = Δ^{2k}`.
    Periodic {
        m: usize,
        k: i64,
    },
    /// `f^orbit` normalizes `witness`.
    Reducible {
        witness: ParabolicRep,
        orbit: usize,
    },
    NoWitnessFound {
        radius: usize,
    },
}

impl fmt::Display for ClassVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassVerdict::Periodic { m, k } => write!(f, "periodic(m={m},k={k})"),
            ClassVerdict::Reducible { witness, orbit } => {
                write!(f, "reducible({witness},orbit={orbit})")
            }
            ClassVerdict::NoWitnessFound { radius } => write!(f, "no-witness(radius={radius})"),
        }
    }
}

fn sigma(strands: usize, x: usize) -> BraidWord {
    BraidWord::positive(strands, &[x]).expect("index in range")
}

/// Whether the simple moves strands only inside the blocks cut out by `support`: strands
/// `i-1` and `i` (0-based) share a block iff `i ∈ support`.
fn preserves_blocks(f: &SimpleFactor, block: &[usize]) -> bool {
    f.permutation()
        .iter()
        .enumerate()
        .all(|(p, &q)| block[p] == block[q])
}

fn blocks(strands: usize, support: &[usize]) -> Vec<usize> {
    let mut block = vec![0; strands];
    for i in 1..strands {
        block[i] = if support.contains(&i) {
            block[i - 1]
        } else {
            block[i - 1] + 1
        };
    }
    block
}

/// `h ∈ (B_n)_X`, read off the normal form: every factor must stay inside `X`.
pub fn parabolic_membership(h: &BraidWord, support: &[usize]) -> bool {
    let block = blocks(h.strands(), support);
    let nf = group_normal_form(h);
    nf.negative()
        .iter()
        .chain(nf.positive())
        .all(|f| preserves_blocks(f, &block))
}

fn conj(a: &BraidWord, x: &BraidWord) -> BraidWord {
    // a x a^{-1}
    a.concat(x)
        .and_then(|ax| ax.concat(&a.invert()))
        .expect("same strand count")
}

/// Whether `h` normalizes `g (B_n)_X g^{-1}`.
pub fn normalizes(h: &BraidWord, p: &ParabolicRep) -> Result<bool> {
    let n = h.strands();
    let g = &p.conjugator;
    if g.strands() != n {
        return Err(crate::Error::StrandMismatch(n, g.strands()));
    }
    let c = g.invert().concat(h)?.concat(g)?.free_reduce();
    let ci = c.invert();
    Ok(p.support.iter().all(|&x| {
        let s = sigma(n, x);
        parabolic_membership(&conj(&c, &s), &p.support)
            && parabolic_membership(&conj(&ci, &s), &p.support)
    }))
}

/// `p = q` as subgroups, by mutual containment of conjugated generators.
pub fn same_parabolic(p: &ParabolicRep, q: &ParabolicRep) -> bool {
    if p.support.len() != q.support.len() {
        return false;
    }
    let n = p.conjugator.strands();
    let contained = |a: &ParabolicRep, b: &ParabolicRep| {
        // b.g^{-1} a.g σ_x a.g^{-1} b.g ∈ (B_n)_{b.X}
        let c = b
            .conjugator
            .invert()
            .concat(&a.conjugator)
            .expect("same strand count")
            .free_reduce();
        a.support
            .iter()
            .all(|&x| parabolic_membership(&conj(&c, &sigma(n, x)), &b.support))
    };
    contained(p, q) && contained(q, p)
}

/// Searches `m ≤ n(n-1)` with `f^m = Δ^{2k}`; `k` is forced by the exponent sum.
pub fn is_periodic(f: &BraidWord) -> Option<(usize, i64)> {
    let n = f.strands();
    let full = (n * (n - 1)) as i64;
    let e = f.exponent_sum();
    let delta = BraidWord::delta(n).expect("valid strand count");
    (1..=full as usize).find_map(|m| {
        let total = m as i64 * e;
        if total % full != 0 {
            return None;
        }
        let k = total / full;
        let lhs = f.pow(m as i64);
        equals(&lhs, &delta.pow(2 * k)).ok()?.then_some((m, k))
    })
}

/// Positive braids of canonical length at most `radius`, as left normal forms, shortest first.
fn positive_conjugators(strands: usize, radius: usize) -> Vec<BraidWord> {
    let simples: Vec<SimpleFactor> = SimpleFactor::all(strands)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();
    let mut layer: Vec<Vec<SimpleFactor>> = vec![Vec::new()];
    let mut out = Vec::new();
    for len in 0..=radius {
        for nf in &layer {
            let letters: Vec<usize> = nf.iter().flat_map(SimpleFactor::to_word).collect();
            out.push(BraidWord::positive(strands, &letters).expect("valid letters"));
        }
        if len == radius {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|nf| {
                simples
                    .iter()
                    .filter(move |s| nf.last().is_none_or(|f| is_left_weighted(f, s)))
                    .map(move |s| {
                        let mut next = nf.clone();
                        next.push(s.clone());
                        next
                    })
            })
            .collect();
    }
    out
}

/// Nonempty proper subsets of `{1..n-1}`, by size then lexicographically.
fn proper_supports(strands: usize) -> Vec<Vec<usize>> {
    let r = strands - 1;
    let mut out: Vec<Vec<usize>> = (1..(1u32 << r) - 1)
        .map(|mask| (1..=r).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Length of the `f`-orbit of `p` if it closes within `bound` steps.
fn orbit_length(f: &BraidWord, p: &ParabolicRep, bound: usize) -> Option<usize> {
    let mut q = p.clone();
    for j in 1..=bound {
        q = q.conjugate_by(f);
        if same_parabolic(&q, p) {
            return Some(j);
        }
    }
    None
}

/// Periodic if some power is central; otherwise the first parabolic (in canonical candidate
/// order) with conjugator of canonical length `≤ radius` whose `f`-orbit closes up. Since `Δ²`
/// is central, positive conjugators lose nothing.
pub fn classify(f: &BraidWord, radius: usize) -> ClassVerdict {
    let n = f.strands();
    if let Some((m, k)) = is_periodic(f) {
        return ClassVerdict::Periodic { m, k };
    }
    if n < 3 {
        return ClassVerdict::NoWitnessFound { radius };
    }
    let bound = n * (n - 1);
    let supports = proper_supports(n);
    let candidates: Vec<ParabolicRep> = positive_conjugators(n, radius)
        .into_iter()
        .flat_map(|g| {
            supports.iter().map(move |x| ParabolicRep {
                conjugator: g.clone(),
                support: x.clone(),
            })
        })
        .collect();
    candidates
        .par_iter()
        .find_map_first(|p| {
            orbit_length(f, p, bound).map(|orbit| ClassVerdict::Reducible {
                witness: p.clone(),
                orbit,
            })
        })
        .unwrap_or(ClassVerdict::NoWitnessFound { radius })
}

/// Re-checks a verdict's certificate independently of how it was found.
pub fn verify(f: &BraidWord, verdict: &ClassVerdict) -> Result<bool> {
    let n = f.strands();
    match verdict {
        ClassVerdict::Periodic { m, k } => {
            let delta = BraidWord::delta(n)?;
            equals(&f.pow(*m as i64), &delta.pow(2 * k))
        }
        ClassVerdict::Reducible { witness, orbit } => {
            let proper = !witness.support.is_empty() && witness.support.len() < n - 1;
            Ok(proper && normalizes(&f.pow(*orbit as i64), witness)?)
        }
        ClassVerdict::NoWitnessFound { .. } => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_braid;
    use braidforge_oracle::braid as oracle;

    fn b(n: usize, text: &str) -> BraidWord {
        parse_braid(text, n).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(parabolic_membership(&b(3, "1 2"), &[1, 2]));
        assert!(!parabolic_membership(&b(3, "2"), &[1]));
        assert!(!parabolic_membership(&b(3, "1 2 -1"), &[2]));
        assert!(parabolic_membership(&b(4, "1 3 -1 1 1"), &[1, 3]));
        assert!(parabolic_membership(&b(3, "1 2 -2"), &[1]));
        assert!(parabolic_membership(&b(3, ""), &[]));
    }

    fn signed_words(n: usize, len: usize) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (1..n as i64)
                        .flat_map(|i| [i, -i])
                        .filter(move |&l| w.last() != Some(&-l))
                        .map(move |l| {
                            let mut v = w.clone();
                            v.push(l);
                            v
                        })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn membership_agrees_with_rewriting() {
        let mut eq = oracle::EqualityOracle::new();
        for (n, len) in [(3, 4), (4, 3)] {
            for w in signed_words(n, len) {
                let word = BraidWord::from_signed(n, &w).unwrap();
                for x in proper_supports(n) {
                    assert_eq!(
                        parabolic_membership(&word, &x),
                        oracle::parabolic_member(&mut eq, &w, &x, n),
                        "{w:?} {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn normalizer_examples() {
        let p = ParabolicRep::standard(3, &[1]);
        assert!(normalizes(&b(3, "1"), &p).unwrap());
        assert!(!normalizes(&BraidWord::delta(3).unwrap(), &p).unwrap());
        let d2 = BraidWord::delta(4).unwrap().pow(2);
        for x in proper_supports(4) {
            let q = ParabolicRep {
                conjugator: b(4, "2 -3 1"),
                support: x,
            };
            assert!(normalizes(&d2, &q).unwrap());
        }
        assert!(normalizes(&b(4, "3"), &p_in(4, "", &[1])).unwrap());
    }

    fn p_in(n: usize, g: &str, x: &[usize]) -> ParabolicRep {
        ParabolicRep {
            conjugator: b(n, g),
            support: x.to_vec(),
        }
    }

    #[test]
    fn parabolic_equality() {
        // Δ (σ1) Δ^{-1} = σ2
        let d = BraidWord::delta(3).unwrap();
        assert!(same_parabolic(
            &ParabolicRep {
                conjugator: d,
                support: vec![1]
            },
            &p_in(3, "", &[2])
        ));
        assert!(same_parabolic(&p_in(3, "1", &[1]), &p_in(3, "", &[1])));
        assert!(!same_parabolic(&p_in(3, "2", &[1]), &p_in(3, "", &[1])));
    }

    #[test]
    fn periodicity() {
        assert_eq!(is_periodic(&BraidWord::delta(3).unwrap()), Some((2, 1)));
        assert_eq!(is_periodic(&b(3, "1 2")), Some((3, 1)));
        assert_eq!(is_periodic(&b(3, "1")), None);
        assert_eq!(is_periodic(&BraidWord::delta(4).unwrap()), Some((2, 1)));
        assert_eq!(is_periodic(&b(4, "1 2 3")), Some((4, 1)));
        assert_eq!(is_periodic(&b(3, "-1 -2")), Some((3, -1)));
        assert_eq!(is_periodic(&b(3, "1 -2")), None);
    }

    #[test]
    fn classification_examples() {
        let v = classify(&b(3, "1"), 0);
        assert_eq!(
            v,
            ClassVerdict::Reducible {
                witness: ParabolicRep::standard(3, &[1]),
                orbit: 1
            }
        );
        assert!(verify(&b(3, "1"), &v).unwrap());
        let d4 = BraidWord::delta(4).unwrap();
        let v = classify(&d4, 1);
        assert_eq!(v, ClassVerdict::Periodic { m: 2, k: 1 });
        assert!(verify(&d4, &v).unwrap());
        assert_eq!(
            classify(&b(3, "1 -2"), 2),
            ClassVerdict::NoWitnessFound { radius: 2 }
        );
    }

    #[test]
    fn reducible_by_orbit() {
        // Δ swaps the parabolics on {1} and {3}, so Δσ_1 has an orbit of length two
        let f = BraidWord::delta(4).unwrap().concat(&b(4, "1")).unwrap();
        let v = classify(&f, 0);
        let ClassVerdict::Reducible { orbit, .. } = &v else {
            panic!("{v}")
        };
        assert_eq!(*orbit, 2);
        assert!(verify(&f, &v).unwrap());
    }

    #[test]
    fn conjugation_coherence() {
        let h = b(3, "2 1");
        let f = b(3, "1");
        let g = h.concat(&f).unwrap().concat(&h.invert()).unwrap();
        let radius = group_normal_form(&h).canonical_length();
        assert!(matches!(
            classify(&g, radius),
            ClassVerdict::Reducible { .. }
        ));
        let v = classify(&g, radius);
        assert!(verify(&g, &v).unwrap());
        let pa = b(3, "1 -2");
        let conj_pa = h.concat(&pa).unwrap().concat(&h.invert()).unwrap();
        assert!(matches!(
            classify(&conj_pa, 2 + radius),
            ClassVerdict::NoWitnessFound { .. }
        ));
    }

    #[test]
    fn candidate_enumeration() {
        // length-2 normal forms are exactly the left-weighted pairs of nontrivial simples
        let simples: Vec<SimpleFactor> = SimpleFactor::all(3)
            .into_iter()
            .filter(|s| !s.is_identity())
            .collect();
        let pairs = simples
            .iter()
            .flat_map(|f| simples.iter().filter(move |g| is_left_weighted(f, g)))
            .count();
        assert_eq!(positive_conjugators(3, 2).len(), 1 + simples.len() + pairs);
        assert_eq!(proper_supports(4).len(), 6);
        assert_eq!(proper_supports(4)[0], vec![1]);
    }
}
