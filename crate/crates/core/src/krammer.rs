//! Krammer's root-orbit machinery: separation, the periodic/even/odd trichotomy of a root
//! under an element `w`, and a bounded certificate that `w` is essential.
//!
//! A root `α` separates `w^m` and `w^{m+1}` exactly when `w^m α ∈ Φ_w ∪ -Φ_w`, a finite set,
//! so for a non-periodic root only finitely many separation events happen. Nothing in the
//! theory says *when* the last one has happened; we stop once the orbit has visibly left the
//! window (see [`EXIT_STEPS`]) and report `Unknown` if that never occurs within `m_max`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::coxeter::{classify_type, CoxeterType, Depth, GroupWord, Root, Scalar, System};
use crate::{Error, Result};

/// Consecutive steps the orbit must spend outside the window, with strictly growing height
/// above the window's maximum, before the count is considered final.
pub const EXIT_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub depth: usize,
    pub m_max: usize,
    pub closure_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            depth: 20,
            m_max: 512,
            closure_depth: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitVerdict {
    Periodic { period: usize },
    Even { count: usize },
    Odd { count: usize },
    Unknown,
}

impl OrbitVerdict {
    pub fn is_odd(self) -> bool {
        matches!(self, OrbitVerdict::Odd { .. })
    }
}

impl fmt::Display for OrbitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitVerdict::Periodic { period } => write!(f, "periodic({period})"),
            OrbitVerdict::Even { count } => write!(f, "even({count})"),
            OrbitVerdict::Odd { count } => write!(f, "odd({count})"),
            OrbitVerdict::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotEssentialReason {
    /// A reduced word misses these vertices, so `w` lies in a proper standard parabolic.
    ProperSupport { missing: Vec<usize> },
    /// `w^order = 1`.
    FiniteOrder { order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EssentialVerdict<S> {
    /// The reflections in these odd roots generate `W`.
    CertifiedEssential {
        witness: Vec<Root<S>>,
    },
    NotEssential(NotEssentialReason),
    Inconclusive {
        bounds: Bounds,
        odd: usize,
        unknown: usize,
    },
}

/// `uα` and `vα` lie on opposite sides of the positive cone.
pub fn separates<S: Scalar>(
    sys: &System<S>,
    alpha: &Root<S>,
    u: &GroupWord,
    v: &GroupWord,
) -> bool {
    sys.act(u, alpha).sign() * sys.act(v, alpha).sign() == -1
}

struct Window<S> {
    points: HashSet<Root<S>>,
    max_height: f64,
}

impl<S: Scalar> Window<S> {
    fn new(sys: &System<S>, w: &GroupWord) -> Self {
        let phi = sys.inversion_set(w);
        let max_height = phi.iter().map(Root::height).fold(0.0, f64::max);
        let points = phi.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        Window { points, max_height }
    }
}

/// Walks one direction of the orbit. `step` maps `x_m` to the next point. Returns the number
/// of sign changes seen and whether the walk exited decisively, or `Err(period)` if the orbit
/// came back to its start.
fn walk<S: Scalar>(
    start: &Root<S>,
    step: impl Fn(&Root<S>) -> Root<S>,
    window: &Window<S>,
    may_exit: bool,
    m_max: usize,
) -> std::result::Result<(usize, bool), usize> {
    let mut events = 0;
    let mut x = start.clone();
    let mut streak = 0;
    let mut last_height = f64::NEG_INFINITY;
    for m in 1..=m_max {
        let next = step(&x);
        if next == *start {
            return Err(m);
        }
        if next.sign() != x.sign() {
            events += 1;
        }
        let h = next.height().abs();
        if !window.points.contains(&next) && h > window.max_height && h > last_height {
            streak += 1;
        } else {
            streak = 0;
        }
        last_height = h;
        x = next;
        if may_exit && streak >= EXIT_STEPS {
            return Ok((events, true));
        }
    }
    Ok((events, false))
}

/// What stays fixed while classifying many roots under the same `w`.
struct OrbitContext<S> {
    window: Window<S>,
    inverse: GroupWord,
    /// In a finite group every orbit closes up, so never stop early there.
    may_exit: bool,
}

impl<S: Scalar> OrbitContext<S> {
    fn new(sys: &System<S>, w: &GroupWord) -> Self {
        let may_exit = classify_type(sys.graph()) != Ok(CoxeterType::Finite);
        OrbitContext {
            window: Window::new(sys, w),
            inverse: w.inverse(),
            may_exit,
        }
    }

    fn classify(
        &self,
        sys: &System<S>,
        w: &GroupWord,
        alpha: &Root<S>,
        m_max: usize,
    ) -> OrbitVerdict {
        let forward = walk(alpha, |x| sys.act(w, x), &self.window, self.may_exit, m_max);
        let (f_events, f_exit) = match forward {
            Err(period) => return OrbitVerdict::Periodic { period },
            Ok(r) => r,
        };
        let backward = walk(
            alpha,
            |x| sys.act(&self.inverse, x),
            &self.window,
            self.may_exit,
            m_max,
        );
        let (b_events, b_exit) = match backward {
            Err(period) => return OrbitVerdict::Periodic { period },
            Ok(r) => r,
        };
        if !(f_exit && b_exit) {
            return OrbitVerdict::Unknown;
        }
        let count = f_events + b_events;
        if count % 2 == 0 {
            OrbitVerdict::Even { count }
        } else {
            OrbitVerdict::Odd { count }
        }
    }
}

/// Classifies `α` under powers of `w`, looking at `m ∈ [-m_max, m_max]`.
pub fn orbit_classify<S: Scalar>(
    sys: &System<S>,
    w: &GroupWord,
    alpha: &Root<S>,
    m_max: usize,
) -> OrbitVerdict {
    OrbitContext::new(sys, w).classify(sys, w, alpha, m_max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddRoots<S> {
    /// In breadth-first order.
    pub roots: Vec<Root<S>>,
    pub unknown: usize,
}

/// Positive roots of breadth-first depth `< depth` that are `w`-odd.
pub fn odd_roots<S: Scalar>(
    sys: &System<S>,
    w: &GroupWord,
    depth: usize,
    m_max: usize,
) -> Result<OddRoots<S>> {
    let candidates = sys.positive_roots(Depth::Levels(depth))?;
    let ctx = OrbitContext::new(sys, w);
    let verdicts: Vec<OrbitVerdict> = candidates
        .par_iter()
        .map(|e| ctx.classify(sys, w, &e.root, m_max))
        .collect();
    let unknown = verdicts
        .iter()
        .filter(|v| **v == OrbitVerdict::Unknown)
        .count();
    let roots = candidates
        .into_iter()
        .zip(&verdicts)
        .filter(|(_, v)| v.is_odd())
        .map(|(e, _)| e.root)
        .collect();
    Ok(OddRoots { roots, unknown })
}

/// Closes `roots` under `β, γ ↦ r_β(γ)` (up to sign), keeping only images lower than `γ`, and
/// stops once every simple root is present. `r_{r_β γ} = r_β r_γ r_β`, so everything collected
/// lies in the reflection subgroup generated by the input.
fn reflection_closure<S: Scalar>(
    sys: &System<S>,
    roots: &[Root<S>],
    rounds: usize,
    cap: usize,
) -> Vec<Root<S>> {
    let simple: Vec<Root<S>> = (0..sys.rank()).map(|s| sys.simple(s)).collect();
    let mut set: Vec<Root<S>> = Vec::new();
    let mut seen = HashSet::new();
    for r in roots {
        if seen.insert(r.clone()) {
            set.push(r.clone());
        }
    }
    let done = |seen: &HashSet<Root<S>>| simple.iter().all(|a| seen.contains(a));
    for _ in 0..rounds {
        if done(&seen) || set.len() >= cap {
            break;
        }
        let mut added = Vec::new();
        'outer: for b in &set {
            for g in &set {
                let image = sys.reflect_unchecked(b, g).abs();
                if image.height() < g.height() - 1e-9 && seen.insert(image.clone()) {
                    added.push(image);
                    if set.len() + added.len() >= cap {
                        break 'outer;
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        set.extend(added);
    }
    set
}

const CLOSURE_CAP: usize = 4096;

/// Letters of a reduced expression of `w`.
pub fn support<S: Scalar>(sys: &System<S>, w: &GroupWord) -> Vec<usize> {
    let mut letters: Vec<usize> = sys.reduced_word(w).0;
    letters.sort_unstable();
    letters.dedup();
    letters
}

/// Bounded test of essentiality for an element of an irreducible indefinite Coxeter group.
/// Never claims non-essentiality without a witness.
pub fn essential_certificate<S: Scalar>(
    sys: &System<S>,
    w: &GroupWord,
    bounds: Bounds,
) -> Result<EssentialVerdict<S>> {
    let graph = sys.graph();
    let ty = classify_type(graph)?;
    if !graph.is_irreducible() || ty != CoxeterType::Indefinite {
        let shape = if graph.is_irreducible() {
            ty.name()
        } else {
            "reducible"
        };
        return Err(Error::NotIrreducibleIndefinite(shape.to_string()));
    }
    let present = support(sys, w);
    if present.len() < sys.rank() {
        let missing = (0..sys.rank()).filter(|s| !present.contains(s)).collect();
        return Ok(EssentialVerdict::NotEssential(
            NotEssentialReason::ProperSupport { missing },
        ));
    }
    if let Some(order) = finite_order(sys, w, bounds.m_max) {
        return Ok(EssentialVerdict::NotEssential(
            NotEssentialReason::FiniteOrder { order },
        ));
    }
    let odd = odd_roots(sys, w, bounds.depth, bounds.m_max)?;
    let closure = reflection_closure(sys, &odd.roots, bounds.closure_depth, CLOSURE_CAP);
    let simple_reached = (0..sys.rank()).all(|s| closure.contains(&sys.simple(s)));
    if simple_reached {
        Ok(EssentialVerdict::CertifiedEssential { witness: odd.roots })
    } else {
        Ok(EssentialVerdict::Inconclusive {
            bounds,
            odd: odd.roots.len(),
            unknown: odd.unknown,
        })
    }
}

/// The order of `w` if every simple root returns within `limit` steps.
fn finite_order<S: Scalar>(sys: &System<S>, w: &GroupWord, limit: usize) -> Option<usize> {
    let start: Vec<Root<S>> = (0..sys.rank()).map(|s| sys.simple(s)).collect();
    let mut current = start.clone();
    for k in 1..=limit {
        current = current.iter().map(|x| sys.act(w, x)).collect();
        if current == start {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGraph, Exact, Float64, ScalarMode};

    fn exact(g: &CoxeterGraph) -> System<Exact> {
        System::new(g, ScalarMode::auto(g)).unwrap()
    }

    fn triangle() -> CoxeterGraph {
        CoxeterGraph::from_matrix(&[vec![1, 3, 4], vec![3, 1, 3], vec![4, 3, 1]]).unwrap()
    }

    fn w(v: &[usize]) -> GroupWord {
        GroupWord(v.to_vec())
    }

    #[test]
    fn separation_examples() {
        let a2 = exact(&CoxeterGraph::a(2));
        assert!(separates(&a2, &a2.simple(0), &w(&[]), &w(&[0])));
        assert!(!separates(&a2, &a2.simple(0), &w(&[1]), &w(&[1])));
        let inf = exact(&CoxeterGraph::chain(&[0]));
        // (s1 s2)^{-1} = s2 s1
        assert!(separates(&inf, &inf.simple(0), &w(&[]), &w(&[1, 0])));
    }

    #[test]
    fn finite_type_orbits_are_periodic() {
        for g in [
            CoxeterGraph::a(3),
            CoxeterGraph::chain(&[4, 3]),
            CoxeterGraph::chain(&[5, 3]),
        ] {
            let sys = exact(&g);
            let roots = sys.positive_roots(Depth::Full).unwrap();
            for word in [w(&[0, 1, 2]), w(&[0]), w(&[2, 1, 0, 1]), w(&[])] {
                for e in &roots {
                    assert!(matches!(
                        orbit_classify(&sys, &word, &e.root, 64),
                        OrbitVerdict::Periodic { .. }
                    ));
                }
            }
        }
        let a2 = exact(&CoxeterGraph::a(2));
        assert_eq!(
            orbit_classify(&a2, &w(&[]), &a2.simple(1), 8),
            OrbitVerdict::Periodic { period: 1 }
        );
    }

    #[test]
    fn affine_line() {
        let inf = exact(&CoxeterGraph::chain(&[0]));
        let c = w(&[0, 1]);
        assert_eq!(
            orbit_classify(&inf, &c, &inf.simple(0), 512),
            OrbitVerdict::Odd { count: 1 }
        );
        let odd = odd_roots(&inf, &c, 3, 512).unwrap();
        assert!(odd.roots.contains(&inf.simple(0)) && odd.roots.contains(&inf.simple(1)));
        assert_eq!(odd.unknown, 0);
    }

    #[test]
    fn involutions_have_no_odd_roots() {
        let sys = exact(&triangle());
        assert!(odd_roots(&sys, &w(&[1]), 8, 64).unwrap().roots.is_empty());
        let a3 = exact(&CoxeterGraph::a(3));
        assert!(odd_roots(&a3, &w(&[0, 1, 2]), 6, 64)
            .unwrap()
            .roots
            .is_empty());
    }

    #[test]
    fn events_lie_in_the_window() {
        let sys = exact(&triangle());
        let c = w(&[0, 1, 2]);
        let window = Window::new(&sys, &c);
        for e in sys.positive_roots(Depth::Levels(5)).unwrap() {
            let mut x = e.root.clone();
            for _ in 0..30 {
                let next = sys.act(&c, &x);
                if next.sign() != x.sign() {
                    assert!(window.points.contains(&x));
                }
                x = next;
            }
        }
    }

    #[test]
    fn verdict_respects_equal_representatives() {
        let sys = exact(&triangle());
        let c = w(&[0, 1, 2]);
        let beta = sys.act(&w(&[0, 1]), &sys.simple(2)).abs();
        let again = Root::from_coeffs(beta.coeffs().to_vec());
        assert_eq!(
            orbit_classify(&sys, &c, &beta, 512),
            orbit_classify(&sys, &c, &again, 512)
        );
    }

    #[test]
    fn triangle_coxeter_element_and_powers() {
        let sys = exact(&triangle());
        let c = w(&[0, 1, 2]);
        for word in [c.clone(), c.pow(2)] {
            let v = essential_certificate(&sys, &word, Bounds::default()).unwrap();
            let EssentialVerdict::CertifiedEssential { witness } = v else {
                panic!("{v:?}")
            };
            assert!(!witness.is_empty());
            for r in &witness {
                assert!(orbit_classify(&sys, &word, r, 512).is_odd());
            }
        }
    }

    #[test]
    fn not_essential_witnesses() {
        let sys = exact(&triangle());
        let v = essential_certificate(&sys, &w(&[0]), Bounds::default()).unwrap();
        assert_eq!(
            v,
            EssentialVerdict::NotEssential(NotEssentialReason::ProperSupport {
                missing: vec![1, 2]
            })
        );
        // s1 s2 s1 s1 reduces to s1 s2
        let v = essential_certificate(&sys, &w(&[0, 1, 0, 0]), Bounds::default()).unwrap();
        assert_eq!(
            v,
            EssentialVerdict::NotEssential(NotEssentialReason::ProperSupport { missing: vec![2] })
        );
        // full support but a conjugate of s2: finite order
        let v = essential_certificate(&sys, &w(&[0, 2, 1, 2, 0]), Bounds::default()).unwrap();
        assert_eq!(
            v,
            EssentialVerdict::NotEssential(NotEssentialReason::FiniteOrder { order: 2 })
        );
    }

    #[test]
    fn certificate_requires_indefinite_irreducible() {
        let a3 = exact(&CoxeterGraph::a(3));
        assert!(matches!(
            essential_certificate(&a3, &w(&[0, 1, 2]), Bounds::default()),
            Err(Error::NotIrreducibleIndefinite(_))
        ));
        let inf = exact(&CoxeterGraph::chain(&[0]));
        assert!(essential_certificate(&inf, &w(&[0, 1]), Bounds::default()).is_err());
    }

    #[test]
    fn float_mode_agrees() {
        let g = triangle();
        let fl: System<Float64> = System::new(&g, ScalarMode::Float).unwrap();
        let v = essential_certificate(&fl, &w(&[0, 1, 2]), Bounds::default()).unwrap();
        assert!(matches!(v, EssentialVerdict::CertifiedEssential { .. }));
    }
}
