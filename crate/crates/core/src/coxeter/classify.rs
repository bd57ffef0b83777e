//! Finite / affine / indefinite classification of Coxeter graphs.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use super::scalar::FLOAT_TOLERANCE;
use super::{Bond, CoxeterGraph, Exact, Float64, Scalar, ScalarMode, System};
use crate::{Error, Result};

/// Sign type of the canonical form. Ordered so that the worst component wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    /// Positive definite.
    Finite,
    /// Positive semidefinite and degenerate.
    Affine,
    Indefinite,
}

impl CoxeterType {
    pub fn name(self) -> &'static str {
        match self {
            CoxeterType::Finite => "finite",
            CoxeterType::Affine => "affine",
            CoxeterType::Indefinite => "indefinite",
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies each connected component by the signature of its Gram matrix and reports the
/// worst one. Exact modes use principal minors; float mode uses eigenvalues and is checked
/// against the classification catalog.
pub fn classify_type(graph: &CoxeterGraph) -> Result<CoxeterType> {
    let mut worst = CoxeterType::Finite;
    for comp in graph.components() {
        let sub = graph.subgraph(&comp);
        let ty = match ScalarMode::auto(&sub) {
            ScalarMode::Float => {
                let ty = classify_float(&sub)?;
                let cat = catalog_type(&sub)
                    .map(|(_, t)| t)
                    .unwrap_or(CoxeterType::Indefinite);
                if cat != ty {
                    return Err(Error::CatalogMismatch(format!(
                        "eigenvalues say {ty}, catalog says {cat} for component {:?}",
                        sub.labels()
                    )));
                }
                ty
            }
            mode => classify_exact(&System::<Exact>::new(&sub, mode)?),
        };
        worst = worst.max(ty);
    }
    Ok(worst)
}

/// Determinants of the leading principal submatrices of `m`, computed division-free by
/// Laplace expansion along the last row with memoization over column subsets.
fn leading_minors<S: Scalar>(m: &[Vec<S>]) -> Vec<S> {
    fn det<S: Scalar>(m: &[Vec<S>], cols: u64, memo: &mut HashMap<u64, S>) -> S {
        let k = cols.count_ones() as usize;
        if k == 0 {
            return S::from_int(1);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = k - 1;
        let mut acc = S::zero();
        let mut j = 0;
        for c in 0..64 {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                let minor = det(m, cols & !(1 << c), memo);
                let term = entry.mul(&minor);
                acc = if (row + j).is_multiple_of(2) {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            j += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    (1..=m.len())
        .map(|k| det(m, (1u64 << k) - 1, &mut memo))
        .collect()
}

fn is_positive_definite<S: Scalar>(m: &[Vec<S>]) -> bool {
    leading_minors(m).iter().all(|d| d.signum() > 0)
}

fn restrict<S: Scalar>(m: &[Vec<S>], keep: &[usize]) -> Vec<Vec<S>> {
    keep.iter()
        .map(|&i| keep.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

/// Connected graph, exact arithmetic. Positive definite iff all leading minors are positive.
/// A connected graph is affine iff its determinant vanishes and deleting any vertex leaves a
/// positive definite matrix (interlacing then forces the single zero eigenvalue).
fn classify_exact<S: Scalar>(sys: &System<S>) -> CoxeterType {
    let m = sys.canonical_form().rows();
    let n = m.len();
    if is_positive_definite(m) {
        return CoxeterType::Finite;
    }
    let det = leading_minors(m).pop().expect("nonempty graph");
    if !det.is_zero() {
        return CoxeterType::Indefinite;
    }
    let all_minors_definite = (0..n).all(|v| {
        let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        is_positive_definite(&restrict(m, &keep))
    });
    if all_minors_definite {
        CoxeterType::Affine
    } else {
        CoxeterType::Indefinite
    }
}

fn classify_float(graph: &CoxeterGraph) -> Result<CoxeterType> {
    let sys = System::<Float64>::new(graph, ScalarMode::Float)?;
    let n = graph.len();
    let mat = DMatrix::from_fn(n, n, |i, j| sys.canonical_form().entry(i, j));
    let eig = SymmetricEigen::new(mat).eigenvalues;
    let tol = FLOAT_TOLERANCE * n as f64;
    Ok(if eig.iter().all(|&e| e > tol) {
        CoxeterType::Finite
    } else if eig.iter().all(|&e| e > -tol) {
        CoxeterType::Affine
    } else {
        CoxeterType::Indefinite
    })
}

/// Recognizes a connected graph in the classification of finite and affine Coxeter graphs.
/// Returns the family name (e.g. `"D5"`, `"~B4"`, `"I2(7)"`) and its type, or `None` when the
/// graph is in neither list (hence indefinite).
pub fn catalog_type(graph: &CoxeterGraph) -> Option<(String, CoxeterType)> {
    use CoxeterType::{Affine, Finite};
    let n = graph.len();
    if n == 0 || !graph.is_irreducible() {
        return None;
    }
    if n == 1 {
        return Some(("A1".into(), Finite));
    }
    let edges = graph.edges();
    if n == 2 {
        return Some(match edges[0].2 {
            Bond::Infinite => ("~A1".into(), Affine),
            Bond::Finite(3) => ("A2".into(), Finite),
            Bond::Finite(4) => ("B2".into(), Finite),
            Bond::Finite(6) => ("G2".into(), Finite),
            Bond::Finite(m) => (format!("I2({m})"), Finite),
        });
    }
    if edges.iter().any(|e| e.2.is_infinite()) {
        return None;
    }
    let degree: Vec<usize> = (0..n).map(|s| graph.neighbours(s).count()).collect();
    let labels = |m: u32| edges.iter().filter(|e| e.2 == Bond::Finite(m)).count();
    let heavy = edges.iter().filter(|e| e.2 != Bond::Finite(3)).count();

    // cycles: only the simply-laced cycle ~A_{n-1}
    if edges.len() >= n {
        let cycle = edges.len() == n && degree.iter().all(|&d| d == 2) && heavy == 0;
        return cycle.then(|| (format!("~A{}", n - 1), Affine));
    }

    let branch: Vec<usize> = (0..n).filter(|&s| degree[s] >= 3).collect();
    if branch.is_empty() {
        let path = path_labels(graph, &degree);
        return classify_path(&path);
    }

    if heavy == 0 {
        // simply-laced trees with branching
        if branch.len() == 1 {
            let b = branch[0];
            let mut legs = leg_lengths(graph, b);
            legs.sort_unstable();
            return match (degree[b], &legs[..]) {
                (3, [1, 1, k]) => Some((format!("D{}", k + 3), Finite)),
                (3, [1, 2, 2]) => Some(("E6".into(), Finite)),
                (3, [1, 2, 3]) => Some(("E7".into(), Finite)),
                (3, [1, 2, 4]) => Some(("E8".into(), Finite)),
                (3, [2, 2, 2]) => Some(("~E6".into(), Affine)),
                (3, [1, 3, 3]) => Some(("~E7".into(), Affine)),
                (3, [1, 2, 5]) => Some(("~E8".into(), Affine)),
                (4, [1, 1, 1, 1]) => Some(("~D4".into(), Affine)),
                _ => None,
            };
        }
        if branch.len() == 2 && branch.iter().all(|&b| degree[b] == 3) {
            // ~D_{n-1}: both branch points carry two leaves
            let leaves_at = |b: usize| graph.neighbours(b).filter(|&t| degree[t] == 1).count();
            if branch.iter().all(|&b| leaves_at(b) == 2) {
                return Some((format!("~D{}", n - 1), Affine));
            }
        }
        return None;
    }

    // ~B_{n-1}: a D-type fork at one end, a single 4 on the far end edge
    if branch.len() == 1 && heavy == 1 && labels(4) == 1 && degree[branch[0]] == 3 {
        let b = branch[0];
        let leaves: Vec<usize> = graph.neighbours(b).filter(|&t| degree[t] == 1).collect();
        if leaves.len() >= 2 {
            let (s, t, _) = *edges.iter().find(|e| e.2 == Bond::Finite(4)).unwrap();
            let far_leaf = [s, t]
                .into_iter()
                .any(|v| degree[v] == 1 && !leaves_touch_only(&leaves, v, s, t));
            if far_leaf {
                return Some((format!("~B{}", n - 1), Affine));
            }
        }
    }
    None
}

/// The 4-edge must not be one of the two fork leaves when ~B has more than 4 vertices;
/// for ~B3 every leg has length one, so any leaf edge works.
fn leaves_touch_only(fork_leaves: &[usize], v: usize, s: usize, t: usize) -> bool {
    let other = if v == s { t } else { s };
    fork_leaves.contains(&v) && fork_leaves.len() == 2 && !fork_leaves.contains(&other)
}

fn path_labels(graph: &CoxeterGraph, degree: &[usize]) -> Vec<u32> {
    let n = graph.len();
    let start = (0..n).find(|&s| degree[s] == 1).expect("path has an end");
    let mut labels = Vec::new();
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let next = graph.neighbours(cur).find(|&t| t != prev);
        match next {
            Some(t) => {
                labels.push(match graph.bond(cur, t) {
                    Bond::Finite(m) => m,
                    Bond::Infinite => 0,
                });
                prev = cur;
                cur = t;
            }
            None => break,
        }
    }
    labels
}

fn classify_path(path: &[u32]) -> Option<(String, CoxeterType)> {
    use CoxeterType::{Affine, Finite};
    let n = path.len() + 1;
    let rev: Vec<u32> = path.iter().rev().copied().collect();
    let matches = |pattern: &[u32]| path == pattern || rev == pattern;
    let all3 = |p: &[u32]| p.iter().all(|&m| m == 3);
    let heavy: Vec<usize> = (0..path.len()).filter(|&i| path[i] != 3).collect();
    if heavy.is_empty() {
        return Some((format!("A{n}"), Finite));
    }
    if heavy.len() == 1 {
        let i = heavy[0];
        let at_end = i == 0 || i == path.len() - 1;
        match path[i] {
            4 if at_end => return Some((format!("B{n}"), Finite)),
            4 if matches(&[3, 4, 3]) => return Some(("F4".into(), Finite)),
            4 if matches(&[3, 3, 4, 3]) => return Some(("~F4".into(), Affine)),
            5 if matches(&[5, 3]) => return Some(("H3".into(), Finite)),
            5 if matches(&[5, 3, 3]) => return Some(("H4".into(), Finite)),
            6 if matches(&[6, 3]) => return Some(("~G2".into(), Affine)),
            _ => return None,
        }
    }
    if heavy.len() == 2
        && path[0] == 4
        && path[path.len() - 1] == 4
        && all3(&path[1..path.len() - 1])
    {
        return Some((format!("~C{}", n - 1), Affine));
    }
    None
}

fn leg_lengths(graph: &CoxeterGraph, branch: usize) -> Vec<usize> {
    graph
        .neighbours(branch)
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            loop {
                let next: Vec<usize> = graph.neighbours(cur).filter(|&t| t != prev).collect();
                match next[..] {
                    [t] => {
                        prev = cur;
                        cur = t;
                        len += 1;
                    }
                    _ => return if next.is_empty() { len } else { usize::MAX },
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterGraph {
        let mut m = vec![vec![2; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t, l) in edges {
            m[s][t] = l;
            m[t][s] = l;
        }
        CoxeterGraph::from_matrix(&m).unwrap()
    }

    fn d(n: usize) -> CoxeterGraph {
        let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 3)).collect();
        e.push((n - 3, n - 1, 3));
        from_edges(n, &e)
    }

    fn e(n: usize) -> CoxeterGraph {
        let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 3)).collect();
        edges.push((2, n - 1, 3));
        from_edges(n, &edges)
    }

    fn triangle(a: u32, b: u32, c: u32) -> CoxeterGraph {
        from_edges(3, &[(0, 1, a), (1, 2, b), (0, 2, c)])
    }

    #[test]
    fn examples() {
        assert_eq!(
            classify_type(&CoxeterGraph::a(2)).unwrap(),
            CoxeterType::Finite
        );
        assert_eq!(
            classify_type(&CoxeterGraph::chain(&[0])).unwrap(),
            CoxeterType::Affine
        );
        assert_eq!(
            classify_type(&triangle(3, 3, 4)).unwrap(),
            CoxeterType::Indefinite
        );
    }

    #[test]
    fn families() {
        use CoxeterType::*;
        let cases: Vec<(CoxeterGraph, CoxeterType, &str)> = vec![
            (CoxeterGraph::a(5), Finite, "A5"),
            (CoxeterGraph::chain(&[4, 3, 3]), Finite, "B4"),
            (d(5), Finite, "D5"),
            (e(6), Finite, "E6"),
            (e(7), Finite, "E7"),
            (e(8), Finite, "E8"),
            (CoxeterGraph::chain(&[3, 4, 3]), Finite, "F4"),
            (CoxeterGraph::chain(&[5, 3]), Finite, "H3"),
            (CoxeterGraph::chain(&[5, 3, 3]), Finite, "H4"),
            (CoxeterGraph::chain(&[7]), Finite, "I2(7)"),
            (triangle(3, 3, 3), Affine, "~A2"),
            (CoxeterGraph::chain(&[4, 4]), Affine, "~C2"),
            (CoxeterGraph::chain(&[4, 3, 4]), Affine, "~C3"),
            (CoxeterGraph::chain(&[6, 3]), Affine, "~G2"),
            (CoxeterGraph::chain(&[3, 3, 4, 3]), Affine, "~F4"),
            (
                from_edges(4, &[(0, 1, 3), (0, 2, 3), (0, 3, 4)]),
                Affine,
                "~B3",
            ),
            (
                from_edges(5, &[(0, 2, 3), (1, 2, 3), (2, 3, 3), (3, 4, 4)]),
                Affine,
                "~B4",
            ),
            (
                from_edges(5, &[(0, 4, 3), (1, 4, 3), (2, 4, 3), (3, 4, 3)]),
                Affine,
                "~D4",
            ),
            (
                from_edges(6, &[(0, 2, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (3, 5, 3)]),
                Affine,
                "~D5",
            ),
            (
                from_edges(
                    7,
                    &[
                        (0, 1, 3),
                        (1, 2, 3),
                        (2, 3, 3),
                        (3, 4, 3),
                        (2, 5, 3),
                        (5, 6, 3),
                    ],
                ),
                Affine,
                "~E6",
            ),
            (
                from_edges(
                    8,
                    &[
                        (0, 1, 3),
                        (1, 2, 3),
                        (2, 3, 3),
                        (3, 4, 3),
                        (4, 5, 3),
                        (5, 6, 3),
                        (3, 7, 3),
                    ],
                ),
                Affine,
                "~E7",
            ),
            (e(9), Affine, "~E8"),
        ];
        for (g, ty, name) in cases {
            assert_eq!(catalog_type(&g), Some((name.to_string(), ty)), "{name}");
            assert_eq!(classify_type(&g).unwrap(), ty, "{name}");
        }
    }

    #[test]
    fn indefinite_graphs_are_outside_the_catalog() {
        let graphs = [
            triangle(3, 3, 4),
            CoxeterGraph::chain(&[0, 3]),
            CoxeterGraph::chain(&[5, 3, 3, 3]),
            CoxeterGraph::chain(&[4, 3, 3, 4, 3]),
            e(10),
            CoxeterGraph::chain(&[7, 3]),
            CoxeterGraph::chain(&[4, 5]),
            from_edges(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3), (0, 2, 3)]),
        ];
        for g in graphs {
            assert_eq!(catalog_type(&g), None, "{g}");
            assert_eq!(classify_type(&g).unwrap(), CoxeterType::Indefinite, "{g}");
        }
    }

    #[test]
    fn disconnected_takes_worst_component() {
        let mut g = CoxeterGraph::new(["a", "b", "c", "d"]).unwrap();
        g.set_bond(0, 1, Bond::Finite(3)).unwrap();
        assert_eq!(classify_type(&g).unwrap(), CoxeterType::Finite);
        g.set_bond(2, 3, Bond::Infinite).unwrap();
        assert_eq!(classify_type(&g).unwrap(), CoxeterType::Affine);
    }

    #[test]
    fn minors() {
        let sys = System::<Exact>::new(&CoxeterGraph::a(3), ScalarMode::Rational).unwrap();
        // doubled Cartan matrix of A3: minors 2, 3, 4
        let m = leading_minors(sys.canonical_form().rows());
        assert_eq!(
            m,
            vec![Exact::from_int(2), Exact::from_int(3), Exact::from_int(4)]
        );
    }
}
