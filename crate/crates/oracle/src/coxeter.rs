//! Floating-point orbit enumeration for finite Coxeter groups.
//!
//! A Coxeter matrix is given as `Vec<Vec<u32>>` with `0` standing for `∞`.

use std::collections::{HashMap, VecDeque};

type Mat = Vec<Vec<f64>>;

fn gram(m: &[Vec<u32>]) -> Mat {
    let n = m.len();
    let mut b = vec![vec![0.0; n]; n];
    for s in 0..n {
        for t in 0..n {
            b[s][t] = if s == t {
                1.0
            } else if m[s][t] == 0 {
                -1.0
            } else {
                -(std::f64::consts::PI / m[s][t] as f64).cos()
            };
        }
    }
    b
}

/// Matrix of the reflection `x ↦ x - 2 B(x, α_s) α_s` acting on coefficient vectors.
fn reflection(b: &Mat, s: usize) -> Mat {
    let n = b.len();
    let mut r = vec![vec![0.0; n]; n];
    for (j, row) in r.iter_mut().enumerate() {
        row[j] = 1.0;
    }
    for t in 0..n {
        // column t = image of α_t
        r[s][t] -= 2.0 * b[t][s];
    }
    r
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0.0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn key(m: &Mat) -> Vec<i64> {
    m.iter()
        .flatten()
        .map(|x| (x * 1e6).round() as i64)
        .collect()
}

/// Enumerates a finite Coxeter group by breadth-first search on matrices.
/// Returns each element's matrix with its Cayley-graph distance from the identity.
/// Gives up (returns `None`) after `limit` elements.
pub fn enumerate_group(m: &[Vec<u32>], limit: usize) -> Option<Vec<(Mat, usize)>> {
    let b = gram(m);
    let gens: Vec<Mat> = (0..m.len()).map(|s| reflection(&b, s)).collect();
    let n = m.len();
    let id: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&id), 0);
    queue.push_back((id, 0));
    while let Some((g, d)) = queue.pop_front() {
        out.push((g.clone(), d));
        if out.len() > limit {
            return None;
        }
        for s in &gens {
            let h = mul(&g, s);
            let k = key(&h);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert(d + 1);
                queue.push_back((h, d + 1));
            }
        }
    }
    Some(out)
}

/// Word length of `word` (0-based generator indices) in a finite Coxeter group, by lookup in
/// the Cayley-graph enumeration.
pub fn word_length(m: &[Vec<u32>], word: &[usize]) -> usize {
    let b = gram(m);
    let n = m.len();
    let mut g: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for &s in word {
        g = mul(&g, &reflection(&b, s));
    }
    let elems = enumerate_group(m, 100_000).expect("finite group");
    let k = key(&g);
    elems
        .iter()
        .find(|(h, _)| key(h) == k)
        .map(|(_, d)| *d)
        .expect("element found")
}

/// Number of positive roots, counted as the images `w α_s` over all group elements.
pub fn positive_root_count(m: &[Vec<u32>]) -> usize {
    let elems = enumerate_group(m, 100_000).expect("finite group");
    let mut roots: HashMap<Vec<i64>, ()> = HashMap::new();
    for (g, _) in &elems {
        for s in 0..m.len() {
            let col: Vec<f64> = g.iter().map(|row| row[s]).collect();
            if col.iter().all(|&x| x > -1e-9) {
                roots.insert(col.iter().map(|x| (x * 1e6).round() as i64).collect(), ());
            }
        }
    }
    roots.len()
}
