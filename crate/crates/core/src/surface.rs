//! The monodromy surface `Σ(Γ)` of a small-type Coxeter graph and its homological shadow.
//!
//! Each vertex `s` contributes an annulus `An_s = R/2kZ × [0,1]` (`k = |St_s|`) cut into `2k`
//! unit squares. For each bond `m_st = 3` with `s < t`, square `2·pos(t:s)` of `An_s` is glued
//! to square `2·pos(s:t)` of `An_t` by `(x, y) ↦ (1 - y, x)` in square coordinates. The quotient
//! is built as a square complex, and χ, boundary and genus are read off the complex.

use std::fmt;

use nalgebra::DMatrix;

use crate::coxeter::{Bond, CoxeterGraph};
use crate::{Error, Result};

/// A total order on the vertices; `rank[s]` is the position of `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    /// The order in which the vertices are listed in the graph.
    pub fn natural(n: usize) -> Self {
        VertexOrder {
            rank: (0..n).collect(),
        }
    }

    /// From vertex indices listed smallest first.
    pub fn from_sequence(n: usize, seq: &[usize]) -> Result<Self> {
        let mut rank = vec![usize::MAX; n];
        if seq.len() != n {
            return Err(Error::InvalidOrder);
        }
        for (i, &s) in seq.iter().enumerate() {
            if s >= n || rank[s] != usize::MAX {
                return Err(Error::InvalidOrder);
            }
            rank[s] = i;
        }
        Ok(VertexOrder { rank })
    }

    /// From a comma- or space-separated list of labels.
    pub fn parse(graph: &CoxeterGraph, text: &str) -> Result<Self> {
        let seq = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| graph.index_of(t))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sequence(graph.len(), &seq)
    }

    pub fn less(&self, s: usize, t: usize) -> bool {
        self.rank[s] < self.rank[t]
    }

    pub fn sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.rank.len()).collect();
        seq.sort_by_key(|&s| self.rank[s]);
        seq
    }
}

fn check_small_type(graph: &CoxeterGraph) -> Result<()> {
    for (s, t, m) in graph.edges() {
        if m != Bond::Finite(3) {
            return Err(Error::NotSmallType {
                s: graph.label(s).to_string(),
                t: graph.label(t).to_string(),
                bond: m.to_string(),
            });
        }
    }
    Ok(())
}

/// `St_s` sorted by the order, together with the relative positions `pos(t:s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub vertex: usize,
    pub members: Vec<usize>,
    pub positions: Vec<i64>,
}

impl Star {
    /// `k = |St_s|`.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn pos(&self, t: usize) -> Option<i64> {
        self.members
            .iter()
            .position(|&m| m == t)
            .map(|i| self.positions[i])
    }
}

pub fn star_positions(graph: &CoxeterGraph, order: &VertexOrder, s: usize) -> Result<Star> {
    check_small_type(graph)?;
    let mut members: Vec<usize> = graph.neighbours(s).chain([s]).collect();
    members.sort_by_key(|&t| order.rank[t]);
    let j = members
        .iter()
        .position(|&t| t == s)
        .expect("s is in its star") as i64;
    let positions = (0..members.len() as i64).map(|i| i - j).collect();
    Ok(Star {
        vertex: s,
        members,
        positions,
    })
}

/// Union-find whose elements carry a parity relative to their root.
#[derive(Debug, Clone)]
struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        ParityUnion {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Records `x ~ y` with relative parity `flip`; returns false on a parity conflict.
    fn union(&mut self, x: usize, y: usize, flip: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == flip;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ flip;
        true
    }
}

/// One glued square pair: square `square_s` of `An_s` with square `square_t` of `An_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub s: usize,
    pub t: usize,
    pub square_s: usize,
    pub square_t: usize,
}

/// Cell layout of the disjoint union of annuli before gluing.
struct Cells {
    /// Per vertex: number of squares `2k` and offsets of its vertices, edges and squares.
    len: Vec<usize>,
    vert0: Vec<usize>,
    edge0: Vec<usize>,
    face0: Vec<usize>,
    vertices: usize,
    edges: usize,
    faces: usize,
}

impl Cells {
    fn new(len: Vec<usize>) -> Self {
        let (mut vert0, mut edge0, mut face0) = (Vec::new(), Vec::new(), Vec::new());
        let (mut v, mut e, mut f) = (0, 0, 0);
        for &l in &len {
            vert0.push(v);
            edge0.push(e);
            face0.push(f);
            v += 2 * l;
            e += 3 * l;
            f += l;
        }
        Cells {
            len,
            vert0,
            edge0,
            face0,
            vertices: v,
            edges: e,
            faces: f,
        }
    }

    /// Vertex `(j, y)` of `An_s`.
    fn vertex(&self, s: usize, j: usize, y: usize) -> usize {
        self.vert0[s] + 2 * (j % self.len[s]) + y
    }

    /// Horizontal edge `(j, y) → (j + 1, y)`.
    fn horizontal(&self, s: usize, j: usize, y: usize) -> usize {
        self.edge0[s] + 2 * (j % self.len[s]) + y
    }

    /// Vertical edge `(j, 0) → (j, 1)`.
    fn vertical(&self, s: usize, j: usize) -> usize {
        self.edge0[s] + 2 * self.len[s] + j % self.len[s]
    }

    /// The side of square `j` from local corner `a` to local corner `b` (adjacent corners),
    /// as (edge, reversed relative to the edge's own direction).
    fn side(&self, s: usize, j: usize, a: (usize, usize), b: (usize, usize)) -> (usize, bool) {
        match (a, b) {
            ((0, y), (1, y2)) if y == y2 => (self.horizontal(s, j, y), false),
            ((1, y), (0, y2)) if y == y2 => (self.horizontal(s, j, y), true),
            ((x, 0), (x2, 1)) if x == x2 => (self.vertical(s, j + x), false),
            ((x, 1), (x2, 0)) if x == x2 => (self.vertical(s, j + x), true),
            _ => unreachable!("corners are not adjacent"),
        }
    }

    /// Counter-clockwise boundary of square `j`: (edge, reversed).
    fn boundary(&self, s: usize, j: usize) -> [(usize, bool); 4] {
        [
            (self.horizontal(s, j, 0), false),
            (self.vertical(s, j + 1), false),
            (self.horizontal(s, j, 1), true),
            (self.vertical(s, j), true),
        ]
    }
}

const CORNERS: [(usize, usize); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];

/// The glued square complex and its invariants.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub order: VertexOrder,
    pub stars: Vec<Star>,
    pub gluings: Vec<Gluing>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    pub components: usize,
    pub genus: usize,
    /// Every interior edge is crossed in opposite directions by its two squares.
    pub orientable: bool,
    /// Rank of `H_1(Σ; Q)`.
    pub h1_rank: usize,
    /// Rank of the span of the curve classes `[a_s]` in `H_1(Σ; Q)`.
    pub curve_span_rank: usize,
    bonds: usize,
}

impl SurfaceModel {
    /// `-#{bonds with m_st = 3}`: each glued square lowers χ of the union by one.
    pub fn expected_euler_characteristic(&self) -> i64 {
        -(self.bonds as i64)
    }

    /// Number of points of `a_s ∩ a_t`: `a_s` runs through the middle of each square of
    /// `An_s`, and a glued square turns it into the transverse middle line of the partner.
    pub fn curve_intersections(&self, s: usize, t: usize) -> usize {
        if s == t {
            return 0;
        }
        self.gluings
            .iter()
            .filter(|g| (g.s, g.t) == (s, t) || (g.s, g.t) == (t, s))
            .count()
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "genus {} with {} boundary component(s), euler characteristic {}",
            self.genus, self.boundary_components, self.euler_characteristic
        )
    }
}

pub fn build_surface(graph: &CoxeterGraph, order: &VertexOrder) -> Result<SurfaceModel> {
    check_small_type(graph)?;
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = graph.len();
    let stars = (0..n)
        .map(|s| star_positions(graph, order, s))
        .collect::<Result<Vec<_>>>()?;
    let cells = Cells::new(stars.iter().map(|st| 2 * st.k()).collect());
    let square = |s: usize, p: i64| -> usize { (2 * p).rem_euclid(cells.len[s] as i64) as usize };

    let mut gluings = Vec::new();
    for (s, t, _) in graph.edges() {
        let (s, t) = if order.less(s, t) { (s, t) } else { (t, s) };
        let p = stars[s].pos(t).expect("neighbour in star");
        let q = stars[t].pos(s).expect("neighbour in star");
        gluings.push(Gluing {
            s,
            t,
            square_s: square(s, p),
            square_t: square(t, q),
        });
    }
    gluings.sort_by_key(|g| (g.s, g.t));

    let mut verts = ParityUnion::new(cells.vertices);
    let mut edges = ParityUnion::new(cells.edges);
    let mut faces = ParityUnion::new(cells.faces);
    let local = |(x, y): (usize, usize)| (1 - y, x);
    for g in &gluings {
        let (js, jt) = (g.square_s, g.square_t);
        faces.union(cells.face0[g.s] + js, cells.face0[g.t] + jt, false);
        for (i, &a) in CORNERS.iter().enumerate() {
            let (fa, fb) = (local(a), local(CORNERS[(i + 1) % 4]));
            let b = CORNERS[(i + 1) % 4];
            verts.union(
                cells.vertex(g.s, js + a.0, a.1),
                cells.vertex(g.t, jt + fa.0, fa.1),
                false,
            );
            let (es, rs) = cells.side(g.s, js, a, b);
            let (et, rt) = cells.side(g.t, jt, fa, fb);
            edges.union(es, et, rs ^ rt);
        }
    }

    let root_index = |uf: &mut ParityUnion, count: usize| -> (Vec<usize>, usize) {
        let mut index = vec![usize::MAX; count];
        let mut next = 0;
        for x in 0..count {
            let (r, _) = uf.find(x);
            if index[r] == usize::MAX {
                index[r] = next;
                next += 1;
            }
        }
        ((0..count).map(|x| index[uf.find(x).0]).collect(), next)
    };
    let (v_of, nv) = root_index(&mut verts, cells.vertices);
    let (e_of, ne) = root_index(&mut edges, cells.edges);
    let (f_of, nf) = root_index(&mut faces, cells.faces);

    // endpoints of each quotient edge in its root's direction
    let mut ends = vec![(0usize, 0usize); ne];
    for s in 0..n {
        for j in 0..cells.len[s] {
            for y in 0..2 {
                let e = cells.horizontal(s, j, y);
                let (a, b) = (v_of[cells.vertex(s, j, y)], v_of[cells.vertex(s, j + 1, y)]);
                ends[e_of[e]] = if edges.find(e).1 { (b, a) } else { (a, b) };
            }
            let e = cells.vertical(s, j);
            let (a, b) = (v_of[cells.vertex(s, j, 0)], v_of[cells.vertex(s, j, 1)]);
            ends[e_of[e]] = if edges.find(e).1 { (b, a) } else { (a, b) };
        }
    }

    // boundary map of faces, one representative square per quotient face
    let mut d2 = DMatrix::<i64>::zeros(ne, nf);
    let mut incidence = vec![0usize; ne];
    let mut seen_face = vec![false; nf];
    let mut orientable = true;
    let mut signs = vec![0i64; ne];
    for s in 0..n {
        for j in 0..cells.len[s] {
            let f = f_of[cells.face0[s] + j];
            if std::mem::replace(&mut seen_face[f], true) {
                continue;
            }
            for (e, rev) in cells.boundary(s, j) {
                let sign = if rev ^ edges.find(e).1 { -1 } else { 1 };
                let q = e_of[e];
                d2[(q, f)] += sign;
                incidence[q] += 1;
                signs[q] += sign;
            }
        }
    }
    for q in 0..ne {
        assert!(incidence[q] <= 2, "edge shared by more than two squares");
        if incidence[q] == 2 && signs[q] != 0 {
            orientable = false;
        }
    }

    // components of the 1-skeleton and boundary circles
    let mut comp = ParityUnion::new(nv);
    let mut bnd = ParityUnion::new(nv);
    let mut bnd_degree = vec![0usize; nv];
    for q in 0..ne {
        let (a, b) = ends[q];
        comp.union(a, b, false);
        if incidence[q] == 1 {
            bnd.union(a, b, false);
            bnd_degree[a] += 1;
            bnd_degree[b] += 1;
        }
    }
    assert!(
        bnd_degree.iter().all(|&d| d == 0 || d == 2),
        "boundary is not a union of circles"
    );
    let components = (0..nv).filter(|&v| comp.find(v).0 == v).count();
    let boundary_components = (0..nv)
        .filter(|&v| bnd_degree[v] > 0 && bnd.find(v).0 == v)
        .count();

    let chi = nv as i64 - ne as i64 + nf as i64;
    let twice_genus = 2 * components as i64 - chi - boundary_components as i64;
    assert!(
        twice_genus >= 0 && twice_genus % 2 == 0,
        "inconsistent invariants"
    );

    let mut d1 = DMatrix::<i64>::zeros(nv, ne);
    for (q, &(a, b)) in ends.iter().enumerate() {
        d1[(b, q)] += 1;
        d1[(a, q)] -= 1;
    }
    // a_s is homologous to the bottom circle of An_s
    let curves: Vec<Vec<i64>> = (0..n)
        .map(|s| {
            let mut chain = vec![0i64; ne];
            for j in 0..cells.len[s] {
                let e = cells.horizontal(s, j, 0);
                chain[e_of[e]] += if edges.find(e).1 { -1 } else { 1 };
            }
            chain
        })
        .collect();
    let d2_cols: Vec<Vec<i64>> = (0..nf)
        .map(|f| d2.column(f).iter().copied().collect())
        .collect();
    let rank_d2 = rank(d2_cols.clone());
    let rank_d1 = rank(
        (0..ne)
            .map(|q| d1.column(q).iter().copied().collect())
            .collect(),
    );
    let curve_span_rank = rank(d2_cols.into_iter().chain(curves).collect()) - rank_d2;

    Ok(SurfaceModel {
        order: order.clone(),
        stars,
        gluings,
        vertices: nv,
        edges: ne,
        faces: nf,
        euler_characteristic: chi,
        boundary_components,
        components,
        genus: (twice_genus / 2) as usize,
        orientable,
        h1_rank: ne - rank_d1 - rank_d2,
        curve_span_rank,
        bonds: graph.edges().len(),
    })
}

/// Rank over `Q` of a list of integer vectors, by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i64>>) -> usize {
    let mut rows: Vec<Vec<i128>> = rows
        .drain(..)
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[c] - f * y;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The antisymmetric form on the classes `[a_s]`: `J_st = ±1` on bonds, `+1` when `s < t`.
pub fn intersection_matrix(graph: &CoxeterGraph, order: &VertexOrder) -> Result<DMatrix<i64>> {
    check_small_type(graph)?;
    let n = graph.len();
    let mut j = DMatrix::zeros(n, n);
    for (s, t, _) in graph.edges() {
        let sign = if order.less(s, t) { 1 } else { -1 };
        j[(s, t)] = sign;
        j[(t, s)] = -sign;
    }
    Ok(j)
}

/// The transvection `x ↦ x + ε J(x, e_s) e_s`, `ε = ±1`.
fn transvection(j: &DMatrix<i64>, s: usize, inverse: bool) -> DMatrix<i64> {
    let n = j.nrows();
    let eps = if inverse { -1 } else { 1 };
    let mut m = DMatrix::identity(n, n);
    for t in 0..n {
        m[(s, t)] += eps * j[(t, s)];
    }
    m
}

/// Image of a word in the Artin generators. Letters are `(vertex, inverse)`; the product is
/// read left to right, so `rep(uv) = rep(u) rep(v)`.
pub fn homological_rep(
    graph: &CoxeterGraph,
    order: &VertexOrder,
    word: &[(usize, bool)],
) -> Result<DMatrix<i64>> {
    let j = intersection_matrix(graph, order)?;
    let n = graph.len();
    let mut m = DMatrix::identity(n, n);
    for &(s, inverse) in word {
        if s >= n {
            return Err(Error::UnknownVertex(s.to_string()));
        }
        m *= transvection(&j, s, inverse);
    }
    Ok(m)
}

/// Parses `"a b -c"` or `"1 2 -3"` (1-based indices) into Artin letters.
pub fn parse_artin_word(graph: &CoxeterGraph, text: &str) -> Result<Vec<(usize, bool)>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (inverse, name) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let s = match graph.index_of(name) {
                Ok(s) => s,
                Err(_) => match name.parse::<usize>() {
                    Ok(i) if i >= 1 && i <= graph.len() => i - 1,
                    _ => return Err(Error::MalformedToken(tok.to_string())),
                },
            };
            Ok((s, inverse))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    /// Vertex pairs whose relation failed, with the bond.
    pub failures: Vec<(usize, usize, Bond)>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `T_s T_t T_s = T_t T_s T_t` on bonds and `T_s T_t = T_t T_s` on non-bonds.
pub fn verify_artin_relations(graph: &CoxeterGraph, order: &VertexOrder) -> Result<RelationReport> {
    let j = intersection_matrix(graph, order)?;
    let n = graph.len();
    let t: Vec<DMatrix<i64>> = (0..n).map(|s| transvection(&j, s, false)).collect();
    let mut report = RelationReport {
        checked: 0,
        failures: Vec::new(),
    };
    for a in 0..n {
        for b in a + 1..n {
            let m = graph.bond(a, b);
            let holds = match m {
                Bond::Finite(3) => &t[a] * &t[b] * &t[a] == &t[b] * &t[a] * &t[b],
                _ => &t[a] * &t[b] == &t[b] * &t[a],
            };
            report.checked += 1;
            if !holds {
                report.failures.push((a, b, m));
            }
        }
    }
    Ok(report)
}
