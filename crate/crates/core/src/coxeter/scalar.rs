//! Scalars for the canonical representation.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Bond, CoxeterGraph};
use crate::{Error, Result};

/// Ring operations plus an exact (or tolerance-based) sign.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn from_int(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `-1`, `0` or `1`.
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    /// `2cos(π/m)` (`2` for `m = ∞`) in the given mode, if representable.
    fn two_cos_in(m: Bond, mode: ScalarMode) -> Option<Self>;

    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }
}

/// The quadratic irrationality adjoined to `Z` for exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadField {
    Rational,
    Sqrt2,
    Sqrt3,
    /// The golden ratio `φ = (1 + √5) / 2`, root of `θ² = θ + 1`.
    Golden,
}

impl QuadField {
    /// `(p, q)` with `θ² = pθ + q`.
    fn minimal_poly(self) -> (i64, i64) {
        match self {
            QuadField::Rational => (0, 0),
            QuadField::Sqrt2 => (0, 2),
            QuadField::Sqrt3 => (0, 3),
            QuadField::Golden => (1, 1),
        }
    }

    fn theta(self) -> f64 {
        match self {
            QuadField::Rational => 0.0,
            QuadField::Sqrt2 => std::f64::consts::SQRT_2,
            QuadField::Sqrt3 => 3f64.sqrt(),
            QuadField::Golden => (1.0 + 5f64.sqrt()) / 2.0,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            QuadField::Rational => "",
            QuadField::Sqrt2 => "√2",
            QuadField::Sqrt3 => "√3",
            QuadField::Golden => "φ",
        }
    }

    /// Field needed for `2cos(π/m)`, if any single one suffices.
    fn for_bond(m: Bond) -> Option<QuadField> {
        match m {
            Bond::Infinite | Bond::Finite(1..=3) => Some(QuadField::Rational),
            Bond::Finite(4) => Some(QuadField::Sqrt2),
            Bond::Finite(5) => Some(QuadField::Golden),
            Bond::Finite(6) => Some(QuadField::Sqrt3),
            _ => None,
        }
    }
}

/// Exact element `a + bθ` of `Z[θ]`.
#[derive(Debug, Clone)]
pub struct Exact {
    a: BigInt,
    b: BigInt,
    field: QuadField,
}

impl Exact {
    pub fn new(a: i64, b: i64, field: QuadField) -> Self {
        Exact {
            a: a.into(),
            b: b.into(),
            field,
        }
    }

    /// `2cos(π/m)` (`2` for `m = ∞`), if representable in `field`.
    pub fn two_cos(m: Bond, field: QuadField) -> Option<Self> {
        let (a, b, needs) = match m {
            Bond::Infinite => (2, 0, QuadField::Rational),
            Bond::Finite(1) => (-2, 0, QuadField::Rational),
            Bond::Finite(2) => (0, 0, QuadField::Rational),
            Bond::Finite(3) => (1, 0, QuadField::Rational),
            Bond::Finite(4) => (0, 1, QuadField::Sqrt2),
            Bond::Finite(5) => (0, 1, QuadField::Golden),
            Bond::Finite(6) => (0, 1, QuadField::Sqrt3),
            _ => return None,
        };
        (needs == QuadField::Rational || needs == field).then(|| Exact::new(a, b, field))
    }

    fn join(&self, other: &Exact) -> QuadField {
        if self.field == QuadField::Rational {
            other.field
        } else {
            debug_assert!(other.field == QuadField::Rational || other.field == self.field);
            self.field
        }
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigInt {
        &self.b
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Eq for Exact {}

impl Hash for Exact {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

/// Sign of `x + y√d` for `d > 0` not a square.
fn sign_surd(x: &BigInt, y: &BigInt, d: i64) -> i32 {
    let sx = x.signum().to_i32().unwrap_or(0);
    let sy = y.signum().to_i32().unwrap_or(0);
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    // opposite signs: compare x² with d y²
    let lhs = x * x;
    let rhs = y * y * BigInt::from(d);
    if lhs > rhs {
        sx
    } else {
        sy
    }
}

impl Scalar for Exact {
    fn from_int(v: i64) -> Self {
        Exact::new(v, 0, QuadField::Rational)
    }

    fn add(&self, other: &Self) -> Self {
        Exact {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            field: self.join(other),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Exact {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            field: self.join(other),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let field = self.join(other);
        let (p, q) = field.minimal_poly();
        let bd = &self.b * &other.b;
        let a = &self.a * &other.a + &bd * q;
        let b = &self.a * &other.b + &self.b * &other.a + &bd * p;
        Exact { a, b, field }
    }

    fn neg(&self) -> Self {
        Exact {
            a: -&self.a,
            b: -&self.b,
            field: self.field,
        }
    }

    fn signum(&self) -> i32 {
        match self.field {
            QuadField::Rational => self.a.signum().to_i32().unwrap_or(0),
            QuadField::Sqrt2 => sign_surd(&self.a, &self.b, 2),
            QuadField::Sqrt3 => sign_surd(&self.a, &self.b, 3),
            // a + bφ = ((2a + b) + b√5) / 2
            QuadField::Golden => sign_surd(&(&self.a * 2 + &self.b), &self.b, 5),
        }
    }

    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * self.field.theta()
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn two_cos_in(m: Bond, mode: ScalarMode) -> Option<Self> {
        match mode {
            ScalarMode::Rational => Exact::two_cos(m, QuadField::Rational),
            ScalarMode::Quadratic(f) => Exact::two_cos(m, f),
            ScalarMode::Float => None,
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.field.symbol();
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b == BigInt::from(1) => write!(f, "{sym}"),
            (true, false) if self.b == BigInt::from(-1) => write!(f, "-{sym}"),
            (true, false) => write!(f, "{}{sym}", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                let mag = self.b.abs();
                if mag == BigInt::from(1) {
                    write!(f, "{}{sign}{sym}", self.a)
                } else {
                    write!(f, "{}{sign}{mag}{sym}", self.a)
                }
            }
        }
    }
}

/// Tolerance used by [`Float64`] for signs and equality.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Floating-point scalar; equality and hashing go through a rounded key.
#[derive(Debug, Clone, Copy)]
pub struct Float64(pub f64);

impl Float64 {
    pub fn two_cos(m: Bond) -> Self {
        match m {
            Bond::Infinite => Float64(2.0),
            Bond::Finite(m) => Float64(2.0 * (std::f64::consts::PI / m as f64).cos()),
        }
    }

    fn key(&self) -> i128 {
        (self.0 / FLOAT_TOLERANCE).round() as i128
    }
}

impl PartialEq for Float64 {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Float64 {}

impl Hash for Float64 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl Scalar for Float64 {
    fn from_int(v: i64) -> Self {
        Float64(v as f64)
    }

    fn add(&self, other: &Self) -> Self {
        Float64(self.0 + other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Float64(self.0 - other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Float64(self.0 * other.0)
    }

    fn neg(&self) -> Self {
        Float64(-self.0)
    }

    fn signum(&self) -> i32 {
        if self.0 > FLOAT_TOLERANCE {
            1
        } else if self.0 < -FLOAT_TOLERANCE {
            -1
        } else {
            0
        }
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn two_cos_in(m: Bond, _mode: ScalarMode) -> Option<Self> {
        Some(Float64::two_cos(m))
    }
}

impl fmt::Display for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.signum() == 0 { 0.0 } else { self.0 };
        write!(f, "{v:.9}")
    }
}

/// How a graph's representation is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    /// Bonds in `{2, 3, ∞}`: integer coordinates.
    Rational,
    /// One of `√2`, `φ`, `√3` adjoined.
    Quadratic(QuadField),
    Float,
}

impl ScalarMode {
    /// Exact whenever a single quadratic field covers every bond, float otherwise.
    pub fn auto(graph: &CoxeterGraph) -> ScalarMode {
        let mut field = QuadField::Rational;
        for (_, _, m) in graph.edges() {
            match QuadField::for_bond(m) {
                None => return ScalarMode::Float,
                Some(QuadField::Rational) => {}
                Some(f) if field == QuadField::Rational || field == f => field = f,
                Some(_) => return ScalarMode::Float,
            }
        }
        if field == QuadField::Rational {
            ScalarMode::Rational
        } else {
            ScalarMode::Quadratic(field)
        }
    }

    /// Resolves a user request (`auto`, `rational`, `quadratic`, `float`) against a graph.
    pub fn select(request: &str, graph: &CoxeterGraph) -> Result<ScalarMode> {
        let auto = ScalarMode::auto(graph);
        let fail = |bond: Bond| Error::ScalarMode {
            mode: request.to_string(),
            bond: match bond {
                Bond::Finite(m) => m,
                Bond::Infinite => 0,
            },
        };
        match request {
            "auto" | "" => Ok(auto),
            "float" => Ok(ScalarMode::Float),
            "rational" => match auto {
                ScalarMode::Rational => Ok(auto),
                _ => Err(fail(first_irrational_bond(graph))),
            },
            "quadratic" => match auto {
                ScalarMode::Rational => Ok(ScalarMode::Quadratic(QuadField::Sqrt2)),
                ScalarMode::Quadratic(_) => Ok(auto),
                ScalarMode::Float => Err(fail(first_irrational_bond(graph))),
            },
            other => Err(Error::UnknownScalarMode(other.to_string())),
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, ScalarMode::Float)
    }
}

fn first_irrational_bond(graph: &CoxeterGraph) -> Bond {
    graph
        .edges()
        .into_iter()
        .map(|(_, _, m)| m)
        .find(|&m| QuadField::for_bond(m) != Some(QuadField::Rational))
        .unwrap_or(Bond::Finite(2))
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => f.write_str("rational"),
            ScalarMode::Quadratic(QuadField::Sqrt2) => f.write_str("quadratic(sqrt2)"),
            ScalarMode::Quadratic(QuadField::Sqrt3) => f.write_str("quadratic(sqrt3)"),
            ScalarMode::Quadratic(QuadField::Golden) => f.write_str("quadratic(golden)"),
            ScalarMode::Quadratic(QuadField::Rational) => f.write_str("quadratic"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic() {
        let r2 = Exact::new(0, 1, QuadField::Sqrt2);
        assert_eq!(r2.mul(&r2), Exact::from_int(2));
        let phi = Exact::new(0, 1, QuadField::Golden);
        assert_eq!(phi.mul(&phi), phi.add(&Exact::from_int(1)));
        // 3 - 2√2 > 0, 1 - √2 < 0
        assert_eq!(Exact::new(3, -2, QuadField::Sqrt2).signum(), 1);
        assert_eq!(Exact::new(1, -1, QuadField::Sqrt2).signum(), -1);
        // φ - 2 < 0, 2 - φ > 0, 1 - φ + ... exact zero
        assert_eq!(Exact::new(-2, 1, QuadField::Golden).signum(), -1);
        assert_eq!(Exact::new(2, -1, QuadField::Golden).signum(), 1);
        assert_eq!(phi.mul(&phi).sub(&phi).sub(&Exact::from_int(1)).signum(), 0);
        assert!((Exact::new(1, 1, QuadField::Sqrt3).to_f64() - 2.7320508).abs() < 1e-6);
    }

    #[test]
    fn exact_signs_match_floats() {
        for field in [QuadField::Sqrt2, QuadField::Sqrt3, QuadField::Golden] {
            for a in -12..=12 {
                for b in -12..=12 {
                    let x = Exact::new(a, b, field);
                    let f = x.to_f64();
                    let expect = if f.abs() < 1e-12 {
                        0
                    } else {
                        f.signum() as i32
                    };
                    assert_eq!(x.signum(), expect, "{x}");
                }
            }
        }
    }

    #[test]
    fn two_cos_values() {
        assert_eq!(
            Exact::two_cos(Bond::Finite(3), QuadField::Rational),
            Some(Exact::from_int(1))
        );
        assert_eq!(Exact::two_cos(Bond::Finite(4), QuadField::Rational), None);
        assert!(
            (Float64::two_cos(Bond::Finite(5)).0
                - Exact::two_cos(Bond::Finite(5), QuadField::Golden)
                    .unwrap()
                    .to_f64())
            .abs()
                < 1e-12
        );
    }

    #[test]
    fn mode_selection() {
        assert_eq!(ScalarMode::auto(&CoxeterGraph::a(3)), ScalarMode::Rational);
        assert_eq!(
            ScalarMode::auto(&CoxeterGraph::chain(&[0])),
            ScalarMode::Rational
        );
        assert_eq!(
            ScalarMode::auto(&CoxeterGraph::chain(&[4, 3])),
            ScalarMode::Quadratic(QuadField::Sqrt2)
        );
        assert_eq!(
            ScalarMode::auto(&CoxeterGraph::chain(&[5, 3, 3])),
            ScalarMode::Quadratic(QuadField::Golden)
        );
        assert_eq!(
            ScalarMode::auto(&CoxeterGraph::chain(&[4, 6])),
            ScalarMode::Float
        );
        assert_eq!(
            ScalarMode::auto(&CoxeterGraph::chain(&[7])),
            ScalarMode::Float
        );
        assert!(ScalarMode::select("rational", &CoxeterGraph::chain(&[4])).is_err());
        assert_eq!(
            ScalarMode::select("float", &CoxeterGraph::a(2)).unwrap(),
            ScalarMode::Float
        );
        assert!(matches!(
            ScalarMode::select("bogus", &CoxeterGraph::a(2)),
            Err(Error::UnknownScalarMode(_))
        ));
    }
}
