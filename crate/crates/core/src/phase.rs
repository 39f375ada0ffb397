//! Unit-modulus values stored as angles.
//!
//! An exact phase is `exp(i(2π·turns + radians))` with both parts rational.
//! Since π is transcendental, two exact phases are equal iff their radian parts
//! agree and their turn parts agree modulo 1, so equality is decided by integer
//! arithmetic. Float phases carry an angle in radians.

use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Float, One, Zero};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug)]
pub enum Phase {
    Exact { turns: Rational, radians: Rational },
    Float(f64),
}

fn reduce_turn(t: Rational) -> Rational {
    t - t.floor()
}

impl Phase {
    pub fn one() -> Self {
        Phase::Exact { turns: Rational::zero(), radians: Rational::zero() }
    }

    /// `exp(2πi·p/q)`.
    pub fn turns(p: i64, q: i64) -> Self {
        Phase::Exact { turns: reduce_turn(Rational::new(p, q)), radians: Rational::zero() }
    }

    /// `exp(i·p/q)` with an exact rational angle in radians.
    pub fn radians(p: i64, q: i64) -> Self {
        Phase::Exact { turns: Rational::zero(), radians: Rational::new(p, q) }
    }

    pub fn exact(turns: Rational, radians: Rational) -> Self {
        Phase::Exact { turns: reduce_turn(turns), radians }
    }

    pub fn float(radians: f64) -> Self {
        Phase::Float(radians)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Exact { .. })
    }

    /// Angle in radians (reduced turn part plus radian part).
    pub fn angle(&self) -> f64 {
        match *self {
            Phase::Exact { turns, radians } => {
                let t = *turns.numer() as f64 / *turns.denom() as f64;
                let r = *radians.numer() as f64 / *radians.denom() as f64;
                2.0 * core::f64::consts::PI * t + r
            }
            Phase::Float(r) => r,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.angle();
        Complex64::new(Float::cos(a), Float::sin(a))
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        match (*self, *other) {
            (Phase::Exact { turns: t1, radians: r1 }, Phase::Exact { turns: t2, radians: r2 }) => {
                Phase::Exact { turns: reduce_turn(t1 + t2), radians: r1 + r2 }
            }
            _ => Phase::Float(self.angle() + other.angle()),
        }
    }

    pub fn conj(&self) -> Phase {
        match *self {
            Phase::Exact { turns, radians } => {
                Phase::Exact { turns: reduce_turn(-turns), radians: -radians }
            }
            Phase::Float(r) => Phase::Float(-r),
        }
    }

    pub fn pow(&self, e: i64) -> Phase {
        match *self {
            Phase::Exact { turns, radians } => Phase::Exact {
                turns: reduce_turn(turns * Rational::from_integer(e)),
                radians: radians * Rational::from_integer(e),
            },
            Phase::Float(r) => Phase::Float(r * e as f64),
        }
    }

    /// A `d`-th root: `root(d).pow(d) == self`.
    pub fn root(&self, d: i64) -> Phase {
        assert_ne!(d, 0, "zeroth root");
        match *self {
            Phase::Exact { turns, radians } => {
                let q = Rational::from_integer(d);
                Phase::Exact { turns: reduce_turn(turns / q), radians: radians / q }
            }
            Phase::Float(r) => Phase::Float(r / d as f64),
        }
    }

    /// `Some(j)` when the phase is exactly `i^j`.
    pub fn quarter_turns(&self) -> Option<u8> {
        match *self {
            Phase::Exact { turns, radians } if radians.is_zero() => {
                let q = turns * Rational::from_integer(4);
                if q.is_integer() {
                    Some((q.to_integer().rem_euclid(4)) as u8)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Equality: exact when both sides are exact, otherwise within `tol` as complex numbers.
    pub fn same(&self, other: &Phase, tol: f64) -> bool {
        match (self, other) {
            (Phase::Exact { .. }, Phase::Exact { .. }) => self.exact_eq(other),
            _ => (self.to_complex() - other.to_complex()).norm() <= tol,
        }
    }

    fn exact_eq(&self, other: &Phase) -> bool {
        match (self, other) {
            (Phase::Exact { turns: t1, radians: r1 }, Phase::Exact { turns: t2, radians: r2 }) => {
                t1 == t2 && r1 == r2
            }
            _ => false,
        }
    }

    pub fn is_one(&self, tol: f64) -> bool {
        self.same(&Phase::one(), tol)
    }
}

/// Structural equality: exact phases compare exactly, float phases by bit pattern.
impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Phase::Float(a), Phase::Float(b)) => a.to_bits() == b.to_bits(),
            _ => self.exact_eq(other),
        }
    }
}

fn fmt_ratio(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text form: `p/q turn`, `a/b rad`, `p/q turn + a/b rad`, or a float such as
/// `1.0000000000000000e0 rad` (17 significant digits).
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Exact { turns, radians } => {
                if radians.is_zero() {
                    fmt_ratio(f, turns)?;
                    write!(f, " turn")
                } else if turns.is_zero() {
                    fmt_ratio(f, radians)?;
                    write!(f, " rad")
                } else {
                    fmt_ratio(f, turns)?;
                    write!(f, " turn + ")?;
                    fmt_ratio(f, radians)?;
                    write!(f, " rad")
                }
            }
            Phase::Float(r) => write!(f, "{r:.16e} rad"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse angle {0:?}: expected `p/q turn`, `a/b rad`, `p/q turn + a/b rad` or `<float> rad`")]
pub struct AngleParseError(pub alloc::string::String);

fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn is_rational_literal(s: &str) -> bool {
    let s = s.trim();
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == ' ')
}

impl FromStr for Phase {
    type Err = AngleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AngleParseError(s.into());
        let t = s.trim();
        if let Some((a, b)) = t.split_once(" + ") {
            let turns = a.trim().strip_suffix("turn").ok_or_else(err)?;
            let rad = b.trim().strip_suffix("rad").ok_or_else(err)?;
            let turns = parse_ratio(turns).ok_or_else(err)?;
            let rad = parse_ratio(rad).ok_or_else(err)?;
            return Ok(Phase::exact(turns, rad));
        }
        if let Some(body) = t.strip_suffix("turn") {
            return Ok(Phase::exact(parse_ratio(body).ok_or_else(err)?, Rational::zero()));
        }
        if let Some(body) = t.strip_suffix("rad") {
            if is_rational_literal(body) {
                return Ok(Phase::exact(Rational::zero(), parse_ratio(body).ok_or_else(err)?));
            }
            let v: f64 = body.trim().parse().map_err(|_| err())?;
            if !v.is_finite() {
                return Err(err());
            }
            return Ok(Phase::Float(v));
        }
        Err(err())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::one()
    }
}

impl One for Phase {
    fn one() -> Self {
        Phase::one()
    }
}

impl core::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::mul(&self, &rhs)
    }
}
