use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::algebra::rational::render;
use crate::algebra::{int, Rational};

/// One end of an interval of the real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Unbounded,
    Open(Rational),
    Closed(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }
}

/// Interval with rational or infinite endpoints. Infinite ends are open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalQ {
    pub lo: Bound,
    pub hi: Bound,
}

impl IntervalQ {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        IntervalQ { lo, hi }
    }

    pub fn real_line() -> Self {
        IntervalQ::new(Bound::Unbounded, Bound::Unbounded)
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        IntervalQ::new(Bound::Open(a), Bound::Open(b))
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        IntervalQ::new(Bound::Closed(a), Bound::Closed(b))
    }

    /// `(0, +inf)`.
    pub fn positive() -> Self {
        IntervalQ::new(Bound::Open(int(0)), Bound::Unbounded)
    }

    /// `[0, +inf)`.
    pub fn nonnegative() -> Self {
        IntervalQ::new(Bound::Closed(int(0)), Bound::Unbounded)
    }

    /// `(-inf, 0)`.
    pub fn negative() -> Self {
        IntervalQ::new(Bound::Unbounded, Bound::Open(int(0)))
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Bound::Closed(a), Bound::Closed(b)) => a > b,
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => false,
            (lo, hi) => lo.value().unwrap() >= hi.value().unwrap(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self.lo, Bound::Unbounded) && !matches!(self.hi, Bound::Unbounded)
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Unbounded => true,
            Bound::Open(a) => t > a,
            Bound::Closed(a) => t >= a,
        };
        let hi_ok = match &self.hi {
            Bound::Unbounded => true,
            Bound::Open(b) => t < b,
            Bound::Closed(b) => t <= b,
        };
        lo_ok && hi_ok
    }

    /// A deterministic point of the interval (midpoint, or one unit inside
    /// a half-line, or 0 for the whole line).
    pub fn sample_point(&self) -> Rational {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => (a + b) / int(2),
            (Some(a), None) => a + Rational::one(),
            (None, Some(b)) => b - Rational::one(),
            (None, None) => int(0),
        }
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Open(a) => write!(f, "({}", render(a))?,
            Bound::Closed(a) => write!(f, "[{}", render(a))?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, ", +inf)"),
            Bound::Open(b) => write!(f, ", {})", render(b)),
            Bound::Closed(b) => write!(f, ", {}]", render(b)),
        }
    }
}

impl Serialize for IntervalQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
