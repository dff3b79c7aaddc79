//! Exact rational exponents and asymptotic orders (rational or +∞).
//!
//! Exponents of ε (and of the Fermat infinitesimal t) are exact
//! [`Rational64`]s: desk-scale exponent arithmetic (denominators ≤ 12,
//! magnitudes ≤ ~100, sums of a few hundred terms) stays far from i64
//! overflow. An [`EpsOrder`] extends exponents with `+∞` for exact tails
//! and the valuation of zero.

use num::rational::Rational64;
use num::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational exponent of ε (or t).
pub type Exponent = Rational64;

/// An asymptotic order: a finite rational exponent or `+∞`.
///
/// `Infinite` is the tail marker of exact series and the valuation of zero;
/// it compares greater than every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsOrder {
    Finite(Exponent),
    Infinite,
}

impl EpsOrder {
    pub const ZERO: EpsOrder = EpsOrder::Finite(Exponent::new_raw(0, 1));

    pub fn finite(p: i64, q: i64) -> Self {
        EpsOrder::Finite(Exponent::new(p, q))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EpsOrder::Infinite)
    }

    pub fn as_finite(&self) -> Option<Exponent> {
        match self {
            EpsOrder::Finite(e) => Some(*e),
            EpsOrder::Infinite => None,
        }
    }

    /// Order of a product: finite orders add, `∞` absorbs.
    pub fn add(self, other: EpsOrder) -> EpsOrder {
        match (self, other) {
            (EpsOrder::Finite(a), EpsOrder::Finite(b)) => EpsOrder::Finite(a + b),
            _ => EpsOrder::Infinite,
        }
    }

    /// Shift a (possibly infinite) order by a finite exponent.
    pub fn add_exp(self, e: Exponent) -> EpsOrder {
        self.add(EpsOrder::Finite(e))
    }

    pub fn min(self, other: EpsOrder) -> EpsOrder {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: EpsOrder) -> EpsOrder {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Value as f64, with `∞` mapped to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            EpsOrder::Finite(e) => e.to_f64().unwrap_or(f64::NAN),
            EpsOrder::Infinite => f64::INFINITY,
        }
    }

    /// `e^(−order)`: the sharp-metric value of a valuation. `∞` maps to 0.
    pub fn neg_exp(&self) -> f64 {
        match self {
            EpsOrder::Finite(e) => (-e.to_f64().unwrap_or(f64::NAN)).exp(),
            EpsOrder::Infinite => 0.0,
        }
    }
}

impl PartialOrd for EpsOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (EpsOrder::Finite(a), EpsOrder::Finite(b)) => a.cmp(b),
            (EpsOrder::Finite(_), EpsOrder::Infinite) => Ordering::Less,
            (EpsOrder::Infinite, EpsOrder::Finite(_)) => Ordering::Greater,
            (EpsOrder::Infinite, EpsOrder::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for EpsOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsOrder::Finite(e) => write!(f, "{}", e),
            EpsOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl From<Exponent> for EpsOrder {
    fn from(e: Exponent) -> Self {
        EpsOrder::Finite(e)
    }
}

/// Smallest multiple of `1/den` that is ≥ `v`.
///
/// Used to materialize real-valued certificate exponents as exact rational
/// exponents: rounding *up* shrinks a gabs ball `ε^q`, so ball inclusions
/// proved for the real exponent stay valid for the rounded one.
pub fn rational_ceil(v: f64, den: i64) -> Exponent {
    assert!(den > 0 && v.is_finite());
    Exponent::new((v * den as f64).ceil() as i64, den)
}

/// Nearest rational with denominator ≤ `max_den` within `margin` of `v`,
/// preferring smaller denominators on ties. `None` if nothing is close.
pub fn snap_to_rational(v: f64, max_den: i64, margin: f64) -> Option<Exponent> {
    let mut best: Option<(f64, Exponent)> = None;
    for den in 1..=max_den {
        let num = (v * den as f64).round();
        if !num.is_finite() || num.abs() > i64::MAX as f64 / 2.0 {
            continue;
        }
        let cand = Exponent::new(num as i64, den);
        let diff = (v - cand.to_f64().unwrap()).abs();
        let better = match &best {
            // Strict inequality: earlier (smaller) denominators win ties,
            // and equal rationals with larger denominators are skipped.
            Some((d, _)) => diff < *d - 1e-15,
            None => true,
        };
        if better {
            best = Some((diff, cand));
        }
    }
    best.and_then(|(d, c)| if d <= margin { Some(c) } else { None })
}

/// Exact conversion of a finite f64 into a rational (f64s are dyadic).
pub fn exact_rational_of_f64(v: f64) -> num::BigRational {
    num::BigRational::from_float(v).expect("finite f64 is an exact rational")
}

/// True if the exponent is an integer.
pub fn is_integer(e: &Exponent) -> bool {
    e.denom().is_one()
}

/// Serde helper: serialize an `Exponent` as its display string ("40", "1/2").
pub mod serde_exponent {
    use super::Exponent;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(e: &Exponent, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&e.to_string())
    }
}

/// Two-sided bounds on a valuation: the true valuation lies in `[lo, hi]`.
///
/// Exact series give `lo == hi`; an empty branch with a finite tail only
/// bounds its contribution from below, widening the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationBounds {
    pub lo: EpsOrder,
    pub hi: EpsOrder,
}

impl ValuationBounds {
    pub fn exact(v: EpsOrder) -> Self {
        ValuationBounds { lo: v, hi: v }
    }

    pub fn at_least(v: EpsOrder) -> Self {
        ValuationBounds { lo: v, hi: EpsOrder::Infinite }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact valuation, if the bounds pin one down.
    pub fn value(&self) -> Option<EpsOrder> {
        self.is_exact().then_some(self.lo)
    }

    /// Bounds of `min(v₁, v₂)` (valuation of a sum / over branches).
    pub fn min(self, other: ValuationBounds) -> ValuationBounds {
        ValuationBounds { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }

    /// Bounds shifted by an exact amount (valuation of a monomial product).
    pub fn shift(self, e: Exponent) -> ValuationBounds {
        ValuationBounds { lo: self.lo.add_exp(e), hi: self.hi.add_exp(e) }
    }

    /// Halve the bounds (valuation of a square root).
    pub fn halve(self) -> ValuationBounds {
        let h = |o: EpsOrder| match o {
            EpsOrder::Finite(e) => EpsOrder::Finite(e / 2),
            EpsOrder::Infinite => EpsOrder::Infinite,
        };
        ValuationBounds { lo: h(self.lo), hi: h(self.hi) }
    }
}

impl fmt::Display for ValuationBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Sign of a scalar-like quantity, as needed by leading-term analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<T: Signed + Zero>(v: &T) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
            Sign::Zero => Sign::Zero,
        }
    }
}
