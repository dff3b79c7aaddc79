//! Coefficient scalars: `f64` (default), `f32`, and exact `BigRational`.
//!
//! Series types are generic over a [`Scalar`]. The trait extends the
//! num-traits ring/sign machinery with what the model actually needs:
//!
//! * an exact embedding of rational constants (literal coefficients,
//!   exponents appearing in derivative formulas),
//! * the scalar's own notion of coefficient equality (floats compare with
//!   a tolerance, rationals exactly),
//! * partial square roots / rational powers,
//! * Taylor-coefficient stacks `g⁽ᵏ⁾(c)/k!` for the primitive smooth
//!   functions, which power Taylor-mode composition without any symbolic
//!   differentiation.
//!
//! The float scalars support every primitive at every interior point of
//! its domain. The rational scalar is *capability-gated*: it returns
//! `None` where the value is irrational (sin at a nonzero center, exp
//! away from 0, log away from 1, sqrt of a non-square), and callers
//! surface that as [`Error::Unrepresentable`](crate::Error). Everything
//! rational-closed — ring ops, inversion, binomial-series roots of
//! perfect squares — stays exact.

use crate::expr::Prim;
use crate::order::Exponent;
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{BigRational, Num, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

/// Equality tolerance of the default f64 coefficient lane.
pub const F64_COEFF_TOL: f64 = 1e-12;

/// Equality tolerance of the f32 coefficient lane.
pub const F32_COEFF_TOL: f32 = 1e-5;

/// Coefficient scalar of the series types.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + 'static {
    /// True if arithmetic is exact (no equality tolerance).
    const EXACT: bool;

    /// Exact embedding of a rational constant.
    fn from_exponent(e: Exponent) -> Self;

    /// Embedding of an f64 (exact dyadic where the type allows it).
    fn from_f64(v: f64) -> Self;

    /// Approximate value as f64 (for reports, metrics, and oracles).
    fn to_f64(&self) -> f64;

    /// Coefficient equality: within tolerance for floats, exact otherwise.
    fn coeff_eq(&self, other: &Self) -> bool;

    /// Parse a decimal numeral (`digits[.digits][e±digits]`, no sign) —
    /// exactly, where the scalar is exact.
    fn from_decimal_str(s: &str) -> Option<Self>;

    /// Square root, if representable (floats: any nonnegative value;
    /// rationals: perfect squares only).
    fn checked_sqrt(&self) -> Option<Self>;

    /// Power with exact rational exponent, if representable.
    fn checked_rpow(&self, r: Exponent) -> Option<Self>;

    /// Taylor coefficients `g⁽ᵏ⁾(center)/k!` for `k = 0..=k_max` of the
    /// primitive `g`, or `None` if they are not representable over `Self`.
    ///
    /// The caller has already checked the domain (log/sqrt need a strictly
    /// positive center), so `None` strictly means "irrational over an
    /// exact scalar".
    fn prim_taylor_coeffs(prim: Prim, center: &Self, k_max: usize) -> Option<Vec<Self>>;
}

/// Integer power with negative-exponent support; `None` on 0^negative.
fn powi_generic<C: Scalar>(c: &C, k: i64) -> Option<C> {
    if k == 0 {
        return Some(C::one());
    }
    if c.is_zero() {
        return if k > 0 { Some(C::zero()) } else { None };
    }
    let mut acc = C::one();
    for _ in 0..k.unsigned_abs() {
        acc = acc * c.clone();
    }
    if k < 0 {
        Some(C::one() / acc)
    } else {
        Some(acc)
    }
}

/// Shared f64 Taylor stacks; f32 casts down from these.
fn prim_taylor_f64(prim: Prim, c: f64, k_max: usize) -> Option<Vec<f64>> {
    let mut out = Vec::with_capacity(k_max + 1);
    match prim {
        Prim::Exp => {
            // T_k = e^c / k!
            let mut t = c.exp();
            out.push(t);
            for k in 1..=k_max {
                t /= k as f64;
                out.push(t);
            }
        }
        Prim::Sin | Prim::Cos => {
            // Derivative cycle (sin, cos, −sin, −cos) divided by k!.
            let (s, co) = c.sin_cos();
            let cycle = match prim {
                Prim::Sin => [s, co, -s, -co],
                _ => [co, -s, -co, s],
            };
            let mut fact = 1.0;
            for k in 0..=k_max {
                if k > 0 {
                    fact *= k as f64;
                }
                out.push(cycle[k % 4] / fact);
            }
        }
        Prim::Log => {
            // T_0 = ln c, T_k = (−1)^(k−1) / (k·c^k).
            out.push(c.ln());
            let mut p = 1.0;
            for k in 1..=k_max {
                p *= c;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                out.push(sign / (k as f64 * p));
            }
        }
        Prim::Sqrt => {
            // T_k = T_{k−1} · (3/2 − k) / (k·c).
            let mut t = c.sqrt();
            out.push(t);
            for k in 1..=k_max {
                t *= (1.5 - k as f64) / (k as f64 * c);
                out.push(t);
            }
        }
    }
    Some(out)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_exponent(e: Exponent) -> Self {
        *e.numer() as f64 / *e.denom() as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn coeff_eq(&self, other: &Self) -> bool {
        // Mixed absolute/relative comparison: absolute near the origin,
        // relative for large coefficients.
        let scale = 1f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= F64_COEFF_TOL * scale
    }

    fn from_decimal_str(s: &str) -> Option<Self> {
        s.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn checked_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn checked_rpow(&self, r: Exponent) -> Option<Self> {
        let rf = Scalar::from_exponent(r);
        if *self > 0.0 {
            Some(self.powf(rf))
        } else if *self == 0.0 {
            (r > Exponent::zero()).then_some(0.0)
        } else if crate::order::is_integer(&r) {
            Some(self.powi(*r.numer() as i32))
        } else {
            None
        }
    }

    fn prim_taylor_coeffs(prim: Prim, center: &Self, k_max: usize) -> Option<Vec<Self>> {
        prim_taylor_f64(prim, *center, k_max)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_exponent(e: Exponent) -> Self {
        (*e.numer() as f64 / *e.denom() as f64) as f32
    }

    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn coeff_eq(&self, other: &Self) -> bool {
        let scale = 1f32.max(self.abs()).max(other.abs());
        (self - other).abs() <= F32_COEFF_TOL * scale
    }

    fn from_decimal_str(s: &str) -> Option<Self> {
        s.parse::<f32>().ok().filter(|v| v.is_finite())
    }

    fn checked_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn checked_rpow(&self, r: Exponent) -> Option<Self> {
        (*self as f64).checked_rpow(r).map(|v| v as f32)
    }

    fn prim_taylor_coeffs(prim: Prim, center: &Self, k_max: usize) -> Option<Vec<Self>> {
        // Compute in f64 for accuracy, then narrow.
        prim_taylor_f64(prim, *center as f64, k_max)
            .map(|v| v.into_iter().map(|t| t as f32).collect())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_exponent(e: Exponent) -> Self {
        Ratio::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite f64 is an exact dyadic rational")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn coeff_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn from_decimal_str(s: &str) -> Option<Self> {
        // Exact: mantissa digits over a power of ten, then the exponent.
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{}{}", int_part, frac_part);
        let n = digits.parse::<BigInt>().ok()?;
        let net = exp.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
        let ten = BigInt::from(10);
        Some(if net >= 0 {
            BigRational::from_integer(n * num::pow(ten, net as usize))
        } else {
            BigRational::new(n, num::pow(ten, (-net) as usize))
        })
    }

    fn checked_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer().sqrt(), self.denom().sqrt());
        (&n * &n == *self.numer() && &d * &d == *self.denom())
            .then(|| Ratio::new(n, d))
    }

    fn checked_rpow(&self, r: Exponent) -> Option<Self> {
        if crate::order::is_integer(&r) {
            return powi_generic(self, *r.numer());
        }
        // Fractional powers: only the trivially exact bases.
        if self.is_one() {
            return Some(BigRational::one());
        }
        if self.is_zero() {
            return (r > Exponent::zero()).then(BigRational::zero);
        }
        // p/2 powers of perfect squares are exact via sqrt.
        if *r.denom() == 2 {
            let root = self.checked_sqrt()?;
            return powi_generic(&root, *r.numer());
        }
        None
    }

    fn prim_taylor_coeffs(prim: Prim, center: &Self, k_max: usize) -> Option<Vec<Self>> {
        let mut out: Vec<BigRational> = Vec::with_capacity(k_max + 1);
        match prim {
            Prim::Exp => {
                // Rational only at center 0: T_k = 1/k!.
                if !center.is_zero() {
                    return None;
                }
                let mut t = BigRational::one();
                out.push(t.clone());
                for k in 1..=k_max {
                    t /= BigRational::from_integer(BigInt::from(k));
                    out.push(t.clone());
                }
            }
            Prim::Sin | Prim::Cos => {
                // Rational only at center 0.
                if !center.is_zero() {
                    return None;
                }
                let mut fact = BigRational::one();
                for k in 0..=k_max {
                    if k > 0 {
                        fact *= BigRational::from_integer(BigInt::from(k));
                    }
                    let v = match (prim, k % 4) {
                        (Prim::Sin, 1) | (Prim::Cos, 0) => BigRational::one() / fact.clone(),
                        (Prim::Sin, 3) | (Prim::Cos, 2) => -BigRational::one() / fact.clone(),
                        _ => BigRational::zero(),
                    };
                    out.push(v);
                }
            }
            Prim::Log => {
                // T_0 = ln(center) is rational only when center = 1; the
                // higher coefficients (−1)^(k−1)/(k·c^k) are always rational.
                if !center.is_one() {
                    return None;
                }
                out.push(BigRational::zero());
                let mut p = BigRational::one();
                for k in 1..=k_max {
                    p *= center.clone();
                    let t = BigRational::from_integer(BigInt::from(k)) * p.clone();
                    out.push(if k % 2 == 1 { t.recip() } else { -t.recip() });
                }
            }
            Prim::Sqrt => {
                let mut t = center.checked_sqrt()?;
                out.push(t.clone());
                for k in 1..=k_max {
                    let kq = BigRational::from_integer(BigInt::from(k));
                    let half3 = BigRational::new(BigInt::from(3), BigInt::from(2));
                    t = t * (half3 - kq.clone()) / (kq * center.clone());
                    out.push(t.clone());
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Rational64;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn f64_tolerance_is_mixed() {
        assert!(1.0f64.coeff_eq(&(1.0 + 1e-13)));
        assert!(!1.0f64.coeff_eq(&(1.0 + 1e-11)));
        assert!(1e6f64.coeff_eq(&(1e6 + 1e-7)));
        assert!(0.0f64.coeff_eq(&1e-13));
    }

    #[test]
    fn decimal_parsing_is_exact_for_rationals() {
        assert_eq!(<BigRational as Scalar>::from_decimal_str("3.25"), Some(rat(13, 4)));
        assert_eq!(<BigRational as Scalar>::from_decimal_str("2e3"), Some(rat(2000, 1)));
        assert_eq!(<BigRational as Scalar>::from_decimal_str("1e-2"), Some(rat(1, 100)));
        assert_eq!(<BigRational as Scalar>::from_decimal_str("."), None);
        assert_eq!(<f64 as Scalar>::from_decimal_str("0.5"), Some(0.5));
    }

    #[test]
    fn rational_sqrt_detects_perfect_squares() {
        assert_eq!(rat(9, 4).checked_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).checked_sqrt(), None);
        assert_eq!(rat(-4, 1).checked_sqrt(), None);
        assert_eq!(rat(0, 1).checked_sqrt(), Some(rat(0, 1)));
    }

    #[test]
    fn rational_rpow_capabilities() {
        assert_eq!(rat(3, 2).checked_rpow(Rational64::new(3, 1)), Some(rat(27, 8)));
        assert_eq!(rat(9, 4).checked_rpow(Rational64::new(1, 2)), Some(rat(3, 2)));
        assert_eq!(rat(9, 4).checked_rpow(Rational64::new(-1, 2)), Some(rat(2, 3)));
        assert_eq!(rat(2, 1).checked_rpow(Rational64::new(1, 2)), None);
        assert_eq!(rat(0, 1).checked_rpow(Rational64::new(-1, 1)), None);
    }

    #[test]
    fn exp_taylor_stack_matches_factorials() {
        let ts = <BigRational as Scalar>::prim_taylor_coeffs(Prim::Exp, &rat(0, 1), 4).unwrap();
        assert_eq!(ts[0], rat(1, 1));
        assert_eq!(ts[3], rat(1, 6));
        assert_eq!(ts[4], rat(1, 24));
        // Irrational center over rationals is refused.
        assert!(<BigRational as Scalar>::prim_taylor_coeffs(Prim::Exp, &rat(1, 1), 2).is_none());
    }

    #[test]
    fn sin_taylor_stack_at_zero() {
        let ts = <f64 as Scalar>::prim_taylor_coeffs(Prim::Sin, &0.0, 5).unwrap();
        assert_eq!(ts[0], 0.0);
        assert_eq!(ts[1], 1.0);
        assert!((ts[3] + 1.0 / 6.0).abs() < 1e-15);
        assert!((ts[5] - 1.0 / 120.0).abs() < 1e-15);

        let tr = <BigRational as Scalar>::prim_taylor_coeffs(Prim::Sin, &rat(0, 1), 5).unwrap();
        assert_eq!(tr[3], rat(-1, 6));
        assert_eq!(tr[5], rat(1, 120));
    }

    #[test]
    fn sqrt_taylor_stack_is_binomial() {
        // sqrt(1 + w) = 1 + w/2 − w²/8 + w³/16 − ...
        let ts = <f64 as Scalar>::prim_taylor_coeffs(Prim::Sqrt, &1.0, 3).unwrap();
        assert!((ts[1] - 0.5).abs() < 1e-15);
        assert!((ts[2] + 0.125).abs() < 1e-15);
        assert!((ts[3] - 0.0625).abs() < 1e-15);

        let tr = <BigRational as Scalar>::prim_taylor_coeffs(Prim::Sqrt, &rat(4, 1), 2).unwrap();
        assert_eq!(tr[0], rat(2, 1));
        assert_eq!(tr[1], rat(1, 4));
        assert_eq!(tr[2], rat(-1, 64));
    }

    #[test]
    fn log_taylor_stack_at_one() {
        let tr = <BigRational as Scalar>::prim_taylor_coeffs(Prim::Log, &rat(1, 1), 4).unwrap();
        assert_eq!(tr[1], rat(1, 1));
        assert_eq!(tr[2], rat(-1, 2));
        assert_eq!(tr[3], rat(1, 3));
        assert_eq!(tr[4], rat(-1, 4));
        assert!(<BigRational as Scalar>::prim_taylor_coeffs(Prim::Log, &rat(2, 1), 2).is_none());
    }
}
