//! Fermat reals: little-oh polynomials in the infinitesimal `t`.
//!
//! A [`LittleOhPoly`] is `r + Σ αᵢ·t^(aᵢ)` with exact rational exponents
//! `0 < aᵢ ≤ 1` (the constant term sits at exponent 0). Working modulo
//! `o(t)` makes every term with exponent > 1 vanish — the ring is
//! nilpotent: `t^(0.6)·t^(0.6) = 0`. The order is total: `x ≤ y` iff the
//! difference is zero or its lowest-order coefficient is positive.
//!
//! Smooth functions act by Taylor expansion about the standard part
//! ([`extend`]): with `δ` the infinitesimal part and `a_min` its least
//! exponent, only the orders `k ≤ ⌊1/a_min⌋` survive nilpotency, so the
//! extension is a finite exact computation. First-order infinitesimals
//! (`h² = 0`, i.e. every exponent > 1/2) form the ideal `D` on which every
//! smooth `f` obeys the tangent identity `f(x + h) = f(x) + h·f′(x)`.

use crate::error::Error;
use crate::expr::{Expr, Prim};
use crate::order::{is_integer, EpsOrder, Exponent};
use crate::scalar::Scalar;
use crate::terms;
use crate::Result;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Fermat real: little-oh polynomial with exponents in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct LittleOhPoly<C: Scalar = f64> {
    /// Sorted by strictly increasing exponent in `[0, 1]`, coefficients
    /// nonzero.
    terms: Vec<(Exponent, C)>,
}

impl<C: Scalar> LittleOhPoly<C> {
    /// Normalize raw terms: sort, merge duplicate exponents, drop exact
    /// zeros and everything beyond `o(t)` (exponent > 1). Negative
    /// exponents are a domain error.
    pub fn new(raw: Vec<(Exponent, C)>) -> Result<Self> {
        if let Some((e, _)) = raw.iter().find(|(e, _)| e.is_negative()) {
            return Err(Error::Domain(format!(
                "negative exponent {} in a little-oh polynomial",
                e
            )));
        }
        let mut t = terms::normalize(raw);
        t.retain(|(e, _)| *e <= Exponent::one());
        Ok(LittleOhPoly { terms: t })
    }

    /// Internal constructor for terms already known to be in range.
    fn from_normalized(mut t: Vec<(Exponent, C)>) -> Self {
        t.retain(|(e, _)| *e <= Exponent::one());
        LittleOhPoly { terms: t }
    }

    pub fn zero() -> Self {
        LittleOhPoly { terms: Vec::new() }
    }

    /// The standard real `c`.
    pub fn constant(c: C) -> Self {
        Self::from_normalized(terms::normalize(vec![(Exponent::zero(), c)]))
    }

    /// The monomial `c·t^e` (e ∈ [0,1]; out-of-range e > 1 vanishes).
    pub fn monomial(e: Exponent, c: C) -> Result<Self> {
        Self::new(vec![(e, c)])
    }

    /// The infinitesimal `t`.
    pub fn t() -> Self {
        LittleOhPoly { terms: vec![(Exponent::one(), C::one())] }
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Standard part: the coefficient at exponent 0.
    pub fn standard_part(&self) -> C {
        match self.terms.first() {
            Some((e, c)) if e.is_zero() => c.clone(),
            _ => C::zero(),
        }
    }

    /// Infinitesimal part δ: everything at exponents > 0.
    pub fn infinitesimal_part(&self) -> Self {
        LittleOhPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .cloned()
                .collect(),
        }
    }

    /// `(st x, δx)` with `x = st x + δx` exactly.
    pub fn decompose(&self) -> (C, Self) {
        (self.standard_part(), self.infinitesimal_part())
    }

    /// Least exponent of the infinitesimal part, if any.
    pub fn min_infinitesimal_exponent(&self) -> Option<Exponent> {
        self.terms.iter().find(|(e, _)| !e.is_zero()).map(|(e, _)| *e)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_normalized(terms::add(&self.terms, &other.terms))
    }

    pub fn neg(&self) -> Self {
        LittleOhPoly { terms: terms::neg(&self.terms) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LittleOhPoly {
            terms: terms::mul_monomial(&self.terms, Exponent::zero(), c),
        }
    }

    /// Ring product; cross terms beyond `o(t)` vanish.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_normalized(terms::mul(&self.terms, &other.terms))
    }

    pub fn powu(&self, k: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total-order comparison: the sign of the lowest-order coefficient of
    /// `other − self` decides (ties are equality — the difference is zero).
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        let diff = other.sub(self);
        match diff.terms.first() {
            None => Ordering::Equal,
            Some((_, c)) => {
                if c.is_positive() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// `self ≤ other` in the total order.
    pub fn leq(&self, other: &Self) -> bool {
        self.cmp_order(other) != Ordering::Greater
    }

    /// Infinitesimal: zero standard part.
    pub fn is_infinitesimal(&self) -> bool {
        self.standard_part().is_zero()
    }

    /// Member of `D` (first-order infinitesimal, `h² = 0`): zero, or every
    /// exponent strictly greater than 1/2.
    pub fn is_first_order(&self) -> bool {
        let half = Exponent::new(1, 2);
        self.terms.iter().all(|(e, _)| *e > half)
    }

    /// Exact ring inverse of an element with nonzero standard part:
    /// `x = c(1 + u)` with `u` nilpotent, so `x⁻¹ = c⁻¹·Σ (−u)^k` is a
    /// finite sum.
    pub fn invert(&self) -> Result<Self> {
        let c = self.standard_part();
        if c.is_zero() {
            return Err(Error::NotInvertible(
                "zero standard part (an infinitesimal has no inverse)".into(),
            ));
        }
        let c_inv = C::one() / c;
        let u = self.infinitesimal_part().scale(&c_inv);
        let mut acc = Self::constant(C::one());
        let mut upow = Self::constant(C::one());
        for _ in 1..=nilpotency_bound(&u) {
            upow = upow.mul(&u).neg();
            if upow.is_zero() {
                break;
            }
            acc = acc.add(&upow);
        }
        Ok(acc.scale(&c_inv))
    }

    /// Structural equality under the scalar's coefficient tolerance.
    pub fn coeff_equal(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ea, ca), (eb, cb))| ea == eb && ca.coeff_eq(cb))
    }
}

/// Orders surviving nilpotency for powers of `u`: largest k with
/// `k·a_min ≤ 1`, i.e. `⌊1/a_min⌋` (0 for u = 0 — no powers needed).
fn nilpotency_bound<C: Scalar>(u: &LittleOhPoly<C>) -> u32 {
    match u.terms.first() {
        None => 0,
        Some((a_min, _)) => {
            debug_assert!(!a_min.is_zero(), "u must be infinitesimal");
            let inv = Exponent::one() / *a_min;
            (inv.to_integer().min(i64::from(u32::MAX))) as u32
        }
    }
}

/// Smooth extension: Taylor-mode evaluation of a one-variable expression
/// (no `eps` nodes) over the Fermat-real ring.
///
/// With `x = c + δ`, every primitive `g` becomes `Σ_{k ≤ ⌊1/a_min⌋}
/// (g⁽ᵏ⁾(c)/k!)·δ^k`: a finite exact sum. The standard part must be
/// interior to each primitive's smooth domain (log/sqrt need st > 0,
/// division needs a nonzero standard part) — a smooth function only
/// extends where it is smooth.
pub fn extend<C: Scalar>(f: &Expr, x: &LittleOhPoly<C>) -> Result<LittleOhPoly<C>> {
    match f {
        Expr::Const(c) => Ok(LittleOhPoly::constant(C::from_exponent(*c))),
        Expr::X => Ok(x.clone()),
        Expr::Eps => Err(Error::Domain(
            "eps is not a term of the Fermat-real language; extend one-variable functions".into(),
        )),
        Expr::Neg(a) => Ok(extend(a, x)?.neg()),
        Expr::Add(a, b) => Ok(extend(a, x)?.add(&extend(b, x)?)),
        Expr::Sub(a, b) => Ok(extend(a, x)?.sub(&extend(b, x)?)),
        Expr::Mul(a, b) => Ok(extend(a, x)?.mul(&extend(b, x)?)),
        Expr::Div(a, b) => {
            let vb = extend(b, x)?;
            Ok(extend(a, x)?.mul(&vb.invert().map_err(|_| {
                Error::Domain("division by an element with zero standard part".into())
            })?))
        }
        Expr::Pow(a, r) => {
            let va = extend(a, x)?;
            if is_integer(r) {
                let k = *r.numer();
                if k.unsigned_abs() > 4096 {
                    return Err(Error::Unrepresentable(format!(
                        "integer power {} too large",
                        k
                    )));
                }
                let p = va.powu(k.unsigned_abs() as u32);
                return if k >= 0 {
                    Ok(p)
                } else {
                    p.invert().map_err(|_| {
                        Error::Domain("negative power of an element with zero standard part".into())
                    })
                };
            }
            // Fractional power: smooth only on (0, ∞).
            let c = va.standard_part();
            if c <= C::zero() {
                return Err(Error::Domain(format!(
                    "x^({}) is smooth only at positive standard parts; st = {}",
                    r, c
                )));
            }
            let cr = c
                .checked_rpow(*r)
                .ok_or_else(|| Error::Unrepresentable(format!("{}^({})", c, r)))?;
            let u = va.infinitesimal_part().scale(&(C::one() / c));
            // Binomial series Σ binom(r,k)·u^k, finite by nilpotency.
            let mut acc = LittleOhPoly::constant(C::one());
            let mut upow = LittleOhPoly::constant(C::one());
            let mut coeff = C::one();
            for k in 1..=nilpotency_bound(&u) {
                let factor = (*r - Exponent::from_integer(i64::from(k) - 1))
                    / Exponent::from_integer(i64::from(k));
                coeff = coeff * C::from_exponent(factor);
                upow = upow.mul(&u);
                if upow.is_zero() {
                    break;
                }
                acc = acc.add(&upow.scale(&coeff));
            }
            Ok(acc.scale(&cr))
        }
        Expr::Prim(p, a) => {
            let va = extend(a, x)?;
            let center = va.standard_part();
            match p {
                Prim::Log | Prim::Sqrt => {
                    if center <= C::zero() {
                        return Err(Error::Domain(format!(
                            "{} is smooth only at positive standard parts; st = {}",
                            p, center
                        )));
                    }
                }
                _ => {}
            }
            let w = va.infinitesimal_part();
            let k_max = nilpotency_bound(&w) as usize;
            let stack = C::prim_taylor_coeffs(*p, &center, k_max)
                .ok_or_else(|| Error::Unrepresentable(format!("{}({})", p, center)))?;
            let mut acc = LittleOhPoly::constant(stack[0].clone());
            let mut wpow = LittleOhPoly::constant(C::one());
            for coeff in stack.iter().skip(1) {
                wpow = wpow.mul(&w);
                if wpow.is_zero() {
                    break;
                }
                acc = acc.add(&wpow.scale(coeff));
            }
            Ok(acc)
        }
    }
}

impl<C: Scalar> PartialEq for LittleOhPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeff_equal(other)
    }
}

impl<C: Scalar> Add for &LittleOhPoly<C> {
    type Output = LittleOhPoly<C>;
    fn add(self, rhs: Self) -> LittleOhPoly<C> {
        LittleOhPoly::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &LittleOhPoly<C> {
    type Output = LittleOhPoly<C>;
    fn sub(self, rhs: Self) -> LittleOhPoly<C> {
        LittleOhPoly::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &LittleOhPoly<C> {
    type Output = LittleOhPoly<C>;
    fn mul(self, rhs: Self) -> LittleOhPoly<C> {
        LittleOhPoly::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &LittleOhPoly<C> {
    type Output = LittleOhPoly<C>;
    fn neg(self) -> LittleOhPoly<C> {
        LittleOhPoly::neg(self)
    }
}

impl<C: Scalar> fmt::Display for LittleOhPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::series::fmt_series(f, &self.terms, EpsOrder::Infinite, "t")
    }
}
