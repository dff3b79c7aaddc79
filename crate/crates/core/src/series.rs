//! Single-branch ε-power series with an explicit tail marker.
//!
//! An [`EpsSeries`] is a finite sum `Σ cᵢ·ε^(eᵢ)` of nonzero coefficients
//! at strictly increasing exact rational exponents, together with a tail
//! order: `tail = ∞` means the series is exact; `tail = t` means nothing
//! is known at orders ≥ t (written `+ O(eps^t)`).
//!
//! Ring operations are exact and never truncate exact inputs. The
//! series-generating operations — inversion by geometric expansion,
//! binomial-series roots and rational powers, and transcendental
//! composition via Taylor-coefficient stacks — must truncate; they cut at
//! the working tail order `Q` or at the input-knowledge bound, whichever
//! is smaller, and record the cut in the result's tail.

use crate::error::Error;
use crate::expr::Prim;
use crate::order::{EpsOrder, Exponent, ValuationBounds};
use crate::scalar::Scalar;
use crate::terms;
use crate::Result;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Defensive ceiling on expansion length (hit only by pathological
/// configurations, e.g. microscopic leading exponents with a huge Q).
const MAX_EXPANSION_TERMS: i64 = 4096;

/// A finite ε-power series plus tail marker. See the module docs.
#[derive(Debug, Clone)]
pub struct EpsSeries<C: Scalar = f64> {
    /// Sorted by strictly increasing exponent; coefficients nonzero;
    /// every exponent < `tail`.
    terms: Vec<(Exponent, C)>,
    tail: EpsOrder,
}

impl<C: Scalar> EpsSeries<C> {
    /// Build from raw terms and a tail marker; sorts, merges duplicate
    /// exponents, drops exact-zero coefficients and terms at or beyond the
    /// tail.
    pub fn new(raw: Vec<(Exponent, C)>, tail: EpsOrder) -> Self {
        let mut t = terms::normalize(raw);
        if let EpsOrder::Finite(cut) = tail {
            t.retain(|(e, _)| *e < cut);
        }
        EpsSeries { terms: t, tail }
    }

    /// Exact series from terms.
    pub fn exact(raw: Vec<(Exponent, C)>) -> Self {
        Self::new(raw, EpsOrder::Infinite)
    }

    pub fn zero() -> Self {
        EpsSeries { terms: Vec::new(), tail: EpsOrder::Infinite }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The constant series `c`.
    pub fn constant(c: C) -> Self {
        Self::exact(vec![(Exponent::zero(), c)])
    }

    /// The monomial `c·ε^e`.
    pub fn monomial(e: Exponent, c: C) -> Self {
        Self::exact(vec![(e, c)])
    }

    /// The series `ε`.
    pub fn eps() -> Self {
        Self::monomial(Exponent::one(), C::one())
    }

    /// A pure unknown tail `O(ε^t)` with no known terms.
    pub fn unknown_tail(t: Exponent) -> Self {
        EpsSeries { terms: Vec::new(), tail: EpsOrder::Finite(t) }
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn tail(&self) -> EpsOrder {
        self.tail
    }

    /// Exactly zero: no terms and nothing hidden behind a tail.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.tail.is_infinite()
    }

    /// No truncation anywhere: every order is known.
    pub fn is_exact(&self) -> bool {
        self.tail.is_infinite()
    }

    /// Leading known term.
    pub fn leading(&self) -> Option<(Exponent, &C)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    /// Infimum order of any possibly-nonzero content (leading exponent or
    /// tail, whichever is smaller; `∞` for exact zero).
    pub fn low(&self) -> EpsOrder {
        match self.terms.first() {
            Some((e, _)) => EpsOrder::Finite(*e),
            None => self.tail,
        }
    }

    /// Coefficient at an exact exponent (None where nothing is stored).
    pub fn coeff_at(&self, e: Exponent) -> Option<&C> {
        self.terms
            .binary_search_by(|(te, _)| te.cmp(&e))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Two-sided bounds on the valuation `v = sup{b : |·| = O(ε^b)}`.
    ///
    /// A known leading term pins the valuation exactly (its coefficient is
    /// a nonzero real); an empty series with a finite tail only bounds it
    /// from below; zero has valuation `+∞`.
    pub fn valuation_bounds(&self) -> ValuationBounds {
        match self.terms.first() {
            Some((e, _)) => ValuationBounds::exact(EpsOrder::Finite(*e)),
            None => match self.tail {
                EpsOrder::Finite(t) => ValuationBounds::at_least(EpsOrder::Finite(t)),
                EpsOrder::Infinite => ValuationBounds::exact(EpsOrder::Infinite),
            },
        }
    }

    /// Largest |coefficient| (as f64), for residual checks. Zero if empty.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, c)| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Impose an additional tail cut.
    pub fn truncate(&self, cut: EpsOrder) -> Self {
        Self::new(self.terms.clone(), self.tail.min(cut))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(terms::add(&self.terms, &other.terms), self.tail.min(other.tail))
    }

    pub fn neg(&self) -> Self {
        EpsSeries { terms: terms::neg(&self.terms), tail: self.tail }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by a scalar constant.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EpsSeries {
            terms: terms::mul_monomial(&self.terms, Exponent::zero(), c),
            tail: self.tail,
        }
    }

    /// Multiply by the monomial `c·ε^e`.
    pub fn mul_monomial(&self, e: Exponent, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EpsSeries {
            terms: terms::mul_monomial(&self.terms, e, c),
            tail: self.tail.add_exp(e),
        }
    }

    /// Shift all orders by `e` (multiplication by `ε^e`).
    pub fn shift(&self, e: Exponent) -> Self {
        self.mul_monomial(e, &C::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // The product is unknown from the first order at which one
        // factor's tail meets the other's lowest possible content.
        let tail = self
            .tail
            .add(other.low())
            .min(other.tail.add(self.low()));
        Self::new(terms::mul(&self.terms, &other.terms), tail)
    }

    /// Exact nonnegative integer power via repeated multiplication.
    pub fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Geometric-series inversion, truncated at the working tail order `q`.
    ///
    /// Writes `x = c·ε^a·(1 + u)` and expands `c⁻¹·ε^(−a)·Σ (−u)^k`. The
    /// result is correct below `min(t − 2a, q)` where `t` is the input
    /// tail; monomial inputs invert exactly.
    pub fn invert(&self, q: Exponent) -> Result<Self> {
        let (a, c) = match self.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None => {
                return Err(if self.is_zero() {
                    Error::NotInvertible("zero has no inverse".into())
                } else {
                    Error::NotInvertible(format!(
                        "leading term unknown behind tail O(eps^({}))",
                        self.tail
                    ))
                });
            }
        };
        let c_inv = C::one() / c.clone();
        // u = x / (c·ε^a) − 1, with tail t − a.
        let u = EpsSeries::new(
            terms::mul_monomial(&self.terms[1..], -a, &c_inv),
            self.tail.add_exp(-a),
        );
        // Relative cut: knowledge bound t − a, working bound q + a.
        let rel_cut = match u.tail {
            EpsOrder::Finite(t) => t.min(q + a),
            EpsOrder::Infinite if u.terms.is_empty() => {
                // Pure monomial: exact inverse.
                return Ok(Self::monomial(-a, c_inv));
            }
            EpsOrder::Infinite => q + a,
        };
        let geo = expand_powers(&u, rel_cut, |k, prev, _| {
            // Σ (−u)^k: each power picks up a factor −1.
            let _ = k;
            -prev.clone()
        })?;
        Ok(geo.mul_monomial(-a, &c_inv))
    }

    /// Power with an exact rational exponent, truncated at working order `q`.
    ///
    /// Integer exponents are exact (repeated multiplication / inversion);
    /// fractional exponents use the binomial series about the leading term
    /// and need an eventually-positive base.
    pub fn pow_rational(&self, r: Exponent, q: Exponent) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::one());
        }
        if crate::order::is_integer(&r) {
            let k = *r.numer();
            if k.abs() > MAX_EXPANSION_TERMS {
                return Err(Error::Numeric(format!("integer power {} too large", k)));
            }
            let p = self.powu(k.unsigned_abs() as u32);
            return if k > 0 { Ok(p) } else { p.invert(q) };
        }
        // Fractional exponent.
        if self.is_zero() {
            return if r > Exponent::zero() {
                Ok(Self::zero())
            } else {
                Err(Error::NotInvertible("zero to a negative power".into()))
            };
        }
        let (a, c) = match self.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None => {
                // Pure tail: the sign of the hidden content is unknown, so
                // a fractional power cannot be certified to exist.
                return Err(Error::UnknownSign(self.tail));
            }
        };
        if c < C::zero() {
            return Err(Error::Domain(format!(
                "fractional power {} of an eventually-negative series",
                r
            )));
        }
        let cr = c
            .checked_rpow(r)
            .ok_or_else(|| Error::Unrepresentable(format!("{}^({})", c, r)))?;
        // u = x / (c·ε^a) − 1; (1+u)^r by binomial series.
        let c_inv = C::one() / c;
        let u = EpsSeries::new(
            terms::mul_monomial(&self.terms[1..], -a, &c_inv),
            self.tail.add_exp(-a),
        );
        let lead = a * r;
        let rel_cut = match u.tail {
            EpsOrder::Finite(t) => t.min(q - lead),
            EpsOrder::Infinite if u.terms.is_empty() => {
                return Ok(Self::monomial(lead, cr));
            }
            EpsOrder::Infinite => q - lead,
        };
        // Binomial coefficients: T_k = T_{k−1}·(r − k + 1)/k.
        let binom = expand_powers(&u, rel_cut, |k, prev, _| {
            let factor = (r - Exponent::from_integer(k - 1)) / Exponent::from_integer(k);
            prev.clone() * C::from_exponent(factor)
        })?;
        Ok(binom.mul_monomial(lead, &cr))
    }

    /// Square root (fractional power 1/2).
    pub fn sqrt(&self, q: Exponent) -> Result<Self> {
        self.pow_rational(Exponent::new(1, 2), q)
    }

    /// Taylor-mode composition `g(self)` for a primitive smooth `g`.
    ///
    /// Requires a near-standard argument (no negative exponents, tail > 0):
    /// the series splits as `center + w` and `g` expands through its
    /// Taylor-coefficient stack at the center. Two lawful exceptions:
    /// `sqrt` delegates to the binomial power (well-defined for any
    /// eventually-positive series), and `exp` of a negatively-unbounded
    /// argument is negligible — exactly zero — when the leading
    /// coefficient is negative, and not moderate when it is positive.
    pub fn compose_prim(&self, prim: Prim, q: Exponent) -> Result<Self> {
        if prim == Prim::Sqrt {
            return self.sqrt(q);
        }
        if let Some((e, c)) = self.terms.first() {
            if *e < Exponent::zero() {
                return match prim {
                    Prim::Exp => {
                        if *c < C::zero() {
                            // exp(−λ/ε^s + ...) vanishes faster than every
                            // ε^m: a negligible net, i.e. the ring's zero.
                            Ok(Self::zero())
                        } else {
                            Err(Error::Numeric(
                                "exp of a positively-unbounded argument is not moderate".into(),
                            ))
                        }
                    }
                    _ => Err(Error::Domain(format!(
                        "{} of an unbounded argument is not an eps-power series",
                        prim
                    ))),
                };
            }
        }
        match self.tail {
            EpsOrder::Finite(t) if t <= Exponent::zero() => {
                // The standard part itself is hidden behind the tail.
                return Err(Error::UnknownSign(self.tail));
            }
            _ => {}
        }
        let center = self.coeff_at(Exponent::zero()).cloned().unwrap_or_else(C::zero);
        if prim == Prim::Log && center <= C::zero() {
            return Err(Error::Domain(format!("log at nonpositive center {}", center)));
        }
        // w = self − center: strictly positive exponents.
        let w = EpsSeries::new(
            self.terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .cloned()
                .collect(),
            self.tail,
        );
        if w.is_zero() {
            let t0 = C::prim_taylor_coeffs(prim, &center, 0)
                .ok_or_else(|| Error::Unrepresentable(format!("{}({})", prim, center)))?
                .pop()
                .expect("k_max 0 stack has one entry");
            return Ok(Self::constant(t0));
        }
        let cut = match w.tail {
            EpsOrder::Finite(t) => t.min(q),
            EpsOrder::Infinite => q,
        };
        let low = match w.low() {
            EpsOrder::Finite(l) => l,
            EpsOrder::Infinite => unreachable!("w is not zero"),
        };
        // Largest k with k·low < cut.
        let k_max = k_bound(low, cut)?;
        let stack = C::prim_taylor_coeffs(prim, &center, k_max)
            .ok_or_else(|| Error::Unrepresentable(format!("{}({})", prim, center)))?;
        let mut acc = Self::constant(stack[0].clone()).truncate(EpsOrder::Finite(cut));
        let mut wpow = Self::one();
        for coeff in stack.iter().skip(1) {
            wpow = wpow.mul(&w).truncate(EpsOrder::Finite(cut));
            if wpow.terms.is_empty() {
                break;
            }
            acc = acc.add(&wpow.scale(coeff));
        }
        Ok(acc.truncate(EpsOrder::Finite(cut)))
    }

    /// Numeric value of the known terms at a fixed `ε > 0`.
    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let ef = *e.numer() as f64 / *e.denom() as f64;
                c.to_f64() * eps.powf(ef)
            })
            .sum()
    }

    /// Structural equality under the scalar's coefficient tolerance:
    /// same exponents, same tail, coefficients `coeff_eq`.
    pub fn coeff_equal(&self, other: &Self) -> bool {
        self.tail == other.tail
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ea, ca), (eb, cb))| ea == eb && ca.coeff_eq(cb))
    }
}

/// Largest `k` with `k·low < cut`, plus-one for the stack length, guarded.
fn k_bound(low: Exponent, cut: Exponent) -> Result<usize> {
    if cut <= Exponent::zero() {
        return Ok(0);
    }
    let mut k: i64 = 0;
    while Exponent::from_integer(k + 1) * low < cut {
        k += 1;
        if k > MAX_EXPANSION_TERMS {
            return Err(Error::Numeric(format!(
                "expansion needs more than {} terms (low {}, cut {})",
                MAX_EXPANSION_TERMS, low, cut
            )));
        }
    }
    Ok(k as usize)
}

/// Σ_k T_k·u^k with T_0 = 1 and T_k = step(k, T_{k−1}, u), truncated at
/// the relative cut. Shared by the geometric and binomial expansions.
fn expand_powers<C: Scalar>(
    u: &EpsSeries<C>,
    rel_cut: Exponent,
    step: impl Fn(i64, &C, &EpsSeries<C>) -> C,
) -> Result<EpsSeries<C>> {
    let cut = EpsOrder::Finite(rel_cut);
    let mut acc = EpsSeries::one().truncate(cut);
    let mut upow = EpsSeries::one();
    let mut coeff = C::one();
    if u.terms.is_empty() {
        return Ok(acc);
    }
    let low = match u.low() {
        EpsOrder::Finite(l) => l,
        EpsOrder::Infinite => unreachable!("u has terms"),
    };
    let kmax = k_bound(low, rel_cut)?;
    for k in 1..=kmax as i64 {
        coeff = step(k, &coeff, u);
        upow = upow.mul(u).truncate(cut);
        if upow.terms.is_empty() {
            break;
        }
        acc = acc.add(&upow.scale(&coeff));
    }
    Ok(acc.truncate(cut))
}

impl<C: Scalar> PartialEq for EpsSeries<C> {
    /// Equality under the scalar tolerance (exact for exact scalars).
    /// Not transitive for float scalars; fine for desk-scale assertions.
    fn eq(&self, other: &Self) -> bool {
        self.coeff_equal(other)
    }
}

impl<C: Scalar> Add for &EpsSeries<C> {
    type Output = EpsSeries<C>;
    fn add(self, rhs: Self) -> EpsSeries<C> {
        EpsSeries::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &EpsSeries<C> {
    type Output = EpsSeries<C>;
    fn sub(self, rhs: Self) -> EpsSeries<C> {
        EpsSeries::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &EpsSeries<C> {
    type Output = EpsSeries<C>;
    fn mul(self, rhs: Self) -> EpsSeries<C> {
        EpsSeries::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &EpsSeries<C> {
    type Output = EpsSeries<C>;
    fn neg(self) -> EpsSeries<C> {
        EpsSeries::neg(self)
    }
}

/// Formats one term `c·ε^e` into the literal grammar, with `var` naming
/// the infinitesimal ("eps" or "t"). `lead` suppresses the sign space.
pub(crate) fn fmt_term<C: Scalar>(
    f: &mut fmt::Formatter<'_>,
    e: Exponent,
    c: &C,
    var: &str,
    lead: bool,
) -> fmt::Result {
    let negative = c.is_negative();
    if lead {
        if negative {
            write!(f, "-")?;
        }
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.abs();
    if e.is_zero() {
        return write!(f, "{}", mag);
    }
    if !mag.is_one() {
        write!(f, "{}*", mag)?;
    }
    write!(f, "{}", var)?;
    if e == Exponent::one() {
        return Ok(());
    }
    if crate::order::is_integer(&e) && e > Exponent::zero() {
        write!(f, "^{}", e.numer())
    } else {
        write!(f, "^({})", e)
    }
}

pub(crate) fn fmt_series<C: Scalar>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Exponent, C)],
    tail: EpsOrder,
    var: &str,
) -> fmt::Result {
    if terms.is_empty() && tail.is_infinite() {
        return write!(f, "0");
    }
    for (i, (e, c)) in terms.iter().enumerate() {
        fmt_term(f, *e, c, var, i == 0)?;
    }
    if let EpsOrder::Finite(t) = tail {
        if !terms.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O({}^", var)?;
        if crate::order::is_integer(&t) && t > Exponent::zero() {
            write!(f, "{})", t.numer())?;
        } else {
            write!(f, "({}))", t)?;
        }
    }
    Ok(())
}

impl<C: Scalar> fmt::Display for EpsSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, &self.terms, self.tail, "eps")
    }
}
