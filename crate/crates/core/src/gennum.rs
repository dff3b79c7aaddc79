//! Branched generalized numbers: a computable subring of the Colombeau
//! ring of constants.
//!
//! A [`GenNum`] is a family of `k ≥ 1` branches, each an [`EpsSeries`];
//! branch `i` describes the net on the subsequence `ε_j = 2^(−j)` with
//! `j ≡ i (mod k)`. Two numbers with branch counts `k` and `k'` meet on
//! the common refinement with `lcm(k, k')` branches, so the scheme is
//! closed under binary operations. Branching buys the ring's pathologies
//! at desk scale: zero divisors (`⟨1 ∥ 0⟩·⟨0 ∥ 1⟩ = 0`) and incomparable
//! elements (`⟨1 ∥ −1⟩` vs `⟨−1 ∥ 1⟩`).
//!
//! On top of the ring sit the asymptotic-order tools: valuation (as exact
//! interval knowledge, [`ValuationBounds`]), the sharp distance
//! `d_s = e^(−v)`, the eventual order with three-valued verdicts, the
//! generalized absolute value, inversion of strictly nonzero elements,
//! near-standard decomposition `x = st x + δx`, the Fermat and ω
//! (pseudo)metrics, monads, and both interval notions. Vectors are
//! componentwise ([`GenVec`]) with the Euclidean norm computed as a
//! series square root.

use crate::error::Error;
use crate::order::{EpsOrder, Exponent, Sign, ValuationBounds};
use crate::scalar::Scalar;
use crate::series::EpsSeries;
use crate::Result;
use num::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Three-valued outcome of a predicate whose decision may sit beyond a
/// series' known orders. `Unknown` carries the tail order that blocked
/// the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown(Exponent),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            Verdict::Unknown(_) => None,
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Conjunction: Fails dominates, then Unknown (least blocking order).
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Unknown(a), Verdict::Unknown(b)) => Verdict::Unknown(a.min(b)),
            (Verdict::Unknown(a), _) | (_, Verdict::Unknown(a)) => Verdict::Unknown(a),
            _ => Verdict::Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::Unknown(t) => write!(f, "unknown(tail {})", t),
        }
    }
}

/// Outcome of the eventual-order comparison `x ≤ y`: decided relations,
/// strict branch disagreement, or tail-limited ignorance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVerdict {
    /// `x ≤ y` on every branch (strict somewhere or everywhere equal-or-less).
    LE,
    /// `x ≥ y` on every branch.
    GE,
    /// `x = y`.
    EQ,
    /// Some branch says strictly less, another strictly greater.
    Incomparable,
    /// A branch's leading sign is hidden behind this tail order.
    Unknown(Exponent),
}

impl OrderVerdict {
    /// Does the verdict certify `x ≤ y`?
    pub fn le_holds(self) -> Verdict {
        match self {
            OrderVerdict::LE | OrderVerdict::EQ => Verdict::Holds,
            OrderVerdict::GE | OrderVerdict::Incomparable => Verdict::Fails,
            OrderVerdict::Unknown(t) => Verdict::Unknown(t),
        }
    }

    /// Does the verdict certify `x ≥ y`?
    pub fn ge_holds(self) -> Verdict {
        match self {
            OrderVerdict::GE | OrderVerdict::EQ => Verdict::Holds,
            OrderVerdict::LE | OrderVerdict::Incomparable => Verdict::Fails,
            OrderVerdict::Unknown(t) => Verdict::Unknown(t),
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::LE => write!(f, "LE"),
            OrderVerdict::GE => write!(f, "GE"),
            OrderVerdict::EQ => write!(f, "EQ"),
            OrderVerdict::Incomparable => write!(f, "INCOMPARABLE"),
            OrderVerdict::Unknown(t) => write!(f, "UNKNOWN({})", t),
        }
    }
}

/// A sharp distance `e^(−v)`: a point value when the valuation is exact,
/// otherwise the interval compatible with the valuation bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SharpDist {
    Point(f64),
    /// `lower ≤ d_s ≤ upper`, the residue of a finite tail.
    Interval { lower: f64, upper: f64 },
}

impl SharpDist {
    pub fn from_valuation(v: ValuationBounds) -> Self {
        if let Some(val) = v.value() {
            SharpDist::Point(val.neg_exp())
        } else {
            // Larger valuation ⇒ smaller distance, so the bounds swap.
            SharpDist::Interval {
                lower: v.hi.neg_exp(),
                upper: v.lo.neg_exp(),
            }
        }
    }

    /// Largest distance compatible with the knowledge.
    pub fn upper(&self) -> f64 {
        match self {
            SharpDist::Point(d) => *d,
            SharpDist::Interval { upper, .. } => *upper,
        }
    }

    /// Smallest distance compatible with the knowledge.
    pub fn lower(&self) -> f64 {
        match self {
            SharpDist::Point(d) => *d,
            SharpDist::Interval { lower, .. } => *lower,
        }
    }

    pub fn as_point(&self) -> Option<f64> {
        match self {
            SharpDist::Point(d) => Some(*d),
            SharpDist::Interval { .. } => None,
        }
    }
}

impl fmt::Display for SharpDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharpDist::Point(d) => write!(f, "{:.9}", d),
            SharpDist::Interval { lower, upper } => {
                write!(f, "[{:.9}, {:.9}]", lower, upper)
            }
        }
    }
}

/// Branched generalized number. See the module docs for the branch
/// semantics.
#[derive(Debug, Clone)]
pub struct GenNum<C: Scalar = f64> {
    branches: Vec<EpsSeries<C>>,
}

impl<C: Scalar> GenNum<C> {
    /// At least one branch is required.
    pub fn new(branches: Vec<EpsSeries<C>>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::Domain(
                "a generalized number needs at least one branch".into(),
            ));
        }
        Ok(Self::collapsed(branches))
    }

    /// Collapse a uniform branch family to a single branch (equality under
    /// the scalar's coefficient tolerance).
    fn collapsed(branches: Vec<EpsSeries<C>>) -> Self {
        debug_assert!(!branches.is_empty());
        if branches.len() > 1 && branches.iter().skip(1).all(|b| b.coeff_equal(&branches[0])) {
            GenNum { branches: vec![branches[0].clone()] }
        } else {
            GenNum { branches }
        }
    }

    pub fn from_series(s: EpsSeries<C>) -> Self {
        GenNum { branches: vec![s] }
    }

    pub fn constant(c: C) -> Self {
        Self::from_series(EpsSeries::constant(c))
    }

    pub fn from_real(v: f64) -> Self {
        Self::constant(C::from_f64(v))
    }

    pub fn zero() -> Self {
        Self::from_series(EpsSeries::zero())
    }

    pub fn one() -> Self {
        Self::from_series(EpsSeries::one())
    }

    pub fn eps() -> Self {
        Self::from_series(EpsSeries::eps())
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        Self::from_series(EpsSeries::monomial(e, c))
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[EpsSeries<C>] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &EpsSeries<C> {
        &self.branches[i % self.branches.len()]
    }

    /// Branches of the refinement to `m` (a multiple of the branch count):
    /// refined branch `j` is original branch `j mod k`.
    pub fn refine_to(&self, m: usize) -> Vec<EpsSeries<C>> {
        debug_assert!(m >= self.branches.len() && m % self.branches.len() == 0);
        (0..m).map(|j| self.branches[j % self.branches.len()].clone()).collect()
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&EpsSeries<C>, &EpsSeries<C>) -> EpsSeries<C>,
    {
        let m = num::integer::lcm(self.branches.len(), other.branches.len());
        let a = self.refine_to(m);
        let b = other.refine_to(m);
        Self::collapsed(a.iter().zip(&b).map(|(x, y)| f(x, y)).collect())
    }

    fn try_map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &EpsSeries<C>) -> Result<EpsSeries<C>>,
    {
        let mapped: Result<Vec<_>> = self
            .branches
            .iter()
            .enumerate()
            .map(|(i, s)| f(i, s))
            .collect();
        Ok(Self::collapsed(mapped?))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, EpsSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, EpsSeries::sub)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, EpsSeries::mul)
    }

    pub fn neg(&self) -> Self {
        GenNum { branches: self.branches.iter().map(EpsSeries::neg).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::collapsed(self.branches.iter().map(|b| b.scale(c)).collect())
    }

    pub fn powu(&self, k: u32) -> Self {
        Self::collapsed(self.branches.iter().map(|b| b.powu(k)).collect())
    }

    /// Exactly zero: every branch is the exact zero series.
    pub fn is_zero(&self) -> bool {
        self.branches.iter().all(EpsSeries::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.branches.iter().all(EpsSeries::is_exact)
    }

    /// Representative value at index `j` of the canonical sequence
    /// `ε_j = 2^(−j)`: branch `j mod k` evaluated at `ε_j`. This is the
    /// bridge every numeric oracle crosses.
    pub fn eval_at_index(&self, j: u32) -> f64 {
        let eps = 2f64.powi(-(j as i32));
        self.branches[(j as usize) % self.branches.len()].eval_f64(eps)
    }

    /// Valuation `v(x) = sup { b | |x_ε| = O(ε^b) }` along the full net:
    /// the minimum over branches, as exact interval knowledge. `[∞, ∞]`
    /// iff the number is exactly zero.
    pub fn valuation(&self) -> ValuationBounds {
        self.branches
            .iter()
            .map(EpsSeries::valuation_bounds)
            .fold(ValuationBounds::exact(EpsOrder::Infinite), ValuationBounds::min)
    }

    /// Valuation of the difference — the exact datum behind `d_s`.
    pub fn dist_valuation(&self, other: &Self) -> ValuationBounds {
        self.sub(other).valuation()
    }

    /// Sharp distance `d_s(x, y) = e^(−v(x−y))`.
    pub fn sharp_dist(&self, other: &Self) -> SharpDist {
        SharpDist::from_valuation(self.dist_valuation(other))
    }

    /// Eventual order `self ≤ other`, decided branchwise by the leading
    /// sign of `other − self`. Strict disagreement between branches is
    /// `Incomparable`; a sign hidden behind a finite tail is `Unknown`
    /// unless strict disagreement is already witnessed.
    pub fn order_compare(&self, other: &Self) -> OrderVerdict {
        let diff = other.sub(self);
        let mut saw_lt = false;
        let mut saw_gt = false;
        let mut blocked: Option<Exponent> = None;
        for b in &diff.branches {
            match b.leading() {
                Some((_, c)) => match Sign::of(c) {
                    Sign::Pos => saw_lt = true,
                    Sign::Neg => saw_gt = true,
                    Sign::Zero => unreachable!("stored coefficients are nonzero"),
                },
                None => {
                    if let EpsOrder::Finite(t) = b.tail() {
                        blocked = Some(blocked.map_or(t, |u| u.min(t)));
                    }
                    // Exact zero branch: equality there.
                }
            }
        }
        match (saw_lt, saw_gt) {
            (true, true) => OrderVerdict::Incomparable,
            _ => {
                if let Some(t) = blocked {
                    OrderVerdict::Unknown(t)
                } else if saw_lt {
                    OrderVerdict::LE
                } else if saw_gt {
                    OrderVerdict::GE
                } else {
                    OrderVerdict::EQ
                }
            }
        }
    }

    /// Strict eventual order `self < other` on every branch: the
    /// leading coefficient of `other − self` must be positive in each.
    /// An exactly-zero branch (equality there) fails strictness; a sign
    /// hidden behind a finite tail is `Unknown` unless a failing branch
    /// is already witnessed.
    pub fn strictly_less(&self, other: &Self) -> Verdict {
        let diff = other.sub(self);
        let mut verdict = Verdict::Holds;
        for b in &diff.branches {
            let v = match b.leading() {
                Some((_, c)) => match Sign::of(c) {
                    Sign::Pos => Verdict::Holds,
                    Sign::Neg => Verdict::Fails,
                    Sign::Zero => unreachable!("stored coefficients are nonzero"),
                },
                None => match b.tail() {
                    EpsOrder::Infinite => Verdict::Fails,
                    EpsOrder::Finite(t) => Verdict::Unknown(t),
                },
            };
            verdict = verdict.and(v);
        }
        verdict
    }

    /// Generalized absolute value `⌈x⌉`: branchwise, flip the sign when
    /// the leading coefficient is negative (the representative `|x_ε|`
    /// eventually equals `±x_ε`).
    pub fn gen_abs(&self) -> Result<Self> {
        self.try_map(|_, b| match b.leading() {
            Some((_, c)) => Ok(if Sign::of(c) == Sign::Neg { b.neg() } else { b.clone() }),
            None => match b.tail() {
                EpsOrder::Infinite => Ok(b.clone()),
                EpsOrder::Finite(t) => Err(Error::UnknownSign(EpsOrder::Finite(t))),
            },
        })
    }

    fn min_max(&self, other: &Self, want_min: bool) -> Result<Self> {
        let m = num::integer::lcm(self.branches.len(), other.branches.len());
        let a = self.refine_to(m);
        let b = other.refine_to(m);
        let picked: Result<Vec<_>> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| {
                let d = y.sub(x);
                match d.leading() {
                    Some((_, c)) => {
                        // Leading sign of y − x decides which branch wins
                        // eventually.
                        let x_smaller = Sign::of(c) == Sign::Pos;
                        Ok(if x_smaller == want_min { x.clone() } else { y.clone() })
                    }
                    None => match d.tail() {
                        EpsOrder::Infinite => Ok(x.clone()), // equal branches
                        EpsOrder::Finite(t) => Err(Error::UnknownSign(EpsOrder::Finite(t))),
                    },
                }
            })
            .collect();
        Ok(Self::collapsed(picked?))
    }

    /// Branchwise eventual minimum `min(x, y) = [min(x_ε, y_ε)]`.
    pub fn min(&self, other: &Self) -> Result<Self> {
        self.min_max(other, true)
    }

    /// Branchwise eventual maximum.
    pub fn max(&self, other: &Self) -> Result<Self> {
        self.min_max(other, false)
    }

    /// Invertibility = strict nonzeroness: every branch has a known
    /// leading term.
    pub fn is_invertible(&self) -> bool {
        self.branches.iter().all(|b| b.leading().is_some())
    }

    /// Strictly positive and invertible (every branch's leading
    /// coefficient is positive) — the shape required of a generalized
    /// ball radius.
    pub fn is_positive_invertible(&self) -> bool {
        self.branches
            .iter()
            .all(|b| matches!(b.leading(), Some((_, c)) if Sign::of(c) == Sign::Pos))
    }

    /// Ring inverse of a strictly nonzero element, branchwise, with
    /// series knowledge truncated at working tail order `q`. Monomial
    /// branches invert exactly.
    pub fn invert(&self, q: Exponent) -> Result<Self> {
        self.try_map(|i, b| {
            b.invert(q).map_err(|_| {
                Error::NotInvertible(format!(
                    "branch {} has no known leading term (zero divisor or insufficient order)",
                    i
                ))
            })
        })
    }

    /// Near-standard decomposition `x = st x + δx`.
    ///
    /// Succeeds iff every branch has all exponents ≥ 0, knowledge past
    /// order 0 (tail > 0), and the same exponent-0 coefficient across
    /// branches — the limit along the full net must exist. Each branch
    /// drops its own exponent-0 term, so `δx` is exactly infinitesimal
    /// and `st x + δx` equals `x` under the coefficient tolerance.
    pub fn near_standard_decompose(&self) -> Result<(C, Self)> {
        let zero_exp = Exponent::zero();
        let mut st: Option<C> = None;
        for (i, b) in self.branches.iter().enumerate() {
            if let Some((e, _)) = b.leading() {
                if e < zero_exp {
                    return Err(Error::NotNearStandard(format!(
                        "branch {} is unbounded: leading exponent {}",
                        i, e
                    )));
                }
            }
            if let EpsOrder::Finite(t) = b.tail() {
                if t <= zero_exp {
                    return Err(Error::NotNearStandard(format!(
                        "branch {} has unknown content at orders ≥ {}",
                        i, t
                    )));
                }
            }
            let c0 = b.coeff_at(zero_exp).cloned().unwrap_or_else(C::zero);
            match &st {
                None => st = Some(c0),
                Some(prev) => {
                    if !prev.coeff_eq(&c0) {
                        return Err(Error::NotNearStandard(format!(
                            "branches disagree at exponent 0 ({} vs {}): no limit along the full net",
                            prev, c0
                        )));
                    }
                }
            }
        }
        let st = st.expect("at least one branch");
        let delta = Self::collapsed(
            self.branches
                .iter()
                .map(|b| {
                    EpsSeries::new(
                        b.terms()
                            .iter()
                            .filter(|(e, _)| !e.is_zero())
                            .cloned()
                            .collect(),
                        b.tail(),
                    )
                })
                .collect(),
        );
        Ok((st, delta))
    }

    /// Standard part of a near-standard number.
    pub fn standard_part(&self) -> Result<C> {
        Ok(self.near_standard_decompose()?.0)
    }

    /// Fermat pseudometric `d_F(x, y) = |st x − st y|`.
    pub fn fermat_dist(&self, other: &Self) -> Result<f64> {
        let (sx, _) = self.near_standard_decompose()?;
        let (sy, _) = other.near_standard_decompose()?;
        Ok((sx.to_f64() - sy.to_f64()).abs())
    }

    /// ω-metric `d_ω(x, y) = |st x − st y| + d_s(δx, δy)`.
    pub fn omega_dist(&self, other: &Self) -> Result<SharpDist> {
        let (sx, dx) = self.near_standard_decompose()?;
        let (sy, dy) = other.near_standard_decompose()?;
        let std_part = (sx.to_f64() - sy.to_f64()).abs();
        Ok(match dx.sharp_dist(&dy) {
            SharpDist::Point(d) => SharpDist::Point(std_part + d),
            SharpDist::Interval { lower, upper } => SharpDist::Interval {
                lower: std_part + lower,
                upper: std_part + upper,
            },
        })
    }

    /// Membership in the monad of `center`: is the difference
    /// infinitesimal? Decidable from known orders whenever every branch
    /// either shows a term at exponent ≤ 0 (fails) or has tail > 0
    /// (holds: hidden content can only be infinitesimal).
    pub fn in_monad(&self, center: &Self) -> Verdict {
        let diff = self.sub(center);
        let zero_exp = Exponent::zero();
        let mut verdict = Verdict::Holds;
        for b in &diff.branches {
            let v = match b.leading() {
                Some((e, _)) if e <= zero_exp => Verdict::Fails,
                Some(_) => Verdict::Holds,
                None => match b.tail() {
                    EpsOrder::Infinite => Verdict::Holds,
                    EpsOrder::Finite(t) if t > zero_exp => Verdict::Holds,
                    EpsOrder::Finite(t) => Verdict::Unknown(t),
                },
            };
            verdict = verdict.and(v);
        }
        verdict
    }
}

/// Which interval notion: plain order, or order plus invertible
/// endpoint differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    Order,
    InvertibleEndpoints,
}

/// Membership `x ∈ (a, b)` for either interval notion: `a ≤ x ≤ b`, and
/// for [`IntervalKind::InvertibleEndpoints`] additionally `a − x` and
/// `b − x` invertible (non-invertibility means not contained, not an
/// error).
pub fn interval_contains<C: Scalar>(
    kind: IntervalKind,
    a: &GenNum<C>,
    b: &GenNum<C>,
    x: &GenNum<C>,
) -> Verdict {
    let order = a.order_compare(x).le_holds().and(x.order_compare(b).le_holds());
    match kind {
        IntervalKind::Order => order,
        IntervalKind::InvertibleEndpoints => {
            let endpoints = a.sub(x).is_invertible() && b.sub(x).is_invertible();
            order.and(Verdict::from_bool(endpoints))
        }
    }
}

impl<C: Scalar> PartialEq for GenNum<C> {
    /// Equality along the full net: branchwise on the common refinement,
    /// under the scalar's coefficient tolerance.
    fn eq(&self, other: &Self) -> bool {
        let m = num::integer::lcm(self.branches.len(), other.branches.len());
        self.refine_to(m)
            .iter()
            .zip(&other.refine_to(m))
            .all(|(x, y)| x.coeff_equal(y))
    }
}

impl<C: Scalar> Add for &GenNum<C> {
    type Output = GenNum<C>;
    fn add(self, rhs: Self) -> GenNum<C> {
        GenNum::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &GenNum<C> {
    type Output = GenNum<C>;
    fn sub(self, rhs: Self) -> GenNum<C> {
        GenNum::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &GenNum<C> {
    type Output = GenNum<C>;
    fn mul(self, rhs: Self) -> GenNum<C> {
        GenNum::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &GenNum<C> {
    type Output = GenNum<C>;
    fn neg(self) -> GenNum<C> {
        GenNum::neg(self)
    }
}

impl<C: Scalar> fmt::Display for GenNum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, " || ")?;
            }
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

/// Componentwise vector of generalized numbers, with the Euclidean norm
/// `‖x‖ = (Σ xᵢ²)^(1/2)` computed as a generalized number.
#[derive(Debug, Clone, PartialEq)]
pub struct GenVec<C: Scalar = f64> {
    components: Vec<GenNum<C>>,
}

impl<C: Scalar> GenVec<C> {
    pub fn new(components: Vec<GenNum<C>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a vector needs at least one component".into()));
        }
        Ok(GenVec { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[GenNum<C>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &GenNum<C> {
        &self.components[i]
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Domain(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(GenVec {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(GenVec {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    /// Sum of squared components — the radicand of the norm. Its leading
    /// coefficients are sums of squares, hence positive whenever present.
    fn square_sum(&self) -> GenNum<C> {
        let mut acc = GenNum::zero();
        for c in &self.components {
            acc = acc.add(&c.mul(c));
        }
        acc
    }

    /// Euclidean norm as a generalized number: branchwise series square
    /// root of the square sum, truncated at tail order `q`. A branch
    /// known only as `O(ε^t)` is nonnegative by construction, so it
    /// roots to `O(ε^(t/2))` instead of failing with an unknown sign.
    pub fn norm(&self, q: Exponent) -> Result<GenNum<C>> {
        self.square_sum().try_map(|_, b| {
            if b.is_zero() {
                Ok(EpsSeries::zero())
            } else if b.leading().is_none() {
                match b.tail() {
                    EpsOrder::Finite(t) => Ok(EpsSeries::unknown_tail(t / 2)),
                    EpsOrder::Infinite => Ok(EpsSeries::zero()),
                }
            } else {
                b.sqrt(q)
            }
        })
    }

    /// Valuation of the norm, exactly: `v(‖x‖) = v(Σ xᵢ²) / 2` — no
    /// square root (and no coefficient arithmetic) required.
    pub fn valuation(&self) -> ValuationBounds {
        self.square_sum().valuation().halve()
    }

    /// Sharp distance between vectors via the squared difference norm.
    pub fn sharp_dist(&self, other: &Self) -> Result<SharpDist> {
        let diff = self.sub(other)?;
        Ok(SharpDist::from_valuation(diff.valuation()))
    }

    /// Componentwise near-standard decomposition.
    pub fn near_standard_decompose(&self) -> Result<(Vec<C>, Self)> {
        let mut sts = Vec::with_capacity(self.dim());
        let mut deltas = Vec::with_capacity(self.dim());
        for c in &self.components {
            let (st, d) = c.near_standard_decompose()?;
            sts.push(st);
            deltas.push(d);
        }
        Ok((sts, GenVec { components: deltas }))
    }

    /// `d_F(x, y) = ‖st x − st y‖` (Euclidean, standard parts).
    pub fn fermat_dist(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let (sx, _) = self.near_standard_decompose()?;
        let (sy, _) = other.near_standard_decompose()?;
        Ok(euclid(&sx, &sy))
    }

    /// `d_ω(x, y) = ‖st x − st y‖ + d_s(δx, δy)`.
    pub fn omega_dist(&self, other: &Self) -> Result<SharpDist> {
        self.check_dim(other)?;
        let (sx, dx) = self.near_standard_decompose()?;
        let (sy, dy) = other.near_standard_decompose()?;
        let std_part = euclid(&sx, &sy);
        Ok(match dx.sharp_dist(&dy)? {
            SharpDist::Point(d) => SharpDist::Point(std_part + d),
            SharpDist::Interval { lower, upper } => SharpDist::Interval {
                lower: std_part + lower,
                upper: std_part + upper,
            },
        })
    }

    /// Componentwise monad membership.
    pub fn in_monad(&self, center: &Self) -> Result<Verdict> {
        self.check_dim(center)?;
        Ok(self
            .components
            .iter()
            .zip(&center.components)
            .map(|(a, b)| a.in_monad(b))
            .fold(Verdict::Holds, Verdict::and))
    }
}

fn euclid<C: Scalar>(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x.to_f64() - y.to_f64();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

impl<C: Scalar> fmt::Display for GenVec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl<C: Scalar> PartialOrd for GenNum<C> {
    /// Partial order derived from [`GenNum::order_compare`]; `None` for
    /// incomparable or tail-blocked pairs.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.order_compare(other) {
            OrderVerdict::LE => Some(Ordering::Less),
            OrderVerdict::GE => Some(Ordering::Greater),
            OrderVerdict::EQ => Some(Ordering::Equal),
            OrderVerdict::Incomparable | OrderVerdict::Unknown(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Exponent;

    fn e(p: i64, q: i64) -> Exponent {
        Exponent::new(p, q)
    }

    fn q40() -> Exponent {
        Exponent::from_integer(40)
    }

    fn series(terms: &[(i64, i64, f64)]) -> EpsSeries {
        EpsSeries::exact(terms.iter().map(|&(p, q, c)| (e(p, q), c)).collect())
    }

    fn gn(terms: &[(i64, i64, f64)]) -> GenNum {
        GenNum::from_series(series(terms))
    }

    fn gn2(a: &[(i64, i64, f64)], b: &[(i64, i64, f64)]) -> GenNum {
        GenNum::new(vec![series(a), series(b)]).unwrap()
    }

    #[test]
    fn zero_divisors_multiply_to_zero() {
        let x = gn2(&[(0, 1, 1.0)], &[]);
        let y = gn2(&[], &[(0, 1, 1.0)]);
        let p = x.mul(&y);
        assert!(p.is_zero());
        assert_eq!(p.branch_count(), 1); // collapsed
        assert!(!x.is_invertible());
        assert!(matches!(x.invert(q40()), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn refinement_aligns_branch_counts() {
        // k=2 against k=3 refines to 6 branches.
        let x = gn2(&[(0, 1, 1.0)], &[(0, 1, 2.0)]);
        let y = GenNum::new(vec![
            series(&[(0, 1, 10.0)]),
            series(&[(0, 1, 20.0)]),
            series(&[(0, 1, 30.0)]),
        ])
        .unwrap();
        let s = x.add(&y);
        assert_eq!(s.branch_count(), 6);
        // Branch j holds x_{j mod 2} + y_{j mod 3}.
        let expect = [11.0, 22.0, 31.0, 12.0, 21.0, 32.0];
        for (j, want) in expect.iter().enumerate() {
            assert_eq!(s.branch(j).leading().unwrap().1, want);
        }
    }

    #[test]
    fn valuation_follows_the_full_net() {
        assert_eq!(
            gn(&[(-2, 1, 5.0), (1, 1, 1.0)]).valuation(),
            ValuationBounds::exact(EpsOrder::finite(-2, 1))
        );
        assert_eq!(
            GenNum::<f64>::zero().valuation(),
            ValuationBounds::exact(EpsOrder::Infinite)
        );
        // ⟨ε ∥ ε³⟩: O(ε^b) must hold along the whole net, so v = 1.
        let x = gn2(&[(1, 1, 1.0)], &[(3, 1, 1.0)]);
        assert_eq!(x.valuation(), ValuationBounds::exact(EpsOrder::finite(1, 1)));
        // A pure-tail branch leaves only a lower bound.
        let y: GenNum = GenNum::new(vec![EpsSeries::unknown_tail(e(5, 1))]).unwrap();
        assert_eq!(y.valuation(), ValuationBounds::at_least(EpsOrder::finite(5, 1)));
        assert!(!y.valuation().is_exact());
    }

    #[test]
    fn sharp_distance_examples() {
        // Distinct reals sit at distance exactly 1.
        let d = GenNum::<f64>::from_real(0.3).sharp_dist(&GenNum::from_real(0.7));
        assert_eq!(d, SharpDist::Point(1.0));
        // d_s(ε^q, 0) = e^(−q).
        let x = gn(&[(2, 1, 1.0)]);
        assert_eq!(x.sharp_dist(&GenNum::zero()), SharpDist::Point((-2.0f64).exp()));
        // Ultrametric triple: d(0, ε+ε²) = e^(−1), d(ε+ε², ε) = e^(−2),
        // d(0, ε) = e^(−1) = max.
        let a = GenNum::zero();
        let b = gn(&[(1, 1, 1.0), (2, 1, 1.0)]);
        let c = gn(&[(1, 1, 1.0)]);
        assert_eq!(a.sharp_dist(&b), SharpDist::Point((-1.0f64).exp()));
        assert_eq!(b.sharp_dist(&c), SharpDist::Point((-2.0f64).exp()));
        assert_eq!(a.sharp_dist(&c), SharpDist::Point((-1.0f64).exp()));
    }

    #[test]
    fn order_comparison_verdicts() {
        let eps = GenNum::eps();
        let root = gn(&[(1, 2, 1.0)]);
        assert_eq!(eps.order_compare(&root), OrderVerdict::LE);
        assert_eq!(root.order_compare(&eps), OrderVerdict::GE);
        assert_eq!(eps.order_compare(&GenNum::eps()), OrderVerdict::EQ);
        let x = gn2(&[(0, 1, 1.0)], &[(0, 1, -1.0)]);
        let y = gn2(&[(0, 1, -1.0)], &[(0, 1, 1.0)]);
        assert_eq!(x.order_compare(&y), OrderVerdict::Incomparable);
        let fog: GenNum = GenNum::from_series(EpsSeries::unknown_tail(e(40, 1)));
        assert_eq!(
            fog.order_compare(&GenNum::zero()),
            OrderVerdict::Unknown(e(40, 1))
        );
    }

    #[test]
    fn gen_abs_flips_leading_sign() {
        let x = gn(&[(1, 1, -3.0), (2, 1, 1.0)]);
        assert_eq!(x.gen_abs().unwrap(), gn(&[(1, 1, 3.0), (2, 1, -1.0)]));
        assert_eq!(
            GenNum::<f64>::from_real(-5.0).gen_abs().unwrap(),
            GenNum::from_real(5.0)
        );
        let fog = GenNum::<f64>::from_series(EpsSeries::unknown_tail(e(40, 1)));
        assert!(matches!(fog.gen_abs(), Err(Error::UnknownSign(_))));
    }

    #[test]
    fn min_max_select_branchwise() {
        let x = gn2(&[(0, 1, 1.0)], &[(0, 1, -1.0)]);
        let y = gn2(&[(0, 1, -1.0)], &[(0, 1, 1.0)]);
        // max picks 1 on both branches and collapses to the constant 1.
        let m = x.max(&y).unwrap();
        assert_eq!(m, GenNum::one());
        assert_eq!(m.branch_count(), 1);
        let n = x.min(&y).unwrap();
        assert_eq!(n, GenNum::from_real(-1.0));
        // Infinitesimal tiebreak: min(ε, ε²) = ε² (eventually smaller).
        let p = GenNum::eps().min(&gn(&[(2, 1, 1.0)])).unwrap();
        assert_eq!(p, gn(&[(2, 1, 1.0)]));
    }

    #[test]
    fn inversion_examples() {
        // 2ε inverts exactly.
        let x = gn(&[(1, 1, 2.0)]);
        let inv = x.invert(q40()).unwrap();
        assert_eq!(inv, gn(&[(-1, 1, 0.5)]));
        assert!(inv.is_exact());
        // ε + ε² inverts to the geometric series ε⁻¹ − 1 + ε − ε² + …
        let y = gn(&[(1, 1, 1.0), (2, 1, 1.0)]);
        let inv = y.invert(q40()).unwrap();
        let prod = y.mul(&inv);
        assert_eq!(prod.branch_count(), 1);
        let b = prod.branch(0);
        assert_eq!(b.terms().len(), 1);
        assert_eq!(b.terms()[0], (e(0, 1), 1.0));
        let first: Vec<_> = inv.branch(0).terms().iter().take(3).cloned().collect();
        assert_eq!(first, vec![(e(-1, 1), 1.0), (e(0, 1), -1.0), (e(1, 1), 1.0)]);
    }

    #[test]
    fn near_standard_decomposition() {
        let x = gn(&[(0, 1, 3.0), (1, 2, 2.0), (2, 1, 1.0)]);
        let (st, delta) = x.near_standard_decompose().unwrap();
        assert_eq!(st, 3.0);
        assert_eq!(delta, gn(&[(1, 2, 2.0), (2, 1, 1.0)]));
        assert_eq!(delta.in_monad(&GenNum::zero()), Verdict::Holds);
        assert!(matches!(
            gn(&[(-1, 1, 1.0)]).near_standard_decompose(),
            Err(Error::NotNearStandard(_))
        ));
        let split = gn2(&[(0, 1, 3.0), (1, 1, 1.0)], &[(0, 1, 4.0), (1, 1, 1.0)]);
        assert!(matches!(
            split.near_standard_decompose(),
            Err(Error::NotNearStandard(_))
        ));
        // Unknown content at order 0 blocks the standard part.
        let fog = GenNum::<f64>::from_series(EpsSeries::unknown_tail(e(0, 1)));
        assert!(fog.near_standard_decompose().is_err());
    }

    #[test]
    fn fermat_and_omega_metrics() {
        let a: GenNum = GenNum::from_real(0.25);
        let b = GenNum::from_real(0.75);
        assert_eq!(a.fermat_dist(&b).unwrap(), 0.5);
        assert_eq!(a.omega_dist(&b).unwrap(), SharpDist::Point(0.5));
        // x vs x + ε^(1/2): Fermat-blind, ω sees e^(−1/2).
        let x = gn(&[(0, 1, 1.0), (1, 1, 2.0)]);
        let y = x.add(&gn(&[(1, 2, 1.0)]));
        assert_eq!(x.fermat_dist(&y).unwrap(), 0.0);
        let d = x.omega_dist(&y).unwrap().as_point().unwrap();
        assert!((d - (-0.5f64).exp()).abs() < 1e-15);
        // d_ω(3+ε, 3+ε²) = d_s(ε, ε²) = e^(−1).
        let u = gn(&[(0, 1, 3.0), (1, 1, 1.0)]);
        let v = gn(&[(0, 1, 3.0), (2, 1, 1.0)]);
        let d = u.omega_dist(&v).unwrap().as_point().unwrap();
        assert!((d - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn monad_membership() {
        assert_eq!(gn(&[(1, 2, 1.0)]).in_monad(&GenNum::zero()), Verdict::Holds);
        let x = gn(&[(0, 1, 3.0), (1, 1, 1.0)]);
        assert_eq!(x.in_monad(&GenNum::from_real(3.0)), Verdict::Holds);
        assert_eq!(
            gn(&[(0, 1, 1.0), (1, 1, 1.0)]).in_monad(&GenNum::zero()),
            Verdict::Fails
        );
        // Tail at order 0 hides possible standard content.
        let fog = GenNum::<f64>::from_series(EpsSeries::unknown_tail(e(0, 1)));
        assert_eq!(fog.in_monad(&GenNum::zero()), Verdict::Unknown(e(0, 1)));
        // Tail strictly past 0 cannot hide non-infinitesimal content.
        let fine = GenNum::<f64>::from_series(EpsSeries::unknown_tail(e(1, 2)));
        assert_eq!(fine.in_monad(&GenNum::zero()), Verdict::Holds);
    }

    #[test]
    fn interval_membership_both_kinds() {
        let a = gn2(&[(0, 1, 1.0)], &[(0, 1, -1.0)]);
        let b = GenNum::from_real(2.0);
        let x = GenNum::one();
        assert_eq!(
            interval_contains(IntervalKind::Order, &a, &b, &x),
            Verdict::Holds
        );
        // a − x has a zero branch: endpoint not invertible, not contained.
        assert_eq!(
            interval_contains(IntervalKind::InvertibleEndpoints, &a, &b, &x),
            Verdict::Fails
        );
        assert_eq!(
            interval_contains(
                IntervalKind::Order,
                &GenNum::<f64>::zero(),
                &GenNum::one(),
                &GenNum::eps()
            ),
            Verdict::Holds
        );
        assert_eq!(
            interval_contains(
                IntervalKind::InvertibleEndpoints,
                &GenNum::<f64>::zero(),
                &GenNum::one(),
                &GenNum::eps()
            ),
            Verdict::Holds
        );
    }

    #[test]
    fn vector_norms() {
        let q = q40();
        // Pythagorean monomials: ‖(3ε, 4ε)‖ = 5ε exactly.
        let v = GenVec::new(vec![gn(&[(1, 1, 3.0)]), gn(&[(1, 1, 4.0)])]).unwrap();
        let n = v.norm(q).unwrap();
        assert_eq!(n, gn(&[(1, 1, 5.0)]));
        assert!(n.is_exact());
        assert_eq!(v.valuation(), ValuationBounds::exact(EpsOrder::finite(1, 1)));
        // ‖(1, ε)‖ = 1 + ε²/2 − ε⁴/8 + …
        let w = GenVec::new(vec![GenNum::one(), GenNum::eps()]).unwrap();
        let n = w.norm(q).unwrap();
        let t = n.branch(0).terms();
        assert_eq!(t[0], (e(0, 1), 1.0));
        assert_eq!(t[1], (e(2, 1), 0.5));
        assert_eq!(t[2], (e(4, 1), -0.125));
        // Zero vector.
        let z = GenVec::<f64>::new(vec![GenNum::zero(), GenNum::zero()]).unwrap();
        assert!(z.norm(q).unwrap().is_zero());
    }

    #[test]
    fn display_uses_branch_separator() {
        let x = gn2(&[(0, 1, 3.0), (1, 1, 1.0)], &[(0, 1, 3.0)]);
        assert_eq!(x.to_string(), "3 + eps || 3");
        assert_eq!(GenNum::<f64>::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_index_uses_branch_residue() {
        let x = gn2(&[(0, 1, 1.0)], &[(0, 1, 2.0)]);
        assert_eq!(x.eval_at_index(10), 1.0);
        assert_eq!(x.eval_at_index(11), 2.0);
        let y: GenNum = GenNum::eps();
        assert_eq!(y.eval_at_index(3), 0.125);
    }
}
