//! Thickening geometry and the incremental-ratio calculus (Fermat–Reyes).
//!
//! For an open `U ⊆ ℝ`, the thickening `thick U` is the set of pairs
//! `(x, h)` whose closed segment from `x` to `x+h` stays inside `U`; its
//! near-standard points are exactly the pairs with `(st X, st H) ∈
//! thick U`, and membership comes with a quantitative margin `a` (half
//! the distance from the segment to the complement) that makes the set
//! open for the Fermat topology.
//!
//! On the thickening lives the smooth incremental ratio
//!
//! ```text
//! r(x, h) = ∫₀¹ f′(x + s·h) ds,   so that   f(x+h) = f(x) + h·r(x, h)
//! ```
//!
//! computed here by two independent routes: an exact ring formula for
//! polynomial `f` (the binomial expansion of `((x+h)^d − x^d)/h`), and
//! adaptive Gauss–Legendre integration of the series-valued integrand
//! `s ↦ f′(X + s·H)` otherwise. [`verify_fr`] checks the identity as a
//! series residual, the anchor `r(X, 0) = f′(X)`, agreement with the
//! division route `(f(X+H) − f(X))·H⁻¹` at invertible increments (the
//! computable shadow of the uniqueness theorem), and a fixed-ε numeric
//! oracle.

use crate::config::Config;
use crate::error::Error;
use crate::genfun::GenFunExpr;
use crate::gennum::GenNum;
use crate::order::Exponent;
use crate::quad;
use crate::scalar::Scalar;
use crate::series::EpsSeries;
use crate::Result;
use std::fmt;

/// Finite union of disjoint nondegenerate open intervals, endpoints
/// possibly `±∞`, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenSet1D {
    intervals: Vec<(f64, f64)>,
}

impl OpenSet1D {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Domain("an open set needs at least one interval".into()));
        }
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() || !(lo < hi) {
                return Err(Error::Domain(format!(
                    "({}, {}) is not a nondegenerate interval",
                    lo, hi
                )));
            }
        }
        intervals.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("no NaN endpoints"));
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::Domain(format!(
                    "intervals ({}, {}) and ({}, {}) overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(OpenSet1D { intervals })
    }

    /// The whole line.
    pub fn line() -> Self {
        OpenSet1D { intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.interval_containing(x).is_some()
    }

    /// The component interval containing `x`, if any.
    pub fn interval_containing(&self, x: f64) -> Option<(f64, f64)> {
        self.intervals.iter().copied().find(|&(lo, hi)| lo < x && x < hi)
    }

    /// Is the closed segment `[a, b]` (any orientation) inside a single
    /// component?
    pub fn contains_segment(&self, a: f64, b: f64) -> bool {
        let (lo_pt, hi_pt) = if a <= b { (a, b) } else { (b, a) };
        self.intervals.iter().any(|&(lo, hi)| lo < lo_pt && hi_pt < hi)
    }

    /// Distance from the closed segment `[a, b]` (assumed contained) to
    /// the complement of the set: the component's endpoints are
    /// complement points, so the distance is the smaller endpoint gap
    /// (`+∞` for the whole line).
    pub fn segment_margin(&self, a: f64, b: f64) -> Option<f64> {
        let (lo_pt, hi_pt) = if a <= b { (a, b) } else { (b, a) };
        self.intervals
            .iter()
            .find(|&&(lo, hi)| lo < lo_pt && hi_pt < hi)
            .map(|&(lo, hi)| (lo_pt - lo).min(hi - hi_pt))
    }

    /// Equally spaced interior sample points, `per_interval` from each
    /// component; unbounded components are clipped to `±clip` first.
    pub fn grid_points(&self, per_interval: usize, clip: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for &(lo, hi) in &self.intervals {
            let lo = lo.max(-clip);
            let hi = hi.min(clip);
            if !(lo < hi) {
                continue;
            }
            let n = per_interval as f64 + 1.0;
            for i in 1..=per_interval {
                out.push(lo + (hi - lo) * i as f64 / n);
            }
        }
        out
    }
}

impl fmt::Display for OpenSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn endpoint(v: f64) -> String {
            if v == f64::INFINITY {
                "inf".into()
            } else if v == f64::NEG_INFINITY {
                "-inf".into()
            } else {
                format!("{}", v)
            }
        }
        for (i, &(lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "({}, {})", endpoint(lo), endpoint(hi))?;
        }
        Ok(())
    }
}

/// `(x, h) ∈ thick U`: the closed segment from `x` to `x+h` lies in `U`.
pub fn thickening_contains(u: &OpenSet1D, x: f64, h: f64) -> bool {
    u.contains_segment(x, x + h)
}

/// Near-standard thickening membership with its openness margin.
///
/// Contained iff `(st X, st H) ∈ thick U`; the margin `a` is half the
/// distance from the standard segment to the complement, and
/// `d_F`-perturbations of `(X, H)` by less than `a/2` each keep the pair
/// inside the thickening.
pub fn near_std_thickening<C: Scalar>(
    u: &OpenSet1D,
    x: &GenNum<C>,
    h: &GenNum<C>,
) -> Result<(bool, Option<f64>)> {
    let (sx, _) = x.near_standard_decompose()?;
    let (sh, _) = h.near_standard_decompose()?;
    let (sx, sh) = (sx.to_f64(), sh.to_f64());
    if !thickening_contains(u, sx, sh) {
        return Ok((false, None));
    }
    let margin = u
        .segment_margin(sx, sx + sh)
        .expect("contained segment has a margin")
        / 2.0;
    Ok((true, Some(margin)))
}

/// Largest safe integer degree for the exact binomial path (`C(60, 30)`
/// still fits an i64).
const MAX_EXACT_DEGREE: usize = 60;

/// The incremental ratio `r(X, H)` with `f(X+H) = f(X) + H·r(X, H)`.
///
/// Polynomial `f` takes the exact ring route
/// `r = Σ_d c_d Σ_{k=1}^{d} C(d,k) X^(d−k) H^(k−1)`; anything else
/// integrates the series-valued `s ↦ f′(X + s·H)` by adaptive
/// Gauss–Legendre to `config.quad_tol`.
pub fn incremental_ratio<C: Scalar>(
    f: &GenFunExpr,
    x: &GenNum<C>,
    h: &GenNum<C>,
    config: &Config,
) -> Result<GenNum<C>> {
    let (contained, _) = near_std_thickening(f.domain(), x, h)?;
    if !contained {
        return Err(Error::Domain(format!(
            "(st X, st H) is outside the thickening of {}",
            f.domain()
        )));
    }
    if let Some(coeffs) = f.expr().as_polynomial() {
        if coeffs.len() <= MAX_EXACT_DEGREE + 1 {
            return Ok(polynomial_ratio(&coeffs, x, h));
        }
    }
    let deriv = f.expr().derivative();
    let m = num::integer::lcm(x.branch_count(), h.branch_count());
    let xb = x.refine_to(m);
    let hb = h.refine_to(m);
    let mut branches = Vec::with_capacity(m);
    for (bx, bh) in xb.iter().zip(&hb) {
        let integrand = |s: f64| -> Result<EpsSeries<C>> {
            let at = bx.add(&bh.scale(&C::from_f64(s)));
            deriv.eval_series(&at, config.tail_order)
        };
        branches.push(quad::integrate(
            &integrand,
            0.0,
            1.0,
            config.quad_tol,
            config.quad_max_depth,
        )?);
    }
    GenNum::new(branches)
}

/// Exact ring evaluation of `r` for a polynomial `Σ_d c_d x^d`:
/// termwise `((x+h)^d − x^d)/h = Σ_{k=1}^{d} C(d,k) x^(d−k) h^(k−1)`,
/// which needs no division and is exact for `h = 0` too.
fn polynomial_ratio<C: Scalar>(coeffs: &[Exponent], x: &GenNum<C>, h: &GenNum<C>) -> GenNum<C> {
    let deg = coeffs.len().saturating_sub(1);
    // Powers of x and h up to deg − 1.
    let mut xp: Vec<GenNum<C>> = Vec::with_capacity(deg.max(1));
    let mut hp: Vec<GenNum<C>> = Vec::with_capacity(deg.max(1));
    xp.push(GenNum::one());
    hp.push(GenNum::one());
    for i in 1..deg {
        xp.push(xp[i - 1].mul(x));
        hp.push(hp[i - 1].mul(h));
    }
    let mut acc = GenNum::zero();
    for (d, c_d) in coeffs.iter().enumerate().skip(1) {
        if c_d.numer() == &0 {
            continue;
        }
        let mut binom: i64 = 1;
        for k in 1..=d {
            // C(d, k) built incrementally: C(d,k) = C(d,k−1)·(d−k+1)/k.
            binom = binom * (d as i64 - k as i64 + 1) / k as i64;
            let coeff = C::from_exponent(*c_d)
                * C::from_exponent(Exponent::from_integer(binom));
            acc = acc.add(&xp[d - k].mul(&hp[k - 1]).scale(&coeff));
        }
    }
    acc
}

/// Fixed-ε incremental ratio `∫₀¹ f_ε′(x₀ + s·h₀) ds` — the independent
/// numeric oracle for [`incremental_ratio`].
pub fn incremental_ratio_numeric(
    f: &GenFunExpr,
    eps0: f64,
    x0: f64,
    h0: f64,
) -> Result<f64> {
    if !thickening_contains(f.domain(), x0, h0) {
        return Err(Error::Domain(format!(
            "segment from {} to {} leaves {}",
            x0,
            x0 + h0,
            f.domain()
        )));
    }
    let deriv = f.expr().derivative();
    let integrand = |s: f64| deriv.eval_f64(x0 + s * h0, eps0);
    quad::integrate(&integrand, 0.0, 1.0, 1e-12, 30)
}

/// Outcome of the four Fermat–Reyes checks for one `(f, X, H)`.
#[derive(Debug, Clone)]
pub struct FrVerdict<C: Scalar = f64> {
    /// The computed incremental ratio `r(X, H)`.
    pub ratio: GenNum<C>,
    /// Largest known coefficient of `f(X+H) − f(X) − H·r`.
    pub residual_max: f64,
    /// Largest coefficient gap between `r(X, 0)` and `f′(X)`.
    pub deriv_gap_max: f64,
    /// Largest coefficient gap between `r` and `(f(X+H) − f(X))·H⁻¹`,
    /// normalized by the magnitude of the factors of that product: the
    /// inverse of `H = c·ε^a(1 + u)` genuinely carries coefficients that
    /// grow like powers of `u`, and the product cancels them back down to
    /// the scale of `r`, so agreement can only be meaningful relative to
    /// the sizes actually multiplied (`None` when `H` is not invertible
    /// and the route is unavailable).
    pub division_gap_max: Option<f64>,
    /// Worst fixed-ε identity residual `|f_ε(x+h) − f_ε(x) − h·r_ε|`.
    pub oracle_identity_max: f64,
    /// Worst fixed-ε relative gap between the series ratio and the
    /// quadrature oracle.
    pub oracle_ratio_rel_max: f64,
    /// Tolerances the verdict was judged against (from the config).
    pub residual_tol: f64,
    pub oracle_tol: f64,
}

impl<C: Scalar> FrVerdict<C> {
    pub fn passed(&self) -> bool {
        self.residual_max <= self.residual_tol
            && self.deriv_gap_max <= self.residual_tol
            && self.division_gap_max.map_or(true, |g| g <= self.residual_tol)
            && self.oracle_identity_max <= self.oracle_tol
            && self.oracle_ratio_rel_max <= self.oracle_tol
    }

    /// `(check name, measured, tolerance, ok)` rows for reporting.
    pub fn rows(&self) -> Vec<(&'static str, Option<f64>, f64, bool)> {
        vec![
            (
                "residual",
                Some(self.residual_max),
                self.residual_tol,
                self.residual_max <= self.residual_tol,
            ),
            (
                "deriv_at_zero",
                Some(self.deriv_gap_max),
                self.residual_tol,
                self.deriv_gap_max <= self.residual_tol,
            ),
            (
                "division_path",
                self.division_gap_max,
                self.residual_tol,
                self.division_gap_max.map_or(true, |g| g <= self.residual_tol),
            ),
            (
                "oracle_identity",
                Some(self.oracle_identity_max),
                self.oracle_tol,
                self.oracle_identity_max <= self.oracle_tol,
            ),
            (
                "oracle_ratio",
                Some(self.oracle_ratio_rel_max),
                self.oracle_tol,
                self.oracle_ratio_rel_max <= self.oracle_tol,
            ),
        ]
    }
}

fn max_abs_over_branches<C: Scalar>(x: &GenNum<C>) -> f64 {
    x.branches().iter().map(EpsSeries::max_abs_coeff).fold(0.0, f64::max)
}

/// Run the full Fermat–Reyes check battery for one `(f, X, H)`.
pub fn verify_fr<C: Scalar>(
    f: &GenFunExpr,
    x: &GenNum<C>,
    h: &GenNum<C>,
    config: &Config,
) -> Result<FrVerdict<C>> {
    let ratio = incremental_ratio(f, x, h, config)?;
    let xh = x.add(h);
    let f_xh = f.eval_gen(&xh, config)?;
    let f_x = f.eval_gen(x, config)?;
    let residual = f_xh.sub(&f_x).sub(&h.mul(&ratio));
    let residual_max = max_abs_over_branches(&residual);

    // r(X, 0) against the symbolic derivative evaluated at X.
    let r0 = incremental_ratio(f, x, &GenNum::zero(), config)?;
    let fprime = f.derivative(1).eval_gen(x, config)?;
    let deriv_gap_max = max_abs_over_branches(&r0.sub(&fprime));

    // Division route at invertible increments (uniqueness shadow),
    // measured relative to the factor sizes — see `division_gap_max`.
    let division_gap_max = if h.is_invertible() {
        let h_inv = h.invert(config.tail_order)?;
        let diff = f_xh.sub(&f_x);
        let r_div = diff.mul(&h_inv);
        let scale = 1f64.max(max_abs_over_branches(&diff) * max_abs_over_branches(&h_inv));
        Some(max_abs_over_branches(&ratio.sub(&r_div)) / scale)
    } else {
        None
    };

    // Fixed-ε oracles across the configured index window.
    let (j_lo, j_hi) = config.oracle_j_range;
    let mut oracle_identity_max: f64 = 0.0;
    let mut oracle_ratio_rel_max: f64 = 0.0;
    for j in j_lo..=j_hi {
        let eps = 2f64.powi(-(j as i32));
        let xj = x.eval_at_index(j);
        let hj = h.eval_at_index(j);
        let rj = ratio.eval_at_index(j);
        let fxh = f.eval_real(eps, xj + hj)?;
        let fx = f.eval_real(eps, xj)?;
        oracle_identity_max = oracle_identity_max.max((fxh - fx - hj * rj).abs());
        let rq = incremental_ratio_numeric(f, eps, xj, hj)?;
        oracle_ratio_rel_max = oracle_ratio_rel_max.max((rj - rq).abs() / 1f64.max(rq.abs()));
    }

    Ok(FrVerdict {
        ratio,
        residual_max,
        deriv_gap_max,
        division_gap_max,
        oracle_identity_max,
        oracle_ratio_rel_max,
        residual_tol: config.residual_tol,
        oracle_tol: config.oracle_rel_tol,
    })
}
