//! Adaptive Gauss–Legendre quadrature for smooth integrands, generic over
//! the value type.
//!
//! The incremental-ratio construction integrates series-valued functions
//! `s ↦ f′(X + s·H)` over `[0, 1]`: each evaluation is an [`EpsSeries`],
//! and the integral is taken coefficientwise. [`QuadValue`] abstracts the
//! little that quadrature needs — weighted accumulation and an error
//! norm — so the same driver serves plain `f64` oracles and series.
//!
//! The driver is 16-point Gauss–Legendre with adaptive bisection: a panel
//! is accepted when the two-half estimate agrees with the whole-panel
//! estimate within the absolute tolerance (scaled by the panel's share of
//! the interval); otherwise it splits, to a maximum depth, beyond which
//! the integrand is declared numerically unmanageable.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::series::EpsSeries;
use crate::Result;
use std::sync::OnceLock;

/// Values that can be accumulated by quadrature.
pub trait QuadValue: Clone {
    fn q_zero() -> Self;
    fn q_add(&self, other: &Self) -> Self;
    /// Multiply by a quadrature weight.
    fn q_scale(&self, w: f64) -> Self;
    /// Error norm between two estimates of the same quantity.
    fn q_dist(&self, other: &Self) -> f64;
    /// Magnitude of the value itself, for relative roundoff floors.
    fn q_norm(&self) -> f64;
}

impl QuadValue for f64 {
    fn q_zero() -> Self {
        0.0
    }
    fn q_add(&self, other: &Self) -> Self {
        self + other
    }
    fn q_scale(&self, w: f64) -> Self {
        self * w
    }
    fn q_dist(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn q_norm(&self) -> f64 {
        self.abs()
    }
}

impl<C: Scalar> QuadValue for EpsSeries<C> {
    fn q_zero() -> Self {
        EpsSeries::zero()
    }
    fn q_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn q_scale(&self, w: f64) -> Self {
        self.scale(&C::from_f64(w))
    }
    /// Largest coefficient magnitude of the difference: quadrature
    /// converges when every ε-order's coefficient has converged.
    fn q_dist(&self, other: &Self) -> f64 {
        self.sub(other).max_abs_coeff()
    }
    fn q_norm(&self) -> f64 {
        self.max_abs_coeff()
    }
}

const GL_ORDER: usize = 16;

/// Nodes and weights of 16-point Gauss–Legendre on `[−1, 1]`, computed
/// once by Newton iteration on `P_16` (Chebyshev-angle starting guesses).
fn gl_nodes() -> &'static [(f64, f64); GL_ORDER] {
    static NODES: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = [(0.0, 0.0); GL_ORDER];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            *slot = (x, w);
        }
        out
    })
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gl_panel<V, F>(f: &F, a: f64, b: f64) -> Result<V>
where
    V: QuadValue,
    F: Fn(f64) -> Result<V>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = V::q_zero();
    for &(x, w) in gl_nodes() {
        let v = f(mid + half * x)?;
        acc = acc.q_add(&v.q_scale(w * half));
    }
    Ok(acc)
}

/// Total panel budget of one `integrate` call: adaptive bisection that
/// needs more panels than this is treated as non-convergent rather than
/// allowed to grind (series-valued panels are individually expensive).
const MAX_PANELS: usize = 1024;

/// `∫_a^b f(s) ds` by adaptive bisection of 16-point Gauss–Legendre
/// panels to absolute tolerance `tol`.
pub fn integrate<V, F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<V>
where
    V: QuadValue,
    F: Fn(f64) -> Result<V>,
{
    let whole = gl_panel(f, a, b)?;
    let mut budget = MAX_PANELS;
    refine(f, a, b, whole, tol, max_depth, 0, &mut budget)
}

/// Per-panel tolerance floor: halving shares below machine precision
/// demands the impossible of O(1) double-precision panel values (the
/// residual would be pure roundoff), so shares stop shrinking here.
const TOL_FLOOR: f64 = 1e-15;

/// Relative roundoff floor: a 16-node weighted sum of values of
/// magnitude `s` carries ~16·ulp(s) of noise, so demanding agreement
/// below that is demanding the impossible of doubles.
const REL_FLOOR: f64 = 16.0 * f64::EPSILON;

#[allow(clippy::too_many_arguments)]
fn refine<V, F>(
    f: &F,
    a: f64,
    b: f64,
    whole: V,
    tol: f64,
    max_depth: u32,
    depth: u32,
    budget: &mut usize,
) -> Result<V>
where
    V: QuadValue,
    F: Fn(f64) -> Result<V>,
{
    if *budget < 2 {
        return Err(Error::Numeric(format!(
            "quadrature exceeded its panel budget of {} on [{}, {}]",
            MAX_PANELS, a, b
        )));
    }
    *budget -= 2;
    let mid = 0.5 * (a + b);
    let left = gl_panel(f, a, mid)?;
    let right = gl_panel(f, mid, b)?;
    let two_half = left.q_add(&right);
    let scale = whole.q_norm().max(two_half.q_norm());
    let tol = tol.max(TOL_FLOOR).max(REL_FLOOR * scale);
    if two_half.q_dist(&whole) <= tol {
        return Ok(two_half);
    }
    if depth >= max_depth {
        return Err(Error::Numeric(format!(
            "quadrature did not converge on [{}, {}] at depth {} (residual {:.3e} > {:.3e})",
            a,
            b,
            depth,
            two_half.q_dist(&whole),
            tol
        )));
    }
    let lt = refine(f, a, mid, left, 0.5 * tol, max_depth, depth + 1, budget)?;
    let rt = refine(f, mid, b, right, 0.5 * tol, max_depth, depth + 1, budget)?;
    Ok(lt.q_add(&rt))
}
