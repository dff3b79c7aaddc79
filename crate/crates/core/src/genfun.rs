//! Generalized functions as expression nets over an open domain.
//!
//! A [`GenFunExpr`] pairs a closed-form expression in `x` and `eps`
//! with an open subset of the line. It can be evaluated two ways: at a
//! fixed representative `ε₀` on real inputs ([`GenFunExpr::eval_real`]),
//! or at a generalized point in Taylor mode, branch by branch
//! ([`GenFunExpr::eval_gen`]); the two must agree along `ε_j = 2^(−j)`,
//! which [`GenFunExpr::oracle_residual`] measures. On top of evaluation
//! sit the seminorm estimators (sup of a derivative over a compact
//! piece, its ε-scaling fitted to a rational valuation), the
//! sharp-continuity certificate, and the probe harness that hunts for a
//! nonzero witness on a deterministic grid of generalized points.

use crate::config::Config;
use crate::error::Error;
use crate::expr::Expr;
use crate::fermat_reyes::OpenSet1D;
use crate::gennum::{GenNum, Verdict};
use crate::order::{snap_to_rational, EpsOrder, Exponent};
use crate::scalar::Scalar;
use crate::Result;
use std::fmt;

/// An expression net `u = [x ↦ expr(x, ε)]` on an open domain `U`.
#[derive(Debug, Clone)]
pub struct GenFunExpr {
    expr: Expr,
    domain: OpenSet1D,
}

impl GenFunExpr {
    pub fn new(expr: Expr, domain: OpenSet1D) -> Self {
        GenFunExpr { expr, domain }
    }

    /// Domain `(−∞, ∞)`.
    pub fn on_line(expr: Expr) -> Self {
        GenFunExpr { expr, domain: OpenSet1D::line() }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain(&self) -> &OpenSet1D {
        &self.domain
    }

    /// Representative-level evaluation `u_ε₀(x₀)` for real `x₀ ∈ U`.
    pub fn eval_real(&self, eps0: f64, x0: f64) -> Result<f64> {
        if !self.domain.contains_point(x0) {
            return Err(Error::Domain(format!("{} is outside {}", x0, self.domain)));
        }
        self.expr.eval_f64(x0, eps0)
    }

    /// Taylor-mode evaluation at a near-standard generalized point whose
    /// standard part lies in `U`; each branch is expanded independently
    /// to the working tail order.
    pub fn eval_gen<C: Scalar>(&self, x: &GenNum<C>, config: &Config) -> Result<GenNum<C>> {
        let (st, _) = x.near_standard_decompose()?;
        let st = st.to_f64();
        if !self.domain.contains_point(st) {
            return Err(Error::Domain(format!(
                "standard part {} is outside {}",
                st, self.domain
            )));
        }
        let mut branches = Vec::with_capacity(x.branch_count());
        for b in x.branches() {
            branches.push(self.expr.eval_series(b, config.tail_order)?);
        }
        GenNum::new(branches)
    }

    /// `∂ⁿu` as a generalized function on the same domain.
    pub fn derivative(&self, n: u32) -> GenFunExpr {
        GenFunExpr { expr: self.expr.derivative_n(n), domain: self.domain.clone() }
    }

    /// Worst relative gap, across the configured index window, between
    /// a Taylor-mode result and representative-level evaluation of the
    /// same input: `|value(ε_j) − u_{ε_j}(x(ε_j))| / max(1, |·|)`.
    pub fn oracle_residual<C: Scalar>(
        &self,
        x: &GenNum<C>,
        value: &GenNum<C>,
        config: &Config,
    ) -> Result<f64> {
        let (j_lo, j_hi) = config.oracle_j_range;
        let mut worst: f64 = 0.0;
        for j in j_lo..=j_hi {
            let eps = 2f64.powi(-(j as i32));
            let direct = self.eval_real(eps, x.eval_at_index(j))?;
            let gap = (value.eval_at_index(j) - direct).abs() / 1f64.max(direct.abs());
            worst = worst.max(gap);
        }
        Ok(worst)
    }

    /// Fit the ε-scaling of `sup_K |∂^α u|` and snap it to a small
    /// rational: the computable estimate of the valuation `v(p_{K,α}(u))`.
    pub fn valuation_estimate(
        &self,
        k: (f64, f64),
        alpha: u32,
        config: &Config,
    ) -> Result<ValuationEstimate> {
        let (a, b) = k;
        if !(a < b) || !self.domain.contains_segment(a, b) {
            return Err(Error::Domain(format!(
                "[{}, {}] is not a compact subinterval of {}",
                a, b, self.domain
            )));
        }
        let deriv = self.derivative(alpha);
        let n = config.grid_points.max(2);
        let grid: Vec<f64> = (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect();
        let mut rows = Vec::new();
        for j in 4u32..=40 {
            let eps = 2f64.powi(-(j as i32));
            let mut sup: f64 = 0.0;
            for &x0 in &grid {
                sup = sup.max(deriv.expr.eval_f64(x0, eps)?.abs());
            }
            rows.push((j, sup));
        }
        if rows.iter().all(|&(_, s)| s < config.negligible_threshold) {
            return Ok(ValuationEstimate {
                slope: f64::INFINITY,
                snapped: None,
                negligible: true,
                rows,
            });
        }
        // Least squares of ln sup against ln ε over usable rows.
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|&&(_, s)| s.is_finite() && s > 0.0)
            .map(|&(j, s)| ((2f64.powi(-(j as i32))).ln(), s.ln()))
            .collect();
        if pts.len() < 2 {
            return Err(Error::Numeric(
                "not enough usable sup samples to fit a valuation slope".into(),
            ));
        }
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        // A slope beyond every representable tail order means the sups
        // decay faster than any ε-power at desk scale: negligible (the
        // fit for e.g. exp(−1/ε) runs in the thousands).
        let negligible = slope > 1.5 * EpsOrder::Finite(config.tail_order).to_f64();
        Ok(ValuationEstimate {
            slope,
            snapped: if negligible { None } else { snap_to_rational(slope, 12, config.fit_margin) },
            negligible,
            rows,
        })
    }

    /// The sharp seminorm `p^g_{K,α}(u) = e^(−v)` from the fitted
    /// valuation (0 when the derivative is negligible on `K`).
    pub fn seminorm(&self, k: (f64, f64), alpha: u32, config: &Config) -> Result<f64> {
        Ok(self.valuation_estimate(k, alpha, config)?.seminorm())
    }

    /// Decide `p^g_{K,α}(u) < ρ` for a positive invertible radius by
    /// comparing the fitted valuation against the leading exponent of
    /// `ρ`; a tie within the fit margin is honestly `Unknown`.
    pub fn seminorm_ball<C: Scalar>(
        &self,
        k: (f64, f64),
        alpha: u32,
        rho: &GenNum<C>,
        config: &Config,
    ) -> Result<Verdict> {
        if !rho.is_positive_invertible() {
            return Err(Error::Domain(
                "a seminorm ball needs a positive invertible radius".into(),
            ));
        }
        let est = self.valuation_estimate(k, alpha, config)?;
        if est.negligible {
            return Ok(Verdict::Holds);
        }
        let a_rho = rho
            .branches()
            .iter()
            .map(|b| b.leading().expect("positive invertible").0)
            .max()
            .expect("nonempty");
        let v = est.value();
        let diff = v - EpsOrder::Finite(a_rho).to_f64();
        Ok(if diff > config.fit_margin {
            Verdict::Holds
        } else if diff < -config.fit_margin {
            Verdict::Fails
        } else {
            Verdict::Unknown(a_rho)
        })
    }

    /// Hunt for a nonzero witness on the deterministic probe grid:
    /// generalized points `r + c·ε^q` with `r` from an interior grid of
    /// `U`, offsets `c ∈ {1, −1, 1/2, −1/2}`, exponents
    /// `q ∈ {1/2, 1, …, 10}`. A probe witnesses nonzeroness when the
    /// value has a coefficient above the witness threshold at an order
    /// below the working tail. Probes that fail to evaluate certify
    /// nothing and are skipped.
    pub fn probe_nonzero(&self, config: &Config) -> Result<ProbeOutcome> {
        let rs = self.domain.grid_points(15, 8.0);
        if rs.is_empty() {
            return Err(Error::Domain(format!("no probe grid inside {}", self.domain)));
        }
        let cs = [1.0f64, -1.0, 0.5, -0.5];
        let mut qs = vec![Exponent::new(1, 2)];
        qs.extend((1..=10).map(Exponent::from_integer));
        let mut probes = 0usize;
        for &r in &rs {
            for &c in &cs {
                for &q in &qs {
                    probes += 1;
                    let x = GenNum::from_real(r).add(&GenNum::monomial(q, c));
                    let value = match self.eval_gen(&x, config) {
                        Ok(v) => v,
                        Err(_) => continue,
                    };
                    let witness = value.branches().iter().any(|b| {
                        b.terms().iter().any(|(e, co)| {
                            *e < config.tail_order && co.to_f64().abs() > config.witness_threshold
                        })
                    });
                    if witness {
                        return Ok(ProbeOutcome::Witness { x, value, probes });
                    }
                }
            }
        }
        Ok(ProbeOutcome::Exhausted { probes })
    }
}

impl fmt::Display for GenFunExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.expr, self.domain)
    }
}

/// Result of fitting `ln sup_K |∂^α u_ε|` against `ln ε`.
#[derive(Debug, Clone)]
pub struct ValuationEstimate {
    /// Raw least-squares slope (`+∞` when negligible).
    pub slope: f64,
    /// The slope snapped to a rational with denominator ≤ 12, when one
    /// lies within the fit margin.
    pub snapped: Option<Exponent>,
    /// All sups fell below the negligibility threshold.
    pub negligible: bool,
    /// `(j, sup_K |∂^α u_{2^(−j)}|)` rows behind the fit.
    pub rows: Vec<(u32, f64)>,
}

impl ValuationEstimate {
    /// Best available numeric value of the valuation.
    pub fn value(&self) -> f64 {
        match self.snapped {
            _ if self.negligible => f64::INFINITY,
            Some(r) => EpsOrder::Finite(r).to_f64(),
            None => self.slope,
        }
    }

    /// The fitted valuation as an ε-order, when it snapped cleanly.
    pub fn order(&self) -> Option<EpsOrder> {
        if self.negligible {
            Some(EpsOrder::Infinite)
        } else {
            self.snapped.map(EpsOrder::Finite)
        }
    }

    /// `e^(−v)`, the seminorm the estimate certifies.
    pub fn seminorm(&self) -> f64 {
        if self.negligible {
            0.0
        } else {
            (-self.value()).exp()
        }
    }
}

/// Outcome of the nonzero-witness probe harness.
#[derive(Debug, Clone)]
pub enum ProbeOutcome {
    /// A probe point and its value with a visible nonzero coefficient.
    Witness { x: GenNum, value: GenNum, probes: usize },
    /// Every probe evaluated to zero up to the working tail order.
    Exhausted { probes: usize },
}

impl ProbeOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, ProbeOutcome::Witness { .. })
    }

    pub fn probes(&self) -> usize {
        match self {
            ProbeOutcome::Witness { probes, .. } | ProbeOutcome::Exhausted { probes } => *probes,
        }
    }
}
