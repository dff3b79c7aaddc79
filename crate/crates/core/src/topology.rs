//! The four topologies side by side: sharp, generalized-absolute-value,
//! Fermat, and omega balls, with computable inclusion certificates
//! between the first two, the openness witness for sharp spheres, the
//! infinitesimal indicator, real traces of `⌈·⌉`-balls, and sequence
//! classification tables.
//!
//! Verdicts here are three-valued: a ball membership can genuinely be
//! undecidable at the working tail order, and then it is reported as
//! `Unknown` with the blocking order rather than guessed.

use crate::config::Config;
use crate::error::Error;
use crate::gennum::{GenNum, SharpDist, Verdict};
use crate::order::{rational_ceil, EpsOrder, Exponent, Sign, ValuationBounds};
use crate::report::VerdictReport;
use crate::scalar::Scalar;
use crate::Result;
use std::fmt;

/// Open ball in one of the four metrics/gauges on generalized numbers.
#[derive(Debug, Clone)]
pub enum Ball<C: Scalar = f64> {
    /// `{x : d_s(x, center) < r}` — ultrametric, decided at exponent level.
    Sharp { center: GenNum<C>, r: f64 },
    /// `{x : ⌈x − center⌉ < ρ}` — radius itself a generalized number.
    Gabs { center: GenNum<C>, rho: GenNum<C> },
    /// `{x : d_F(x, center) < r}` — pseudometric of standard parts.
    Fermat { center: GenNum<C>, r: f64 },
    /// `{x : d_ω(x, center) < r}` — standard gap plus sharp gap.
    Omega { center: GenNum<C>, r: f64 },
}

/// Verdict for `dist < r` given two-sided bounds on the distance.
fn dist_less(lower: f64, upper: f64, r: f64, blocking: ValuationBounds) -> Verdict {
    if upper < r {
        Verdict::Holds
    } else if lower >= r {
        Verdict::Fails
    } else {
        match blocking.lo {
            EpsOrder::Finite(t) => Verdict::Unknown(t),
            EpsOrder::Infinite => Verdict::Holds,
        }
    }
}

impl<C: Scalar> Ball<C> {
    /// Three-valued membership. `Fermat` and `Omega` balls require
    /// near-standard points and propagate that error; `Gabs` membership
    /// blocked by an unknown-sign radius difference is `Unknown`, not an
    /// error.
    pub fn contains(&self, x: &GenNum<C>) -> Result<Verdict> {
        match self {
            Ball::Sharp { center, r } => {
                let v = x.dist_valuation(center);
                let d = SharpDist::from_valuation(v);
                Ok(dist_less(d.lower(), d.upper(), *r, v))
            }
            Ball::Gabs { center, rho } => {
                let diff = x.sub(center);
                match diff.gen_abs() {
                    Ok(abs) => Ok(abs.strictly_less(rho)),
                    Err(Error::UnknownSign(EpsOrder::Finite(t))) => Ok(Verdict::Unknown(t)),
                    Err(e) => Err(e),
                }
            }
            Ball::Fermat { center, r } => {
                Ok(Verdict::from_bool(x.fermat_dist(center)? < *r))
            }
            Ball::Omega { center, r } => {
                let (sx, dx) = x.near_standard_decompose()?;
                let (sc, dc) = center.near_standard_decompose()?;
                let gap = (sx.to_f64() - sc.to_f64()).abs();
                let dv = dx.sub(&dc).valuation();
                let d = SharpDist::from_valuation(dv);
                Ok(dist_less(gap + d.lower(), gap + d.upper(), *r, dv))
            }
        }
    }
}

/// Certificate that the gabs ball of radius `ε^rho_exponent` sits inside
/// the sharp ball of the given radius around the same center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabsInclusionCert {
    /// The real exponent `q = −ln(r/2) + 1` the construction asks for.
    pub q: f64,
    /// `q` rounded *up* to a rational with denominator 12 — rounding up
    /// shrinks the gabs ball, so inclusion survives the rounding.
    pub rho_exponent: Exponent,
}

/// `B^g(center, ε^q) ⊆ B^s(center, r)` with `q = −ln(r/2) + 1`,
/// representable over the rational exponent lattice.
pub fn sharp_to_gabs(r: f64) -> Result<GabsInclusionCert> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("sharp radius must be positive, got {}", r)));
    }
    let q = -(r / 2.0).ln() + 1.0;
    Ok(GabsInclusionCert { q, rho_exponent: rational_ceil(q, 12) })
}

impl GabsInclusionCert {
    /// The radius of the inner gabs ball, as a generalized number.
    pub fn rho<C: Scalar>(&self) -> GenNum<C> {
        GenNum::monomial(self.rho_exponent, C::one())
    }
}

impl fmt::Display for GabsInclusionCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B^g(c, eps^({})) is contained in the sharp ball (q = {:.9})",
            self.rho_exponent, self.q
        )
    }
}

/// Certificate that the sharp ball of radius `e^(−(q+1))` sits inside a
/// gabs ball of radius `ρ` around the same center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpInclusionCert {
    /// Least integer with `ε^q ≤ ρ` eventually on every branch.
    pub q: i64,
    /// Sharp radius `e^(−(q+1))`.
    pub r: f64,
}

/// `B^s(center, e^(−(q+1))) ⊆ B^g(center, ρ)` for positive invertible
/// `ρ`, with `q` the least integer such that `ε^q ≤ ρ` eventually.
pub fn gabs_to_sharp<C: Scalar>(rho: &GenNum<C>) -> Result<SharpInclusionCert> {
    if !rho.is_positive_invertible() {
        return Err(Error::Domain(
            "gabs radius must be positive invertible to certify an inner sharp ball".into(),
        ));
    }
    // ρ's slowest branch has leading exponent a; some q ≤ ⌊a⌋ + 2 works,
    // and the order machinery decides each candidate exactly.
    let a = rho
        .branches()
        .iter()
        .map(|b| b.leading().expect("positive invertible").0)
        .max()
        .expect("nonempty");
    let floor_a = num::Integer::div_floor(a.numer(), a.denom());
    for q in floor_a..=floor_a + 2 {
        let probe: GenNum<C> = GenNum::monomial(Exponent::from_integer(q), C::one());
        if probe.order_compare(rho).le_holds().holds() {
            return Ok(SharpInclusionCert { q, r: (-(q as f64) - 1.0).exp() });
        }
    }
    Err(Error::Numeric(
        "no integer exponent within two of the leading order is below the radius".into(),
    ))
}

impl fmt::Display for SharpInclusionCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B^s(c, e^(-{})) = B^s(c, {:.9}) is contained in the gabs ball",
            self.q + 1,
            self.r
        )
    }
}

/// Openness witness for the sharp sphere `S(center, e^(−m))`: around any
/// sphere point `y`, the whole gabs ball of radius `ε^q`, `q = m + 1`,
/// stays on the sphere — an ultrametric effect with a checkable radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereWitnessCert {
    /// Exact valuation `m` of `y − center` (sphere radius `e^(−m)`).
    pub m: Exponent,
    /// Gabs radius exponent of the certified neighborhood, `m + 1`.
    pub q: Exponent,
}

/// Certify that `y` lies on the sharp sphere of radius `e^(−m)` and
/// produce the neighborhood exponent. Fails when the distance valuation
/// is not exactly known or `y` is the center.
pub fn sphere_openness_witness<C: Scalar>(
    center: &GenNum<C>,
    y: &GenNum<C>,
) -> Result<SphereWitnessCert> {
    let v = y.dist_valuation(center);
    match v.value() {
        Some(EpsOrder::Finite(m)) => Ok(SphereWitnessCert {
            m,
            q: m + Exponent::from_integer(1),
        }),
        Some(EpsOrder::Infinite) => Err(Error::Domain(
            "y equals the center; it is not on any sphere of positive radius".into(),
        )),
        None => Err(Error::Unknown(v.lo)),
    }
}

impl SphereWitnessCert {
    /// Check the witness on a candidate `z`: membership in the gabs
    /// neighborhood `⌈z − y⌉ < ε^q` must imply `v(z − center) = m`
    /// exactly. Points outside the neighborhood satisfy the implication
    /// vacuously.
    pub fn check<C: Scalar>(
        &self,
        center: &GenNum<C>,
        y: &GenNum<C>,
        z: &GenNum<C>,
    ) -> Result<Verdict> {
        let ball = Ball::Gabs { center: y.clone(), rho: GenNum::monomial(self.q, C::one()) };
        match ball.contains(z)? {
            Verdict::Fails => Ok(Verdict::Holds),
            Verdict::Unknown(t) => Ok(Verdict::Unknown(t)),
            Verdict::Holds => {
                let v = z.dist_valuation(center);
                Ok(match v.value() {
                    Some(EpsOrder::Finite(m)) if m == self.m => Verdict::Holds,
                    Some(_) => Verdict::Fails,
                    None => match v.lo {
                        EpsOrder::Finite(t) => Verdict::Unknown(t),
                        EpsOrder::Infinite => Verdict::Fails,
                    },
                })
            }
        }
    }
}

/// Indicator of the monad of 0: `1` on infinitesimals, `0` away from
/// them, and an honest error when the input's tail leaves it undecided.
pub fn indicator_infinitesimal<C: Scalar>(x: &GenNum<C>) -> Result<u8> {
    match x.in_monad(&GenNum::zero()) {
        Verdict::Holds => Ok(1),
        Verdict::Fails => Ok(0),
        Verdict::Unknown(t) => Err(Error::Unknown(EpsOrder::Finite(t))),
    }
}

/// The set of standard reals inside a gabs ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealTrace {
    /// No real qualifies (the radius is zero or eventually negative).
    Empty,
    /// Exactly the center.
    Singleton(f64),
    /// A bounded interval, open or closed at both ends.
    Interval { lo: f64, hi: f64, closed: bool },
    /// Every real qualifies (unbounded radius).
    Line,
}

impl fmt::Display for RealTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealTrace::Empty => write!(f, "{{}}"),
            RealTrace::Singleton(c) => write!(f, "{{{}}}", c),
            RealTrace::Interval { lo, hi, closed: true } => write!(f, "[{}, {}]", lo, hi),
            RealTrace::Interval { lo, hi, closed: false } => write!(f, "({}, {})", lo, hi),
            RealTrace::Line => write!(f, "(-inf, inf)"),
        }
    }
}

/// Which standard reals `s` satisfy `⌈s − center⌉ < ρ`.
///
/// A standard radius gives the open interval; an infinitesimal radius
/// collapses the trace to the center; a near-standard radius `c + δρ`
/// with `c > 0` keeps the interval and decides the endpoints by the
/// sign of `δρ` (positive: included; negative or zero: excluded). An
/// unbounded positive radius traces the whole line, and a radius of
/// undecidable sign is an honest error.
pub fn real_trace_of_gabs_ball<C: Scalar>(center: f64, rho: &GenNum<C>) -> Result<RealTrace> {
    if rho.is_zero() {
        return Ok(RealTrace::Empty);
    }
    // Branch signs first: any eventually-negative branch empties the
    // ball; a hidden sign is undecidable.
    for b in rho.branches() {
        match b.leading() {
            Some((_, c)) => {
                if Sign::of(c) == Sign::Neg {
                    return Ok(RealTrace::Empty);
                }
            }
            None => match b.tail() {
                EpsOrder::Infinite => return Ok(RealTrace::Empty),
                EpsOrder::Finite(t) => return Err(Error::UnknownSign(EpsOrder::Finite(t))),
            },
        }
    }
    // Positive on every branch. Unbounded on all branches → whole line.
    let all_unbounded = rho
        .branches()
        .iter()
        .all(|b| matches!(b.leading(), Some((e, _)) if e.numer() < &0));
    if all_unbounded {
        return Ok(RealTrace::Line);
    }
    let (st, delta) = rho.near_standard_decompose()?;
    let c = st.to_f64();
    if c == 0.0 {
        // Positive infinitesimal radius: only the center itself.
        return Ok(RealTrace::Singleton(center));
    }
    // Near-standard radius c + δ with c > 0: endpoint inclusion is the
    // sign of δ (every branch must agree to include).
    let mut closed = true;
    for b in delta.branches() {
        match b.leading() {
            Some((_, dc)) => {
                if Sign::of(dc) == Sign::Neg {
                    closed = false;
                }
            }
            None => match b.tail() {
                EpsOrder::Infinite => closed = false,
                EpsOrder::Finite(t) => return Err(Error::UnknownSign(EpsOrder::Finite(t))),
            },
        }
    }
    Ok(RealTrace::Interval { lo: center - c, hi: center + c, closed })
}

/// A named sequence of generalized numbers with a candidate limit,
/// classified row by row under the three metrics.
pub struct SequenceSpec {
    pub name: String,
    pub k_max: u32,
    pub limit: GenNum,
    gen: Box<dyn Fn(u32) -> Result<GenNum>>,
}

impl SequenceSpec {
    pub fn new(
        name: impl Into<String>,
        k_max: u32,
        limit: GenNum,
        gen: impl Fn(u32) -> Result<GenNum> + 'static,
    ) -> Self {
        SequenceSpec { name: name.into(), k_max, limit, gen: Box::new(gen) }
    }

    pub fn term(&self, k: u32) -> Result<GenNum> {
        (self.gen)(k)
    }
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("name", &self.name)
            .field("k_max", &self.k_max)
            .field("limit", &self.limit.to_string())
            .finish_non_exhaustive()
    }
}

fn fmt_sharp_dist(d: &SharpDist) -> String {
    format!("{}", d)
}

/// Monotone-trend description of a numeric column — descriptive only,
/// no limit claims.
fn trend(values: &[Option<f64>]) -> String {
    let defined: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    let undefined = values.len() - defined.len();
    let base = if defined.len() < 2 {
        "too few defined values to describe".to_string()
    } else if defined.windows(2).all(|w| (w[0] - w[1]).abs() <= 1e-15) {
        format!("constant at {:.9}", defined[0])
    } else if defined.windows(2).all(|w| w[1] <= w[0]) {
        format!("nonincreasing from {:.9} to {:.9}", defined[0], defined[defined.len() - 1])
    } else if defined.windows(2).all(|w| w[1] >= w[0]) {
        format!("nondecreasing from {:.9} to {:.9}", defined[0], defined[defined.len() - 1])
    } else {
        let lo = defined.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = defined.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        format!("varies in [{:.9}, {:.9}]", lo, hi)
    };
    if undefined > 0 {
        format!("{} ({} rows undefined)", base, undefined)
    } else {
        base
    }
}

/// Tabulate `d_s`, `d_F`, and `d_ω` from each term to the candidate
/// limit. Rows where a metric is undefined (not near-standard) carry a
/// note instead of failing the whole table; the summary reports the
/// monotone trend of each column and claims nothing about limits.
pub fn classify_sequence(seq: &SequenceSpec, config: &Config) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(format!("sequence {}", seq.name), config);
    report.input("limit candidate", &seq.limit);
    report.input("k_max", seq.k_max);
    report.set_columns(&["d_s", "d_F", "d_omega"]);
    let mut ds_col: Vec<Option<f64>> = Vec::new();
    let mut df_col: Vec<Option<f64>> = Vec::new();
    let mut dw_col: Vec<Option<f64>> = Vec::new();
    for k in 1..=seq.k_max {
        let x = seq.term(k)?;
        let ds = x.sharp_dist(&seq.limit);
        ds_col.push(ds.as_point());
        let (df_cell, dw_cell, note) = match (x.fermat_dist(&seq.limit), x.omega_dist(&seq.limit)) {
            (Ok(df), Ok(dw)) => {
                df_col.push(Some(df));
                dw_col.push(dw.as_point());
                (format!("{:.9}", df), fmt_sharp_dist(&dw), None)
            }
            (Err(e), _) | (_, Err(e)) => {
                df_col.push(None);
                dw_col.push(None);
                ("-".to_string(), "-".to_string(), Some(e.to_string()))
            }
        };
        let cells = vec![fmt_sharp_dist(&ds), df_cell, dw_cell];
        match note {
            Some(n) => report.push_row_note(k as u64, cells, n),
            None => report.push_row(k as u64, cells),
        }
    }
    report.summarize(format!("d_s: {}", trend(&ds_col)));
    report.summarize(format!("d_F: {}", trend(&df_col)));
    report.summarize(format!("d_omega: {}", trend(&dw_col)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::EpsSeries;

    fn mono(p: i64, q: i64, c: f64) -> GenNum {
        GenNum::monomial(Exponent::new(p, q), c)
    }

    #[test]
    fn sharp_ball_membership() {
        // B^s(0, e^(−1)): ε² is inside (d = e^(−2)), ε^(1/2) is not.
        let ball = Ball::Sharp { center: GenNum::zero(), r: (-1.0f64).exp() };
        assert_eq!(ball.contains(&mono(2, 1, 3.0)).unwrap(), Verdict::Holds);
        assert_eq!(ball.contains(&mono(1, 2, 1.0)).unwrap(), Verdict::Fails);
        // The boundary point ε itself: d = e^(−1) = r exactly → outside.
        assert_eq!(ball.contains(&GenNum::eps()).unwrap(), Verdict::Fails);
        // A pure tail blocks the verdict at its order.
        let hidden = GenNum::from_series(EpsSeries::<f64>::unknown_tail(Exponent::new(1, 2)));
        assert!(matches!(ball.contains(&hidden).unwrap(), Verdict::Unknown(_)));
    }

    #[test]
    fn gabs_ball_membership_is_strict() {
        let ball: Ball = Ball::Gabs { center: GenNum::zero(), rho: GenNum::eps() };
        assert_eq!(ball.contains(&mono(2, 1, -5.0)).unwrap(), Verdict::Holds);
        assert_eq!(ball.contains(&GenNum::eps()).unwrap(), Verdict::Fails);
        assert_eq!(ball.contains(&mono(1, 2, 0.1)).unwrap(), Verdict::Fails);
        // Zero is in every gabs ball with positive radius.
        assert_eq!(ball.contains(&GenNum::zero()).unwrap(), Verdict::Holds);
    }

    #[test]
    fn fermat_and_omega_balls() {
        let x = GenNum::from_real(0.2);
        let f = Ball::Fermat { center: GenNum::from_real(0.7), r: 0.6 };
        assert_eq!(f.contains(&x).unwrap(), Verdict::Holds);
        // Same standard parts, different infinitesimals: d_F = 0 but
        // d_ω = e^(−1) keeps them apart.
        let o = Ball::Omega { center: GenNum::from_real(0.2), r: 0.1 };
        assert_eq!(o.contains(&x.add(&GenNum::eps())).unwrap(), Verdict::Fails);
        let f2 = Ball::Fermat { center: GenNum::from_real(0.2), r: 0.1 };
        assert_eq!(f2.contains(&x.add(&GenNum::eps())).unwrap(), Verdict::Holds);
        // Omega needs near-standard points.
        let unbounded = mono(-1, 1, 1.0);
        assert!(o.contains(&unbounded).is_err());
    }

    #[test]
    fn sharp_to_gabs_certificate() {
        let cert = sharp_to_gabs(0.5).unwrap();
        // q = −ln(1/4) + 1 =2.386…; rounded up on the twelfths lattice.
        assert!((cert.q - (1.0 - 0.25f64.ln())).abs() < 1e-12);
        let rho_e = EpsOrder::Finite(cert.rho_exponent).to_f64();
        assert!(rho_e >= cert.q);
        assert!(rho_e - cert.q < 1.0 / 12.0 + 1e-12);
        assert_eq!(cert.rho_exponent, Exponent::new(29, 12));
        // Members of the inner ball land in the outer one.
        let inner: Ball = Ball::Gabs { center: GenNum::zero(), rho: cert.rho() };
        let outer = Ball::Sharp { center: GenNum::zero(), r: 0.5 };
        let z = mono(5, 2, 1.5);
        assert_eq!(inner.contains(&z).unwrap(), Verdict::Holds);
        assert_eq!(outer.contains(&z).unwrap(), Verdict::Holds);
        assert!(sharp_to_gabs(0.0).is_err());
    }

    #[test]
    fn gabs_to_sharp_certificate() {
        // ρ = ε³ → q = 3, r = e^(−4).
        let rho = mono(3, 1, 1.0);
        let cert = gabs_to_sharp(&rho).unwrap();
        assert_eq!(cert.q, 3);
        assert!((cert.r - (-4.0f64).exp()).abs() < 1e-18);
        // ρ = 0.5·ε³ needs q = 4: ε³ is not ≤ 0.5·ε³ eventually.
        let cert = gabs_to_sharp(&mono(3, 1, 0.5)).unwrap();
        assert_eq!(cert.q, 4);
        // ρ = ε^(5/2): q = 3 again.
        let cert = gabs_to_sharp(&mono(5, 2, 1.0)).unwrap();
        assert_eq!(cert.q, 3);
        // Sharp members are gabs members.
        let rho = mono(3, 1, 1.0);
        let cert = gabs_to_sharp(&rho).unwrap();
        let z = mono(5, 1, -2.0); // d_s = e^(−5) < e^(−4)
        let sharp = Ball::Sharp { center: GenNum::zero(), r: cert.r };
        let gabs = Ball::Gabs { center: GenNum::zero(), rho };
        assert_eq!(sharp.contains(&z).unwrap(), Verdict::Holds);
        assert_eq!(gabs.contains(&z).unwrap(), Verdict::Holds);
        assert!(gabs_to_sharp(&GenNum::<f64>::zero()).is_err());
    }

    #[test]
    fn sphere_openness() {
        // y = ε² + ε⁵ on the sphere of radius e^(−2) around 0.
        let y = GenNum::from_series(EpsSeries::exact(vec![
            (Exponent::from_integer(2), 1.0),
            (Exponent::from_integer(5), 1.0),
        ]));
        let cert = sphere_openness_witness(&GenNum::zero(), &y).unwrap();
        assert_eq!(cert.m, Exponent::from_integer(2));
        assert_eq!(cert.q, Exponent::from_integer(3));
        // Anything within ⌈·⌉ < ε³ of y keeps the valuation 2 exactly.
        let z = y.add(&mono(7, 2, -4.0));
        assert_eq!(cert.check(&GenNum::zero(), &y, &z).unwrap(), Verdict::Holds);
        // Points outside the neighborhood pass vacuously.
        let far = GenNum::eps();
        assert_eq!(cert.check(&GenNum::zero(), &y, &far).unwrap(), Verdict::Holds);
        // The center itself is not on a sphere.
        assert!(sphere_openness_witness(&GenNum::<f64>::zero(), &GenNum::zero()).is_err());
    }

    #[test]
    fn indicator_and_monad() {
        assert_eq!(indicator_infinitesimal(&GenNum::<f64>::eps()).unwrap(), 1);
        assert_eq!(indicator_infinitesimal(&GenNum::<f64>::from_real(0.3)).unwrap(), 0);
        assert_eq!(indicator_infinitesimal(&GenNum::<f64>::zero()).unwrap(), 1);
        let hidden = GenNum::from_series(EpsSeries::<f64>::unknown_tail(Exponent::new(-1, 2)));
        assert!(indicator_infinitesimal(&hidden).is_err());
        // Sharp-continuity instance: an infinegligible perturbation of an
        // infinitesimal stays infinitesimal, so the indicator is locally
        // constant in the sharp topology.
        let x = GenNum::eps();
        let y = x.add(&mono(3, 1, 0.5));
        assert_eq!(
            indicator_infinitesimal(&x).unwrap(),
            indicator_infinitesimal(&y).unwrap()
        );
    }

    #[test]
    fn real_traces() {
        // Standard radius 1: open interval.
        assert_eq!(
            real_trace_of_gabs_ball(2.0, &GenNum::<f64>::from_real(1.0)).unwrap(),
            RealTrace::Interval { lo: 1.0, hi: 3.0, closed: false }
        );
        // ρ = 2 + ε: endpoints join (2 < 2 + ε).
        let rho = GenNum::<f64>::from_real(2.0).add(&GenNum::eps());
        assert_eq!(
            real_trace_of_gabs_ball(1.0, &rho).unwrap(),
            RealTrace::Interval { lo: -1.0, hi: 3.0, closed: true }
        );
        // ρ = 2 − ε: endpoints stay out.
        let rho = GenNum::<f64>::from_real(2.0).sub(&GenNum::eps());
        assert_eq!(
            real_trace_of_gabs_ball(1.0, &rho).unwrap(),
            RealTrace::Interval { lo: -1.0, hi: 3.0, closed: false }
        );
        // Infinitesimal radius: the center only.
        assert_eq!(
            real_trace_of_gabs_ball(0.5, &GenNum::<f64>::eps()).unwrap(),
            RealTrace::Singleton(0.5)
        );
        // Zero, negative, unbounded.
        assert_eq!(real_trace_of_gabs_ball(0.0, &GenNum::<f64>::zero()).unwrap(), RealTrace::Empty);
        assert_eq!(
            real_trace_of_gabs_ball(0.0, &GenNum::<f64>::from_real(-1.0)).unwrap(),
            RealTrace::Empty
        );
        assert_eq!(real_trace_of_gabs_ball(0.0, &mono(-1, 1, 1.0)).unwrap(), RealTrace::Line);
        // Undecidable radius sign is an error, not a guess.
        let hidden = GenNum::from_series(EpsSeries::<f64>::unknown_tail(Exponent::new(1, 1)));
        assert!(real_trace_of_gabs_ball(0.0, &hidden).is_err());
    }

    #[test]
    fn sequence_classification_table() {
        let cfg = Config::default();
        // x_k = 1/k: d_F and d_ω shrink, d_s sticks at 1 (discreteness).
        let seq = SequenceSpec::new("1/k", 10, GenNum::zero(), |k| {
            Ok(GenNum::from_real(1.0 / k as f64))
        });
        let report = classify_sequence(&seq, &cfg).unwrap();
        assert_eq!(report.rows.len(), 10);
        assert_eq!(report.rows[0].cells[0], "1.000000000");
        assert_eq!(report.rows[9].cells[1], "0.100000000");
        assert!(report.summary[0].contains("constant at 1.0"));
        assert!(report.summary[1].contains("nonincreasing"));
        assert!(report.passed.is_none());
        // A sequence leaving the near-standard realm gets row notes.
        let wild = SequenceSpec::new("eps^(-k)", 3, GenNum::zero(), |k| {
            Ok(GenNum::monomial(Exponent::from_integer(-(k as i64)), 1.0))
        });
        let report = classify_sequence(&wild, &cfg).unwrap();
        assert!(report.rows.iter().all(|r| r.note.is_some()));
    }
}
