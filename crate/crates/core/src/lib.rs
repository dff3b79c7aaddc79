//! Computable generalized numbers with sharp, Fermat, and omega topologies.
//!
//! The crate models two nilpotent/asymptotic number systems at desk scale:
//!
//! * **Fermat reals** ([`LittleOhPoly`]): little-oh polynomials
//!   `r + Σ αᵢ·t^(aᵢ)` with rational exponents in `[0, 1]` — terms beyond
//!   `o(t)` vanish, first-order infinitesimals square to zero, and smooth
//!   functions extend by Taylor expansion about the standard part
//!   ([`fermat::extend`]).
//! * **Colombeau-style generalized numbers** ([`GenNum`]): branched finite
//!   ε-power series with an explicit tail marker, realized on the net
//!   `ε_j = 2^(−j)` (branch `i` of `k` on the indices `j ≡ i mod k`).
//!   They carry a valuation, the sharp ultrametric `d_s = e^(−v)`, the
//!   Fermat pseudometric `d_F`, the combined metric `d_ω`, a generalized
//!   absolute value, and geometric-series inversion ([`gennum`]).
//!
//! On top of the numbers sit generalized functions ([`genfun`]): expression
//! nets `u_ε(x)` evaluated either numerically at fixed ε or in Taylor mode
//! into branched series, with valuation/seminorm estimation and a
//! non-vanishing probe. The Fermat–Reyes module ([`fermat_reyes`]) computes
//! the smooth incremental ratio `r(x, h) = ∫₀¹ f′(x + s·h) ds` so that
//! `f(X+H) = f(X) + H·r(X,H)` holds as a series identity, with an
//! independent numeric oracle and a division-path cross-check.
//!
//! All series types are generic over the coefficient scalar via
//! [`Scalar`]: `f64` (default, equality tolerance 1e−12), `f32`, and exact
//! [`BigRational`](num::BigRational). Ring, order, and valuation laws hold
//! *literally exactly* over the rational scalar; the float scalars add the
//! analytic operations (transcendental composition at arbitrary centers,
//! quadrature, metric values). Concrete aliases for the exact lane live at
//! the crate root ([`GenNumExact`], [`EpsSeriesExact`], [`LittleOhPolyExact`]).
//!
//! Operations that truncate infinite expansions (inversion, square roots,
//! rational powers, transcendental composition) cut at the working tail
//! order `Q` (default 40) carried by an explicit [`Config`]; plain ring
//! operations never truncate exact inputs.

pub mod config;
pub mod error;
pub mod expr;
pub mod fermat;
pub mod fermat_reyes;
pub mod genfun;
pub mod gennum;
pub mod order;
pub mod parse;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod series;
pub mod suites;
mod terms;
pub mod topology;

pub use config::Config;
pub use error::Error;
pub use expr::{Expr, Prim};
pub use fermat::LittleOhPoly;
pub use fermat_reyes::{FrVerdict, OpenSet1D};
pub use genfun::{GenFunExpr, ProbeOutcome};
pub use gennum::{GenNum, GenVec, OrderVerdict, SharpDist, Verdict};
pub use order::{EpsOrder, Exponent, ValuationBounds};
pub use report::VerdictReport;
pub use scalar::Scalar;
pub use series::EpsSeries;

/// Exact-rational coefficient type (arbitrary precision).
pub type Rat = num::BigRational;

/// Exact-rational branched generalized number.
pub type GenNumExact = GenNum<Rat>;
/// Exact-rational single-branch ε-series.
pub type EpsSeriesExact = EpsSeries<Rat>;
/// Exact-rational Fermat real.
pub type LittleOhPolyExact = LittleOhPoly<Rat>;

/// Convenience result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
