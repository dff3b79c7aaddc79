//! Shared proptest strategies and exact-equality helpers for the
//! integration property suites.
//!
//! Coefficients are dyadic rationals `m/16` throughout the float lanes:
//! they are exactly representable in `f64`, their pairwise and triple
//! products stay well inside the 53-bit mantissa, and so ring-law
//! assertions can demand bit-for-bit equality instead of tolerances.

#![allow(dead_code)]

use proptest::prelude::*;
use sharpnum::{EpsOrder, EpsSeries, EpsSeriesExact, Exponent, GenNum, LittleOhPoly, Rat, Scalar};

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Exponents on the twelfths lattice, including negative (infinite
/// magnitude) and zero (standard) orders.
pub fn exponent() -> impl Strategy<Value = Exponent> {
    (-24i64..=36, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12]))
        .prop_map(|(p, q)| Exponent::new(p, q))
}

/// Strictly positive exponents (infinitesimal orders).
pub fn pos_exponent() -> impl Strategy<Value = Exponent> {
    (1i64..=36, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12]))
        .prop_map(|(p, q)| Exponent::new(p, q))
}

/// Nonnegative exponents (near-standard orders).
pub fn nonneg_exponent() -> impl Strategy<Value = Exponent> {
    (0i64..=36, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12]))
        .prop_map(|(p, q)| Exponent::new(p, q))
}

/// Nonzero dyadic coefficient `m/16`, `1 ≤ |m| ≤ 64`.
pub fn dyadic() -> impl Strategy<Value = f64> {
    prop_oneof![1i64..=64, -64i64..=-1].prop_map(|m| m as f64 / 16.0)
}

/// Exact-rational series with up to four terms.
pub fn exact_series() -> impl Strategy<Value = EpsSeriesExact> {
    prop::collection::vec((exponent(), -40i64..=40, 1i64..=8), 0..4)
        .prop_map(|terms| EpsSeries::exact(terms.into_iter().map(|(e, p, q)| (e, rat(p, q))).collect()))
}

/// Exact dyadic-f64 series with up to four terms.
pub fn dyadic_series() -> impl Strategy<Value = EpsSeries> {
    prop::collection::vec((exponent(), dyadic()), 0..4)
        .prop_map(|terms| EpsSeries::exact(terms.into_iter().collect()))
}

/// Exact dyadic-f64 series with all exponents ≥ 0 (near-standard).
pub fn near_std_series() -> impl Strategy<Value = EpsSeries> {
    prop::collection::vec((nonneg_exponent(), dyadic()), 0..4)
        .prop_map(|terms| EpsSeries::exact(terms.into_iter().collect()))
}

/// Branched generalized number with exact dyadic branches.
pub fn dyadic_gennum() -> impl Strategy<Value = GenNum> {
    prop::collection::vec(prop::collection::vec((exponent(), dyadic()), 0..3), 1..=3).prop_map(
        |branches| {
            GenNum::new(
                branches
                    .into_iter()
                    .map(|terms| EpsSeries::exact(terms.into_iter().collect()))
                    .collect(),
            )
            .expect("at least one branch")
        },
    )
}

/// Near-standard branched generalized number: a standard part shared by
/// all branches (a limit along the full net must exist) plus per-branch
/// infinitesimal terms.
pub fn near_std_gennum() -> impl Strategy<Value = GenNum> {
    (
        prop::option::of(dyadic()),
        prop::collection::vec(prop::collection::vec((pos_exponent(), dyadic()), 0..3), 1..=3),
    )
        .prop_map(|(c0, branches)| {
            let base = c0.unwrap_or(0.0);
            GenNum::new(
                branches
                    .into_iter()
                    .map(|terms| {
                        EpsSeries::exact(
                            [(Exponent::new(0, 1), base)].into_iter().chain(terms).collect(),
                        )
                    })
                    .collect(),
            )
            .expect("at least one branch")
        })
}

/// Infinitesimal branched generalized number (every exponent > 0),
/// possibly zero.
pub fn infinitesimal_gennum() -> impl Strategy<Value = GenNum> {
    prop::collection::vec(prop::collection::vec((pos_exponent(), dyadic()), 0..3), 1..=3)
        .prop_map(|branches| {
            GenNum::new(
                branches
                    .into_iter()
                    .map(|terms| EpsSeries::exact(terms.into_iter().collect()))
                    .collect(),
            )
            .expect("at least one branch")
        })
}

/// Fermat real with dyadic coefficients; raw exponents may exceed 1 so
/// the little-oh cutoff is exercised.
pub fn fermat_poly() -> impl Strategy<Value = LittleOhPoly> {
    prop::collection::vec(
        ((0i64..=18, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12])), dyadic()),
        0..4,
    )
    .prop_map(|terms| {
        LittleOhPoly::new(
            terms
                .into_iter()
                .map(|((p, q), c)| (Exponent::new(p, q), c))
                .collect(),
        )
        .expect("nonnegative exponents")
    })
}

/// Bit-exact series equality: identical term lists and tail markers.
/// (`==` on the series types is tolerance equality for float scalars.)
pub fn series_exact_eq<C: Scalar + PartialEq>(a: &EpsSeries<C>, b: &EpsSeries<C>) -> bool {
    a.terms() == b.terms() && a.tail() == b.tail()
}

/// Bit-exact generalized-number equality on the common branch refinement.
pub fn gen_exact_eq<C: Scalar + PartialEq>(a: &GenNum<C>, b: &GenNum<C>) -> bool {
    let m = num::integer::lcm(a.branch_count(), b.branch_count());
    a.refine_to(m)
        .iter()
        .zip(&b.refine_to(m))
        .all(|(x, y)| series_exact_eq(x, y))
}

/// Bit-exact Fermat-real equality.
pub fn poly_exact_eq<C: Scalar + PartialEq>(a: &LittleOhPoly<C>, b: &LittleOhPoly<C>) -> bool {
    a.terms() == b.terms()
}

/// Exact valuation of an exact number (panics on unknown bounds, which
/// exact inputs never produce).
pub fn exact_valuation<C: Scalar>(x: &GenNum<C>) -> EpsOrder {
    x.valuation().value().expect("exact input has exact valuation")
}
