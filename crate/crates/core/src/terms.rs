//! Shared helpers for sorted `(exponent, coefficient)` term lists.
//!
//! Both series families (ε-series and little-oh polynomials) keep their
//! terms sorted by strictly increasing exponent with nonzero coefficients.
//! Normalization drops *exact* zeros only — equality tolerances belong to
//! comparisons, never to storage, so that residual checks against small
//! thresholds stay meaningful.

use crate::order::Exponent;
use crate::scalar::Scalar;

/// Sort by exponent, merge equal exponents, drop exact-zero coefficients.
pub fn normalize<C: Scalar>(mut raw: Vec<(Exponent, C)>) -> Vec<(Exponent, C)> {
    raw.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Exponent, C)> = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some((le, lc)) if *le == e => {
                *lc = lc.clone() + c;
            }
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Merge two sorted term lists (addition).
pub fn add<C: Scalar>(a: &[(Exponent, C)], b: &[(Exponent, C)]) -> Vec<(Exponent, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a[i].1.clone() + b[j].1.clone();
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Negate every coefficient.
pub fn neg<C: Scalar>(a: &[(Exponent, C)]) -> Vec<(Exponent, C)> {
    a.iter().map(|(e, c)| (*e, -c.clone())).collect()
}

/// Multiply by the monomial `c·X^e`.
pub fn mul_monomial<C: Scalar>(a: &[(Exponent, C)], e: Exponent, c: &C) -> Vec<(Exponent, C)> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(ae, ac)| (*ae + e, ac.clone() * c.clone())).collect()
}

/// Full product (cross terms, then normalization merges collisions).
pub fn mul<C: Scalar>(a: &[(Exponent, C)], b: &[(Exponent, C)]) -> Vec<(Exponent, C)> {
    let mut cross = Vec::with_capacity(a.len() * b.len());
    for (ae, ac) in a {
        for (be, bc) in b {
            cross.push((*ae + *be, ac.clone() * bc.clone()));
        }
    }
    normalize(cross)
}
