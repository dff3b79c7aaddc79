//! Symbolic expressions `u(x, eps)` over the closed smooth corpus.
//!
//! The node set is fixed: exact rational constants, the variable `x`, the
//! parameter `eps`, field operations, powers with exact rational
//! exponents, and the primitive smooth functions sin/cos/exp/log/sqrt
//! (reciprocals are `Div`/`Pow(−1)`). This is the corpus closed under
//! arithmetic and composition that both the Fermat extension machinery and
//! the generalized-function layer evaluate — numerically at fixed ε, or
//! in Taylor mode over any series ring.
//!
//! Derivatives (with respect to `x`) are symbolic and exact; smart
//! constructors fold the trivial zeros and ones so repeated
//! differentiation stays compact.

use crate::error::Error;
use crate::order::{is_integer, Exponent};
use crate::scalar::Scalar;
use crate::series::EpsSeries;
use crate::Result;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops;

/// Primitive smooth functions of the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prim {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Prim {
    pub const ALL: [Prim; 5] = [Prim::Sin, Prim::Cos, Prim::Exp, Prim::Log, Prim::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Prim::Sin => "sin",
            Prim::Cos => "cos",
            Prim::Exp => "exp",
            Prim::Log => "log",
            Prim::Sqrt => "sqrt",
        }
    }

    /// Numeric evaluation with domain checks.
    pub fn eval_f64(self, v: f64) -> Result<f64> {
        match self {
            Prim::Sin => Ok(v.sin()),
            Prim::Cos => Ok(v.cos()),
            Prim::Exp => Ok(v.exp()),
            Prim::Log => {
                if v > 0.0 {
                    Ok(v.ln())
                } else {
                    Err(Error::Domain(format!("log({})", v)))
                }
            }
            Prim::Sqrt => {
                if v >= 0.0 {
                    Ok(v.sqrt())
                } else {
                    Err(Error::Domain(format!("sqrt({})", v)))
                }
            }
        }
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree. See the module docs for the node-set contract.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Exact rational constant.
    Const(Exponent),
    /// The function variable.
    X,
    /// The net parameter.
    Eps,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Power with an exact rational (possibly integer) exponent.
    Pow(Box<Expr>, Exponent),
    Prim(Prim, Box<Expr>),
}

impl Expr {
    pub fn x() -> Expr {
        Expr::X
    }

    pub fn eps() -> Expr {
        Expr::Eps
    }

    /// Exact rational constant `p/q`.
    pub fn num(p: i64, q: i64) -> Expr {
        Expr::Const(Exponent::new(p, q))
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Exponent::from_integer(n))
    }

    pub fn pow(self, r: Exponent) -> Expr {
        if r.is_one() {
            self
        } else if r.is_zero() {
            // Formal convention of the corpus: the empty product is 1.
            Expr::int(1)
        } else {
            Expr::Pow(Box::new(self), r)
        }
    }

    pub fn powi(self, n: i64) -> Expr {
        self.pow(Exponent::from_integer(n))
    }

    pub fn sin(self) -> Expr {
        Expr::Prim(Prim::Sin, Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Prim(Prim::Cos, Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Prim(Prim::Exp, Box::new(self))
    }

    pub fn log(self) -> Expr {
        Expr::Prim(Prim::Log, Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Prim(Prim::Sqrt, Box::new(self))
    }

    /// True if any `eps` node occurs.
    pub fn uses_eps(&self) -> bool {
        match self {
            Expr::Eps => true,
            Expr::Const(_) | Expr::X => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Prim(_, a) => a.uses_eps(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_eps() || b.uses_eps()
            }
        }
    }

    /// Numeric evaluation at a point and a fixed ε > 0.
    pub fn eval_f64(&self, x: f64, eps: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c.numer() as f64 / *c.denom() as f64,
            Expr::X => x,
            Expr::Eps => eps,
            Expr::Neg(a) => -a.eval_f64(x, eps)?,
            Expr::Add(a, b) => a.eval_f64(x, eps)? + b.eval_f64(x, eps)?,
            Expr::Sub(a, b) => a.eval_f64(x, eps)? - b.eval_f64(x, eps)?,
            Expr::Mul(a, b) => a.eval_f64(x, eps)? * b.eval_f64(x, eps)?,
            Expr::Div(a, b) => {
                let d = b.eval_f64(x, eps)?;
                if d == 0.0 {
                    return Err(Error::Domain("division by zero".into()));
                }
                a.eval_f64(x, eps)? / d
            }
            Expr::Pow(a, r) => {
                let base = a.eval_f64(x, eps)?;
                let rf = *r.numer() as f64 / *r.denom() as f64;
                if base > 0.0 {
                    base.powf(rf)
                } else if base == 0.0 {
                    if *r > Exponent::zero() {
                        0.0
                    } else {
                        return Err(Error::Domain("zero to a nonpositive power".into()));
                    }
                } else if is_integer(r) {
                    base.powi(*r.numer() as i32)
                } else {
                    return Err(Error::Domain(format!(
                        "fractional power of negative base {}",
                        base
                    )));
                }
            }
            Expr::Prim(p, a) => p.eval_f64(a.eval_f64(x, eps)?)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!("non-finite value {}", v)))
        }
    }

    /// Taylor-mode evaluation over the ε-series ring: substitute a series
    /// for `x` and the monomial ε for `eps`, interpreting every node with
    /// series arithmetic truncated at working order `q`.
    pub fn eval_series<C: Scalar>(&self, x: &EpsSeries<C>, q: Exponent) -> Result<EpsSeries<C>> {
        match self {
            Expr::Const(c) => Ok(EpsSeries::constant(C::from_exponent(*c))),
            Expr::X => Ok(x.clone()),
            Expr::Eps => Ok(EpsSeries::eps()),
            Expr::Neg(a) => Ok(a.eval_series(x, q)?.neg()),
            Expr::Add(a, b) => Ok(a.eval_series(x, q)?.add(&b.eval_series(x, q)?)),
            Expr::Sub(a, b) => Ok(a.eval_series(x, q)?.sub(&b.eval_series(x, q)?)),
            Expr::Mul(a, b) => Ok(a.eval_series(x, q)?.mul(&b.eval_series(x, q)?)),
            Expr::Div(a, b) => {
                let inv = b.eval_series(x, q)?.invert(q)?;
                Ok(a.eval_series(x, q)?.mul(&inv))
            }
            Expr::Pow(a, r) => a.eval_series(x, q)?.pow_rational(*r, q),
            Expr::Prim(p, a) => a.eval_series(x, q)?.compose_prim(*p, q),
        }
    }

    /// Exact symbolic derivative with respect to `x`.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Eps => Expr::int(0),
            Expr::X => Expr::int(1),
            Expr::Neg(a) => neg_s(a.derivative()),
            Expr::Add(a, b) => add_s(a.derivative(), b.derivative()),
            Expr::Sub(a, b) => sub_s(a.derivative(), b.derivative()),
            Expr::Mul(a, b) => add_s(
                mul_s(a.derivative(), (**b).clone()),
                mul_s((**a).clone(), b.derivative()),
            ),
            Expr::Div(a, b) => {
                // (a/b)' = (a'·b − a·b') / b²
                let num = sub_s(
                    mul_s(a.derivative(), (**b).clone()),
                    mul_s((**a).clone(), b.derivative()),
                );
                div_s(num, (**b).clone().powi(2))
            }
            Expr::Pow(a, r) => {
                // (a^r)' = r·a^(r−1)·a'
                let outer = mul_s(
                    Expr::Const(*r),
                    (**a).clone().pow(*r - Exponent::one()),
                );
                mul_s(outer, a.derivative())
            }
            Expr::Prim(p, a) => {
                let inner = a.derivative();
                let outer = match p {
                    Prim::Sin => (**a).clone().cos(),
                    Prim::Cos => neg_s((**a).clone().sin()),
                    Prim::Exp => (**a).clone().exp(),
                    // (log a)' = a'/a, (√a)' = a'/(2√a): fold the inner
                    // derivative straight into the quotient.
                    Prim::Log => return div_s(inner, (**a).clone()),
                    Prim::Sqrt => {
                        return div_s(inner, mul_s(Expr::int(2), (**a).clone().sqrt()))
                    }
                };
                mul_s(outer, inner)
            }
        }
    }

    /// n-th symbolic derivative.
    pub fn derivative_n(&self, n: u32) -> Expr {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.derivative();
        }
        e
    }

    /// Dense coefficient vector (index = degree) if the expression is a
    /// polynomial in `x` with no `eps`, else `None`.
    pub fn as_polynomial(&self) -> Option<Vec<Exponent>> {
        fn trim(mut v: Vec<Exponent>) -> Vec<Exponent> {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        }
        let poly = match self {
            Expr::Const(c) => vec![*c],
            Expr::X => vec![Exponent::zero(), Exponent::one()],
            Expr::Eps | Expr::Prim(..) => return None,
            Expr::Neg(a) => a.as_polynomial()?.into_iter().map(|c| -c).collect(),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let pa = a.as_polynomial()?;
                let pb = b.as_polynomial()?;
                let n = pa.len().max(pb.len());
                let sign = if matches!(self, Expr::Add(..)) {
                    Exponent::one()
                } else {
                    -Exponent::one()
                };
                (0..n)
                    .map(|i| {
                        let ca = pa.get(i).copied().unwrap_or_else(Exponent::zero);
                        let cb = pb.get(i).copied().unwrap_or_else(Exponent::zero);
                        ca + cb * sign
                    })
                    .collect()
            }
            Expr::Mul(a, b) => {
                let pa = a.as_polynomial()?;
                let pb = b.as_polynomial()?;
                if pa.is_empty() || pb.is_empty() {
                    return Some(Vec::new());
                }
                let mut out = vec![Exponent::zero(); pa.len() + pb.len() - 1];
                for (i, ca) in pa.iter().enumerate() {
                    for (j, cb) in pb.iter().enumerate() {
                        out[i + j] = out[i + j] + *ca * *cb;
                    }
                }
                out
            }
            Expr::Div(a, b) => {
                // Polynomial only when dividing by a nonzero constant.
                let pa = a.as_polynomial()?;
                let pb = b.as_polynomial()?;
                if pb.len() == 1 && !pb[0].is_zero() {
                    pa.into_iter().map(|c| c / pb[0]).collect()
                } else {
                    return None;
                }
            }
            Expr::Pow(a, r) => {
                if !is_integer(r) || *r < Exponent::zero() {
                    return None;
                }
                let pa = a.as_polynomial()?;
                if pa.is_empty() {
                    // Zero polynomial: 0^r = 0 for the r ≥ 1 kept here
                    // (r = 0 folds to the constant 1 at construction).
                    return Some(Vec::new());
                }
                let mut out = vec![Exponent::one()];
                for _ in 0..*r.numer() {
                    let mut next = vec![Exponent::zero(); out.len() + pa.len() - 1];
                    for (i, ca) in out.iter().enumerate() {
                        for (j, cb) in pa.iter().enumerate() {
                            next[i + j] = next[i + j] + *ca * *cb;
                        }
                    }
                    out = next;
                }
                out
            }
        };
        Some(trim(poly))
    }
}

// Smart constructors: fold zeros/ones so derivative trees stay compact.

fn is_const(e: &Expr, v: i64) -> bool {
    matches!(e, Expr::Const(c) if *c == Exponent::from_integer(v))
}

fn neg_s(a: Expr) -> Expr {
    if is_const(&a, 0) {
        a
    } else if let Expr::Const(c) = a {
        Expr::Const(-c)
    } else {
        Expr::Neg(Box::new(a))
    }
}

fn add_s(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0) {
        return b;
    }
    if is_const(&b, 0) {
        return a;
    }
    if let (Expr::Const(ca), Expr::Const(cb)) = (&a, &b) {
        return Expr::Const(*ca + *cb);
    }
    Expr::Add(Box::new(a), Box::new(b))
}

fn sub_s(a: Expr, b: Expr) -> Expr {
    if is_const(&b, 0) {
        return a;
    }
    if let (Expr::Const(ca), Expr::Const(cb)) = (&a, &b) {
        return Expr::Const(*ca - *cb);
    }
    if is_const(&a, 0) {
        return neg_s(b);
    }
    Expr::Sub(Box::new(a), Box::new(b))
}

fn mul_s(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0) || is_const(&b, 0) {
        return Expr::int(0);
    }
    if is_const(&a, 1) {
        return b;
    }
    if is_const(&b, 1) {
        return a;
    }
    if let (Expr::Const(ca), Expr::Const(cb)) = (&a, &b) {
        return Expr::Const(*ca * *cb);
    }
    Expr::Mul(Box::new(a), Box::new(b))
}

fn div_s(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0) {
        return Expr::int(0);
    }
    if is_const(&b, 1) {
        return a;
    }
    Expr::Div(Box::new(a), Box::new(b))
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

// Precedence levels for display: addition 1, multiplication 2, unary
// negation 3, power 4, atoms 5.  A constant is ranked by the shape it
// prints as: `p/q` is a division and `-n` a negation, so they take those
// levels rather than atom level and pick up parentheses where a bare
// token would re-associate (e.g. `(2/3)^2`, `x/(1/2)`).
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(c) => {
            if !is_integer(c) {
                2
            } else if c.is_negative() {
                3
            } else {
                5
            }
        }
        _ => 5,
    }
}

fn fmt_prec(e: &Expr, parent: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = precedence(e);
    let parens = prec < parent;
    if parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Const(c) => {
            if is_integer(c) {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        Expr::X => write!(f, "x")?,
        Expr::Eps => write!(f, "eps")?,
        Expr::Neg(a) => {
            write!(f, "-")?;
            fmt_prec(a, 4, f)?;
        }
        Expr::Add(a, b) => {
            fmt_prec(a, 1, f)?;
            write!(f, " + ")?;
            fmt_prec(b, 2, f)?;
        }
        Expr::Sub(a, b) => {
            fmt_prec(a, 1, f)?;
            write!(f, " - ")?;
            // Right operand binds tighter to keep a − (b − c) unambiguous.
            fmt_prec(b, 2, f)?;
        }
        Expr::Mul(a, b) => {
            fmt_prec(a, 2, f)?;
            write!(f, "*")?;
            fmt_prec(b, 3, f)?;
        }
        Expr::Div(a, b) => {
            fmt_prec(a, 2, f)?;
            write!(f, "/")?;
            fmt_prec(b, 3, f)?;
        }
        Expr::Pow(a, r) => {
            fmt_prec(a, 5, f)?;
            if is_integer(r) && !r.is_negative() {
                write!(f, "^{}", r.numer())?;
            } else {
                write!(f, "^({})", r)?;
            }
        }
        Expr::Prim(p, a) => {
            write!(f, "{}(", p)?;
            fmt_prec(a, 0, f)?;
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}
