//! Literal grammars: generalized numbers, Fermat reals, expressions, and
//! open sets — recursive descent with position-annotated errors.
//!
//! The four grammars, as accepted here and produced by the corresponding
//! `Display` impls (printing then parsing yields an equal value):
//!
//! * **gennum** — branches separated by `||`; each branch is a signed sum
//!   of `c`, `c*eps^(p/q)`, `eps^(p/q)` with an optional trailing
//!   `+ O(eps^(p/q))` tail marker. Exponents: a bare positive integer or
//!   a parenthesized signed rational. Coefficients: decimal numerals or
//!   fractions `a/b`. Example: `3 + 2*eps^(1/2) - eps^2 || 3 + eps`.
//! * **fermat** — same term shape over the variable `t`, no branches, no
//!   tail: `2 + 3*t^(1/2) - t`.
//! * **expr** — infix arithmetic over `x` and `eps` with `+ - * / ^`,
//!   functions `sin cos exp log sqrt`, and rational exponents after `^`
//!   (bare integer or parenthesized signed rational): `eps*sin(x/eps)`,
//!   `(x + 1)^(-1/2)`.
//! * **openset** — union of open intervals: `(0,1) u (2,inf)`, endpoints
//!   decimal, fractional, or `±inf`.

use crate::error::Error;
use crate::expr::Expr;
use crate::fermat::LittleOhPoly;
use crate::fermat_reyes::OpenSet1D;
use crate::gennum::GenNum;
use crate::order::{EpsOrder, Exponent};
use crate::scalar::Scalar;
use crate::series::EpsSeries;
use crate::Result;
use num::{One, Zero};
use std::str::FromStr;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Consume `c` if it is next (after whitespace).
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    /// Consume a literal operator string (no identifier-boundary rules).
    fn eat_op(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// Peek the identifier ([a-zA-Z]+) at the cursor, if any.
    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        (end > 0).then(|| &rest[..end])
    }

    /// Consume an expected identifier.
    fn eat_ident(&mut self, word: &str) -> bool {
        if self.peek_ident() == Some(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    /// Consume a decimal numeral: `digits[.digits][e|E[+|-]digits]`.
    fn number(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let bytes = rest.as_bytes();
        let mut i = 0;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == 0 {
            return self.err("expected a number");
        }
        if i < bytes.len() && bytes[i] == b'.' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > i + 1 {
                i = j;
            }
        }
        // Exponent only when it is actually followed by digits — `2*eps`
        // must not eat the 'e'.
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let digits_start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > digits_start {
                i = j;
            }
        }
        let tok = &rest[..i];
        self.pos += i;
        Ok(tok)
    }

    /// Unsigned integer.
    fn integer(&mut self) -> Result<i64> {
        let tok = self.number()?;
        tok.parse::<i64>()
            .map_err(|_| Error::Parse { pos: self.pos, msg: format!("'{}' is not an integer", tok) })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// Scalar coefficient: decimal numeral, optionally `/ numeral`.
    fn coefficient<C: Scalar>(&mut self) -> Result<C> {
        let start = self.pos;
        let tok = self.number()?;
        let num = C::from_decimal_str(tok).ok_or(Error::Parse {
            pos: start,
            msg: format!("'{}' is not a valid coefficient", tok),
        })?;
        if self.eat('/') {
            let dstart = self.pos;
            let dtok = self.number()?;
            let den = C::from_decimal_str(dtok).ok_or(Error::Parse {
                pos: dstart,
                msg: format!("'{}' is not a valid coefficient", dtok),
            })?;
            if den.is_zero() {
                return Err(Error::Parse { pos: dstart, msg: "division by zero".into() });
            }
            return Ok(num / den);
        }
        Ok(num)
    }

    /// Exponent after `^`: bare unsigned integer, or parenthesized signed
    /// rational `(p/q)`.
    fn exponent(&mut self) -> Result<Exponent> {
        if self.eat('(') {
            let neg = self.eat('-');
            let p = self.integer()?;
            let q = if self.eat('/') {
                let q = self.integer()?;
                if q == 0 {
                    return self.err("zero denominator");
                }
                q
            } else {
                1
            };
            self.expect(')')?;
            let e = Exponent::new(p, q);
            Ok(if neg { -e } else { e })
        } else {
            Ok(Exponent::from_integer(self.integer()?))
        }
    }

    /// Signed decimal constant as an exact `Exponent` (for expression
    /// atoms): `13.25` → 53/4. Overflow of i64 is a parse error.
    fn rational_constant(&mut self) -> Result<Exponent> {
        let start = self.pos;
        let tok = self.number()?;
        decimal_to_rational64(tok).ok_or(Error::Parse {
            pos: start,
            msg: format!("constant '{}' does not fit an exact rational", tok),
        })
    }
}

/// Exact conversion of a decimal numeral to a `Rational64`.
fn decimal_to_rational64(s: &str) -> Option<Exponent> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits = format!("{}{}", int_part, frac_part);
    let n = digits.parse::<i64>().ok()?;
    let net = exp.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let pow10 = 10i64.checked_pow(net.unsigned_abs());
    Some(if net >= 0 {
        Exponent::from_integer(n.checked_mul(pow10?)?)
    } else {
        Exponent::new(n, pow10?)
    })
}

/// One signed monomial of a series-like literal over variable `var`
/// (`eps` or `t`), or a tail marker `O(var^e)` (gennum only).
enum SeriesTerm<C> {
    Term(Exponent, C),
    Tail(Exponent),
}

fn series_term<C: Scalar>(cur: &mut Cursor, var: &str, allow_tail: bool) -> Result<SeriesTerm<C>> {
    // Tail marker.
    if allow_tail && cur.peek_ident() == Some("O") {
        cur.eat_ident("O");
        cur.expect('(')?;
        if !cur.eat_ident(var) {
            return cur.err(format!("expected '{}'", var));
        }
        cur.expect('^')?;
        let e = cur.exponent()?;
        cur.expect(')')?;
        return Ok(SeriesTerm::Tail(e));
    }
    // Bare variable monomial.
    if cur.eat_ident(var) {
        let e = if cur.eat('^') { cur.exponent()? } else { Exponent::one() };
        return Ok(SeriesTerm::Term(e, C::one()));
    }
    // Coefficient, optionally times a variable power.
    let c: C = cur.coefficient()?;
    if cur.eat('*') {
        if !cur.eat_ident(var) {
            return cur.err(format!("expected '{}'", var));
        }
        let e = if cur.eat('^') { cur.exponent()? } else { Exponent::one() };
        Ok(SeriesTerm::Term(e, c))
    } else {
        Ok(SeriesTerm::Term(Exponent::zero(), c))
    }
}

/// Signed sum of series terms; returns the collected terms and tail.
fn series_body<C: Scalar>(
    cur: &mut Cursor,
    var: &str,
    allow_tail: bool,
) -> Result<(Vec<(Exponent, C)>, EpsOrder)> {
    let mut terms = Vec::new();
    let mut tail = EpsOrder::Infinite;
    let mut negative = cur.eat('-');
    loop {
        let at = cur.pos;
        match series_term::<C>(cur, var, allow_tail)? {
            SeriesTerm::Term(e, c) => {
                terms.push((e, if negative { -c } else { c }));
            }
            SeriesTerm::Tail(e) => {
                if negative {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "a tail marker cannot be subtracted".into(),
                    });
                }
                tail = EpsOrder::Finite(e);
                // Nothing may follow the tail marker within a branch.
                break;
            }
        }
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    Ok((terms, tail))
}

/// Parse a generalized-number literal.
pub fn parse_gennum<C: Scalar>(input: &str) -> Result<GenNum<C>> {
    let mut cur = Cursor::new(input);
    let mut branches = Vec::new();
    loop {
        let (terms, tail) = series_body::<C>(&mut cur, "eps", true)?;
        branches.push(EpsSeries::new(terms, tail));
        if !cur.eat_op("||") {
            break;
        }
    }
    cur.expect_end()?;
    GenNum::new(branches)
}

/// Parse a Fermat-real literal.
pub fn parse_fermat<C: Scalar>(input: &str) -> Result<LittleOhPoly<C>> {
    let mut cur = Cursor::new(input);
    let (terms, _) = series_body::<C>(&mut cur, "t", false)?;
    cur.expect_end()?;
    LittleOhPoly::new(terms)
}

/// Parse an open set literal: `(a,b) u (c,d) …`.
pub fn parse_openset(input: &str) -> Result<OpenSet1D> {
    let mut cur = Cursor::new(input);
    let mut intervals = Vec::new();
    loop {
        cur.expect('(')?;
        let lo = endpoint(&mut cur)?;
        cur.expect(',')?;
        let hi = endpoint(&mut cur)?;
        cur.expect(')')?;
        intervals.push((lo, hi));
        if !(cur.eat_ident("u") || cur.eat_ident("U")) {
            break;
        }
    }
    cur.expect_end()?;
    OpenSet1D::new(intervals)
}

fn endpoint(cur: &mut Cursor) -> Result<f64> {
    let neg = cur.eat('-');
    let v = if cur.eat_ident("inf") {
        f64::INFINITY
    } else {
        let start = cur.pos;
        let tok = cur.number()?;
        let base: f64 = tok.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("'{}' is not a number", tok),
        })?;
        if cur.eat('/') {
            let dtok = cur.number()?;
            let den: f64 = dtok.parse().map_err(|_| Error::Parse {
                pos: cur.pos,
                msg: format!("'{}' is not a number", dtok),
            })?;
            base / den
        } else {
            base
        }
    };
    Ok(if neg { -v } else { v })
}

/// Parse an expression literal (variables `x`, `eps`).
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut cur = Cursor::new(input);
    let e = expr_sum(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}

fn expr_sum(cur: &mut Cursor) -> Result<Expr> {
    let mut acc = expr_product(cur)?;
    loop {
        if cur.eat('+') {
            acc = Expr::Add(Box::new(acc), Box::new(expr_product(cur)?));
        } else if cur.eat('-') {
            acc = Expr::Sub(Box::new(acc), Box::new(expr_product(cur)?));
        } else {
            return Ok(acc);
        }
    }
}

fn expr_product(cur: &mut Cursor) -> Result<Expr> {
    let mut acc = expr_factor(cur)?;
    loop {
        if cur.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(expr_factor(cur)?));
        } else if cur.eat('/') {
            let rhs = expr_factor(cur)?;
            // Fold constant quotients so `1/2` round-trips as the exact
            // rational constant it prints as.
            acc = match (&acc, &rhs) {
                (Expr::Const(a), Expr::Const(b)) if !b.is_zero() => Expr::Const(*a / *b),
                _ => Expr::Div(Box::new(acc), Box::new(rhs)),
            };
        } else {
            return Ok(acc);
        }
    }
}

fn expr_factor(cur: &mut Cursor) -> Result<Expr> {
    if cur.eat('-') {
        let inner = expr_factor(cur)?;
        // Fold constant negation: `-3` is the constant −3.
        return Ok(match inner {
            Expr::Const(c) => Expr::Const(-c),
            other => Expr::Neg(Box::new(other)),
        });
    }
    expr_power(cur)
}

fn expr_power(cur: &mut Cursor) -> Result<Expr> {
    let base = expr_atom(cur)?;
    if cur.eat('^') {
        let e = cur.exponent()?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn expr_atom(cur: &mut Cursor) -> Result<Expr> {
    if cur.eat('(') {
        let e = expr_sum(cur)?;
        cur.expect(')')?;
        return Ok(e);
    }
    if let Some(ident) = cur.peek_ident() {
        match ident {
            "x" => {
                cur.eat_ident("x");
                return Ok(Expr::x());
            }
            "eps" => {
                cur.eat_ident("eps");
                return Ok(Expr::eps());
            }
            "sin" | "cos" | "exp" | "log" | "sqrt" => {
                let name = ident;
                cur.eat_ident(name);
                cur.expect('(')?;
                let arg = expr_sum(cur)?;
                cur.expect(')')?;
                return Ok(match name {
                    "sin" => arg.sin(),
                    "cos" => arg.cos(),
                    "exp" => arg.exp(),
                    "log" => arg.log(),
                    _ => arg.sqrt(),
                });
            }
            other => {
                return cur.err(format!("unknown identifier '{}'", other));
            }
        }
    }
    let c = cur.rational_constant()?;
    Ok(Expr::Const(c))
}

impl<C: Scalar> FromStr for GenNum<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_gennum(s)
    }
}

impl<C: Scalar> FromStr for LittleOhPoly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_fermat(s)
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl FromStr for OpenSet1D {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_openset(s)
    }
}
