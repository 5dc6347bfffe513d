//! Expressions over F_{q^m}(θ)[t]: `x` is θ, `t` the motive variable and
//! `g` the fixed generator of F_{q^m}.

use carlitz_core::ff::{Fe, Field, Poly, RatFunc};
use carlitz_core::tpoly::TPoly;
use thiserror::Error;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn perr<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { offset, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    X,
    T,
    G,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = s[start..i].parse::<u64>().or_else(|_| perr(start, "integer literal too large"))?;
                out.push((Tok::Int(v), start));
                continue;
            }
            b'x' => Tok::X,
            b't' => Tok::T,
            b'g' => Tok::G,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => return perr(i, format!("unexpected character {:?}", s[i..].chars().next().unwrap_or('?'))),
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<TPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    let d = t_free(&d).ok_or_else(|| ParseError { offset: at, message: "division by an expression in t".into() })?;
                    let inv = d.inv().ok_or_else(|| ParseError { offset: at, message: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TPoly, ParseError> {
        if self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<TPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let at = self.offset();
        let Tok::Int(e) = self.bump() else {
            return perr(at, "expected an integer exponent");
        };
        if e > MAX_EXPONENT {
            return perr(at, format!("exponent larger than {MAX_EXPONENT}"));
        }
        if !neg {
            return Ok(base.pow(e as u32));
        }
        let b = t_free(&base).ok_or_else(|| ParseError { offset: at, message: "negative power of an expression in t".into() })?;
        if b.is_zero() {
            return perr(at, "negative power of zero");
        }
        Ok(TPoly::constant(b.pow(-(e as i64))))
    }

    fn atom(&mut self) -> Result<TPoly, ParseError> {
        let at = self.offset();
        let f = self.field;
        match self.bump() {
            Tok::Int(v) => Ok(TPoly::constant(RatFunc::constant(f, f.from_prime(v % f.p())))),
            Tok::X => Ok(TPoly::constant(RatFunc::theta(f))),
            Tok::T => Ok(TPoly::t(f)),
            Tok::G => Ok(TPoly::constant(RatFunc::constant(f, f.generator()))),
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.offset();
                if self.bump() != Tok::RParen {
                    return perr(close, "expected ')'");
                }
                Ok(e)
            }
            Tok::End => perr(at, "unexpected end of input"),
            t => perr(at, format!("unexpected token {t:?}")),
        }
    }
}

fn t_free(f: &TPoly) -> Option<RatFunc> {
    match f.coeffs().len() {
        0 => Some(RatFunc::zero(f.field())),
        1 => Some(f.coeff(0)),
        _ => None,
    }
}

/// Parses an element of F_{q^m}(θ)[t].
pub fn parse_tpoly(field: &Field, s: &str) -> Result<TPoly, ParseError> {
    let mut p = Parser { field, toks: lex(s)?, pos: 0 };
    let e = p.expr()?;
    if p.peek() != Tok::End {
        return perr(p.offset(), "trailing input");
    }
    Ok(e)
}

/// Parses an element of F_{q^m}(θ); `t` is rejected.
pub fn parse_ratfunc(field: &Field, s: &str) -> Result<RatFunc, ParseError> {
    if let Some(i) = s.find('t') {
        return perr(i, "`t` is not allowed here");
    }
    let e = parse_tpoly(field, s)?;
    Ok(t_free(&e).expect("no t present"))
}

/// Parses an element of F_q[t]: `x` is rejected and constants must lie in F_q.
pub fn parse_fq_t(field: &Field, s: &str) -> Result<Poly, ParseError> {
    if let Some(i) = s.find('x') {
        return perr(i, "`x` is not allowed here");
    }
    let e = parse_tpoly(field, s)?;
    let mut coeffs = Vec::with_capacity(e.coeffs().len());
    for c in e.coeffs() {
        match c.as_constant() {
            Some(v) if field.in_subfield(v) => coeffs.push(v),
            _ => return perr(0, format!("coefficient {} is not in F_q", print_ratfunc(c))),
        }
    }
    Ok(Poly::new(field, coeffs))
}

/// A constant of F_{q^m}: its residue when it lies in F_p, else `g^k`.
pub fn print_constant(field: &Field, c: Fe) -> String {
    if let Some(v) = field.as_prime(c) {
        return v.to_string();
    }
    let k = field.log_generator(c).expect("nonzero constant");
    if k == 1 {
        "g".to_string()
    } else {
        format!("g^{k}")
    }
}

fn monomial(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// A polynomial in `var` by descending degree, e.g. `x^2+2*x+1`.
pub fn print_poly_in(p: &Poly, var: &str) -> String {
    let field = p.field();
    let mut terms = Vec::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = monomial(var, k);
        let coef = print_constant(field, c);
        terms.push(match (coef.as_str(), mono.is_empty()) {
            (_, true) => coef,
            ("1", false) => mono,
            (_, false) => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub fn print_poly(p: &Poly) -> String {
    print_poly_in(p, "x")
}

/// True when the printed polynomial is a single factor that needs no
/// parentheses after `/`.
fn is_atom(p: &Poly) -> bool {
    let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    nonzero == 1 && (p.deg() == Some(0) || p.lc() == Fe::ONE)
}

fn is_sum(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
}

pub fn print_ratfunc(r: &RatFunc) -> String {
    if r.den().is_one() {
        return print_poly(r.num());
    }
    let num = print_poly(r.num());
    let num = if is_sum(r.num()) { format!("({num})") } else { num };
    let den = print_poly(r.den());
    let den = if is_atom(r.den()) { den } else { format!("({den})") };
    format!("{num}/{den}")
}

/// An element of F_{q^m}(θ)[t] by descending powers of t.
pub fn print_tpoly(f: &TPoly) -> String {
    let mut terms = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = monomial("t", k);
        if mono.is_empty() {
            terms.push(print_ratfunc(c));
            continue;
        }
        if c.is_one() {
            terms.push(mono);
            continue;
        }
        let coef = print_ratfunc(c);
        let simple = c.den().is_one() && !is_sum(c.num());
        terms.push(if simple { format!("{coef}*{mono}") } else { format!("({coef})*{mono}") });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// An element of F_q[t].
pub fn print_t_poly(p: &Poly) -> String {
    print_poly_in(p, "t")
}
