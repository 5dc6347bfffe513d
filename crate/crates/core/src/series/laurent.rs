use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Fe, Field, Poly, RatFunc, Val};

/// Precision used for values known to be exactly zero.
pub const EXACT: i64 = i64::MAX / 4;

/// Which completion of F_{q^m}(θ) a series lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completion {
    /// Uniformizer u = 1/θ.
    Infinity,
    /// Uniformizer u = θ - c.
    At(Fe),
}

/// A Laurent series Σ_{k ≥ val} a_k u^k known modulo u^prec.
///
/// `digits[k]` is the coefficient of u^{val + k} and the window is always
/// full: `digits.len() == prec - val`. The first digit is nonzero unless the
/// window is empty, in which case the value is zero to the stated precision
/// and `val == prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    field: Field,
    completion: Completion,
    val: i64,
    digits: Vec<Fe>,
    prec: i64,
}

impl Laurent {
    pub fn new(field: &Field, completion: Completion, val: i64, mut digits: Vec<Fe>, prec: i64) -> Laurent {
        let len = (prec - val).max(0) as usize;
        digits.resize(len, Fe::ZERO);
        let lead = digits.iter().position(|d| !d.is_zero()).unwrap_or(len);
        digits.drain(..lead);
        Laurent { field: field.clone(), completion, val: val + lead as i64, digits, prec: prec.max(val) }
    }

    pub fn zero(field: &Field, completion: Completion, prec: i64) -> Laurent {
        Laurent { field: field.clone(), completion, val: prec, digits: Vec::new(), prec }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    /// Valuation of the leading digit; equals the precision when no digit is
    /// known to be nonzero.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Exclusive bound on the known exponents.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn digits(&self) -> &[Fe] {
        &self.digits
    }

    /// True when the series vanishes to its precision.
    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Coefficient of u^k, or `None` beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Fe> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(Fe::ZERO);
        }
        Some(self.digits[(k - self.val) as usize])
    }

    /// Forgets every digit at or beyond u^prec.
    pub fn truncate(&self, prec: i64) -> Laurent {
        if prec >= self.prec {
            return self.clone();
        }
        Laurent::new(&self.field, self.completion, self.val, self.digits.clone(), prec)
    }

    fn check(&self, other: &Laurent) -> Result<()> {
        if self.completion != other.completion {
            return Err(Error::MixedCompletions);
        }
        Ok(())
    }

    fn combine(&self, other: &Laurent, sub: bool) -> Result<Laurent> {
        self.check(other)?;
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let val = self.val.min(other.val).min(prec);
        let mut digits = vec![Fe::ZERO; (prec - val) as usize];
        for (k, d) in digits.iter_mut().enumerate() {
            let e = val + k as i64;
            let a = self.coeff(e).unwrap_or(Fe::ZERO);
            let b = other.coeff(e).unwrap_or(Fe::ZERO);
            *d = if sub { f.sub(a, b) } else { f.add(a, b) };
        }
        Ok(Laurent::new(f, self.completion, val, digits, prec))
    }

    pub fn add(&self, other: &Laurent) -> Result<Laurent> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Laurent) -> Result<Laurent> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Laurent {
        let digits = self.digits.iter().map(|&d| self.field.neg(d)).collect();
        Laurent { digits, ..self.clone() }
    }

    pub fn scale(&self, c: Fe) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(&self.field, self.completion, EXACT);
        }
        let digits = self.digits.iter().map(|&d| self.field.mul(d, c)).collect();
        Laurent { digits, ..self.clone() }
    }

    /// Product with precision min(prec_a + val_b, prec_b + val_a).
    pub fn mul(&self, other: &Laurent) -> Result<Laurent> {
        self.check(other)?;
        let f = &self.field;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        let val = (self.val + other.val).min(prec);
        let len = (prec - val) as usize;
        let mut digits = vec![Fe::ZERO; len];
        for (i, &a) in self.digits.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base = (self.val + i as i64 + other.val - val) as usize;
            if base >= len {
                break;
            }
            for (j, &b) in other.digits.iter().enumerate().take(len - base) {
                if !b.is_zero() {
                    digits[base + j] = f.add(digits[base + j], f.mul(a, b));
                }
            }
        }
        Ok(Laurent::new(f, self.completion, val, digits, prec))
    }

    /// Inverse, keeping the relative precision.
    pub fn inv(&self) -> Result<Laurent> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let len = self.digits.len();
        let lead = f.inv(self.digits[0]).expect("leading digit is nonzero");
        let mut out = vec![Fe::ZERO; len];
        out[0] = lead;
        for k in 1..len {
            let mut s = Fe::ZERO;
            for j in 1..=k {
                if !self.digits[j].is_zero() {
                    s = f.add(s, f.mul(self.digits[j], out[k - j]));
                }
            }
            out[k] = f.neg(f.mul(s, lead));
        }
        Ok(Laurent::new(f, self.completion, -self.val, out, -self.val + len as i64))
    }

    /// The q-th power, coefficientwise x -> x^q with u -> u^q.
    pub fn frob(&self) -> Laurent {
        self.frob_pow(1)
    }

    /// The q^i-th power, keeping only digits below `limit`.
    pub fn frob_pow_truncated(&self, i: u32, limit: i64) -> Laurent {
        let f = &self.field;
        let k = (f.q() as i64).pow(i);
        let val = self.val.saturating_mul(k);
        let prec = self.prec.saturating_mul(k).min(limit.max(val));
        let mut digits = vec![Fe::ZERO; (prec - val).max(0) as usize];
        for (j, &d) in self.digits.iter().enumerate() {
            let pos = j as i64 * k;
            if pos >= digits.len() as i64 {
                break;
            }
            digits[pos as usize] = f.frob_pow(d, i as u64);
        }
        Laurent::new(f, self.completion, val, digits, prec)
    }

    pub fn frob_pow(&self, i: u32) -> Laurent {
        self.frob_pow_truncated(i, i64::MAX)
    }

    /// Multiplication by an exact rational function.
    pub fn mul_ratfunc(&self, c: &RatFunc) -> Result<Laurent> {
        let vc = match valuation_of(c, self.completion) {
            Val::Infinity => return Ok(Laurent::zero(&self.field, self.completion, EXACT)),
            Val::Finite(v) => v,
        };
        let emb = embed(c, self.completion, self.prec - self.val + vc + 1);
        self.mul(&emb)
    }

    /// Whether the two series agree on every exponent below `n`.
    pub fn agrees_to(&self, other: &Laurent, n: i64) -> bool {
        self.completion == other.completion
            && (self.val.min(other.val)..n).all(|k| match (self.coeff(k), other.coeff(k)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            })
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({:?}, val {}, {:?}, O(u^{}))", self.completion, self.val, self.digits, self.prec)
    }
}

/// Valuation of an exact rational function in the given completion.
pub fn valuation_of(x: &RatFunc, completion: Completion) -> Val {
    match completion {
        Completion::Infinity => x.ord_inf(),
        Completion::At(c) => x.ord(&Poly::linear(x.field(), c)),
    }
}

/// Expansion of `x` to precision `prec`.
pub fn embed(x: &RatFunc, completion: Completion, prec: i64) -> Laurent {
    embed_parts(x.num(), x.den(), completion, prec)
}

/// Expansion of num/den to precision `prec`; the fraction need not be
/// reduced.
pub fn embed_parts(num: &Poly, den: &Poly, completion: Completion, prec: i64) -> Laurent {
    let field = num.field();
    if num.is_zero() {
        return Laurent::zero(field, completion, prec);
    }
    let (a, va) = local_coeffs(num, completion);
    let (b, vb) = local_coeffs(den, completion);
    let val = va - vb;
    if val >= prec {
        return Laurent::zero(field, completion, prec);
    }
    let len = (prec - val) as usize;
    let lead = field.inv(b[0]).expect("local unit");
    let mut out = vec![Fe::ZERO; len];
    for k in 0..len {
        let mut s = a.get(k).copied().unwrap_or(Fe::ZERO);
        for j in 1..=k.min(b.len() - 1) {
            if !b[j].is_zero() {
                s = field.sub(s, field.mul(b[j], out[k - j]));
            }
        }
        out[k] = field.mul(s, lead);
    }
    Laurent::new(field, completion, val, out, prec)
}

/// Coefficients of p in the uniformizer with the leading power factored
/// out: p = u^{v} Σ c_k u^k with c_0 ≠ 0.
fn local_coeffs(p: &Poly, completion: Completion) -> (Vec<Fe>, i64) {
    match completion {
        Completion::Infinity => {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            (c, -(p.deg().expect("nonzero") as i64))
        }
        Completion::At(c) => {
            let shifted = taylor_shift(p, c);
            let v = shifted.iter().position(|d| !d.is_zero()).expect("nonzero");
            (shifted[v..].to_vec(), v as i64)
        }
    }
}

/// Coefficients of p(u + c).
fn taylor_shift(p: &Poly, c: Fe) -> Vec<Fe> {
    let f = p.field();
    let mut a = p.coeffs().to_vec();
    if c.is_zero() {
        return a;
    }
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            a[j] = f.add(a[j], f.mul(c, a[j + 1]));
        }
    }
    a
}
