use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Degree, Fe, Field, Val};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`Field`], lowest degree first.
///
/// The same type serves for F_{q^m}[θ] and for F_q[t].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from integer coefficients in the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The variable.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Fe::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Fe, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Poly { field: field.clone(), coeffs }
    }

    /// The linear polynomial x - c.
    pub fn linear(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![field.neg(c), Fe::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an integer, for nonzero polynomials.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fe::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// Truncation modulo x^k.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().take(k).copied().collect())
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Composition self(g).
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_prime(i as u64 % f.p())))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        self.try_divrem(d).expect("division by zero polynomial")
    }

    pub fn try_divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(d.lc()).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let mut quo = vec![Fe::ZERO; r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            if c.is_zero() {
                continue;
            }
            quo[k] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, quo), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.try_divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*other = g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut r = Poly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// self^e mod m.
    pub fn powmod(&self, e: &num_exp::Exp, m: &Poly) -> Poly {
        let mut r = Poly::one(&self.field).rem(m);
        let b = self.rem(m);
        for bit in e.bits_msb_first() {
            r = (&r * &r).rem(m);
            if bit {
                r = (&r * &b).rem(m);
            }
        }
        r
    }

    pub fn powmod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.powmod(&num_exp::Exp::from(e), m)
    }

    /// Coefficientwise map; the result is trimmed.
    pub fn map(&self, mut g: impl FnMut(Fe) -> Fe) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// The q-power map f -> f^q.
    pub fn frob(&self) -> Poly {
        self.expand_power(self.field.q(), |c| self.field.frob(c))
    }

    /// f -> f^(q^k).
    pub fn frob_pow(&self, k: u32) -> Poly {
        (0..k).fold(self.clone(), |acc, _| acc.frob())
    }

    /// f -> f^p.
    pub fn pth_power(&self) -> Poly {
        self.expand_power(self.field.p(), |c| self.field.pth_power(c))
    }

    fn expand_power(&self, r: u64, cmap: impl Fn(Fe) -> Fe) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let r = r as usize;
        let mut coeffs = vec![Fe::ZERO; (self.coeffs.len() - 1) * r + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * r] = cmap(c);
        }
        Poly { field: self.field.clone(), coeffs }
    }

    /// Inverse of [`Poly::frob`], if `self` is a q-th power.
    pub fn frob_root(&self) -> Option<Poly> {
        let f = &self.field;
        self.contract_root(f.q(), |c| f.frob_inv(c))
    }

    /// Inverse of [`Poly::pth_power`], if `self` is a p-th power.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        self.contract_root(f.p(), |c| f.pth_root(c))
    }

    fn contract_root(&self, r: u64, cmap: impl Fn(Fe) -> Fe) -> Option<Poly> {
        let r = r as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / r + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % r == 0 {
                out.push(cmap(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(&self.field, out))
    }

    /// Multiplicity of the irreducible `w` in `self`; +∞ for zero.
    pub fn ord(&self, w: &Poly) -> Val {
        if self.is_zero() {
            return Val::Infinity;
        }
        let mut n = 0;
        let mut f = self.clone();
        while let Some(q) = f.div_exact(w) {
            f = q;
            n += 1;
        }
        Val::Finite(n)
    }

    /// True when every coefficient lies in F_q.
    pub fn in_subfield(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.in_subfield(c))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = c.index();
            match (i, c) {
                (0, _) => write!(f, "[{c}]")?,
                (1, 1) => write!(f, "x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (1, _) => write!(f, "[{c}]x")?,
                _ => write!(f, "[{c}]x^{i}")?,
            }
        }
        Ok(())
    }
}

fn add_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new(f, (0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
}

fn sub_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new(f, (0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
}

fn mul_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(f);
    }
    let mut r = vec![Fe::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    Poly::new(f, r)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                $imp(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                $imp(&self, rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map(|c| self.field.neg(c))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Big exponents for modular powering (q^d can exceed u64).
pub mod num_exp {
    /// Unsigned integer as little-endian u64 limbs.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct Exp(Vec<u64>);

    impl From<u64> for Exp {
        fn from(v: u64) -> Self {
            Exp(vec![v])
        }
    }

    impl Exp {
        /// base^k.
        pub fn power(base: u64, k: u32) -> Exp {
            let mut r = Exp::from(1);
            for _ in 0..k {
                r = r.mul_small(base);
            }
            r
        }

        pub fn mul_small(&self, m: u64) -> Exp {
            let mut carry = 0u128;
            let mut out = Vec::with_capacity(self.0.len() + 1);
            for &l in &self.0 {
                let v = l as u128 * m as u128 + carry;
                out.push(v as u64);
                carry = v >> 64;
            }
            if carry > 0 {
                out.push(carry as u64);
            }
            Exp(out)
        }

        pub fn sub_small(&self, s: u64) -> Exp {
            let mut out = self.0.clone();
            let mut borrow = s;
            for l in out.iter_mut() {
                let (v, b) = l.overflowing_sub(borrow);
                *l = v;
                borrow = u64::from(b);
                if borrow == 0 {
                    break;
                }
            }
            assert_eq!(borrow, 0, "exponent underflow");
            Exp(out)
        }

        pub fn add(&self, other: &Exp) -> Exp {
            let n = self.0.len().max(other.0.len());
            let mut out = Vec::with_capacity(n + 1);
            let mut carry = 0u128;
            for i in 0..n {
                let v = *self.0.get(i).unwrap_or(&0) as u128
                    + *other.0.get(i).unwrap_or(&0) as u128
                    + carry;
                out.push(v as u64);
                carry = v >> 64;
            }
            if carry > 0 {
                out.push(carry as u64);
            }
            Exp(out)
        }

        /// Division by a small integer, returning quotient and remainder.
        pub fn div_small(&self, d: u64) -> (Exp, u64) {
            let mut out = vec![0u64; self.0.len()];
            let mut rem = 0u128;
            for i in (0..self.0.len()).rev() {
                let cur = (rem << 64) | self.0[i] as u128;
                out[i] = (cur / d as u128) as u64;
                rem = cur % d as u128;
            }
            (Exp(out), rem as u64)
        }

        pub fn bits_msb_first(&self) -> impl Iterator<Item = bool> + '_ {
            let total = self.0.len() * 64;
            let top = (0..total).rev().find(|&i| (self.0[i / 64] >> (i % 64)) & 1 == 1);
            let n = top.map_or(0, |t| t + 1);
            (0..n).rev().map(move |i| (self.0[i / 64] >> (i % 64)) & 1 == 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f = f3();
        let a = Poly::from_ints(&f, &[-1, 0, 1]);
        let b = Poly::from_ints(&f, &[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let c = Poly::from_ints(&f, &[2, 0, 2]);
        assert_eq!(c.gcd(&Poly::zero(&f)), c.monic());
        let d = Poly::from_ints(&f, &[1, 0, 1]);
        assert!(d.gcd(&Poly::x(&f)).is_one());
        assert!(Poly::zero(&f).gcd(&Poly::zero(&f)).is_zero());
    }

    #[test]
    fn division_identity() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1, 2, 1]);
        let b = Poly::from_ints(&f, &[2, 1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn xgcd_bezout() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 0, 1, 1]);
        let b = Poly::from_ints(&f, &[2, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn frobenius_and_roots() {
        let f = Field::new(super::super::FieldSpec::new(3, 1, 2)).unwrap();
        let a = Poly::new(&f, vec![f.generator(), Fe::ONE, f.from_int(2)]);
        assert_eq!(a.frob(), a.pow(3));
        assert_eq!(a.frob().frob_root().unwrap(), a);
        assert_eq!(a.pth_power().pth_root().unwrap(), a);
        assert!(a.frob_root().is_none());
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let f = f3();
        assert_eq!(Poly::zero(&f).degree(), Degree::NegInfinity);
        assert!(Poly::zero(&f).degree() < Poly::one(&f).degree());
        assert_eq!(Poly::zero(&f).ord(&Poly::x(&f)), Val::Infinity);
    }

    #[test]
    fn big_exponent_powmod_matches_repeated_frobenius() {
        let f = f3();
        let m = Poly::from_ints(&f, &[2, 2, 0, 0, 0, 1]);
        let x = Poly::x(&f);
        let e = num_exp::Exp::power(3, 50);
        let mut h = x.clone();
        for _ in 0..50 {
            h = h.frob().rem(&m);
        }
        assert_eq!(x.powmod(&e, &m), h);
        let (q, r) = e.div_small(2);
        assert_eq!(r, 1);
        assert_eq!(q.mul_small(2).add(&num_exp::Exp::from(1)), e);
    }
}
