use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Fe, Field, Poly, Val};
use crate::error::{Error, Result};

/// Element of F_{q^m}(θ) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// num / den reduced to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if !den.is_monic() {
            let inv = num.field().inv(den.lc()).expect("nonzero");
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RatFunc { num, den })
    }

    /// Trusts the caller that the pair is already canonical.
    pub(crate) fn from_parts_unchecked(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(den.is_monic());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Fe) -> RatFunc {
        RatFunc::from_poly(Poly::constant(field, c))
    }

    pub fn from_int(field: &Field, n: i64) -> RatFunc {
        RatFunc::constant(field, field.from_int(n))
    }

    /// The variable θ.
    pub fn theta(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Fe> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        RatFunc::new(self.den.clone(), self.num.clone()).ok()
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u64;
        RatFunc::from_parts_unchecked(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: Fe) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// f -> f^q.
    pub fn frob(&self) -> RatFunc {
        RatFunc { num: self.num.frob(), den: self.den.frob() }
    }

    /// f -> f^(q^k).
    pub fn frob_pow(&self, k: u32) -> RatFunc {
        (0..k).fold(self.clone(), |acc, _| acc.frob())
    }

    /// The q-th root, when `self` is a q-th power.
    pub fn frob_root(&self) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.frob_root()?, den: self.den.frob_root()? })
    }

    /// ord_∞ = deg den - deg num.
    pub fn ord_inf(&self) -> Val {
        match self.num.deg() {
            None => Val::Infinity,
            Some(d) => Val::Finite(self.den.deg().unwrap_or(0) as i64 - d as i64),
        }
    }

    /// Valuation at the monic irreducible `w`.
    pub fn ord(&self, w: &Poly) -> Val {
        match self.num.ord(w) {
            Val::Infinity => Val::Infinity,
            Val::Finite(a) => Val::Finite(a - self.den.ord(w).finite().unwrap_or(0)),
        }
    }

    /// Value at θ = x, or `None` at a pole.
    pub fn eval(&self, x: Fe) -> Option<Fe> {
        let f = self.field();
        f.inv(self.den.eval(x)).map(|d| f.mul(self.num.eval(x), d))
    }

    /// True when every coefficient of numerator and denominator lies in F_q.
    pub fn in_subfield(&self) -> bool {
        self.num.in_subfield() && self.den.in_subfield()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn add_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return RatFunc::new(&a.num + &b.num, a.den.clone()).expect("nonzero denominator");
    }
    let num = &(&a.num * &b.den) + &(&b.num * &a.den);
    RatFunc::new(num, &a.den * &b.den).expect("nonzero denominator")
}

fn sub_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    add_impl(a, &-b)
}

fn mul_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() || b.is_zero() {
        return RatFunc::zero(a.field());
    }
    if a.is_poly() && b.is_poly() {
        return RatFunc::from_poly(&a.num * &b.num);
    }
    // Cross-cancel before multiplying to keep the gcd small.
    let g1 = a.num.gcd(&b.den);
    let g2 = b.num.gcd(&a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    RatFunc::from_parts_unchecked(&an * &bn, &ad * &bd)
}

fn div_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.checked_div(b).expect("division by zero")
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(&self, rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_cancels_common_factors() {
        let f = Field::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 1]);
        let b = Poly::from_ints(&f, &[0, 2]);
        let c = Poly::from_ints(&f, &[2, 0, 1]);
        let r = RatFunc::new(&a * &c, &b * &c).unwrap();
        assert_eq!(r, RatFunc::new(a.clone(), b.clone()).unwrap());
        assert!(r.den().is_monic());
        assert_eq!(&r * &RatFunc::from_poly(b.clone()), RatFunc::from_poly(a));
    }

    #[test]
    fn valuations() {
        let f = Field::prime(3).unwrap();
        let th = RatFunc::theta(&f);
        let w = Poly::from_ints(&f, &[1, 0, 1]);
        assert_eq!((&th * &th + RatFunc::one(&f)).ord_inf(), Val::Finite(-2));
        assert_eq!(th.inv().unwrap().ord(&Poly::x(&f)), Val::Finite(-1));
        assert_eq!(RatFunc::from_poly(w.clone()).ord(&w), Val::Finite(1));
        assert_eq!(RatFunc::zero(&f).ord_inf(), Val::Infinity);
    }

    #[test]
    fn frobenius_is_a_ring_map() {
        let f = Field::new(super::super::FieldSpec::new(2, 1, 3)).unwrap();
        let g = f.generator();
        let a = RatFunc::new(Poly::new(&f, vec![g, Fe::ONE]), Poly::new(&f, vec![Fe::ONE, g, Fe::ONE]))
            .unwrap();
        let b = RatFunc::theta(&f) + RatFunc::constant(&f, g);
        assert_eq!((&a * &b).frob(), &a.frob() * &b.frob());
        assert_eq!((&a + &b).frob(), &a.frob() + &b.frob());
        assert_eq!(a.frob().frob_root().unwrap(), a);
        assert_eq!(a.frob_pow(3), a.pow(8));
    }
}
