//! Polynomials in t with coefficients in F_{q^m}(θ).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ff::{binomial, Degree, Field, Poly, RatFunc, Val};

/// f = f_0 + f_1 t + ... + f_d t^d with f_i ∈ F_{q^m}(θ).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TPoly {
    field: Field,
    coeffs: Vec<RatFunc>,
}

/// Gauss norm ‖f‖ = q^(-v) with v = min_i ord_∞(f_i), stored as v.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussNorm {
    pub ord: Val,
}

impl GaussNorm {
    /// log_q ‖f‖, or `None` for the zero polynomial.
    pub fn log_q(self) -> Option<i64> {
        self.ord.finite().map(|v| -v)
    }

    pub fn mul(self, other: GaussNorm) -> GaussNorm {
        GaussNorm {
            ord: match (self.ord, other.ord) {
                (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
                _ => Val::Infinity,
            },
        }
    }
}

impl PartialOrd for GaussNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        other.ord.cmp(&self.ord)
    }
}

/// Powers θ^0..θ^k.
fn theta_powers(field: &Field, k: usize, sign: bool) -> Vec<RatFunc> {
    let th = RatFunc::theta(field);
    let th = if sign { -th } else { th };
    let mut out = Vec::with_capacity(k + 1);
    let mut acc = RatFunc::one(field);
    for _ in 0..=k {
        out.push(acc.clone());
        acc = &acc * &th;
    }
    out
}

impl TPoly {
    pub fn new(field: &Field, mut coeffs: Vec<RatFunc>) -> TPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> TPoly {
        TPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> TPoly {
        TPoly::constant(RatFunc::one(field))
    }

    pub fn constant(c: RatFunc) -> TPoly {
        let field = c.field().clone();
        TPoly::new(&field, vec![c])
    }

    /// The variable t.
    pub fn t(field: &Field) -> TPoly {
        TPoly::new(field, vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    /// t - θ.
    pub fn t_minus_theta(field: &Field) -> TPoly {
        TPoly::new(field, vec![-RatFunc::theta(field), RatFunc::one(field)])
    }

    /// Embeds a polynomial in t with constant coefficients.
    pub fn from_t_poly(a: &Poly) -> TPoly {
        TPoly::new(
            a.field(),
            a.coeffs().iter().map(|&c| RatFunc::constant(a.field(), c)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> TPoly {
        TPoly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(&self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: u32) -> TPoly {
        (0..e).fold(TPoly::one(&self.field), |acc, _| &acc * self)
    }

    /// Frobenius twist: every coefficient raised to the power q^i.
    ///
    /// Negative `i` is accepted only when all coefficients are exact
    /// q^|i|-th powers.
    pub fn twist(&self, i: i64) -> Result<TPoly> {
        let coeffs = if i >= 0 {
            self.coeffs.iter().map(|c| c.frob_pow(i as u32)).collect()
        } else {
            let mut cs = self.coeffs.clone();
            for _ in 0..-i {
                cs = cs
                    .iter()
                    .map(|c| c.frob_root().ok_or(Error::NegativeTwist))
                    .collect::<Result<_>>()?;
            }
            cs
        };
        Ok(TPoly::new(&self.field, coeffs))
    }

    /// Coefficients in the basis (t - θ)^j.
    pub fn to_theta_basis(&self) -> Vec<RatFunc> {
        let d = self.coeffs.len();
        if d == 0 {
            return Vec::new();
        }
        let pw = theta_powers(&self.field, d, false);
        (0..d)
            .map(|j| {
                (j..d).fold(RatFunc::zero(&self.field), |acc, i| {
                    let b = binomial(&self.field, i as u64, j as u64);
                    if b.is_zero() || self.coeffs[i].is_zero() {
                        acc
                    } else {
                        &acc + &(&self.coeffs[i] * &pw[i - j]).scale(b)
                    }
                })
            })
            .collect()
    }

    /// Inverse of [`TPoly::to_theta_basis`].
    pub fn from_theta_basis(field: &Field, qs: &[RatFunc]) -> TPoly {
        let d = qs.len();
        if d == 0 {
            return TPoly::zero(field);
        }
        let pw = theta_powers(field, d, true);
        let coeffs = (0..d)
            .map(|i| {
                (i..d).fold(RatFunc::zero(field), |acc, j| {
                    let b = binomial(field, j as u64, i as u64);
                    if b.is_zero() || qs[j].is_zero() {
                        acc
                    } else {
                        &acc + &(&qs[j] * &pw[j - i]).scale(b)
                    }
                })
            })
            .collect();
        TPoly::new(field, coeffs)
    }

    /// Reduces modulo (σ - 1)C^⊗n using (t - θ)^n g ≡ g^(1) until the
    /// t-degree drops below n.
    pub fn sigma_reduce(&self, n: usize) -> Result<TPoly> {
        if n == 0 {
            return Err(Error::Dimension("tensor power must be at least 1".into()));
        }
        let mut f = self.clone();
        while f.coeffs.len() > n {
            let qs = f.to_theta_basis();
            let low = TPoly::from_theta_basis(&self.field, &qs[..n]);
            let high = TPoly::from_theta_basis(&self.field, &qs[n..]);
            f = &low + &high.twist(1)?;
        }
        Ok(f)
    }

    pub fn gauss_norm(&self) -> GaussNorm {
        GaussNorm { ord: self.ord_inf() }
    }

    /// min_i ord_∞(f_i).
    pub fn ord_inf(&self) -> Val {
        self.coeffs.iter().map(|c| c.ord_inf()).min().unwrap_or(Val::Infinity)
    }

    /// min_i ord_w(f_i) at the finite place given by the irreducible `w`.
    pub fn ord(&self, w: &Poly) -> Val {
        self.coeffs.iter().map(|c| c.ord(w)).min().unwrap_or(Val::Infinity)
    }

    /// Value at t = θ.
    pub fn eval_at_theta(&self) -> RatFunc {
        let th = RatFunc::theta(&self.field);
        self.coeffs
            .iter()
            .rev()
            .fold(RatFunc::zero(&self.field), |acc, c| &(&acc * &th) + c)
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})t^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn add_impl(a: &TPoly, b: &TPoly) -> TPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    TPoly::new(&a.field, (0..n).map(|i| &a.coeff(i) + &b.coeff(i)).collect())
}

fn sub_impl(a: &TPoly, b: &TPoly) -> TPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    TPoly::new(&a.field, (0..n).map(|i| &a.coeff(i) - &b.coeff(i)).collect())
}

fn mul_impl(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_zero() || b.is_zero() {
        return TPoly::zero(&a.field);
    }
    let mut r = vec![RatFunc::zero(&a.field); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                r[i + j] = &r[i + j] + &(x * y);
            }
        }
    }
    TPoly::new(&a.field, r)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&TPoly> for &TPoly {
            type Output = TPoly;
            fn $m(self, rhs: &TPoly) -> TPoly {
                $imp(self, rhs)
            }
        }
        impl $tr<TPoly> for TPoly {
            type Output = TPoly;
            fn $m(self, rhs: TPoly) -> TPoly {
                $imp(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}
