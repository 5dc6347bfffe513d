//! Finite fields, polynomials over them and rational functions.

mod factor;
mod field;
pub mod int;
mod poly;
mod ratfunc;

use std::cmp::Ordering;
use std::fmt;

pub use factor::{factor, is_irreducible};
pub use field::{Fe, Field, FieldSpec, DEFAULT_SEED, MAX_EXT_DEGREE};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn as_i64(self) -> Option<i64> {
        self.finite().map(|d| d as i64)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A valuation: an integer or `+∞` (the valuation of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Val::Infinity
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinity, Val::Infinity) => Ordering::Equal,
            (Val::Infinity, _) => Ordering::Greater,
            (_, Val::Infinity) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Infinity => write!(f, "+inf"),
            Val::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Binomial coefficient C(n, k) as an element of the prime field.
pub fn binomial(field: &Field, n: u64, k: u64) -> Fe {
    field.from_prime(int::binomial_mod(n, k, field.p()))
}
