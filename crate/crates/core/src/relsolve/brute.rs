use crate::carlitz::act;
use crate::error::{Error, Result};
use crate::ff::{Fe, Poly, RatFunc};

use super::{RelationProblem, TVec};

/// Largest number of tuples [`brute_force_relations`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Every a ∈ F_q[t]^ℓ with deg_t a_j ≤ `deg_bound` and Σ [a_j]_n(P_j) = 0,
/// found by exhaustive enumeration. Includes the zero tuple.
pub fn brute_force_relations(problem: &RelationProblem, deg_bound: usize) -> Result<Vec<TVec>> {
    let field = &problem.field;
    let q = field.q() as u128;
    let ell = problem.len();
    let slots = ell * (deg_bound + 1);
    let total = (0..slots).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge(total));
    }

    // Images [t^e]_n(P_j) flattened to F_q-vectors over a common denominator,
    // so that each tuple costs only vector additions.
    let mut images = Vec::with_capacity(slots);
    for p in &problem.points {
        for e in 0..=deg_bound {
            images.push(act(&Poly::monomial(field, Fe::ONE, e), p)?);
        }
    }
    let mut den = Poly::one(field);
    for img in &images {
        for c in img.coords() {
            den = &den * &c.den().div_exact(&c.den().gcd(&den)).expect("gcd divides");
        }
    }
    let den = RatFunc::from_poly(den);
    let mut width = 0;
    let nums: Vec<Vec<Poly>> = images
        .iter()
        .map(|img| {
            img.coords()
                .iter()
                .map(|c| {
                    let p = (c * &den).as_poly().expect("common denominator").clone();
                    width = width.max(p.coeffs().len());
                    p
                })
                .collect()
        })
        .collect();
    let n = problem.n;
    let vectors: Vec<Vec<Fe>> = nums
        .iter()
        .map(|coords| {
            let mut v = vec![Fe::ZERO; n * width];
            for (i, c) in coords.iter().enumerate() {
                for (k, &x) in c.coeffs().iter().enumerate() {
                    v[i * width + k] = x;
                }
            }
            v
        })
        .collect();

    let scalars = field.subfield_elements();
    let mut digits = vec![0usize; slots];
    let mut out = Vec::new();
    loop {
        let mut acc = vec![Fe::ZERO; n * width];
        for (slot, &dgt) in digits.iter().enumerate() {
            if dgt == 0 {
                continue;
            }
            let c = scalars[dgt];
            for (a, &v) in acc.iter_mut().zip(&vectors[slot]) {
                if !v.is_zero() {
                    *a = field.add(*a, field.mul(c, v));
                }
            }
        }
        if acc.iter().all(|x| x.is_zero()) {
            out.push(
                (0..ell)
                    .map(|j| {
                        Poly::new(
                            field,
                            (0..=deg_bound).map(|e| scalars[digits[j * (deg_bound + 1) + e]]).collect(),
                        )
                    })
                    .collect(),
            );
        }
        let mut k = 0;
        loop {
            if k == slots {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < scalars.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
