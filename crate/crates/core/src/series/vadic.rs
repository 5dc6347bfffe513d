use crate::carlitz::{act, TensorPoint};
use crate::error::{Error, Result};
use crate::ff::{Fe, Poly, RatFunc, Val};
use crate::places::{ord_at, Place};

use super::cpl::li_series;
use super::laurent::{valuation_of, Completion, Laurent};
use super::loglie::log_at;

/// Number of monic candidates a ∈ F_q[t] examined when looking for an
/// admissible multiplier.
pub const MULTIPLIER_SEARCH_LIMIT: usize = 64;

/// The completion at a degree-one place θ - c.
pub fn place_completion(v: &Place) -> Result<Completion> {
    match v {
        Place::Finite(p) if p.deg() == Some(1) && p.is_monic() => Ok(Completion::At(p.field().neg(p.coeff(0)))),
        _ => Err(Error::InvalidPlace(format!("{v:?} is not a finite place of degree one"))),
    }
}

/// Monic polynomials over F_q ordered by degree, then lexicographically on
/// the coefficients from the top down.
fn monic_candidates(field: &crate::ff::Field) -> impl Iterator<Item = Poly> + '_ {
    let scalars = field.subfield_elements();
    let q = scalars.len();
    (1usize..).flat_map(move |d| {
        let scalars = scalars.clone();
        let count = q.checked_pow(d as u32).unwrap_or(usize::MAX);
        (0..count).map(move |mut idx| {
            let mut coeffs = vec![Fe::ZERO; d + 1];
            coeffs[d] = Fe::ONE;
            for k in 0..d {
                coeffs[k] = scalars[idx % q];
                idx /= q;
            }
            Poly::new(field, coeffs)
        })
    })
}

/// Whether [a]_n(0, ..., 0, α) has every coordinate of positive valuation at v.
pub fn is_admissible(n: usize, alpha: &RatFunc, v: &Place, a: &Poly) -> Result<bool> {
    let image = act(a, &TensorPoint::last(n, alpha.clone()))?;
    Ok(image.coords().iter().all(|x| ord_at(v, x) >= Val::Finite(1)))
}

/// The first `count` admissible multipliers among the first
/// [`MULTIPLIER_SEARCH_LIMIT`] monic candidates.
pub fn admissible_multipliers(n: usize, alpha: &RatFunc, v: &Place, count: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for a in monic_candidates(alpha.field()).take(MULTIPLIER_SEARCH_LIMIT) {
        if is_admissible(n, alpha, v, &a)? {
            out.push(a);
            if out.len() == count {
                break;
            }
        }
    }
    Ok(out)
}

/// a(θ)^{-1} times the last coordinate of log [a]_n(0, ..., 0, α) at v.
pub fn cpl_v_with(n: usize, alpha: &RatFunc, v: &Place, a: &Poly, prec: i64) -> Result<Laurent> {
    let completion = place_completion(v)?;
    if !is_admissible(n, alpha, v, a)? {
        return Err(Error::NoAdmissibleMultiplier(format!("{a} is not admissible")));
    }
    let a_theta = RatFunc::from_poly(a.clone());
    let k = valuation_of(&a_theta, completion).finite().ok_or(Error::DivisionByZero)?;
    let image = act(a, &TensorPoint::last(n, alpha.clone()))?;
    let log = log_at(&image, completion, prec + k)?;
    let inv = a_theta.inv().ok_or(Error::DivisionByZero)?;
    Ok(log[n - 1].mul_ratfunc(&inv)?.truncate(prec))
}

/// The v-adic Li_n(α) for |α|_v ≤ 1 at a degree-one place v.
///
/// When ord_v(α) ≥ 1 the defining series converges directly. Otherwise
/// the value is computed through the first admissible multiplier; failure
/// to find one within the search limit is reported.
pub fn cpl_v(n: usize, alpha: &RatFunc, v: &Place, prec: i64) -> Result<Laurent> {
    let completion = place_completion(v)?;
    match ord_at(v, alpha) {
        Val::Infinity => Ok(Laurent::zero(alpha.field(), completion, prec)),
        Val::Finite(o) if o >= 1 => li_series(n, alpha, completion, prec),
        Val::Finite(0) => {
            let a = admissible_multipliers(n, alpha, v, 1)?
                .pop()
                .ok_or_else(|| Error::NoAdmissibleMultiplier(format!("none among the first {MULTIPLIER_SEARCH_LIMIT} candidates")))?;
            cpl_v_with(n, alpha, v, &a, prec)
        }
        Val::Finite(_) => Err(Error::Domain(format!("|{alpha}|_v > 1"))),
    }
}
