use crate::carlitz::{in_log_domain, TensorPoint};
use crate::error::{Error, Result};
use crate::ff::{binomial, Poly, RatFunc, Val};
use crate::tpoly::TPoly;

use super::laurent::{embed_parts, valuation_of, Completion, Laurent};

fn domain_inf(q: i64, n: usize, v: i64) -> bool {
    (q as i128 - 1) * (-(v as i128)) < n as i128 * q as i128
}

/// Li_n(α) = Σ_i α^{q^i} / L_i^n in the given completion, to precision `prec`.
///
/// At ∞ this needs |α|_∞ < q^{nq/(q-1)}; at a degree-one place it needs
/// ord_v(α) ≥ 1.
pub fn li_series(n: usize, alpha: &RatFunc, completion: Completion, prec: i64) -> Result<Laurent> {
    let field = alpha.field();
    let q = field.q() as i64;
    let va = match valuation_of(alpha, completion) {
        Val::Infinity => return Ok(Laurent::zero(field, completion, prec)),
        Val::Finite(v) => v,
    };
    match completion {
        Completion::Infinity if !domain_inf(q, n, va) => {
            return Err(Error::Domain(format!("Li_{n}({alpha}) diverges at ∞")));
        }
        Completion::At(_) if va < 1 => {
            return Err(Error::Domain(format!("Li_{n}({alpha}) diverges at the place")));
        }
        _ => {}
    }
    let mut acc = Laurent::zero(field, completion, prec);
    let mut l = Poly::one(field);
    let mut qi: i64 = 1;
    let mut s: i64 = 0;
    let th = Poly::x(field);
    for i in 0u32.. {
        if i > 0 {
            l = &l * &(&th - &th.frob_pow(i));
            qi = qi.checked_mul(q).ok_or_else(|| Error::Precision("term index overflow".into()))?;
            s += qi;
        }
        // Lower bound on the valuation of this and every later term.
        let bound = match completion {
            Completion::Infinity => qi * va + n as i64 * s,
            Completion::At(_) => qi * va - n as i64 * i as i64,
        };
        let rising = match completion {
            Completion::Infinity => true,
            Completion::At(_) => qi * (q - 1) * va > n as i64,
        };
        if bound >= prec && rising {
            break;
        }
        let num = alpha.num().frob_pow(i);
        let den = &alpha.den().frob_pow(i) * &l.pow(n as u64);
        acc = acc.add(&embed_parts(&num, &den, completion, prec))?;
    }
    Ok(acc)
}

/// Li_n(α) in k_∞.
pub fn cpl_inf(n: usize, alpha: &RatFunc, prec: i64) -> Result<Laurent> {
    li_series(n, alpha, Completion::Infinity, prec)
}

/// Σ_i f^(i)(θ) / L_i^n, the t-deformation evaluated at t = θ.
pub fn cpl_deform_at_theta(n: usize, f: &TPoly, prec: i64) -> Result<Laurent> {
    let field = f.field();
    let q = field.q() as i64;
    let completion = Completion::Infinity;
    let g = match f.ord_inf() {
        Val::Infinity => return Ok(Laurent::zero(field, completion, prec)),
        Val::Finite(v) => v,
    };
    if !domain_inf(q, n, g) {
        return Err(Error::Domain(format!("Gauss norm too large for n = {n}")));
    }
    let dt = f.coeffs().len() as i64 - 1;
    let th = Poly::x(field);
    let mut acc = Laurent::zero(field, completion, prec);
    let mut l = Poly::one(field);
    let mut qi: i64 = 1;
    let mut s: i64 = 0;
    for i in 0u32.. {
        if i > 0 {
            l = &l * &(&th - &th.frob_pow(i));
            qi = qi.checked_mul(q).ok_or_else(|| Error::Precision("term index overflow".into()))?;
            s += qi;
        }
        if qi * g - dt + n as i64 * s >= prec {
            break;
        }
        let ln = l.pow(n as u64);
        for (k, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = c.num().frob_pow(i).shift(k);
            let den = &c.den().frob_pow(i) * &ln;
            acc = acc.add(&embed_parts(&num, &den, completion, prec))?;
        }
    }
    Ok(acc)
}

/// Σ_{j=1}^n Σ_{m=0}^{n-j} (-1)^m C(n-j, m) θ^{n-m-j} Li_n(θ^m p_{n-j}).
pub fn log_last_coord_formula(p: &TensorPoint, prec: i64) -> Result<Laurent> {
    if !in_log_domain(p) {
        return Err(Error::Domain("point outside the domain of log".into()));
    }
    let field = p.field();
    let n = p.n();
    let th = RatFunc::theta(field);
    let mut acc = Laurent::zero(field, Completion::Infinity, prec);
    for j in 1..=n {
        let pj = p.p(n - j);
        if pj.is_zero() {
            continue;
        }
        for m in 0..=n - j {
            let mut c = binomial(field, (n - j) as u64, m as u64);
            if m % 2 == 1 {
                c = field.neg(c);
            }
            if c.is_zero() {
                continue;
            }
            let shift = (n - m - j) as i64;
            let li = cpl_inf(n, &(&th.pow(m as i64) * pj), prec + shift)?;
            let coeff = th.pow(shift).scale(c);
            acc = acc.add(&li.mul_ratfunc(&coeff)?.truncate(prec))?;
        }
    }
    Ok(acc)
}

/// Extra digits needed so that Σ c_i·value_i is known to the values'
/// precision: the largest pole order among the coefficients.
pub fn guard_digits(coeffs: &[RatFunc], completion: Completion) -> i64 {
    coeffs
        .iter()
        .filter_map(|c| valuation_of(c, completion).finite())
        .map(|v| -v)
        .max()
        .unwrap_or(0)
        .max(0)
}

/// Valuation of Σ c_i·value_i. When the sum vanishes to its precision the
/// precision is returned; an empty or all-zero combination gives +∞.
pub fn verify_relation(values: &[Laurent], coeffs: &[RatFunc]) -> Result<Val> {
    if values.len() != coeffs.len() {
        return Err(Error::Dimension(format!("{} values, {} coefficients", values.len(), coeffs.len())));
    }
    if values.windows(2).any(|w| w[0].completion() != w[1].completion()) {
        return Err(Error::MixedCompletions);
    }
    let mut acc: Option<Laurent> = None;
    for (v, c) in values.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let term = v.mul_ratfunc(c)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.map_or(Val::Infinity, |a| Val::Finite(a.valuation())))
}
