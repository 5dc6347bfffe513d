use crate::carlitz::{in_log_domain, TensorPoint};
use crate::error::{Error, Result};
use crate::ff::{Poly, RatFunc, Val};
use crate::places::{ord_at, Place};

use super::coeffs::{coefficients, Kind};
use super::laurent::{embed_parts, valuation_of, Completion, Laurent};

/// A vector in Lie C^⊗n, coordinates in the same order as [`TensorPoint`].
pub type LieVector = Vec<Laurent>;

/// Largest number of exp/log terms tried before giving up.
pub const MAX_TERMS: usize = 24;

/// Stopping rule shared by exp and log: the lower bounds on term valuations
/// must reach the target on two consecutive terms while still increasing.
struct Stop {
    prec: i64,
    last: Option<i64>,
    hits: usize,
}

impl Stop {
    fn new(prec: i64) -> Stop {
        Stop { prec, last: None, hits: 0 }
    }

    /// Records the bound of the next term; true when summation may end.
    fn done(&mut self, bound: Option<i64>) -> bool {
        let rising = match (self.last, bound) {
            (_, None) => true,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => b > a,
        };
        let reached = bound.is_none_or(|b| b >= self.prec);
        if reached && rising {
            self.hits += 1;
        } else {
            self.hits = 0;
        }
        if bound.is_some() {
            self.last = bound;
        }
        self.hits >= 2
    }
}

/// log of C^⊗n in the given completion, summed until the term valuations
/// pass `prec`.
///
/// At ∞ the point must satisfy [`in_log_domain`]; at a degree-one place
/// every coordinate must have positive valuation.
pub fn log_at(p: &TensorPoint, completion: Completion, prec: i64) -> Result<LieVector> {
    let field = p.field();
    let n = p.n();
    match completion {
        Completion::Infinity if !in_log_domain(p) => {
            return Err(Error::Domain("point outside the domain of log".into()));
        }
        Completion::At(c) => {
            let place = Place::at(field, c);
            if p.coords().iter().any(|x| ord_at(&place, x) < Val::Finite(1)) {
                return Err(Error::Domain("point is not v-adically small".into()));
            }
        }
        _ => {}
    }
    let vals: Vec<Val> = p.coords().iter().map(|x| valuation_of(x, completion)).collect();
    let mut out = vec![Laurent::zero(field, completion, prec); n];
    let mut stop = Stop::new(prec);
    let q = field.q() as i64;
    let mut qi: i64 = 1;
    for i in 0..MAX_TERMS {
        if i > 0 {
            qi *= q;
        }
        let mats = coefficients(field, n, Kind::Log, i + 1);
        let pm = &mats[i];
        let bound = term_bound(pm, &vals, qi, completion);
        if stop.done(bound) {
            return Ok(out);
        }
        let twisted: Vec<RatFunc> = p.coords().iter().map(|x| x.frob_pow(i as u32)).collect();
        for (row, acc) in pm.iter().zip(out.iter_mut()) {
            for (entry, x) in row.iter().zip(&twisted) {
                if entry.is_zero() || x.is_zero() {
                    continue;
                }
                let num = entry.num() * x.num();
                let den = entry.den() * x.den();
                *acc = acc.add(&embed_parts(&num, &den, completion, prec))?;
            }
        }
    }
    Err(Error::Precision(format!("log did not reach precision {prec} within {MAX_TERMS} terms")))
}

fn term_bound(m: &[Vec<RatFunc>], vals: &[Val], qi: i64, completion: Completion) -> Option<i64> {
    let mut best: Option<i64> = None;
    for row in m {
        for (entry, v) in row.iter().zip(vals) {
            if let (Val::Finite(ve), Val::Finite(vx)) = (valuation_of(entry, completion), *v) {
                let b = ve + qi * vx;
                best = Some(best.map_or(b, |x| x.min(b)));
            }
        }
    }
    best
}

/// log of C^⊗n at ∞.
pub fn log_point(p: &TensorPoint, prec: i64) -> Result<LieVector> {
    log_at(p, Completion::Infinity, prec)
}

/// exp of C^⊗n applied to a vector of series, to precision `prec`.
pub fn exp_lie(v: &[Laurent], prec: i64) -> Result<LieVector> {
    let Some(first) = v.first() else {
        return Err(Error::Dimension("empty vector".into()));
    };
    let field = first.field().clone();
    let completion = first.completion();
    if v.iter().any(|x| x.completion() != completion) {
        return Err(Error::MixedCompletions);
    }
    let n = v.len();
    let mut out = vec![Laurent::zero(&field, completion, prec); n];
    let mut stop = Stop::new(prec);
    let q = field.q() as i64;
    let mut qi: i64 = 1;
    for i in 0..MAX_TERMS {
        if i > 0 {
            qi *= q;
        }
        let mats = coefficients(&field, n, Kind::Exp, i + 1);
        let qm = &mats[i];
        let vals: Vec<Val> =
            v.iter().map(|x| if x.is_zero() { Val::Infinity } else { Val::Finite(x.valuation()) }).collect();
        let bound = term_bound(qm, &vals, qi, completion);
        if stop.done(bound) {
            return Ok(out);
        }
        for (row, acc) in qm.iter().zip(out.iter_mut()) {
            for (entry, x) in row.iter().zip(v) {
                if entry.is_zero() || x.is_zero() {
                    continue;
                }
                let ve = valuation_of(entry, completion).finite().expect("nonzero entry");
                let xi = x.frob_pow_truncated(i as u32, prec - ve);
                let e = embed_parts(entry.num(), entry.den(), completion, prec - xi.valuation());
                *acc = acc.add(&e.mul(&xi)?.truncate(prec))?;
            }
        }
    }
    Err(Error::Precision(format!("exp did not reach precision {prec} within {MAX_TERMS} terms")))
}

/// Expansion of an exact point coordinatewise.
pub fn embed_point(p: &TensorPoint, completion: Completion, prec: i64) -> LieVector {
    p.coords().iter().map(|x| super::laurent::embed(x, completion, prec)).collect()
}

/// a(θI + N)·v, the differential of [a]_n acting on a Lie vector.
pub fn apply_differential(a: &Poly, v: &[Laurent]) -> Result<LieVector> {
    let Some(first) = v.first() else {
        return Err(Error::Dimension("empty vector".into()));
    };
    let field = first.field().clone();
    let n = v.len();
    let th = RatFunc::theta(&field);
    let mut out: LieVector = v.iter().map(|x| Laurent::zero(&field, x.completion(), super::laurent::EXACT)).collect();
    let mut power: LieVector = v.to_vec();
    for (k, &c) in a.coeffs().iter().enumerate() {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(&power) {
                *o = o.add(&x.scale(c))?;
            }
        }
        if k + 1 < a.coeffs().len() {
            let mut next = Vec::with_capacity(n);
            for j in 0..n {
                let mut y = power[j].mul_ratfunc(&th)?;
                if j + 1 < n {
                    y = y.add(&power[j + 1])?;
                }
                next.push(y);
            }
            power = next;
        }
    }
    Ok(out)
}
