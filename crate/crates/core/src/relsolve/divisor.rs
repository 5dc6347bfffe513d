use crate::error::{Error, Result};
use crate::ff::factor;
use crate::places::{Divisor, Place};

use super::RelationProblem;

/// C_w for every place that can contribute, ∞ first.
///
/// At a finite place ord_w(t - θ) = 0, so C_w = min(0, min_i ord_w(P_i)) and
/// only poles of coordinates matter. At ∞, ord(t - θ) = -1.
pub fn c_values(problem: &RelationProblem) -> Result<Vec<(Place, i64)>> {
    let n = problem.n as i64;
    let q = problem.field.q() as i64;
    let ord = |w: &Place| -> Result<i64> {
        problem
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| p.ord(w).finite().ok_or(Error::ZeroPoint(i + 1)))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().min().expect("at least one point"))
    };
    let c_inf = (ord(&Place::Infinity)? - (n - 1)).min(-(n / (q - 1)));
    let mut out = vec![(Place::Infinity, c_inf)];
    let mut finite = Vec::new();
    for p in &problem.points {
        for c in p.coords() {
            if !c.den().is_constant() {
                for (g, _) in factor(c.den())? {
                    finite.push(Place::Finite(g));
                }
            }
        }
    }
    finite.sort();
    finite.dedup();
    for w in finite {
        let c = ord(&w)?.min(0);
        out.push((w, c));
    }
    Ok(out)
}

/// D = Σ_w (-C_w)·w.
pub fn relation_divisor(problem: &RelationProblem) -> Result<Divisor> {
    Ok(Divisor::from_pairs(c_values(problem)?.into_iter().map(|(w, c)| (w, -c))))
}
