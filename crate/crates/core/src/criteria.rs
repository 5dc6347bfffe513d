//! Checkable hypotheses of the linear and algebraic independence criteria.

use crate::carlitz::motive_to_point;
use crate::error::Result;
use crate::ff::{factor, Fe, Field, Poly, RatFunc, Val};
use crate::linalg::{rank_tpoly_matrix, rref};
use crate::places::{ord_at, Place};
use crate::relsolve::{relation_generators, RelationProblem};
use crate::tpoly::TPoly;

/// Valuation checks for one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub ord_inf: Val,
    /// ord_∞ > 0.
    pub cond2: bool,
    /// Finite places where ord_w < 1 - q, with the valuation.
    pub cond3_failures: Vec<(Place, i64)>,
    pub cond3: bool,
    /// Norm bound (∞-adic) or |α|_v ≤ 1 (v-adic).
    pub bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    /// Linear independence over F_q[t] (or F_q for constants), by rank.
    pub cond1: bool,
    /// The same question answered by the relation solver on the associated
    /// points, when it could be run.
    pub cond1_solver: Option<bool>,
    pub points: Vec<PointCheck>,
    /// (1) ∧ (2) ∧ (3).
    pub overall: bool,
    /// Every input also satisfies the size bound of the theorem.
    pub applicable: bool,
}

/// F_q-coordinates of each rational function over a shared denominator,
/// in the monomial basis θ^e β_r.
fn fq_vectors(field: &Field, values: &[RatFunc]) -> Vec<Vec<Fe>> {
    let mut den = Poly::one(field);
    for v in values {
        den = &den * &v.den().div_exact(&v.den().gcd(&den)).expect("gcd divides");
    }
    let den = RatFunc::from_poly(den);
    let nums: Vec<Poly> = values.iter().map(|v| (v * &den).as_poly().expect("common denominator").clone()).collect();
    let width = nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let m = field.m() as usize;
    nums.iter()
        .map(|p| {
            let mut out = vec![Fe::ZERO; width * m];
            for (e, &c) in p.coeffs().iter().enumerate() {
                for (r, x) in field.subfield_coords(c).into_iter().enumerate() {
                    out[e * m + r] = x;
                }
            }
            out
        })
        .collect()
}

/// Rank over F_q(t) of the F_q[t]-coordinate matrix of f_1, ..., f_ℓ.
pub fn tpoly_rank(field: &Field, fs: &[TPoly]) -> usize {
    let deg = fs.iter().map(|f| f.coeffs().len()).max().unwrap_or(0);
    let flat: Vec<RatFunc> = fs.iter().flat_map(|f| (0..deg).map(move |s| f.coeff(s))).collect();
    if flat.is_empty() {
        return 0;
    }
    let vecs = fq_vectors(field, &flat);
    let width = vecs[0].len();
    let rows: Vec<Vec<Poly>> = (0..fs.len())
        .map(|i| {
            (0..width)
                .map(|c| Poly::new(field, (0..deg).map(|s| vecs[i * deg + s][c]).collect()))
                .collect()
        })
        .collect();
    rank_tpoly_matrix(&rows)
}

/// Rank over F_q of elements of F_{q^m}(θ).
pub fn fq_rank(field: &Field, values: &[RatFunc]) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut vecs = fq_vectors(field, values);
    rref(field, &mut vecs).len()
}

fn finite_checks(q: i64, values: &[RatFunc]) -> Result<Vec<(Place, i64)>> {
    let mut places = Vec::new();
    for v in values {
        if !v.den().is_constant() {
            for (g, _) in factor(v.den())? {
                places.push(Place::Finite(g));
            }
        }
    }
    places.sort();
    places.dedup();
    Ok(places
        .into_iter()
        .filter_map(|w| {
            let o = values.iter().filter_map(|v| ord_at(&w, v).finite()).min()?;
            (o < 1 - q).then_some((w, o))
        })
        .collect())
}

fn point_check(field: &Field, coeffs: &[RatFunc], bound: bool) -> Result<PointCheck> {
    let q = field.q() as i64;
    let ord_inf = coeffs.iter().map(|c| c.ord_inf()).min().unwrap_or(Val::Infinity);
    let cond3_failures = finite_checks(q, coeffs)?;
    Ok(PointCheck {
        ord_inf,
        cond2: ord_inf > Val::Finite(0),
        cond3: cond3_failures.is_empty(),
        cond3_failures,
        bound,
    })
}

/// ‖f‖ < |θ|^{nq/(q-1)}, i.e. (q - 1)(-ord_∞ f) < nq.
pub fn norm_bound(f: &TPoly, n: usize) -> bool {
    let q = f.field().q() as i128;
    match f.ord_inf() {
        Val::Infinity => true,
        Val::Finite(v) => (q - 1) * (-(v as i128)) < n as i128 * q,
    }
}

/// Hypotheses of the ∞-adic independence theorem for f_1, ..., f_ℓ ∈ L[t].
pub fn check_inf_criterion(fs: &[TPoly], n: usize) -> Result<CriterionReport> {
    let Some(first) = fs.first() else {
        return Ok(CriterionReport {
            cond1: true,
            cond1_solver: Some(true),
            points: Vec::new(),
            overall: true,
            applicable: true,
        });
    };
    let field = first.field().clone();
    let cond1 = tpoly_rank(&field, fs) == fs.len();
    let points: Vec<PointCheck> = fs
        .iter()
        .map(|f| point_check(&field, f.coeffs(), norm_bound(f, n)))
        .collect::<Result<_>>()?;
    let cond1_solver = solver_independence(fs, n)?;
    let overall = cond1 && points.iter().all(|p| p.cond2 && p.cond3);
    let applicable = overall && points.iter().all(|p| p.bound);
    Ok(CriterionReport { cond1, cond1_solver, points, overall, applicable })
}

/// Runs the relation solver on the points attached to the σ-reductions of
/// the f_i. `None` when the points are zero or repeated.
fn solver_independence(fs: &[TPoly], n: usize) -> Result<Option<bool>> {
    let points = fs
        .iter()
        .map(|f| motive_to_point(&f.sigma_reduce(n)?, n))
        .collect::<Result<Vec<_>>>()?;
    match RelationProblem::new(points) {
        Ok(problem) => Ok(Some(relation_generators(&problem)?.generators.is_empty())),
        Err(_) => Ok(None),
    }
}

/// Hypotheses of the v-adic independence theorem for α_1, ..., α_ℓ ∈ L.
pub fn check_valpha_criterion(alphas: &[RatFunc], v: &Place, n: usize) -> Result<CriterionReport> {
    let Some(first) = alphas.first() else {
        return Ok(CriterionReport {
            cond1: true,
            cond1_solver: Some(true),
            points: Vec::new(),
            overall: true,
            applicable: true,
        });
    };
    let field = first.field().clone();
    let cond1 = fq_rank(&field, alphas) == alphas.len();
    let points: Vec<PointCheck> = alphas
        .iter()
        .map(|a| point_check(&field, std::slice::from_ref(a), ord_at(v, a) >= Val::Finite(0)))
        .collect::<Result<_>>()?;
    let fs: Vec<TPoly> = alphas.iter().map(|a| TPoly::constant(a.clone())).collect();
    let cond1_solver = solver_independence(&fs, n)?;
    let overall = cond1 && points.iter().all(|p| p.cond2 && p.cond3);
    let applicable = overall && points.iter().all(|p| p.bound);
    Ok(CriterionReport { cond1, cond1_solver, points, overall, applicable })
}

/// Outcome of the integer hypotheses of the algebraic independence corollary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgIndepReport {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// n_j not divisible by q - 1, and no ratio n_i / n_j (i ≠ j) an integer power of p.
pub fn check_algindep_hypotheses(ns: &[u64], q: u64, p: u64) -> AlgIndepReport {
    let mut reasons = Vec::new();
    for (j, &n) in ns.iter().enumerate() {
        if q > 1 && n % (q - 1) == 0 {
            reasons.push(format!("n_{} = {n} is divisible by q-1 = {}", j + 1, q - 1));
        }
    }
    for (i, &a) in ns.iter().enumerate() {
        for (j, &b) in ns.iter().enumerate() {
            if i == j || b == 0 || a % b != 0 {
                continue;
            }
            let mut r = a / b;
            let mut k = 0;
            while r > 1 && r % p == 0 {
                r /= p;
                k += 1;
            }
            if r == 1 {
                reasons.push(format!("n_{}/n_{} = {} is p^{k}", i + 1, j + 1, a / b));
            }
        }
    }
    AlgIndepReport { ok: reasons.is_empty(), reasons }
}
