//! Finding all F_q[t]-linear relations among points of C^⊗n.

mod brute;
mod difference;
mod divisor;
mod kernel;
mod system;

pub use brute::{brute_force_relations, ENUMERATION_LIMIT};
pub use difference::solve_difference;
pub use divisor::{c_values, relation_divisor};
pub use kernel::{kernel_bounded, module_contains, module_reduce};
pub use system::{assemble_system, expand_in_basis, AssembledSystem, Column};

use crate::carlitz::{act, decompose, TensorPoint};
use crate::error::{Error, Result};
use crate::ff::{Field, Poly};
use crate::places::{rr_basis, Divisor};
use crate::tpoly::TPoly;

/// A vector over F_q[t].
pub type TVec = Vec<Poly>;

/// Distinct nonzero points P_1, ..., P_ℓ of C^⊗n(L).
#[derive(Clone, Debug)]
pub struct RelationProblem {
    pub field: Field,
    pub n: usize,
    pub points: Vec<TensorPoint>,
    /// f_i = Σ_s f_{i,s} t^s with P_i = Σ_s [t^s]_n(0, ..., 0, f_{i,s}).
    pub motives: Vec<TPoly>,
}

impl RelationProblem {
    pub fn new(points: Vec<TensorPoint>) -> Result<RelationProblem> {
        let first = points.first().ok_or_else(|| Error::Dimension("no points given".into()))?;
        let field = first.field().clone();
        let n = first.n();
        for (i, p) in points.iter().enumerate() {
            if p.n() != n {
                return Err(Error::Dimension(format!("point {} has {} coordinates, expected {n}", i + 1, p.n())));
            }
            if p.is_zero() {
                return Err(Error::ZeroPoint(i + 1));
            }
            if let Some(j) = points[..i].iter().position(|x| x == p) {
                return Err(Error::DuplicatePoints(j + 1, i + 1));
            }
        }
        let motives = points.iter().map(|p| TPoly::new(&field, decompose(p))).collect();
        Ok(RelationProblem { field, n, points, motives })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ_j [a_j]_n(P_j).
    pub fn combine(&self, a: &[Poly]) -> Result<TensorPoint> {
        let mut acc = TensorPoint::zero(&self.field, self.n);
        for (aj, p) in a.iter().zip(&self.points) {
            if !aj.is_zero() {
                acc = acc.add(&act(aj, p)?);
            }
        }
        Ok(acc)
    }

    /// Σ_j a_j f_j.
    pub fn combine_motives(&self, a: &[Poly]) -> TPoly {
        a.iter()
            .zip(&self.motives)
            .fold(TPoly::zero(&self.field), |acc, (aj, f)| &acc + &(&TPoly::from_t_poly(aj) * f))
    }
}

/// Generators of G = { a ∈ F_q[t]^ℓ : Σ [a_j]_n(P_j) = 0 }.
#[derive(Clone, Debug)]
pub struct RelationModule {
    pub generators: Vec<TVec>,
    pub divisor: Divisor,
    /// F_q-dimension of 𝓛(D).
    pub rr_dim: usize,
    /// n(d + ℓ).
    pub degree_bound: usize,
}

impl RelationModule {
    pub fn max_degree(&self) -> Option<usize> {
        self.generators.iter().flatten().filter_map(|p| p.deg()).max()
    }
}

/// Full pipeline: divisor, Riemann–Roch basis, linear system, bounded
/// kernel, projection to the a-columns and reduction to a module basis.
pub fn relation_generators(problem: &RelationProblem) -> Result<RelationModule> {
    let divisor = relation_divisor(problem)?;
    let rr = rr_basis(&problem.field, &divisor);
    let system = assemble_system(problem, &rr)?;
    let d = rr.fq_dim();
    let ell = problem.len();
    let delta = problem.n * (d + ell);
    let kernel = kernel_bounded(&problem.field, &system.matrix, system.ncols(), delta);
    let projected: Vec<TVec> = kernel.into_iter().map(|v| v[d..].to_vec()).collect();
    let generators = module_reduce(projected);
    for g in &generators {
        if !problem.combine(g)?.is_zero() {
            return Err(Error::Internal("generator fails the action check".into()));
        }
        if g.iter().filter_map(|p| p.deg()).any(|k| k > delta) {
            return Err(Error::Internal("generator exceeds the degree bound".into()));
        }
    }
    Ok(RelationModule { generators, divisor, rr_dim: d, degree_bound: delta })
}
