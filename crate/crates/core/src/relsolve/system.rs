use crate::error::{Error, Result};
use crate::ff::{binomial, Fe, Field, Poly, RatFunc};
use crate::linalg::rref;
use crate::places::RRBasis;
use crate::tpoly::TPoly;

use super::RelationProblem;

/// Column label of the assembled system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    /// Coefficient g_k of the k-th F_q-basis element of 𝓛(D).
    G(usize),
    /// Coefficient a_i of the i-th point.
    A(usize),
}

/// The F_q[t]-linear system B·(g, a) = 0 equivalent to
/// g^(1) - (t - θ)^n g = Σ a_i f_i with g ∈ 𝓛(D) ⊗ F_q[t].
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub matrix: Vec<Vec<Poly>>,
    pub columns: Vec<Column>,
    /// Each row is the coordinate of θ^e β_r / G in W, labelled (e, r).
    pub row_labels: Vec<(usize, usize)>,
    /// Common denominator G = g^q of W.
    pub denominator: Poly,
    pub rr: RRBasis,
}

impl AssembledSystem {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nrows(&self) -> usize {
        self.matrix.len()
    }

    /// The monomial θ^e β_r / G labelling a row.
    pub fn row_element(&self, row: usize) -> RatFunc {
        let (e, r) = self.row_labels[row];
        let field = self.denominator.field();
        let mono = Poly::monomial(field, field.subfield_basis()[r], e);
        RatFunc::new(mono, self.denominator.clone()).expect("nonzero denominator")
    }

    /// B·x.
    pub fn apply(&self, x: &[Poly]) -> Vec<Poly> {
        let field = self.denominator.field();
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).fold(Poly::zero(field), |acc, (b, v)| &acc + &(b * v)))
            .collect()
    }
}

/// F_q-coordinates of w·G in the monomial basis θ^e β_r, flattened as e*m + r.
fn monomial_coords(field: &Field, w: &RatFunc, denom: &Poly, len: usize) -> Result<Vec<Fe>> {
    let scaled = w * &RatFunc::from_poly(denom.clone());
    let poly = scaled
        .as_poly()
        .ok_or_else(|| Error::OutsideRiemannRoch(format!("{w}")))?;
    let m = field.m() as usize;
    let mut out = vec![Fe::ZERO; len];
    for (e, &c) in poly.coeffs().iter().enumerate() {
        for (r, x) in field.subfield_coords(c).into_iter().enumerate() {
            if e * m + r >= len {
                if !x.is_zero() {
                    return Err(Error::Internal("coordinate lattice too small".into()));
                }
                continue;
            }
            out[e * m + r] = x;
        }
    }
    Ok(out)
}

fn poly_len(w: &RatFunc, denom: &Poly) -> usize {
    (w * &RatFunc::from_poly(denom.clone()))
        .as_poly()
        .map_or(0, |p| p.coeffs().len())
}

/// Builds B with rows indexed by an F_q-basis of
/// W = span{b_k, b_k^q, θ^j b_k : j ≤ n} and columns (g_1..g_d, a_1..a_ℓ).
pub fn assemble_system(problem: &RelationProblem, rr: &RRBasis) -> Result<AssembledSystem> {
    let field = &problem.field;
    let n = problem.n;
    let m = field.m() as usize;
    let denom = rr.denominator().pow(field.q());
    let th = RatFunc::theta(field);

    for f in &problem.motives {
        for c in f.coeffs() {
            if !rr.contains(c) {
                return Err(Error::OutsideRiemannRoch(format!("{c}")));
            }
        }
    }

    let frobs: Vec<RatFunc> = rr.fq_basis.iter().map(|b| b.frob()).collect();
    let shifted: Vec<Vec<RatFunc>> = rr
        .fq_basis
        .iter()
        .map(|b| {
            let mut v = vec![b.clone()];
            for j in 1..=n {
                v.push(&v[j - 1] * &th);
            }
            v
        })
        .collect();
    let mut len = 1;
    for w in frobs.iter().chain(shifted.iter().flatten()) {
        len = len.max(poly_len(w, &denom));
    }
    for f in &problem.motives {
        for c in f.coeffs() {
            len = len.max(poly_len(c, &denom));
        }
    }
    let len = len * m;
    let coords = |w: &RatFunc| monomial_coords(field, w, &denom, len);

    let mut gens = Vec::new();
    for (b, sh) in frobs.iter().zip(&shifted) {
        gens.push(coords(b)?);
        for w in sh {
            gens.push(coords(w)?);
        }
    }
    let pivots = if gens.is_empty() { Vec::new() } else { rref(field, &mut gens) };

    let to_rows = |per_power: Vec<Vec<Fe>>| -> Vec<Poly> {
        pivots
            .iter()
            .map(|&c| Poly::new(field, per_power.iter().map(|v| v[c]).collect()))
            .collect()
    };

    let d = rr.fq_dim();
    let ell = problem.len();
    let mut columns_data: Vec<Vec<Poly>> = Vec::with_capacity(d + ell);
    for k in 0..d {
        let mut per_power = vec![vec![Fe::ZERO; len]; n + 1];
        per_power[0] = coords(&frobs[k])?;
        for j in 0..=n {
            let c = binomial(field, n as u64, j as u64);
            let c = if j % 2 == 1 { field.neg(c) } else { c };
            if c.is_zero() {
                continue;
            }
            let v = coords(&shifted[k][j])?;
            let row = &mut per_power[n - j];
            for (x, y) in row.iter_mut().zip(v) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        columns_data.push(to_rows(per_power));
    }
    for f in &problem.motives {
        let per_power: Vec<Vec<Fe>> = (0..n)
            .map(|s| coords(&f.coeff(s)).map(|v| v.into_iter().map(|x| field.neg(x)).collect()))
            .collect::<Result<_>>()?;
        columns_data.push(to_rows(per_power));
    }

    let matrix: Vec<Vec<Poly>> = (0..pivots.len())
        .map(|r| columns_data.iter().map(|col| col[r].clone()).collect())
        .collect();
    let columns = (0..d).map(Column::G).chain((0..ell).map(Column::A)).collect();
    let row_labels = pivots.iter().map(|&c| (c / m, c % m)).collect();
    Ok(AssembledSystem { matrix, columns, row_labels, denominator: denom, rr: rr.clone() })
}

/// F_q[t]-coordinates (g_1, ..., g_d) of g ∈ 𝓛(D)[t].
pub fn expand_in_basis(rr: &RRBasis, g: &TPoly) -> Result<Vec<Poly>> {
    let field = g.field();
    let per_power: Vec<Vec<Fe>> = g.coeffs().iter().map(|c| rr.fq_coordinates(c)).collect::<Result<_>>()?;
    Ok((0..rr.fq_dim())
        .map(|k| Poly::new(field, per_power.iter().map(|v| v[k]).collect()))
        .collect())
}
