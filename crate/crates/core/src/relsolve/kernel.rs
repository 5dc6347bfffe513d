use crate::ff::{Fe, Field, Poly};
use crate::linalg::nullspace;

use super::TVec;

/// F_q-basis of { x ∈ F_q[t]^ncols : B x = 0, deg_t x ≤ δ }.
///
/// The system is linearized over F_q: unknowns are the coefficients x_{c,e}
/// for e ≤ δ, one equation per (row, power of t).
pub fn kernel_bounded(field: &Field, b: &[Vec<Poly>], ncols: usize, delta: usize) -> Vec<TVec> {
    let deg_b = b.iter().flatten().filter_map(|p| p.deg()).max().unwrap_or(0);
    let unknowns = ncols * (delta + 1);
    let idx = |c: usize, e: usize| c * (delta + 1) + e;
    let mut eqs = Vec::with_capacity(b.len() * (delta + deg_b + 1));
    for row in b {
        for s in 0..=delta + deg_b {
            let mut eq = vec![Fe::ZERO; unknowns];
            let mut any = false;
            for (c, entry) in row.iter().enumerate() {
                for (k, &coef) in entry.coeffs().iter().enumerate() {
                    if coef.is_zero() || k > s || s - k > delta {
                        continue;
                    }
                    eq[idx(c, s - k)] = coef;
                    any = true;
                }
            }
            if any {
                eqs.push(eq);
            }
        }
    }
    nullspace(field, eqs, unknowns)
        .into_iter()
        .map(|v| {
            (0..ncols)
                .map(|c| Poly::new(field, (0..=delta).map(|e| v[idx(c, e)]).collect()))
                .collect()
        })
        .collect()
}

fn pivot(v: &[Poly]) -> Option<(usize, usize)> {
    let deg = v.iter().filter_map(|p| p.deg()).max()?;
    let idx = (0..v.len()).rev().find(|&i| v[i].deg() == Some(deg))?;
    Some((idx, deg))
}

/// Reduces a generating set of a submodule of F_q[t]^ℓ to a basis in weak
/// Popov form: nonzero rows with pairwise distinct pivot positions, where
/// the pivot is the rightmost entry of maximal degree. Pivots are made monic
/// and rows are sorted by degree, then pivot position.
pub fn module_reduce(vectors: Vec<TVec>) -> Vec<TVec> {
    let mut rows: Vec<TVec> = vectors.into_iter().filter(|v| pivot(v).is_some()).collect();
    loop {
        let mut clash = None;
        'outer: for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if pivot(&rows[i]).map(|p| p.0) == pivot(&rows[j]).map(|p| p.0) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        let (pi, di) = pivot(&rows[i]).expect("nonzero");
        let (_, dj) = pivot(&rows[j]).expect("nonzero");
        let (u, w) = if di >= dj { (i, j) } else { (j, i) };
        let (du, dw) = (di.max(dj), di.min(dj));
        let field = rows[u][pi].field().clone();
        let c = field.mul(rows[u][pi].lc(), field.inv(rows[w][pi].lc()).expect("nonzero"));
        let shifted: TVec = rows[w].iter().map(|p| p.scale(c).shift(du - dw)).collect();
        let reduced: TVec = rows[u].iter().zip(&shifted).map(|(a, b)| a - b).collect();
        if pivot(&reduced).is_some() {
            rows[u] = reduced;
        } else {
            rows.remove(u);
        }
    }
    for row in rows.iter_mut() {
        let (p, _) = pivot(row).expect("nonzero");
        let field = row[p].field().clone();
        let inv = field.inv(row[p].lc()).expect("nonzero");
        for x in row.iter_mut() {
            *x = x.scale(inv);
        }
    }
    rows.sort_by_key(|r| {
        let (p, d) = pivot(r).expect("nonzero");
        (d, p)
    });
    rows
}

/// Membership of `v` in the F_q[t]-span of a basis in weak Popov form
/// (as returned by [`module_reduce`]), by repeated leading-term reduction.
pub fn module_contains(basis: &[TVec], v: &TVec) -> bool {
    let mut v = v.clone();
    while let Some((idx, deg)) = pivot(&v) {
        let Some(row) = basis.iter().find(|r| pivot(r).is_some_and(|(i, d)| i == idx && d <= deg)) else {
            return false;
        };
        let (_, d) = pivot(row).expect("nonzero");
        let field = v[idx].field().clone();
        let c = field.mul(v[idx].lc(), field.inv(row[idx].lc()).expect("nonzero"));
        v = v.iter().zip(row).map(|(a, b)| a - &b.scale(c).shift(deg - d)).collect();
    }
    true
}
