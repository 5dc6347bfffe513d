//! Dense Gaussian elimination over F_q (inside the working field) and over
//! rational functions in one variable.

use crate::ff::{Fe, Field, Poly, RatFunc};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Fe>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        if inv != Fe::ONE {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, &p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x = field.sub(*x, field.mul(f, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of { x : M x = 0 } for an `nrows × ncols` matrix.
pub fn nullspace(field: &Field, mut m: Vec<Vec<Fe>>, ncols: usize) -> Vec<Vec<Fe>> {
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; ncols];
            v[free] = Fe::ONE;
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Rank of a matrix with entries in F_{q^m}(θ).
pub fn rank_ratfunc(mut rows: Vec<Vec<RatFunc>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].inv().expect("nonzero");
        let pivot_row: Vec<RatFunc> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank over F_q(t) of a matrix with entries in F_q[t], by elimination over
/// the fraction field of the polynomial ring.
pub fn rank_tpoly_matrix(rows: &[Vec<Poly>]) -> usize {
    rank_ratfunc(
        rows.iter()
            .map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_small_matrix() {
        let f = Field::prime(3).unwrap();
        let m = vec![
            vec![f.from_int(1), f.from_int(2), f.from_int(0)],
            vec![f.from_int(2), f.from_int(1), f.from_int(0)],
        ];
        let ns = nullspace(&f, m, 3);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn rank_over_rational_functions() {
        let f = Field::prime(3).unwrap();
        let th = RatFunc::theta(&f);
        let one = RatFunc::one(&f);
        let m = vec![vec![th.clone(), one.clone()], vec![&th * &th, th.clone()]];
        assert_eq!(rank_ratfunc(m), 1);
        let m = vec![vec![th.clone(), one.clone()], vec![one, th]];
        assert_eq!(rank_ratfunc(m), 2);
    }

    proptest! {
        #[test]
        fn nullspace_vectors_are_annihilated(raw in proptest::collection::vec(proptest::collection::vec(0u64..5, 6), 1..6)) {
            let f = Field::prime(5).unwrap();
            let m: Vec<Vec<Fe>> = raw.iter().map(|r| r.iter().map(|&x| f.element(x)).collect()).collect();
            let ns = nullspace(&f, m.clone(), 6);
            let mut rr = m.clone();
            let rank = rref(&f, &mut rr).len();
            prop_assert_eq!(ns.len(), 6 - rank);
            for v in &ns {
                for row in &m {
                    let s = row.iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
