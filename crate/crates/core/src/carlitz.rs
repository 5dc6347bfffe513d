//! The n-th tensor power C^⊗n of the Carlitz module.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Fe, Field, Poly, RatFunc, Val};
use crate::places::{ord_at, Place};
use crate::tpoly::TPoly;

/// A point of C^⊗n(L), stored as (p_{n-1}, ..., p_0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorPoint {
    coords: Vec<RatFunc>,
}

impl TensorPoint {
    /// Coordinates in the order (p_{n-1}, ..., p_0).
    pub fn new(coords: Vec<RatFunc>) -> Result<TensorPoint> {
        if coords.is_empty() {
            return Err(Error::Dimension("points need at least one coordinate".into()));
        }
        Ok(TensorPoint { coords })
    }

    pub fn zero(field: &Field, n: usize) -> TensorPoint {
        TensorPoint { coords: vec![RatFunc::zero(field); n] }
    }

    /// (0, ..., 0, α).
    pub fn last(n: usize, alpha: RatFunc) -> TensorPoint {
        let mut coords = vec![RatFunc::zero(alpha.field()); n];
        coords[n - 1] = alpha;
        TensorPoint { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    /// p_j, the coefficient of (t - θ)^j in the motive.
    pub fn p(&self, j: usize) -> &RatFunc {
        &self.coords[self.n() - 1 - j]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TensorPoint) -> TensorPoint {
        TensorPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &TensorPoint) -> TensorPoint {
        TensorPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Fe) -> TensorPoint {
        TensorPoint { coords: self.coords.iter().map(|a| a.scale(c)).collect() }
    }

    /// min over coordinates of ord_w.
    pub fn ord(&self, w: &Place) -> Val {
        self.coords.iter().map(|c| ord_at(w, c)).min().unwrap_or(Val::Infinity)
    }
}

impl fmt::Debug for TensorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

/// Σ_j p_j (t - θ)^j.
pub fn point_to_motive(p: &TensorPoint) -> TPoly {
    let qs: Vec<RatFunc> = p.coords.iter().rev().cloned().collect();
    TPoly::from_theta_basis(p.field(), &qs)
}

/// Inverse of [`point_to_motive`] on classes of (t - θ)-degree below n.
pub fn motive_to_point(f: &TPoly, n: usize) -> Result<TensorPoint> {
    let qs = f.to_theta_basis();
    if qs.len() > n {
        return Err(Error::Dimension(format!("motive of degree {} for n = {n}", qs.len() - 1)));
    }
    let mut coords = vec![RatFunc::zero(f.field()); n];
    for (j, q) in qs.into_iter().enumerate() {
        coords[n - 1 - j] = q;
    }
    Ok(TensorPoint { coords })
}

fn check_scalar(a: &Poly) -> Result<()> {
    if !a.in_subfield() {
        return Err(Error::NotInSubfield(format!("{a}")));
    }
    Ok(())
}

/// [a]_n(P) through the motive: reduce a·f modulo (σ - 1)C^⊗n.
pub fn act(a: &Poly, p: &TensorPoint) -> Result<TensorPoint> {
    check_scalar(a)?;
    let f = &TPoly::from_t_poly(a) * &point_to_motive(p);
    motive_to_point(&f.sigma_reduce(p.n())?, p.n())
}

/// [t]_n applied once.
pub fn act_t(p: &TensorPoint) -> TensorPoint {
    let th = RatFunc::theta(p.field());
    let n = p.n();
    let x = &p.coords;
    let mut coords = Vec::with_capacity(n);
    for i in 0..n - 1 {
        coords.push(&(&th * &x[i]) + &x[i + 1]);
    }
    coords.push(&x[0].frob() + &(&th * &x[n - 1]));
    TensorPoint { coords }
}

/// [a]_n(P) from the explicit matrix of [t]_n.
pub fn act_matrix(a: &Poly, p: &TensorPoint) -> Result<TensorPoint> {
    check_scalar(a)?;
    let mut acc = TensorPoint::zero(p.field(), p.n());
    let mut power = p.clone();
    for (k, &c) in a.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&power.scale(c));
        }
        if k + 1 < a.coeffs().len() {
            power = act_t(&power);
        }
    }
    Ok(acc)
}

/// (f_0, ..., f_{n-1}) with P = Σ_i [t^i]_n(0, ..., 0, f_i).
pub fn decompose(p: &TensorPoint) -> Vec<RatFunc> {
    let f = point_to_motive(p);
    (0..p.n()).map(|i| f.coeff(i)).collect()
}

/// The strict bound |p_j|_∞ < q^{-j + nq/(q-1)} for every j.
pub fn in_log_domain(p: &TensorPoint) -> bool {
    let q = p.field().q() as i128;
    let n = p.n() as i128;
    (0..p.n()).all(|j| match p.p(j).ord_inf() {
        Val::Infinity => true,
        Val::Finite(v) => (q - 1) * (j as i128 - v as i128) < n * q,
    })
}

/// Square matrix with rational-function entries.
pub type RatMatrix = Vec<Vec<RatFunc>>;

pub(crate) fn mat_identity(field: &Field, n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatFunc::one(field) } else { RatFunc::zero(field) }).collect())
        .collect()
}

#[cfg(test)]
pub(crate) fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let field = a[0][0].field();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(RatFunc::zero(field), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn mat_zip(a: &RatMatrix, b: &RatMatrix, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> RatMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| op(x, y)).collect()).collect()
}

pub(crate) fn mat_map(a: &RatMatrix, op: impl Fn(&RatFunc) -> RatFunc) -> RatMatrix {
    a.iter().map(|r| r.iter().map(&op).collect()).collect()
}

/// ad_N(X) = N X - X N with N the superdiagonal nilpotent.
fn ad_n(x: &RatMatrix) -> RatMatrix {
    let n = x.len();
    let field = x[0][0].field();
    let zero = RatFunc::zero(field);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let nx = if i + 1 < n { x[i + 1][j].clone() } else { zero.clone() };
                    let xn = if j > 0 { x[i][j - 1].clone() } else { zero.clone() };
                    &nx - &xn
                })
                .collect()
        })
        .collect()
}

/// Solves c X - ad_N(X) = R by the terminating series Σ_k ad_N^k(R) / c^{k+1}.
fn solve_sylvester(c: &RatFunc, r: &RatMatrix) -> RatMatrix {
    let n = r.len();
    let cinv = c.inv().expect("θ^{q^i} differs from θ");
    let mut term = mat_map(r, |x| x * &cinv);
    let mut acc = term.clone();
    for _ in 1..(2 * n - 1) {
        term = mat_map(&ad_n(&term), |x| x * &cinv);
        acc = mat_zip(&acc, &term, |a, b| a + b);
    }
    acc
}

/// Coefficient matrices of exp or log of C^⊗n, indices 0..=i_max.
#[derive(Clone, Debug)]
pub struct ExpLogCoeffs {
    pub n: usize,
    pub mats: Vec<RatMatrix>,
}

/// θ I + N.
pub fn d_matrix(field: &Field, n: usize, power: u32) -> RatMatrix {
    let th = RatFunc::theta(field).frob_pow(power);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        th.clone()
                    } else if j == i + 1 {
                        RatFunc::one(field)
                    } else {
                        RatFunc::zero(field)
                    }
                })
                .collect()
        })
        .collect()
}

fn e_times(field: &Field, x: &RatMatrix) -> RatMatrix {
    let n = x.len();
    let mut out = vec![vec![RatFunc::zero(field); n]; n];
    out[n - 1] = x[0].clone();
    out
}

fn times_e(field: &Field, x: &RatMatrix) -> RatMatrix {
    let n = x.len();
    let mut out = vec![vec![RatFunc::zero(field); n]; n];
    for i in 0..n {
        out[i][0] = x[i][n - 1].clone();
    }
    out
}

fn theta_gap(field: &Field, i: u32) -> RatFunc {
    &RatFunc::theta(field).frob_pow(i) - &RatFunc::theta(field)
}

/// Q_i from Q_{i-1}.
pub(crate) fn next_exp_coeff(field: &Field, prev: &RatMatrix, i: usize) -> RatMatrix {
    let r = e_times(field, &mat_map(prev, |x| x.frob()));
    solve_sylvester(&theta_gap(field, i as u32), &r)
}

/// P_i from P_{i-1}.
pub(crate) fn next_log_coeff(field: &Field, prev: &RatMatrix, i: usize) -> RatMatrix {
    let r = mat_map(&times_e(field, prev), |x| -x);
    solve_sylvester(&theta_gap(field, i as u32), &r)
}

/// Q_i with exp(z) = Σ Q_i z^(i).
pub fn exp_coeffs(field: &Field, n: usize, i_max: usize) -> ExpLogCoeffs {
    let mut mats = vec![mat_identity(field, n)];
    for i in 1..=i_max {
        let next = next_exp_coeff(field, &mats[i - 1], i);
        mats.push(next);
    }
    ExpLogCoeffs { n, mats }
}

/// P_i with log(z) = Σ P_i z^(i).
pub fn log_coeffs(field: &Field, n: usize, i_max: usize) -> ExpLogCoeffs {
    let mut mats = vec![mat_identity(field, n)];
    for i in 1..=i_max {
        let next = next_log_coeff(field, &mats[i - 1], i);
        mats.push(next);
    }
    ExpLogCoeffs { n, mats }
}

/// L_i = (θ - θ^q)(θ - θ^{q^2})⋯(θ - θ^{q^i}).
pub fn l_i(field: &Field, i: u32) -> RatFunc {
    (1..=i).fold(RatFunc::one(field), |acc, k| &acc * &(-&theta_gap(field, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn th(f: &Field, k: i64) -> RatFunc {
        RatFunc::theta(f).pow(k)
    }

    fn ex_point(f: &Field) -> TensorPoint {
        TensorPoint::new(vec![th(f, 1).scale(f.from_int(2)), th(f, 2)]).unwrap()
    }

    #[test]
    fn motive_dictionary() {
        let f = f3();
        let alpha = th(&f, 1) + RatFunc::one(&f);
        assert_eq!(point_to_motive(&TensorPoint::last(3, alpha.clone())), TPoly::constant(alpha));
        let m = point_to_motive(&ex_point(&f));
        let expect = TPoly::from_theta_basis(&f, &[th(&f, 2), th(&f, 1).scale(f.from_int(2))]);
        assert_eq!(m, expect);
        assert_eq!(motive_to_point(&m, 2).unwrap(), ex_point(&f));
        assert!(point_to_motive(&TensorPoint::zero(&f, 2)).is_zero());
    }

    #[test]
    fn action_examples() {
        let f = f3();
        let v = TensorPoint::last(2, RatFunc::one(&f));
        let a = Poly::from_ints(&f, &[-1, 0, 1]);
        assert_eq!(act(&a, &v).unwrap(), ex_point(&f));
        assert_eq!(act_matrix(&a, &v).unwrap(), ex_point(&f));
        let t = Poly::x(&f);
        let expect = TensorPoint::new(vec![RatFunc::one(&f), th(&f, 1)]).unwrap();
        assert_eq!(act(&t, &v).unwrap(), expect);
        assert_eq!(act_matrix(&t, &v).unwrap(), expect);
        assert_eq!(act(&Poly::one(&f), &ex_point(&f)).unwrap(), ex_point(&f));
        let x = TensorPoint::new(vec![th(&f, 2)]).unwrap();
        assert_eq!(act_matrix(&t, &x).unwrap().coords()[0], &th(&f, 3) + &th(&f, 6));
        let two = Poly::constant(&f, f.from_int(2));
        assert_eq!(act(&two, &ex_point(&f)).unwrap(), ex_point(&f).scale(f.from_int(2)));
    }

    #[test]
    fn rejects_non_scalar_coefficients() {
        let f = Field::new(FieldSpec::new(3, 1, 2)).unwrap();
        let a = Poly::constant(&f, f.generator());
        let v = TensorPoint::last(2, RatFunc::one(&f));
        assert!(matches!(act(&a, &v), Err(Error::NotInSubfield(_))));
        assert!(act_matrix(&a, &v).is_err());
    }

    #[test]
    fn decompose_example() {
        let f = f3();
        let two = f.from_int(2);
        assert_eq!(decompose(&ex_point(&f)), vec![th(&f, 2).scale(two), th(&f, 1).scale(two)]);
        let alpha = th(&f, -1);
        assert_eq!(
            decompose(&TensorPoint::last(3, alpha.clone())),
            vec![alpha, RatFunc::zero(&f), RatFunc::zero(&f)]
        );
    }

    #[test]
    fn log_domain_examples() {
        let f = f3();
        assert!(in_log_domain(&TensorPoint::last(2, RatFunc::one(&f))));
        assert!(in_log_domain(&ex_point(&f)));
        assert!(!in_log_domain(&TensorPoint::new(vec![th(&f, 100), RatFunc::zero(&f)]).unwrap()));
    }

    #[test]
    fn log_coefficients_for_carlitz_module() {
        let f = f3();
        let logs = log_coeffs(&f, 1, 4);
        for (i, m) in logs.mats.iter().enumerate() {
            assert_eq!(m[0][0], l_i(&f, i as u32).inv().unwrap());
        }
        let exps = exp_coeffs(&f, 3, 0);
        assert_eq!(exps.mats[0], mat_identity(&f, 3));
    }

    #[test]
    fn sylvester_residuals_vanish() {
        let f = f3();
        for n in 1..4 {
            let exps = exp_coeffs(&f, n, 3);
            let logs = log_coeffs(&f, n, 3);
            let d = d_matrix(&f, n, 0);
            for i in 1..=3 {
                let di = d_matrix(&f, n, i as u32);
                let q = &exps.mats[i];
                let lhs = mat_zip(&mat_mul(q, &di), &mat_mul(&d, q), |a, b| a - b);
                let prev = mat_map(&exps.mats[i - 1], |x| x.frob());
                assert_eq!(lhs, e_times(&f, &prev));
                let p = &logs.mats[i];
                let lhs = mat_zip(&mat_mul(&d, p), &mat_mul(p, &di), |a, b| a - b);
                assert_eq!(lhs, times_e(&f, &logs.mats[i - 1]));
            }
        }
    }

    #[test]
    fn log_after_exp_is_identity() {
        // Coefficient of z^(k) in log(exp z) is Σ_{i+j=k} P_i Q_j^(i).
        let f = f3();
        for n in 1..4 {
            let exps = exp_coeffs(&f, n, 3);
            let logs = log_coeffs(&f, n, 3);
            for k in 1..=3 {
                let mut acc = vec![vec![RatFunc::zero(&f); n]; n];
                for i in 0..=k {
                    let qj = mat_map(&exps.mats[k - i], |x| x.frob_pow(i as u32));
                    acc = mat_zip(&acc, &mat_mul(&logs.mats[i], &qj), |a, b| a + b);
                }
                assert!(acc.iter().flatten().all(|x| x.is_zero()), "n = {n}, k = {k}");
            }
        }
    }

    fn small_rat(f: &Field, raw: &(Vec<u8>, Vec<u8>)) -> RatFunc {
        let num = Poly::new(f, raw.0.iter().map(|&c| f.element(c as u64 % f.size())).collect());
        let den = Poly::new(f, raw.1.iter().map(|&c| f.element(c as u64 % f.size())).collect());
        if den.is_zero() {
            RatFunc::from_poly(num)
        } else {
            RatFunc::new(num, den).unwrap()
        }
    }

    fn point_strategy() -> impl Strategy<Value = Vec<(Vec<u8>, Vec<u8>)>> {
        proptest::collection::vec(
            (proptest::collection::vec(any::<u8>(), 0..3), proptest::collection::vec(any::<u8>(), 0..2)),
            1..5,
        )
    }

    fn scalar(f: &Field, raw: &[u8]) -> Poly {
        Poly::new(f, raw.iter().map(|&c| f.from_prime(c as u64)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn motive_and_matrix_actions_agree(raw in point_strategy(), a in proptest::collection::vec(any::<u8>(), 0..5)) {
            let f = f3();
            let p = TensorPoint::new(raw.iter().map(|r| small_rat(&f, r)).collect()).unwrap();
            let a = scalar(&f, &a);
            prop_assert_eq!(act(&a, &p).unwrap(), act_matrix(&a, &p).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn module_laws(raw in point_strategy(), a in proptest::collection::vec(any::<u8>(), 0..3), b in proptest::collection::vec(any::<u8>(), 0..3)) {
            let f = Field::prime(2).unwrap();
            let p = TensorPoint::new(raw.iter().map(|r| small_rat(&f, r)).collect()).unwrap();
            let (a, b) = (scalar(&f, &a), scalar(&f, &b));
            prop_assert_eq!(act(&(&a * &b), &p).unwrap(), act(&a, &act(&b, &p).unwrap()).unwrap());
            prop_assert_eq!(act(&(&a + &b), &p).unwrap(), act(&a, &p).unwrap().add(&act(&b, &p).unwrap()));
        }

        #[test]
        fn decomposition_reconstructs(raw in point_strategy()) {
            let f = f3();
            let p = TensorPoint::new(raw.iter().map(|r| small_rat(&f, r)).collect()).unwrap();
            let n = p.n();
            let mut acc = TensorPoint::zero(&f, n);
            for (i, fi) in decompose(&p).into_iter().enumerate() {
                let ti = Poly::monomial(&f, Fe::ONE, i);
                acc = acc.add(&act(&ti, &TensorPoint::last(n, fi)).unwrap());
            }
            prop_assert_eq!(acc, p);
        }
    }
}
