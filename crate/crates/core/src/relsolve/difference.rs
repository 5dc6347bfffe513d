use crate::ff::{binomial, RatFunc};
use crate::tpoly::TPoly;

/// The unique g ∈ L[t] with g^(1) - (t - θ)^n g = F, if one exists.
///
/// The top coefficients of both sides determine g from the highest degree
/// down; the candidate is then substituted back.
pub fn solve_difference(f: &TPoly, n: usize) -> Option<TPoly> {
    let field = f.field();
    let Some(deg) = f.degree().finite() else {
        return Some(TPoly::zero(field));
    };
    if deg < n {
        return None;
    }
    let m = deg - n;
    let neg_th = -RatFunc::theta(field);
    let mut pw = vec![RatFunc::one(field)];
    for k in 1..=n {
        pw.push(&pw[k - 1] * &neg_th);
    }
    // c_j = C(n, j)(-θ)^{n-j} is the coefficient of t^j in (t - θ)^n.
    let c: Vec<RatFunc> = (0..=n).map(|j| pw[n - j].scale(binomial(field, n as u64, j as u64))).collect();
    let mut g = vec![RatFunc::zero(field); m + 1];
    for s in (n..=n + m).rev() {
        let mut val = -&f.coeff(s);
        if s <= m {
            val = &val + &g[s].frob();
        }
        for j in 0..n {
            if s - j <= m && !c[j].is_zero() {
                val = &val - &(&c[j] * &g[s - j]);
            }
        }
        g[s - n] = val;
    }
    let g = TPoly::new(field, g);
    let lhs = &g.twist(1).ok()? - &(&TPoly::t_minus_theta(field).pow(n as u32) * &g);
    (lhs == *f).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Field, Poly};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f = Field::prime(3).unwrap();
        for n in 1..4 {
            let rhs = &TPoly::one(&f) - &TPoly::t_minus_theta(&f).pow(n as u32);
            assert_eq!(solve_difference(&rhs, n), Some(TPoly::one(&f)));
            assert_eq!(solve_difference(&TPoly::zero(&f), n), Some(TPoly::zero(&f)));
        }
        assert_eq!(solve_difference(&TPoly::t(&f), 2), None);
        let bad = &TPoly::t(&f).pow(2) + &TPoly::one(&f);
        assert_eq!(solve_difference(&bad, 2), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn recovers_constructed_solutions(raw in proptest::collection::vec((proptest::collection::vec(0u64..3, 0..3), proptest::collection::vec(0u64..3, 0..2)), 0..4), n in 1usize..4) {
            let f = Field::prime(3).unwrap();
            let coeffs: Vec<RatFunc> = raw.iter().map(|(a, b)| {
                let num = Poly::new(&f, a.iter().map(|&c| f.element(c)).collect());
                let den = Poly::new(&f, b.iter().map(|&c| f.element(c)).collect());
                if den.is_zero() { RatFunc::from_poly(num) } else { RatFunc::new(num, den).unwrap() }
            }).collect();
            let h = TPoly::new(&f, coeffs);
            let rhs = &h.twist(1).unwrap() - &(&TPoly::t_minus_theta(&f).pow(n as u32) * &h);
            prop_assert_eq!(solve_difference(&rhs, n), Some(h));
        }
    }
}
