//! Places of F_{q^m}(θ), divisors and Riemann–Roch spaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{factor, is_irreducible, Fe, Field, Poly, RatFunc, Val};
use crate::tpoly::TPoly;

/// A closed point of the projective line: ∞ or a monic irreducible in θ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn finite(p: Poly) -> Result<Place> {
        if !p.is_monic() || !is_irreducible(&p) {
            return Err(Error::InvalidPlace(format!("{p} is not monic irreducible")));
        }
        Ok(Place::Finite(p))
    }

    /// The place θ = c.
    pub fn at(field: &Field, c: Fe) -> Place {
        Place::Finite(Poly::linear(field, c))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.deg().expect("nonzero"),
        }
    }

    pub fn ord(&self, f: &RatFunc) -> Val {
        ord_at(self, f)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "(∞)"),
            Place::Finite(p) => write!(f, "({p})"),
        }
    }
}

/// Valuation of a rational function at a place.
pub fn ord_at(w: &Place, f: &RatFunc) -> Val {
    match w {
        Place::Infinity => f.ord_inf(),
        Place::Finite(p) => f.ord(p),
    }
}

/// min over t-coefficients of the valuation at `w`.
pub fn ord_tpoly(w: &Place, f: &TPoly) -> Val {
    match w {
        Place::Infinity => f.ord_inf(),
        Place::Finite(p) => f.ord(p),
    }
}

/// The places where `f` has a zero or pole, with ∞ first.
pub fn support(f: &RatFunc) -> Result<Vec<Place>> {
    let mut out = vec![Place::Infinity];
    for poly in [f.num(), f.den()] {
        if poly.is_constant() {
            continue;
        }
        for (g, _) in factor(poly)? {
            out.push(Place::Finite(g));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Finitely supported integer combination of places.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (w, n) in pairs {
            d.add_at(w, n);
        }
        d
    }

    pub fn add_at(&mut self, w: Place, n: i64) {
        let e = self.coeffs.entry(w).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, w: &Place) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(w, &n)| (w, n))
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(w, n)| n * w.degree() as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficientwise D <= other.
    pub fn le(&self, other: &Divisor) -> bool {
        self.iter().all(|(w, n)| n <= other.coeff(w)) && other.iter().all(|(w, n)| self.coeff(w) <= n)
    }
}

impl std::ops::Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (w, n) in rhs.iter() {
            d.add_at(w.clone(), n);
        }
        d
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(w, n)| format!("{n}·{w:?}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Basis of 𝓛(D) = { f : div(f) + D >= 0 } ∪ {0}.
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    /// Basis over F_{q^m}: θ^j h / g in increasing j.
    pub basis: Vec<RatFunc>,
    /// Basis over F_q: element (j, r) at index j*m + r is basis[j] * β_r.
    pub fq_basis: Vec<RatFunc>,
    g: Poly,
    h: Poly,
}

/// Riemann–Roch basis of a divisor on the projective line over F_{q^m}.
pub fn rr_basis(field: &Field, d: &Divisor) -> RRBasis {
    let mut g = Poly::one(field);
    let mut h = Poly::one(field);
    for (w, n) in d.iter() {
        match w {
            Place::Infinity => {}
            Place::Finite(p) if n > 0 => g = &g * &p.pow(n as u64),
            Place::Finite(p) => h = &h * &p.pow((-n) as u64),
        }
    }
    let dim = (d.degree() + 1).max(0) as usize;
    let base = RatFunc::new(h.clone(), g.clone()).expect("nonzero denominator");
    let th = RatFunc::theta(field);
    let mut basis = Vec::with_capacity(dim);
    let mut cur = base;
    for _ in 0..dim {
        basis.push(cur.clone());
        cur = &cur * &th;
    }
    let fq_basis = basis
        .iter()
        .flat_map(|b| field.subfield_basis().iter().map(move |&beta| b.scale(beta)))
        .collect();
    RRBasis { divisor: d.clone(), basis, fq_basis, g, h }
}

impl RRBasis {
    /// F_{q^m}-dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// F_q-dimension, m·dim.
    pub fn fq_dim(&self) -> usize {
        self.fq_basis.len()
    }

    /// Common denominator g of the basis elements.
    pub fn denominator(&self) -> &Poly {
        &self.g
    }

    /// Common numerator factor h of the basis elements.
    pub fn numerator_factor(&self) -> &Poly {
        &self.h
    }

    /// Coordinates of `f` over F_{q^m}, or an error when f ∉ 𝓛(D).
    pub fn coordinates(&self, f: &RatFunc) -> Result<Vec<Fe>> {
        let outside = || Error::OutsideRiemannRoch(format!("{f}"));
        let scaled = f * &RatFunc::from_poly(self.g.clone());
        let hp = RatFunc::from_poly(self.h.clone());
        let poly = scaled.checked_div(&hp)?;
        let poly = poly.as_poly().ok_or_else(outside)?;
        if poly.deg().is_some_and(|k| k >= self.dim()) {
            return Err(outside());
        }
        Ok((0..self.dim()).map(|j| poly.coeff(j)).collect())
    }

    /// Coordinates of `f` over F_q in `fq_basis`.
    pub fn fq_coordinates(&self, f: &RatFunc) -> Result<Vec<Fe>> {
        let field = f.field();
        Ok(self
            .coordinates(f)?
            .into_iter()
            .flat_map(|c| field.subfield_coords(c))
            .collect())
    }

    pub fn contains(&self, f: &RatFunc) -> bool {
        f.is_zero() || self.coordinates(f).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn th(f: &Field, k: i64) -> RatFunc {
        RatFunc::theta(f).pow(k)
    }

    #[test]
    fn valuation_examples() {
        let f = f3();
        let a = RatFunc::from_poly(Poly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(ord_at(&Place::Infinity, &a), Val::Finite(-2));
        assert_eq!(ord_at(&Place::at(&f, Fe::ZERO), &th(&f, -1)), Val::Finite(-1));
        let w = Place::finite(Poly::from_ints(&f, &[1, 0, 1])).unwrap();
        assert_eq!(ord_at(&w, &a), Val::Finite(1));
        assert!(Place::finite(Poly::from_ints(&f, &[-1, 0, 1])).is_err());
    }

    #[test]
    fn tpoly_valuation_examples() {
        let f = f3();
        let tm = TPoly::t_minus_theta(&f);
        assert_eq!(ord_tpoly(&Place::Infinity, &tm), Val::Finite(-1));
        assert_eq!(ord_tpoly(&Place::at(&f, Fe::ZERO), &tm), Val::Finite(0));
        assert_eq!(ord_tpoly(&Place::at(&f, Fe::ONE), &tm), Val::Finite(0));
        assert_eq!(ord_tpoly(&Place::Infinity, &TPoly::zero(&f)), Val::Infinity);
    }

    #[test]
    fn worked_riemann_roch_space() {
        let f = f3();
        let d = Divisor::from_pairs([(Place::Infinity, 3), (Place::at(&f, Fe::ZERO), 1)]);
        let b = rr_basis(&f, &d);
        assert_eq!(b.basis, (-1..=3).map(|k| th(&f, k)).collect::<Vec<_>>());
        assert_eq!(b.fq_dim(), 5);
        assert_eq!(rr_basis(&f, &Divisor::zero()).basis, vec![RatFunc::one(&f)]);
        assert!(rr_basis(&f, &Divisor::from_pairs([(Place::Infinity, -1)])).basis.is_empty());
    }

    #[test]
    fn coordinates_round_trip_over_extension() {
        let f = Field::new(crate::ff::FieldSpec::new(2, 1, 2)).unwrap();
        let d = Divisor::from_pairs([(Place::Infinity, 2), (Place::at(&f, Fe::ONE), 1)]);
        let b = rr_basis(&f, &d);
        assert_eq!(b.fq_dim(), 2 * 4);
        let x = &(&b.fq_basis[1] + &b.fq_basis[6]) + &b.fq_basis[7];
        let c = b.fq_coordinates(&x).unwrap();
        let expect: Vec<Fe> = (0..8).map(|i| if [1, 6, 7].contains(&i) { Fe::ONE } else { Fe::ZERO }).collect();
        assert_eq!(c, expect);
        assert!(b.coordinates(&th(&f, 4)).is_err());
        assert!(b.coordinates(&th(&f, -1)).is_err());
    }

    fn divisor_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
        proptest::collection::vec((0usize..5, -2i64..4), 0..4)
    }

    fn places(f: &Field) -> Vec<Place> {
        vec![
            Place::Infinity,
            Place::at(f, Fe::ZERO),
            Place::at(f, Fe::ONE),
            Place::Finite(Poly::from_ints(f, &[1, 0, 1])),
            Place::Finite(Poly::from_ints(f, &[1, -1, 0, 1])),
        ]
    }

    fn divisor(f: &Field, raw: &[(usize, i64)]) -> Divisor {
        let ps = places(f);
        Divisor::from_pairs(raw.iter().map(|&(i, n)| (ps[i].clone(), n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn product_formula(num in proptest::collection::vec(0u64..3, 1..7), den in proptest::collection::vec(0u64..3, 1..7)) {
            let f = f3();
            let a = Poly::new(&f, num.iter().map(|&c| f.element(c)).collect());
            let b = Poly::new(&f, den.iter().map(|&c| f.element(c)).collect());
            prop_assume!(!a.is_zero() && !b.is_zero());
            let r = RatFunc::new(a, b).unwrap();
            let total: i64 = support(&r).unwrap().iter()
                .map(|w| ord_at(w, &r).finite().unwrap() * w.degree() as i64)
                .sum();
            prop_assert_eq!(total, 0);
        }

        #[test]
        fn basis_membership_and_dimension(raw in divisor_strategy()) {
            let f = f3();
            let d = divisor(&f, &raw);
            let b = rr_basis(&f, &d);
            prop_assert_eq!(b.dim() as i64, (d.degree() + 1).max(0));
            for x in &b.basis {
                for w in support(x).unwrap() {
                    prop_assert!(ord_at(&w, x).finite().unwrap() >= -d.coeff(&w));
                }
                for (w, n) in d.iter() {
                    prop_assert!(ord_at(w, x).finite().unwrap() >= -n);
                }
            }
        }

        #[test]
        fn monotone_in_the_divisor(raw in divisor_strategy(), extra in divisor_strategy()) {
            let f = f3();
            let d = divisor(&f, &raw);
            let bigger = &d + &divisor(&f, &extra.iter().map(|&(i, n)| (i, n.abs())).collect::<Vec<_>>());
            prop_assert!(d.le(&bigger));
            let large = rr_basis(&f, &bigger);
            for x in rr_basis(&f, &d).basis {
                prop_assert!(large.contains(&x));
            }
        }
    }
}
