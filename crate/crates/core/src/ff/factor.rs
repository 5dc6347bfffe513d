//! Factorization over F_{q^m}: squarefree, distinct-degree and
//! equal-degree (Cantor–Zassenhaus) stages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::prime_factors;
use super::poly::num_exp::Exp;
use super::Poly;
use crate::error::{Error, Result};

/// Monic irreducible factors of `f` with multiplicities, sorted by degree and
/// then by coefficients. The leading coefficient of `f` is dropped.
///
/// Equal-degree splitting draws from a ChaCha8 stream seeded with the
/// field's seed ([`super::DEFAULT_SEED`] unless overridden), so the output is
/// reproducible.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(f.field().seed());
    let mut out = Vec::new();
    for (sq, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Rabin's test over the working field.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::x(f.field());
    let size = f.field().size();
    let frob = |k: usize| x.powmod(&Exp::power(size, k as u32), &f);
    if frob(n) != x.rem(&f) {
        return false;
    }
    prime_factors(n as u64)
        .into_iter()
        .all(|r| (&frob(n / r as usize) - &x).gcd(&f).is_one())
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().p() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining part is a p-th power");
        for (g, k) in squarefree(&root) {
            out.push((g, k * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let size = Exp::from(field.size());
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut d = 1;
    while f.deg().is_some_and(|n| n >= 2 * d) {
        h = h.powmod(&size, &f);
        let g = (&h - &x).gcd(&f);
        if !g.is_one() {
            f = f.div_exact(&g).expect("gcd divides");
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = f.deg().filter(|&n| n > 0) {
        out.push((f, n));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let size = field.size();
    let odd = field.p() != 2;
    let exponent = Exp::power(size, d as u32).sub_small(1).div_small(2).0;
    let trace_len = field.degree() * d;
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.element(rng.gen_range(0..size))).collect());
        if a.is_constant() {
            continue;
        }
        let b = if odd {
            &a.powmod(&exponent, f) - &Poly::one(field)
        } else {
            let mut acc = Poly::zero(field);
            let mut term = a.rem(f);
            for _ in 0..trace_len {
                acc = &acc + &term;
                term = (&term * &term).rem(f);
            }
            acc
        };
        let g = b.gcd(f);
        if !g.is_one() && g.deg() != Some(n) && !g.is_zero() {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Product of the factors raised to their multiplicities, times `lc`.
#[cfg(test)]
pub(crate) fn expand(lc: super::Fe, factors: &[(Poly, u32)], field: &super::Field) -> Poly {
    factors
        .iter()
        .fold(Poly::constant(field, lc), |acc, (g, k)| &acc * &g.pow(*k as u64))
}
