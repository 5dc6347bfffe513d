//! The working constant field F_{q^m}, built as a single extension of F_p,
//! with the scalar subfield F_q marked inside it.

use std::fmt;
use std::sync::Arc;

use super::int::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest supported value of `e * m`.
pub const MAX_EXT_DEGREE: usize = 16;

/// Seed used by the randomized parts of factorization unless overridden.
pub const DEFAULT_SEED: u64 = 0x00c4_1172_5eed;

/// An element of the working field, stored as the base-p digit encoding of
/// its coordinates in the power basis of the defining modulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding; unique per element.
    pub fn index(self) -> u64 {
        self.0
    }
}

/// Parameters of the field: q = p^e, constants F_{q^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    /// Optional monic modulus over F_p, low degree first, of degree e*m.
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn new(p: u64, e: u32, m: u32) -> Self {
        FieldSpec { p, e, m, modulus: None }
    }
}

struct FieldData {
    p: u64,
    e: u32,
    m: u32,
    deg: usize,
    q: u64,
    size: u64,
    modulus: Vec<u64>,
    generator: Fe,
    sub_generator: Fe,
    /// F_q-basis 1, x, ..., x^{m-1} of F_{q^m}.
    basis: Vec<Fe>,
    /// Inverse of the F_p-matrix whose columns are the digits of gamma^j x^i.
    coord_inv: Vec<Vec<u64>>,
    seed: u64,
}

/// Handle to a finite field; cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (q = {}, m = {})", self.0.p, self.0.deg, self.0.q, self.0.m)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.deg.hash(state);
    }
}

// Dense polynomial helpers over F_p used only while choosing the modulus.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv = super::pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let c = r[r.len() - 1] * inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(&r, m, p)
    }

    pub fn powmod(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(b, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    /// Rabin's test over F_p.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut powers = vec![h.clone()];
        for _ in 0..d {
            h = powmod(&h, p, f, p);
            powers.push(h.clone());
        }
        if sub(&powers[d], &x, p) != Vec::<u64>::new() {
            return false;
        }
        for r in super::prime_factors(d as u64) {
            let g = gcd(f, &sub(&powers[d / r as usize], &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Field {
    /// Builds F_{q^m}. The modulus defaults to the first primitive monic
    /// irreducible of degree e*m in lexicographic order.
    pub fn new(spec: FieldSpec) -> Result<Field> {
        Self::with_seed(spec, DEFAULT_SEED)
    }

    /// Prime field F_p (q = p, m = 1).
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(FieldSpec::new(p, 1, 1))
    }

    pub fn with_seed(spec: FieldSpec, seed: u64) -> Result<Field> {
        let FieldSpec { p, e, m, modulus } = spec;
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not a prime below 2^31")));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidField("e and m must be positive".into()));
        }
        let deg = (e * m) as usize;
        if deg > MAX_EXT_DEGREE {
            return Err(Error::InvalidField(format!("e*m = {deg} exceeds {MAX_EXT_DEGREE}")));
        }
        let mut size = 1u64;
        for _ in 0..deg {
            size = size
                .checked_mul(p)
                .filter(|s| *s < (1u64 << 63))
                .ok_or_else(|| Error::InvalidField("field size must stay below 2^63".into()))?;
        }
        let q = p.pow(e);
        let order_primes = prime_factors(size - 1);

        let (modulus, generator) = if deg == 1 {
            let g = (1..p)
                .find(|&g| order_primes.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
                .unwrap_or(1);
            (vec![p - g, 1], Fe(g % p))
        } else {
            let modulus = match modulus {
                Some(mut f) => {
                    fp::trim(&mut f);
                    if f.len() != deg + 1 || f[deg] != 1 || f.iter().any(|&c| c >= p) {
                        return Err(Error::InvalidField("modulus must be monic of degree e*m".into()));
                    }
                    if !fp::is_irreducible(&f, p) {
                        return Err(Error::InvalidField("modulus is reducible".into()));
                    }
                    f
                }
                None => Self::search_modulus(p, deg, size, &order_primes)?,
            };
            (modulus, Fe(0))
        };

        let mut data = FieldData {
            p,
            e,
            m,
            deg,
            q,
            size,
            modulus,
            generator,
            sub_generator: Fe::ONE,
            basis: Vec::new(),
            coord_inv: Vec::new(),
            seed,
        };
        if deg > 1 {
            let field = Field(Arc::new(data));
            let g = field.find_generator(&order_primes);
            data = Arc::try_unwrap(field.0).ok().expect("unique");
            data.generator = g;
        }
        let field = Field(Arc::new(data));
        let sub_generator = field.pow(field.generator(), (size - 1) / (q - 1));
        let x = if deg == 1 { Fe::ONE } else { Fe(p) };
        let mut basis = Vec::with_capacity(m as usize);
        let mut b = Fe::ONE;
        for _ in 0..m {
            basis.push(b);
            b = field.mul(b, x);
        }
        let mut data = Arc::try_unwrap(field.0).ok().expect("unique");
        data.sub_generator = sub_generator;
        data.basis = basis;
        let field = Field(Arc::new(data));
        let coord_inv = field.coordinate_inverse()?;
        let mut data = Arc::try_unwrap(field.0).ok().expect("unique");
        data.coord_inv = coord_inv;
        Ok(Field(Arc::new(data)))
    }

    fn search_modulus(p: u64, deg: usize, size: u64, order_primes: &[u64]) -> Result<Vec<u64>> {
        // Enumerate monic polynomials by their lower coefficients as a base-p counter.
        let mut fallback = None;
        for code in 0..size {
            let mut f = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if f[0] == 0 || !fp::is_irreducible(&f, p) {
                continue;
            }
            let x = vec![0u64, 1];
            let primitive = order_primes
                .iter()
                .all(|&r| fp::powmod(&x, (size - 1) / r, &f, p) != vec![1u64]);
            if primitive {
                return Ok(f);
            }
            fallback.get_or_insert(f);
        }
        fallback.ok_or_else(|| Error::InvalidField("no irreducible modulus found".into()))
    }

    fn find_generator(&self, order_primes: &[u64]) -> Fe {
        let n = self.0.size - 1;
        (1..self.0.size)
            .map(Fe)
            .find(|&g| order_primes.iter().all(|&r| self.pow(g, n / r) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn coordinate_inverse(&self) -> Result<Vec<Vec<u64>>> {
        let d = self.0.deg;
        let p = self.0.p;
        // Column (i * e + j) holds the digits of gamma^j * x^i.
        let mut cols = Vec::with_capacity(d);
        for i in 0..self.0.m as usize {
            let mut g = self.0.basis[i];
            for _ in 0..self.0.e {
                cols.push(self.digits(g));
                g = self.mul(g, self.0.sub_generator);
            }
        }
        let mut a: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                let mut row: Vec<u64> = (0..d).map(|c| cols[c][r]).collect();
                row.extend((0..d).map(|c| u64::from(c == r)));
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| a[r][col] != 0)
                .ok_or_else(|| Error::Internal("subfield basis is singular".into()))?;
            a.swap(col, piv);
            let inv = pow_mod(a[col][col], p - 2, p);
            for x in a[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..d {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..2 * d {
                        a[r][c] = (a[r][c] + p - f * a[col][c] % p) % p;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|row| row[d..].to_vec()).collect())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Size q of the scalar field F_q.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Size q^m of the working field.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Degree e*m of the working field over F_p.
    pub fn degree(&self) -> usize {
        self.0.deg
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn seed(&self) -> u64 {
        self.0.seed
    }

    /// A generator of the multiplicative group, printed as `g`.
    pub fn generator(&self) -> Fe {
        self.0.generator
    }

    /// A generator of F_q^x.
    pub fn subfield_generator(&self) -> Fe {
        self.0.sub_generator
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            e: self.0.e,
            m: self.0.m,
            modulus: (self.0.deg > 1).then(|| self.0.modulus.clone()),
        }
    }

    pub(crate) fn digits(&self, a: Fe) -> [u64; MAX_EXT_DEGREE] {
        let mut out = [0u64; MAX_EXT_DEGREE];
        let mut v = a.0;
        for d in out.iter_mut().take(self.0.deg) {
            *d = v % self.0.p;
            v /= self.0.p;
        }
        out
    }

    pub(crate) fn from_digits(&self, d: &[u64]) -> Fe {
        let mut v = 0u64;
        for &x in d[..self.0.deg].iter().rev() {
            v = v * self.0.p + x;
        }
        Fe(v)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given digit in position 0 (the prime subfield).
    pub fn from_prime(&self, n: u64) -> Fe {
        Fe(n % self.0.p)
    }

    /// Some element by its encoding index, `0 <= idx < size`.
    pub fn element(&self, idx: u64) -> Fe {
        Fe(idx % self.0.size)
    }

    /// Returns `Some(k)` when `a` is the image of the integer `k` in F_p.
    pub fn as_prime(&self, a: Fe) -> Option<u64> {
        (a.0 < self.0.p).then_some(a.0)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.deg == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut r = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.0.deg {
            r[i] = (x[i] + y[i]) % p;
        }
        self.from_digits(&r)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.deg == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let x = self.digits(a);
        let mut r = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.0.deg {
            r[i] = (p - x[i]) % p;
        }
        self.from_digits(&r)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.deg == 1 {
            return Fe(((a.0 as u128 * b.0 as u128) % p as u128) as u64);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let d = self.0.deg;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut r = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                r[i + j] = (r[i + j] + x[i] * y[j]) % p;
            }
        }
        let md = &self.0.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                r[k - d + i] = (r[k - d + i] + (p - c) * md[i]) % p;
            }
            r[k] = 0;
        }
        self.from_digits(&r)
    }

    pub fn pow(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (!a.is_zero()).then(|| self.pow(a, self.0.size - 2))
    }

    /// x -> x^q.
    pub fn frob(&self, a: Fe) -> Fe {
        if self.0.m == 1 {
            return a;
        }
        self.pow(a, self.0.q)
    }

    /// x -> x^(q^i) for i >= 0.
    pub fn frob_pow(&self, a: Fe, i: u64) -> Fe {
        let i = i % self.0.m as u64;
        (0..i).fold(a, |x, _| self.frob(x))
    }

    /// Inverse of x -> x^q.
    pub fn frob_inv(&self, a: Fe) -> Fe {
        self.frob_pow(a, self.0.m as u64 - 1)
    }

    /// x -> x^p.
    pub fn pth_power(&self, a: Fe) -> Fe {
        if self.0.deg == 1 {
            return a;
        }
        self.pow(a, self.0.p)
    }

    /// Inverse of x -> x^p.
    pub fn pth_root(&self, a: Fe) -> Fe {
        (1..self.0.deg).fold(a, |x, _| self.pth_power(x))
    }

    pub fn in_subfield(&self, a: Fe) -> bool {
        self.frob(a) == a
    }

    /// The elements of F_q: 0, then 1..p-1 when q = p, else powers of the
    /// subfield generator.
    pub fn subfield_elements(&self) -> Vec<Fe> {
        let q = self.0.q;
        if self.0.e == 1 {
            return (0..q).map(|c| self.from_prime(c)).collect();
        }
        let mut out = vec![Fe::ZERO];
        let mut g = Fe::ONE;
        for _ in 0..q - 1 {
            out.push(g);
            g = self.mul(g, self.0.sub_generator);
        }
        out
    }

    /// The fixed F_q-basis of F_{q^m}.
    pub fn subfield_basis(&self) -> &[Fe] {
        &self.0.basis
    }

    /// Coordinates of `x` over F_q in [`Field::subfield_basis`].
    pub fn subfield_coords(&self, x: Fe) -> Vec<Fe> {
        let d = self.0.deg;
        let p = self.0.p;
        if self.0.m == 1 {
            return vec![x];
        }
        let digits = self.digits(x);
        let mut c = vec![0u64; d];
        for (r, row) in self.0.coord_inv.iter().enumerate() {
            let mut s = 0u64;
            for k in 0..d {
                s = (s + row[k] * digits[k]) % p;
            }
            c[r] = s;
        }
        let e = self.0.e as usize;
        (0..self.0.m as usize)
            .map(|i| {
                let mut acc = Fe::ZERO;
                let mut g = Fe::ONE;
                for j in 0..e {
                    acc = self.add(acc, self.mul(self.from_prime(c[i * e + j]), g));
                    g = self.mul(g, self.0.sub_generator);
                }
                acc
            })
            .collect()
    }

    /// Inverse of [`Field::subfield_coords`].
    pub fn from_subfield_coords(&self, coords: &[Fe]) -> Fe {
        coords
            .iter()
            .zip(&self.0.basis)
            .fold(Fe::ZERO, |acc, (&c, &b)| self.add(acc, self.mul(c, b)))
    }

    /// Discrete logarithm to base `g` (baby-step giant-step).
    pub fn log_generator(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.0.size - 1;
        let s = (n as f64).sqrt().ceil() as u64 + 1;
        let mut table = std::collections::HashMap::with_capacity(s as usize);
        let mut x = Fe::ONE;
        for j in 0..s {
            table.entry(x).or_insert(j);
            x = self.mul(x, self.0.generator);
        }
        let factor = self.inv(self.pow(self.0.generator, s))?;
        let mut y = a;
        for i in 0..=s {
            if let Some(&j) = table.get(&y) {
                return Some((i * s + j) % n);
            }
            y = self.mul(y, factor);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::prime(3).unwrap(),
            Field::prime(2).unwrap(),
            Field::new(FieldSpec::new(2, 2, 1)).unwrap(),
            Field::new(FieldSpec::new(3, 1, 2)).unwrap(),
            Field::new(FieldSpec::new(2, 2, 3)).unwrap(),
            Field::new(FieldSpec::new(5, 1, 3)).unwrap(),
        ]
    }

    #[test]
    fn field_axioms_on_all_elements() {
        for f in fields() {
            for i in 1..f.size() {
                let a = f.element(i);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE, "{f:?}");
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_subfield() {
        for f in fields() {
            let fixed = (0..f.size()).map(|i| f.element(i)).filter(|&a| f.frob(a) == a).count();
            assert_eq!(fixed as u64, f.q(), "{f:?}");
            let mut sub = f.subfield_elements();
            sub.sort();
            sub.dedup();
            assert_eq!(sub.len() as u64, f.q());
            assert!(sub.iter().all(|&c| f.in_subfield(c)));
            for i in 0..f.size().min(50) {
                let a = f.element(i);
                let b = f.element((i * 7 + 3) % f.size());
                let c = sub[(i as usize) % sub.len()];
                let lhs = f.frob(f.add(f.mul(c, a), b));
                let rhs = f.add(f.mul(c, f.frob(a)), f.frob(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        for f in fields() {
            let g = f.generator();
            let mut x = g;
            let mut order = 1;
            while x != Fe::ONE {
                x = f.mul(x, g);
                order += 1;
            }
            assert_eq!(order, f.size() - 1);
        }
    }

    #[test]
    fn subfield_coordinates_round_trip() {
        for f in fields() {
            assert_eq!(f.subfield_coords(Fe::ZERO), vec![Fe::ZERO; f.m() as usize]);
            let one = f.subfield_coords(Fe::ONE);
            assert_eq!(one[0], Fe::ONE);
            assert!(one[1..].iter().all(|c| c.is_zero()));
            for i in 0..f.size() {
                let a = f.element(i);
                let c = f.subfield_coords(a);
                assert!(c.iter().all(|&x| f.in_subfield(x)));
                assert_eq!(f.from_subfield_coords(&c), a);
            }
        }
    }

    #[test]
    fn prime_field_coords_are_trivial() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.subfield_coords(f.from_int(2)), vec![f.from_int(2)]);
    }

    #[test]
    fn discrete_log() {
        for f in fields() {
            for i in 1..f.size() {
                let a = f.element(i);
                let k = f.log_generator(a).unwrap();
                assert_eq!(f.pow(f.generator(), k), a);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::prime(4).is_err());
        assert!(Field::new(FieldSpec::new(3, 0, 1)).is_err());
        assert!(Field::new(FieldSpec::new(2, 17, 1)).is_err());
        let mut spec = FieldSpec::new(3, 2, 1);
        spec.modulus = Some(vec![2, 0, 1]); // x^2 + 2 = (x-1)(x+1)
        assert!(Field::new(spec).is_err());
    }
}
