use std::fmt;
use std::sync::Arc;

use crate::arith::{is_prime_u64, mul_mod, pow_mod, trial_factor};
use crate::error::{Error, Result};
use crate::ffalg::poly;

use num_bigint::BigUint;

/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: u64 = 1024;

/// An element of `F_{p^s}`, stored as its coefficient vector packed into one
/// integer with the constant coefficient as the most significant base-`p`
/// digit. Integer order on the code is therefore lexicographic order on the
/// coefficient vector `(c_0, c_1, ..., c_{s-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);

    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// The finite field `F_{p^s} = F_p[x]/(modulus)`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    s: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds `F_{p^s}`. The modulus is the lexicographically smallest monic
/// irreducible polynomial of degree `s`, comparing coefficient vectors from
/// the constant term upwards.
pub fn make_field(p: u64, s: u32) -> Result<FieldCtx> {
    if !is_prime_u64(p) {
        return Err(Error::NonPrime(p));
    }
    if s < 1 {
        return Err(Error::BadDegree(s));
    }
    let q = p
        .checked_pow(s)
        .ok_or_else(|| Error::bad(format!("{p}^{s} does not fit in 64 bits")))?;
    let modulus = if s == 1 { None } else { Some(smallest_irreducible(p, s)) };
    let mut ctx = FieldCtx { p, s, q, modulus, tables: None };
    if s > 1 && q <= TABLE_LIMIT {
        ctx.tables = Some(Arc::new(ctx.build_tables()));
    }
    Ok(ctx)
}

fn smallest_irreducible(p: u64, s: u32) -> Vec<u64> {
    // candidates with zero constant term are divisible by x, so start at c_0 = 1
    let span = p.pow(s - 1);
    for code in span.. {
        let mut f: Vec<u64> = (0..s).map(|i| (code / p.pow(s - 1 - i)) % p).collect();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, low degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(self.p.pow(self.s - 1))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.s as usize {
            return Err(Error::DimensionMismatch { expected: self.s as usize, got: coeffs.len() });
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::bad(format!("coefficient {c} is not reduced mod {}", self.p)));
        }
        Ok(self.encode(coeffs))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        let mut out = vec![0u64; self.s as usize];
        let mut code = a.0;
        for slot in out.iter_mut().rev() {
            *slot = code % self.p;
            code /= self.p;
        }
        out
    }

    pub fn from_code(&self, code: u64) -> Result<FqElem> {
        if code >= self.q {
            return Err(Error::bad(format!("element code {code} out of range for q = {}", self.q)));
        }
        Ok(FqElem(code))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as u64;
        FqElem(r * self.p.pow(self.s - 1))
    }

    fn encode(&self, coeffs: &[u64]) -> FqElem {
        FqElem(coeffs.iter().fold(0u64, |acc, &c| acc * self.p + c))
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.s == 1 {
            let r = a.0 + b.0;
            return FqElem(if r >= self.p { r - self.p } else { r });
        }
        if let Some(t) = &self.tables {
            return FqElem(t.add[(a.0 * self.q + b.0) as usize] as u64);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let z: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&z)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.s == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let z: Vec<u64> = self.coeffs(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&z)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.s == 1 {
            return FqElem(mul_mod(a.0, b.0, self.p));
        }
        if let Some(t) = &self.tables {
            return FqElem(t.mul[(a.0 * self.q + b.0) as usize] as u64);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let m = self.modulus.as_ref().expect("extension field has a modulus");
        let mut prod = poly::mul_mod_poly(&self.coeffs(a), &self.coeffs(b), m, self.p);
        prod.resize(self.s as usize, 0);
        self.encode(&prod)
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        if self.s == 1 {
            return FqElem(pow_mod(a.0, e, self.p));
        }
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `a^(p^j)`, the `j`-th power of the absolute Frobenius.
    pub fn frobenius(&self, a: FqElem, j: u32) -> FqElem {
        let mut x = a;
        for _ in 0..(j % self.s) {
            x = self.pow(x, self.p);
        }
        x
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.q - 1;
        let (primes, _) = trial_factor(&BigUint::from(ord), u64::MAX >> 32);
        for r in primes {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Smallest element, in canonical order, of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> FqElem {
        let n = self.q - 1;
        let (primes, _) = trial_factor(&BigUint::from(n), u64::MAX >> 32);
        let one = self.one();
        self.elements()
            .filter(|a| !a.is_zero())
            .find(|&a| primes.iter().all(|&r| self.pow(a, n / r) != one))
            .expect("the multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..self.q {
            let ca = self.coeffs(FqElem(a));
            for b in 0..self.q {
                let cb = self.coeffs(FqElem(b));
                let sum: Vec<u64> = ca.iter().zip(&cb).map(|(u, v)| (u + v) % self.p).collect();
                let i = a as usize * q + b as usize;
                add[i] = self.encode(&sum).0 as u32;
                mul[i] = self.mul_slow(FqElem(a), FqElem(b)).0 as u32;
            }
        }
        Tables { add, mul }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_context() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), Some(&[1, 1, 1][..]));
        assert_eq!(make_field(3, 2).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(make_field(2, 3).unwrap().modulus(), Some(&[1, 0, 1, 1][..]));
    }

    #[test]
    fn modulus_by_enumeration_oracle() {
        // first monic quadratic over F_3, lexicographic in (c0, c1), with no root
        let mut first = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                if (0..3u64).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    first = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(make_field(3, 2).unwrap().modulus().map(<[u64]>::to_vec), first);
    }

    #[test]
    fn moduli_have_no_small_factors() {
        // exhaustive division by every monic polynomial of degree <= s/2
        for (p, s) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let ctx = make_field(p, s).unwrap();
            let m = ctx.modulus().unwrap();
            for d in 1..=(s / 2) {
                for code in 0..p.pow(d) {
                    let mut g: Vec<u64> = (0..d).map(|i| (code / p.pow(i)) % p).collect();
                    g.push(1);
                    assert!(!poly::rem(m, &g, p).is_empty(), "p={p} s={s} divisible by {g:?}");
                }
            }
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(make_field(5, 3).unwrap(), make_field(5, 3).unwrap());
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::BadDegree(0));
    }

    #[test]
    fn inverses() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        let f4 = make_field(2, 2).unwrap();
        let u = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.inv(u).unwrap(), f4.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(f4.inv(f4.zero()), Err(Error::DivisionByZero));
        assert_eq!(f5.inv(f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn generators() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.multiplicative_generator(), f2.one());
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.multiplicative_generator(), f5.from_int(2));
        let f4 = make_field(2, 2).unwrap();
        let u = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.multiplicative_generator(), u);
        assert_eq!(f4.order(u).unwrap(), 3);
        for (p, s) in [(3, 3), (2, 5), (7, 2), (101, 1)] {
            let f = make_field(p, s).unwrap();
            assert_eq!(f.order(f.multiplicative_generator()).unwrap(), f.q() - 1);
        }
    }

    #[test]
    fn field_axioms_on_seeded_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, s) in [(2u64, 1u32), (2, 3), (3, 2), (5, 1), (7, 3), (101, 2), (2, 11)] {
            let f = make_field(p, s).unwrap();
            for _ in 0..1000 {
                let a = FqElem(rng.random_range(0..f.q()));
                let b = FqElem(rng.random_range(0..f.q()));
                let c = FqElem(rng.random_range(0..f.q()));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_direct_arithmetic() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = make_field(3, 4).unwrap();
        for c in 0..3 {
            let a = f.from_int(c);
            assert_eq!(f.frobenius(a, 1), a);
        }
        let g = f.multiplicative_generator();
        assert_eq!(f.frobenius(g, 4), g);
        assert_ne!(f.frobenius(g, 1), g);
    }
}
