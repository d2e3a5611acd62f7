use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ffalg::{FieldCtx, FqMat};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMat {
    n: usize,
    entries: Vec<BigInt>,
}

impl ZMat {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        Ok(ZMat { n, entries })
    }

    pub fn from_ints(n: usize, ints: &[i64]) -> Result<Self> {
        Self::new(n, ints.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        ZMat { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// `E_ij`, 1-based.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = BigInt::one();
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &ZMat) -> ZMat {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * &o.entries[k * n + j];
                }
            }
        }
        ZMat { n, entries: out }
    }

    pub fn add(&self, o: &ZMat) -> ZMat {
        ZMat { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &ZMat) -> ZMat {
        ZMat { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> ZMat {
        ZMat { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| &self.entries[i * self.n + i]).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Reduction modulo the characteristic of a prime field.
    pub fn reduce(&self, ctx: &FieldCtx) -> FqMat {
        let p = BigInt::from(ctx.p());
        let entries =
            self.entries.iter().map(|x| ctx.from_int(x.mod_floor(&p).to_i64().expect("residue below p"))).collect();
        FqMat::new(self.n, entries).expect("n^2 entries")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::make_field;

    #[test]
    fn determinants() {
        assert_eq!(ZMat::from_ints(2, &[1, 2, 3, 4]).unwrap().det(), BigInt::from(-2));
        assert_eq!(ZMat::from_ints(3, &[0, 1, 2, 3, 4, 5, 6, 7, 9]).unwrap().det(), BigInt::from(-3));
        assert_eq!(ZMat::identity(5).det(), BigInt::one());
        assert_eq!(ZMat::from_ints(3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap().det(), BigInt::zero());
    }

    #[test]
    fn reduction() {
        let f3 = make_field(3, 1).unwrap();
        let m = ZMat::from_ints(2, &[-1, 4, 3, 2]).unwrap().reduce(&f3);
        assert_eq!(m, FqMat::from_ints(&f3, 2, &[2, 1, 0, 2]).unwrap());
    }
}
