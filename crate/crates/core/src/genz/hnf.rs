use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genz::int::{ext_gcd, Int};

/// A sublattice of `Z^D` held as its canonical Hermite normal form: rows in
/// echelon form, positive pivots, entries above each pivot in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    index: BigInt,
}

impl Lattice {
    pub(crate) fn from_hnf_rows<T: Int>(dim: usize, rows: &[Vec<T>]) -> Self {
        let basis: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(Int::to_big).collect()).collect();
        let pivots: Vec<usize> =
            basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero HNF row")).collect();
        let index = if basis.len() == dim {
            basis.iter().zip(&pivots).map(|(r, &c)| &r[c]).product()
        } else {
            BigInt::zero()
        };
        Lattice { dim, basis, pivots, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// `[Z^D : L]` when the lattice has full rank, otherwise 0.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// Exact membership test by back-substitution along the pivots.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut rest = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if rest[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let p = &row[c];
            if !(&rest[c] % p).is_zero() {
                return false;
            }
            let f = &rest[c] / p;
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }
}

/// Canonical HNF of the rows; `None` on overflow of the backing integer type.
pub(crate) fn hnf_rows<T: Int>(mut rows: Vec<Vec<T>>, dim: usize) -> Option<Vec<Vec<T>>> {
    rows.retain(|r| r.iter().any(|x| !x.is_nil()));
    let mut r = 0usize;
    for col in 0..dim {
        if r == rows.len() {
            break;
        }
        let Some(first) = (r..rows.len()).find(|&i| !rows[i][col].is_nil()) else {
            continue;
        };
        rows.swap(r, first);
        for i in r + 1..rows.len() {
            if rows[i][col].is_nil() {
                continue;
            }
            let a = rows[r][col].clone();
            let b = rows[i][col].clone();
            let (g, x, y) = ext_gcd(&a, &b)?;
            let (bg, ag) = (b.exact_div(&g), a.exact_div(&g));
            let mut new_r = Vec::with_capacity(dim);
            let mut new_i = Vec::with_capacity(dim);
            for (u, v) in rows[r].iter().zip(&rows[i]) {
                new_r.push(x.mul(u)?.add(&y.mul(v)?)?);
                new_i.push(ag.mul(v)?.sub(&bg.mul(u)?)?);
            }
            rows[r] = new_r;
            rows[i] = new_i;
        }
        if rows[r][col].is_neg() {
            for x in rows[r].iter_mut() {
                *x = x.neg()?;
            }
        }
        let pivot = rows[r][col].clone();
        for j in 0..r {
            let f = rows[j][col].fdiv(&pivot)?;
            if f.is_nil() {
                continue;
            }
            for c in col..dim {
                let d = f.mul(&rows[r][c])?;
                rows[j][c] = rows[j][c].sub(&d)?;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    Some(rows)
}

fn check_dims(rows: &[Vec<BigInt>], dim: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != dim) {
        Some(r) => Err(Error::DimensionMismatch { expected: dim, got: r.len() }),
        None => Ok(()),
    }
}

/// Hermite normal form of the row span of `rows`, all of length `dim`.
pub fn hnf(rows: &[Vec<BigInt>], dim: usize) -> Result<Lattice> {
    check_dims(rows, dim)?;
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(<i128 as Int>::from_big).collect()).collect();
    if let Some(h) = small.and_then(|s| hnf_rows(s, dim)) {
        return Ok(Lattice::from_hnf_rows(dim, &h));
    }
    let h = hnf_rows(rows.to_vec(), dim).expect("BigInt never overflows");
    Ok(Lattice::from_hnf_rows(dim, &h))
}

/// Convenience for small literal inputs.
pub fn hnf_i64(rows: &[Vec<i64>], dim: usize) -> Result<Lattice> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    hnf(&big, dim)
}
