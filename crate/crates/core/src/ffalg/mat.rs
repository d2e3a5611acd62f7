use crate::error::{Error, Result};
use crate::ffalg::field::{FieldCtx, FqElem};

/// Dense row-major `n x n` matrix over a [`FieldCtx`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqMat {
    n: usize,
    entries: Vec<FqElem>,
}

impl FqMat {
    pub fn new(n: usize, entries: Vec<FqElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        Ok(FqMat { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        FqMat { n, entries: vec![FqElem::ZERO; n * n] }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        Self::scalar(ctx, n, ctx.one())
    }

    pub fn scalar(_ctx: &FieldCtx, n: usize, c: FqElem) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    /// Matrix unit `E_{ij}` with 1-based indices.
    pub fn unit(ctx: &FieldCtx, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = ctx.one();
        m
    }

    /// Reduction of an integer matrix, row-major.
    pub fn from_ints(ctx: &FieldCtx, n: usize, ints: &[i64]) -> Result<Self> {
        Self::new(n, ints.iter().map(|&v| ctx.from_int(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &FqMat) -> FqMat {
        let n = self.n;
        let mut out = vec![FqElem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out[idx] = ctx.add(out[idx], ctx.mul(a, b));
                    }
                }
            }
        }
        FqMat { n, entries: out }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &FqMat) -> FqMat {
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| ctx.add(a, b)).collect();
        FqMat { n: self.n, entries }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &FqMat) -> FqMat {
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| ctx.sub(a, b)).collect();
        FqMat { n: self.n, entries }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FqElem) -> FqMat {
        FqMat { n: self.n, entries: self.entries.iter().map(|&a| ctx.mul(c, a)).collect() }
    }

    pub fn transpose(&self) -> FqMat {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(FqElem) -> FqElem) -> FqMat {
        FqMat { n: self.n, entries: self.entries.iter().map(|&a| f(a)).collect() }
    }

    pub fn apply(&self, ctx: &FieldCtx, v: &[FqElem]) -> Vec<FqElem> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).fold(ctx.zero(), |acc, j| ctx.add(acc, ctx.mul(self.entries[i * n + j], v[j]))))
            .collect()
    }

    pub fn trace(&self, ctx: &FieldCtx) -> FqElem {
        (0..self.n).fold(ctx.zero(), |acc, i| ctx.add(acc, self.get(i, i)))
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut e = Echelon::new(ctx.clone(), self.n);
        for i in 0..self.n {
            e.insert(self.entries[i * self.n..(i + 1) * self.n].to_vec());
        }
        e.rank()
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.rank(ctx) == self.n
    }
}

/// Incremental row echelon form. Rows are kept sorted by pivot column with
/// unit pivots, so reducing a vector is one pass in pivot order.
#[derive(Clone, Debug)]
pub struct Echelon {
    ctx: FieldCtx,
    dim: usize,
    rows: Vec<(usize, Vec<FqElem>)>,
}

impl Echelon {
    pub fn new(ctx: FieldCtx, dim: usize) -> Self {
        Echelon { ctx, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current rows in place.
    pub fn reduce(&self, v: &mut [FqElem]) {
        let ctx = &self.ctx;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for j in *pivot..self.dim {
                if !row[j].is_zero() {
                    v[j] = ctx.sub(v[j], ctx.mul(c, row[j]));
                }
            }
        }
    }

    pub fn contains(&self, v: &[FqElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<FqElem>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.ctx.inv(v[pivot]).expect("pivot is nonzero");
        for x in v[pivot..].iter_mut() {
            *x = self.ctx.mul(*x, inv);
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }
}

/// Rank of the span of `vectors`, each of length `dim`.
pub fn span_dimension(ctx: &FieldCtx, dim: usize, vectors: &[Vec<FqElem>]) -> Result<usize> {
    let mut e = Echelon::new(ctx.clone(), dim);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        e.insert(v.clone());
    }
    Ok(e.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::make_field;

    fn vecs(ctx: &FieldCtx, rows: &[&[i64]]) -> Vec<Vec<FqElem>> {
        rows.iter().map(|r| r.iter().map(|&v| ctx.from_int(v)).collect()).collect()
    }

    #[test]
    fn span_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(span_dimension(&f2, 4, &[]).unwrap(), 0);
        let f3 = make_field(3, 1).unwrap();
        let basis = vecs(&f3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(span_dimension(&f3, 4, &basis).unwrap(), 4);
        let dup = vecs(&f2, &[&[1, 1, 0], &[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(span_dimension(&f2, 3, &dup).unwrap(), 2);
        let bad = vecs(&f2, &[&[1, 1]]);
        assert_eq!(
            span_dimension(&f2, 3, &bad),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn dependent_over_extension() {
        let f4 = make_field(2, 2).unwrap();
        let u = f4.multiplicative_generator();
        let v = vec![f4.one(), u];
        let w: Vec<FqElem> = v.iter().map(|&x| f4.mul(u, x)).collect();
        assert_eq!(span_dimension(&f4, 2, &[v, w]).unwrap(), 1);
    }

    #[test]
    fn matrix_units_multiply() {
        let f = make_field(2, 1).unwrap();
        let e12 = FqMat::unit(&f, 2, 1, 2);
        let e21 = FqMat::unit(&f, 2, 2, 1);
        assert_eq!(e12.mul(&f, &e21), FqMat::unit(&f, 2, 1, 1));
        assert!(!e12.is_invertible(&f));
        assert!(e12.add(&f, &e21).is_invertible(&f));
    }
}
