use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ffalg::{make_field, FieldCtx, FqElem, FqMat};

/// One factor `M_n(F_{q^s})^m` of a product algebra. Integer-side shapes use `s = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub n: usize,
    pub s: u32,
    pub m: usize,
}

impl Block {
    pub fn new(n: usize, s: u32, m: usize) -> Self {
        Block { n, s, m }
    }

    /// `M_n(.)^m` with no extension.
    pub fn matrices(n: usize, m: usize) -> Self {
        Block { n, s: 1, m }
    }
}

/// The base-field data of an `F_q`-side shape. Each block lives in its own
/// extension `F_{q^s} = F_{p^(t s)}`, and `F_q` sits inside it through a fixed
/// root of the base modulus so that scalars act compatibly on every block.
#[derive(Clone, Debug)]
pub(crate) struct FieldSide {
    pub base: FieldCtx,
    pub prime: FieldCtx,
    pub ext: Vec<FieldCtx>,
    /// Per block, the images of the `F_p`-basis `1, x, ..., x^(t-1)` of `F_q`.
    pub scalar_basis: Vec<Vec<FqElem>>,
}

/// A finite product `prod_i M_{n_i}(.)^{m_i}`; over a finite field each block
/// may be `M_{n_i}(F_{q^{s_i}})` viewed as an `F_q`-algebra.
#[derive(Clone, Debug)]
pub struct AlgebraShape {
    blocks: Vec<Block>,
    rank: usize,
    pub(crate) field: Option<FieldSide>,
}

/// An ordered tuple of algebra elements. Each element lists one matrix per
/// simple factor: the `m_1` copies of the first block, then the second block,
/// and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenTuple<M> {
    pub elements: Vec<Vec<M>>,
}

impl<M> GenTuple<M> {
    pub fn new(elements: Vec<Vec<M>>) -> Self {
        GenTuple { elements }
    }

    /// Tuple of elements of a single matrix algebra.
    pub fn of_matrices(mats: Vec<M>) -> Self {
        GenTuple { elements: mats.into_iter().map(|m| vec![m]).collect() }
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }
}

fn validate_blocks(blocks: &[Block]) -> Result<usize> {
    let mut rank = 0usize;
    for b in blocks {
        if b.n < 1 || b.s < 1 || b.m < 1 {
            return Err(Error::bad(format!("block {b:?} needs n, s, m >= 1")));
        }
        rank += b.m * b.s as usize * b.n * b.n;
    }
    Ok(rank)
}

impl AlgebraShape {
    /// `F_q`-side shape. Blocks must have pairwise distinct `(n, s)`; repeated
    /// factors belong in the multiplicity `m` instead.
    pub fn over_field(base: &FieldCtx, blocks: Vec<Block>) -> Result<Self> {
        let rank = validate_blocks(&blocks)?;
        let mut seen = HashSet::new();
        for b in &blocks {
            if !seen.insert((b.n, b.s)) {
                return Err(Error::bad(format!(
                    "blocks with equal (n, s) = ({}, {}) must be merged into one multiplicity",
                    b.n, b.s
                )));
            }
        }
        let (p, t) = (base.p(), base.s());
        let prime = make_field(p, 1)?;
        let mut ext = Vec::with_capacity(blocks.len());
        let mut scalar_basis = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let field = make_field(p, t * b.s)?;
            let omega = if t == 1 {
                field.one()
            } else if b.s == 1 {
                // the block field is the base field itself; embed by the identity
                let mut c = vec![0u64; t as usize];
                c[1] = 1;
                field.from_coeffs(&c)?
            } else {
                base_root_in(base, &field)
            };
            let mut powers = Vec::with_capacity(t as usize);
            let mut x = field.one();
            for _ in 0..t {
                powers.push(x);
                x = field.mul(x, omega);
            }
            ext.push(field);
            scalar_basis.push(powers);
        }
        Ok(AlgebraShape {
            blocks,
            rank,
            field: Some(FieldSide { base: base.clone(), prime, ext, scalar_basis }),
        })
    }

    /// `M_n(F_q)`.
    pub fn matrix_algebra(base: &FieldCtx, n: usize) -> Result<Self> {
        Self::over_field(base, vec![Block::matrices(n, 1)])
    }

    /// Integer-side shape; every block has `s = 1`.
    pub fn over_z(blocks: Vec<Block>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.s != 1) {
            return Err(Error::bad(format!("integer-side block {b:?} must have s = 1")));
        }
        let rank = validate_blocks(&blocks)?;
        Ok(AlgebraShape { blocks, rank, field: None })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Free rank `sum m_i s_i n_i^2` over the base ring.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_field_side(&self) -> bool {
        self.field.is_some()
    }

    pub fn base_field(&self) -> Option<&FieldCtx> {
        self.field.as_ref().map(|f| &f.base)
    }

    /// The field the matrices of block `i` have entries in.
    pub fn block_field(&self, i: usize) -> Option<&FieldCtx> {
        self.field.as_ref().map(|f| &f.ext[i])
    }

    /// Number of matrices in one algebra element.
    pub fn factor_count(&self) -> usize {
        self.blocks.iter().map(|b| b.m).sum()
    }

    /// Block index of each simple factor, in element order.
    pub fn factor_blocks(&self) -> Vec<usize> {
        self.blocks.iter().enumerate().flat_map(|(i, b)| std::iter::repeat_n(i, b.m)).collect()
    }

    /// Image of a base-field scalar inside every factor, as a list of
    /// scalar matrices (one algebra element).
    pub fn scalar(&self, c: FqElem) -> Result<Vec<FqMat>> {
        let side = self.field.as_ref().ok_or_else(|| Error::ShapeMismatch("not an F_q-side shape".into()))?;
        let coeffs = side.base.coeffs(c);
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let f = &side.ext[bi];
            let image = coeffs
                .iter()
                .zip(&side.scalar_basis[bi])
                .fold(f.zero(), |acc, (&cj, &wj)| f.add(acc, f.mul(f.from_int(cj as i64), wj)));
            for _ in 0..b.m {
                out.push(FqMat::scalar(f, b.n, image));
            }
        }
        Ok(out)
    }

    pub(crate) fn check_fq_tuple(&self, t: &GenTuple<FqMat>) -> Result<()> {
        let side = self.field.as_ref().ok_or_else(|| Error::ShapeMismatch("not an F_q-side shape".into()))?;
        let factors = self.factor_blocks();
        for (j, el) in t.elements.iter().enumerate() {
            if el.len() != factors.len() {
                return Err(Error::ShapeMismatch(format!(
                    "element {j} has {} factors, shape has {}",
                    el.len(),
                    factors.len()
                )));
            }
            for (mat, &bi) in el.iter().zip(&factors) {
                let b = self.blocks[bi];
                if mat.n() != b.n {
                    return Err(Error::ShapeMismatch(format!("element {j}: expected {0}x{0} matrix, got {1}x{1}", b.n, mat.n())));
                }
                let q = side.ext[bi].q();
                if mat.entries().iter().any(|e| e.code() >= q) {
                    return Err(Error::ShapeMismatch(format!("element {j}: entry outside F_{q}")));
                }
            }
        }
        Ok(())
    }
}

/// Smallest root, in canonical order, of the base modulus inside the subfield
/// `F_q` of `field`.
fn base_root_in(base: &FieldCtx, field: &FieldCtx) -> FqElem {
    let modulus = base.modulus().expect("t > 1 implies an extension base");
    let q = base.q();
    let gamma = field.multiplicative_generator();
    let step = (field.q() - 1) / (q - 1);
    let w = field.pow(gamma, step);
    let mut subfield: Vec<FqElem> = (0..q - 1).map(|j| field.pow(w, j)).collect();
    subfield.sort();
    let eval = |x: FqElem| {
        modulus.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), field.from_int(c as i64)))
    };
    subfield.into_iter().find(|&x| eval(x).is_zero()).expect("F_q embeds in F_{q^s}")
}
