use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ffalg::field::{FieldCtx, FqElem};
use crate::ffalg::group_orders;
use crate::ffalg::mat::FqMat;

/// Largest `|GL_n(F_q)|` the brute-force conjugacy search will enumerate.
pub const DEFAULT_CONJ_CAP: u64 = 10_000;

/// Largest matrix size accepted by the enumeration entry points.
pub const MAX_ENUM_N: usize = 8;

/// All of `GL_n(F_q)`, enumerated once so repeated conjugacy tests can share it.
#[derive(Clone, Debug)]
pub struct GlGroup {
    ctx: FieldCtx,
    n: usize,
    elements: Vec<FqMat>,
}

impl GlGroup {
    pub fn enumerate(ctx: &FieldCtx, n: usize, cap: u64) -> Result<Self> {
        if n == 0 || n > MAX_ENUM_N {
            return Err(Error::UnsupportedSize(n));
        }
        let (gl, _) = group_orders(n as u32, ctx.q())?;
        if gl.to_u64().is_none_or(|g| g > cap) {
            return Err(Error::too_large("|GL_n(F_q)|", gl, cap));
        }
        let q = ctx.q();
        let cells = n * n;
        let total = q.pow(cells as u32);
        let mut elements = Vec::with_capacity(gl.to_usize().unwrap_or(0));
        for code in 0..total {
            let mut rest = code;
            let mut entries = vec![FqElem::ZERO; cells];
            for e in entries.iter_mut().rev() {
                *e = ctx.from_code(rest % q)?;
                rest /= q;
            }
            let m = FqMat::new(n, entries)?;
            if m.is_invertible(ctx) {
                elements.push(m);
            }
        }
        Ok(GlGroup { ctx: ctx.clone(), n, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FqMat] {
        &self.elements
    }

    /// Whether some `g` in the group and some field automorphism `x -> x^(p^j)`,
    /// `j` a multiple of `galois_step` (only `j = 0` when `galois_step` is `None`),
    /// satisfy `g * sigma(t1[i]) * g^-1 = t2[i]` for every `i`.
    pub fn conjugate(&self, t1: &[FqMat], t2: &[FqMat], galois_step: Option<u32>) -> Result<bool> {
        check_tuples(self.n, t1, t2)?;
        let ctx = &self.ctx;
        let s = ctx.s();
        let twists: Vec<u32> = match galois_step {
            Some(step) if step > 0 && s > 1 => (0..s).step_by(step as usize).collect(),
            _ => vec![0],
        };
        for j in twists {
            let src: Vec<FqMat> = t1.iter().map(|m| m.map(|x| ctx.frobenius(x, j))).collect();
            // g * a = b * g avoids inverting g
            let found = self.elements.iter().any(|g| {
                src.iter().zip(t2).all(|(a, b)| g.mul(ctx, a) == b.mul(ctx, g))
            });
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn check_tuples(n: usize, t1: &[FqMat], t2: &[FqMat]) -> Result<()> {
    if t1.len() != t2.len() {
        return Err(Error::DimensionMismatch { expected: t1.len(), got: t2.len() });
    }
    if let Some(m) = t1.iter().chain(t2).find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: m.n() });
    }
    Ok(())
}

/// Decides whether two tuples of matrices over `ctx` are related by an
/// automorphism of `M_n(F_q)`: conjugation by `GL_n(F_q)`, additionally
/// composed with a Frobenius power when `include_galois` is set.
pub fn are_conjugate_tuples(ctx: &FieldCtx, t1: &[FqMat], t2: &[FqMat], include_galois: bool) -> Result<bool> {
    are_conjugate_tuples_capped(ctx, t1, t2, include_galois.then_some(1), DEFAULT_CONJ_CAP)
}

pub fn are_conjugate_tuples_capped(
    ctx: &FieldCtx,
    t1: &[FqMat],
    t2: &[FqMat],
    galois_step: Option<u32>,
    cap: u64,
) -> Result<bool> {
    let n = t1.first().or(t2.first()).map_or(1, FqMat::n);
    check_tuples(n, t1, t2)?;
    if t1.is_empty() {
        return Ok(true);
    }
    GlGroup::enumerate(ctx, n, cap)?.conjugate(t1, t2, galois_step)
}
