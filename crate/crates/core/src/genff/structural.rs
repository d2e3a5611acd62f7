use crate::error::{Error, Result};
use crate::ffalg::{FieldCtx, FqElem, FqMat};

/// Lines of `F_q^n`, each as the vector whose first nonzero coordinate is 1.
fn lines(ctx: &FieldCtx, n: usize) -> Vec<Vec<FqElem>> {
    let q = ctx.q();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = (n - lead - 1) as u32;
        for code in 0..q.pow(free) {
            let mut v = vec![ctx.zero(); n];
            v[lead] = ctx.one();
            let mut rest = code;
            for x in v.iter_mut().skip(lead + 1) {
                *x = ctx.from_code(rest % q).expect("digit below q");
                rest /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Whether `w` is a multiple of the nonzero vector `v`.
fn parallel(ctx: &FieldCtx, v: &[FqElem], w: &[FqElem]) -> bool {
    let i = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let c = w[i];
    v.iter().zip(w).all(|(&a, &b)| ctx.mul(c, a) == b)
}

fn common_line(ctx: &FieldCtx, n: usize, mats: &[FqMat]) -> bool {
    lines(ctx, n).iter().any(|v| mats.iter().all(|a| parallel(ctx, v, &a.apply(ctx, v))))
}

/// Generation test for `M_n(F_q)`, `n` in `{2, 3}`, from the maximal
/// subalgebras: a tuple generates iff it has no common invariant line or
/// hyperplane and does not commute.
pub fn generates_structural(ctx: &FieldCtx, t: &[FqMat]) -> Result<bool> {
    let n = match t.first() {
        Some(a) => a.n(),
        None => return Err(Error::bad("generates_structural needs a nonempty tuple to fix n")),
    };
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedSize(n));
    }
    if let Some(b) = t.iter().find(|b| b.n() != n) {
        return Err(Error::ShapeMismatch(format!("mixed sizes {n} and {}", b.n())));
    }
    if common_line(ctx, n, t) {
        return Ok(false);
    }
    let transposed: Vec<FqMat> = t.iter().map(FqMat::transpose).collect();
    if common_line(ctx, n, &transposed) {
        return Ok(false);
    }
    let commutative = t.iter().enumerate().all(|(i, a)| t[i + 1..].iter().all(|b| a.mul(ctx, b) == b.mul(ctx, a)));
    Ok(!commutative)
}
