use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith
/// normal form), each dividing the next.
pub fn smith_invariants(rows: &[Vec<BigInt>], cols: usize) -> Result<Vec<BigInt>> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            let f = a[i][t].div_floor(&a[t][t]);
            if !f.is_zero() {
                for j in t..cols {
                    let d = &f * &a[t][j];
                    a[i][j] -= d;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let f = a[t][j].div_floor(&a[t][t]);
            if !f.is_zero() {
                for i in t..nrows {
                    let d = &f * &a[i][t];
                    a[i][j] -= d;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest; otherwise fold an offending row in
        let bad = (t + 1..nrows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    Ok(out)
}

/// Whether the vectors generate `Z^n` as a module.
pub fn generates_zn_module(n: usize, vectors: &[Vec<BigInt>]) -> Result<bool> {
    let inv = smith_invariants(vectors, n)?;
    Ok(inv.len() == n && inv.iter().all(One::is_one))
}
