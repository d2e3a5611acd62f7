//! Span closure: the unital subalgebra generated by a tuple is the span of all
//! monomials, built up by right-multiplying the current span by generators
//! until no new direction appears.

use std::collections::VecDeque;

use crate::error::Result;
use crate::ffalg::{Echelon, FqMat};
use crate::genff::shape::{AlgebraShape, FieldSide, GenTuple};

/// Coordinates of an element over the prime field: factor by factor, entries
/// row-major, each entry expanded to its `F_p` coefficient vector.
fn coordinates(side: &FieldSide, factors: &[usize], el: &[FqMat], out: &mut Vec<crate::ffalg::FqElem>) {
    out.clear();
    for (mat, &bi) in el.iter().zip(factors) {
        let f = &side.ext[bi];
        if f.s() == 1 {
            out.extend(mat.entries().iter().map(|&e| side.prime.from_int(e.code() as i64)));
        } else {
            for &e in mat.entries() {
                out.extend(f.coeffs(e).into_iter().map(|c| side.prime.from_int(c as i64)));
            }
        }
    }
}

/// Dimension over `F_q` of the unital subalgebra generated by `t`.
pub fn subalgebra_dimension(shape: &AlgebraShape, t: &GenTuple<FqMat>) -> Result<usize> {
    shape.check_fq_tuple(t)?;
    let side = shape.field.as_ref().expect("checked above");
    let factors = shape.factor_blocks();
    let degree = side.base.s() as usize;
    let full = shape.rank() * degree;
    let mut span = Echelon::new(side.prime.clone(), full);
    let mut queue: VecDeque<Vec<FqMat>> = VecDeque::new();
    let mut coords = Vec::with_capacity(full);

    // F_q * 1, as F_p-span of the embedded basis of F_q
    for j in 0..degree {
        let el: Vec<FqMat> = factors
            .iter()
            .map(|&bi| {
                let f = &side.ext[bi];
                FqMat::scalar(f, shape.blocks()[bi].n, side.scalar_basis[bi][j])
            })
            .collect();
        coordinates(side, &factors, &el, &mut coords);
        if span.insert(coords.clone()) {
            queue.push_back(el);
        }
    }

    // every pushed element keeps the span F_q-stable, since scalars are central
    while let Some(v) = queue.pop_front() {
        if span.rank() == full {
            break;
        }
        for g in &t.elements {
            let w: Vec<FqMat> = v
                .iter()
                .zip(g)
                .zip(&factors)
                .map(|((a, b), &bi)| a.mul(&side.ext[bi], b))
                .collect();
            coordinates(side, &factors, &w, &mut coords);
            if span.insert(coords.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(span.rank() / degree)
}

/// Whether `t` generates the whole algebra as a unital `F_q`-algebra.
pub fn generates(shape: &AlgebraShape, t: &GenTuple<FqMat>) -> Result<bool> {
    Ok(subalgebra_dimension(shape, t)? == shape.rank())
}
