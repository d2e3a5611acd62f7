//! Finite field arithmetic and linear algebra over `F_{p^s}`.

mod conj;
mod field;
mod mat;
pub mod poly;

pub use conj::{are_conjugate_tuples, are_conjugate_tuples_capped, GlGroup, DEFAULT_CONJ_CAP, MAX_ENUM_N};
pub use field::{make_field, FieldCtx, FqElem};
pub use mat::{span_dimension, Echelon, FqMat};

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{big_pow, prime_power};
use crate::error::{Error, Result};

/// `(|GL_n(F_q)|, |PGL_n(F_q)|)`.
pub fn group_orders(n: u32, q: u64) -> Result<(BigInt, BigInt)> {
    if n < 1 || prime_power(q).is_none() {
        return Err(Error::bad(format!("group_orders needs n >= 1 and a prime power q (n = {n}, q = {q})")));
    }
    let qn = big_pow(q, n as u64);
    let mut gl = BigInt::one();
    for i in 0..n {
        gl *= &qn - big_pow(q, i as u64);
    }
    let pgl = &gl / BigInt::from(q - 1);
    Ok((gl, pgl))
}
