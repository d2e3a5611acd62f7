use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::sampler::MultiPoly;

/// `hits / total`, kept unreduced so the denominator is the box size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactDensity {
    pub hits: u64,
    pub total: u64,
}

impl ExactDensity {
    pub fn value(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

fn arity(polys: &[MultiPoly]) -> Result<usize> {
    let n = polys.first().map(|f| f.nvars()).ok_or_else(|| Error::bad("empty polynomial system"))?;
    if let Some(f) = polys.iter().find(|f| f.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: f.nvars() });
    }
    if n == 0 {
        return Err(Error::bad("polynomials need at least one variable"));
    }
    Ok(n)
}

fn box_size(side: u64, n: usize, cap: u64) -> Result<u64> {
    let total = (side as u128).checked_pow(n as u32).filter(|&t| t <= cap as u128);
    total.map(|t| t as u64).ok_or_else(|| Error::too_large("box", BigInt::from(side).pow(n as u32), cap))
}

fn unit_ideal(polys: &[MultiPoly], x: &[i64]) -> bool {
    let mut g = 0i128;
    let mut big: Option<BigInt> = None;
    for f in polys {
        match (&mut big, f.eval_i128(x)) {
            (None, Some(v)) => g = g.gcd(&v),
            _ => {
                let b = big.get_or_insert_with(|| BigInt::from(g));
                *b = b.gcd(&f.eval(x));
            }
        }
        if big.is_none() && g == 1 || big.as_ref().is_some_and(|b| b.is_one()) {
            return true;
        }
    }
    false
}

/// Exact fraction of points `x` in `[-N, N]^n` at which the values of
/// `polys` generate the unit ideal of `Z`.
pub fn exhaustive_poly_density(polys: &[MultiPoly], half_width: u64, limits: &Limits) -> Result<ExactDensity> {
    let n = arity(polys)?;
    let half = i64::try_from(half_width).map_err(|_| Error::bad("N is too large"))?;
    let side = 2 * half_width + 1;
    let total = box_size(side, n, limits.enum_cap)?;
    let rest = total / side;
    let hits = limits.install(|| {
        (-half..=half)
            .into_par_iter()
            .map(|x0| {
                let mut x = vec![0i64; n];
                x[0] = x0;
                let mut hits = 0u64;
                for code in 0..rest {
                    let mut c = code;
                    for xi in x[1..].iter_mut().rev() {
                        *xi = (c % side) as i64 - half;
                        c /= side;
                    }
                    if unit_ideal(polys, &x) {
                        hits += 1;
                    }
                }
                hits
            })
            .sum()
    });
    Ok(ExactDensity { hits, total })
}

/// Number of common zeros of `polys` in `F_p^n`.
pub fn local_zero_count(polys: &[MultiPoly], p: u64, limits: &Limits) -> Result<u64> {
    let n = arity(polys)?;
    if !is_prime_u64(p) {
        return Err(Error::NonPrime(p));
    }
    let total = box_size(p, n, limits.enum_cap)?;
    let count = limits.install(|| {
        (0..total)
            .into_par_iter()
            .filter(|&code| {
                let mut c = code;
                let x: Vec<u64> = (0..n)
                    .map(|_| {
                        let d = c % p;
                        c /= p;
                        d
                    })
                    .collect();
                polys.iter().all(|f| f.eval_mod(&x, p) == 0)
            })
            .count()
    });
    Ok(count.to_u64().expect("fits"))
}
