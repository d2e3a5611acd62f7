use twofloat::TwoFloat;

use crate::density::dd::inv_pow;
use crate::density::{DensityMethod, DensityValue};
use crate::error::{Error, Result};

/// Smallest tolerance a double result can honour.
pub const MIN_EPS: f64 = 1e-15;

/// `B_2, B_4, ..., B_20` as numerator and denominator.
const BERNOULLI: [(f64, f64); 10] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
];

/// Correction terms used; the remainder is bounded by the next one.
const TERMS: usize = 9;

/// `B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * M^(-s-2j+1)`.
fn em_term(s: u32, m: u64, j: usize) -> TwoFloat {
    let (num, den) = BERNOULLI[j - 1];
    let mut coef = TwoFloat::from(num) / den;
    for i in 1..=2 * j as u64 {
        coef /= i as f64;
    }
    for i in 0..(2 * j as u32 - 1) {
        coef *= (s + i) as f64;
    }
    coef * inv_pow(m as f64, s + 2 * j as u32 - 1)
}

/// `zeta(s)` in double-double with a rigorous bound on the truncation error,
/// by Euler-Maclaurin summation from `M` on.
pub(crate) fn zeta_dd(s: u32, eps: f64) -> (TwoFloat, f64) {
    let mut m = 16u64;
    loop {
        // for real s the remainder after TERMS corrections is at most the next term
        let tail = em_term(s, m, TERMS + 1).hi().abs();
        if tail <= eps / 4.0 || m > 1 << 20 {
            let mut sum = TwoFloat::from(0.0);
            for n in (1..m).rev() {
                sum += inv_pow(n as f64, s);
            }
            let mf = m as f64;
            sum += inv_pow(mf, s - 1) / (s - 1) as f64;
            sum += inv_pow(mf, s) / 2.0;
            for j in 1..=TERMS {
                sum += em_term(s, m, j);
            }
            // double-double rounding across at most a few thousand operations
            let rounding = 1e-28 * m as f64;
            return (sum, tail + rounding);
        }
        m *= 2;
    }
}

/// `zeta(s)` for integer `s >= 2` to absolute accuracy `eps`.
pub fn zeta_value(s: u32, eps: f64) -> Result<DensityValue> {
    if s < 2 {
        return Err(Error::bad(format!("zeta_value needs s >= 2, got {s}")));
    }
    if !(eps.is_finite() && eps >= MIN_EPS) {
        return Err(Error::bad(format!("eps must be at least {MIN_EPS:e}, got {eps:e}")));
    }
    let (z, err) = zeta_dd(s, eps);
    let value = z.hi();
    let bound = err + (z - value).hi().abs() + f64::EPSILON * value;
    Ok(DensityValue { value, error_bound: bound, prime_bound: None, method: DensityMethod::ExactZeta })
}
