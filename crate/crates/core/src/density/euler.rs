use twofloat::TwoFloat;

use crate::arith::primes_up_to;
use crate::density::dd;
use crate::density::zeta::zeta_dd;
use crate::density::{DensityMethod, DensityValue};
use crate::error::{Error, Result};
use crate::polys::phi_poly;

/// Largest prime bound accepted by the sieve.
pub const MAX_PRIME_BOUND: u64 = 100_000_000;

/// Internal zeta accuracy; far below double resolution.
const ZETA_EPS: f64 = 1e-25;

/// A product `prod_p (1 + delta(p))` over primes `p <= P`, with the promise
/// `|delta(p)| <= C p^(-e)` for every `p > P` to bound the rest.
pub struct EulerProductSpec {
    /// `factor(p) - 1`, accurate to double precision.
    pub local_delta: Box<dyn Fn(u64) -> f64 + Send + Sync>,
    pub prime_bound: u64,
    pub tail_exponent: f64,
    pub tail_constant: f64,
}

impl EulerProductSpec {
    pub fn new(prime_bound: u64, tail_exponent: f64, tail_constant: f64, delta: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        EulerProductSpec { local_delta: Box::new(delta), prime_bound, tail_exponent, tail_constant }
    }

    /// Local factor `g_{k,2}(p) / p^(4k) = (1 - p^(1-k))(1 - p^(-k))`, taken
    /// from the exact count; `k >= 3` so that the tail converges.
    pub fn matrix2(k: u32, prime_bound: u64) -> Result<Self> {
        if k < 3 {
            return Err(Error::DivergentTail((k as f64) - 1.0));
        }
        let delta = move |p: u64| {
            let g = crate::genff::g_closed_form(k, 2, p).expect("p is prime");
            let full = crate::arith::big_pow(p, 4 * k as u64);
            ratio(&(g - &full), &full)
        };
        Ok(Self::new(prime_bound, (k - 1) as f64, 3.0, delta))
    }
}

/// `a / b` rounded to double, for integers of any size.
fn ratio(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let shift = b.bits().saturating_sub(900).max(a.bits().saturating_sub(900));
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}

/// A double-double value with an absolute error bound.
#[derive(Clone, Copy, Debug)]
struct Approx {
    v: TwoFloat,
    err: f64,
}

impl Approx {
    fn exact(v: f64) -> Self {
        Approx { v: TwoFloat::from(v), err: 0.0 }
    }

    fn mul(self, o: Approx) -> Approx {
        let v = self.v * o.v;
        let err = self.err * o.v.hi().abs() + o.err * self.v.hi().abs() + self.err * o.err + 1e-31 * v.hi().abs();
        Approx { v, err }
    }

    fn recip(self) -> Approx {
        let x = self.v.hi().abs();
        debug_assert!(self.err < x);
        let v = dd::recip(self.v);
        Approx { v, err: self.err / (x * (x - self.err)) + 1e-31 * v.hi().abs() }
    }

    fn finish(self, prime_bound: Option<u64>, method: DensityMethod) -> DensityValue {
        let value = self.v.hi();
        let err = self.err + (self.v - value).hi().abs() + f64::EPSILON * value.abs() * 0.5;
        DensityValue { value, error_bound: err, prime_bound, method }
    }
}

fn zeta_approx(s: u32) -> Approx {
    let (v, err) = zeta_dd(s, ZETA_EPS);
    Approx { v, err }
}

fn check_prime_bound(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::bad(format!("prime bound must be >= 2, got {p}")));
    }
    if p > MAX_PRIME_BOUND {
        return Err(Error::too_large("prime bound", p, MAX_PRIME_BOUND));
    }
    Ok(())
}

/// Truncated product with the log of the tail bounded by
/// `C / (1 - C P^-e) * P^(1-e) / (e - 1)`; `rel` is the relative accuracy of
/// each computed delta.
fn product_dd(
    prime_bound: u64,
    e: f64,
    c: f64,
    rel: f64,
    delta: impl Fn(u64) -> TwoFloat,
) -> Result<Approx> {
    check_prime_bound(prime_bound)?;
    if !(e > 1.0) {
        return Err(Error::DivergentTail(e));
    }
    let pb = prime_bound as f64;
    let lead = c * pb.powf(-e);
    if !(c >= 0.0 && lead < 1.0) {
        return Err(Error::bad(format!("tail constant {c} too large for P = {prime_bound}, e = {e}")));
    }
    let primes = primes_up_to(prime_bound);
    let mut acc = TwoFloat::from(1.0);
    let mut log_err = 0.0;
    for &p in &primes {
        let d = delta(p);
        let f = d + 1.0;
        if f.hi() <= 0.0 {
            if f.hi() == 0.0 {
                return Ok(Approx::exact(0.0));
            }
            return Err(Error::bad(format!("local factor at p = {p} is negative")));
        }
        acc *= f;
        log_err += rel * d.hi().abs() / f.hi() + 1e-31;
    }
    let tail = c / (1.0 - lead) * pb.powf(1.0 - e) / (e - 1.0);
    let lambda = tail + log_err;
    Ok(Approx { v: acc, err: acc.hi().abs() * lambda.exp_m1() })
}

/// Evaluates a user-supplied Euler product.
pub fn euler_product(spec: &EulerProductSpec) -> Result<DensityValue> {
    let f = &spec.local_delta;
    let a = product_dd(spec.prime_bound, spec.tail_exponent, spec.tail_constant, f64::EPSILON, |p| TwoFloat::from(f(p)))?;
    Ok(a.finish(Some(spec.prime_bound), DensityMethod::EulerTruncation))
}

/// Probability that `k` random vectors generate `Z^n`:
/// `prod_{m=k-n+1}^{k} zeta(m)^-1`, zero when `k = n`.
pub fn den_zn(k: u32, n: u32) -> Result<DensityValue> {
    if n < 1 || k < n {
        return Err(Error::bad(format!("den_zn needs k >= n >= 1, got k = {k}, n = {n}")));
    }
    if k == n {
        return Ok(Approx::exact(0.0).finish(None, DensityMethod::ExactZeta));
    }
    let a = (k - n + 1..=k).fold(Approx::exact(1.0), |acc, m| acc.mul(zeta_approx(m).recip()));
    Ok(a.finish(None, DensityMethod::ExactZeta))
}

/// `den_k(M_n(Z))` for `n` in `{2, 3}`. For `n = 3` the correction product
/// `prod_p (1 + phi_k(p) / p^(3k-2))` is truncated at `prime_bound`.
pub fn den_matrix(n: u32, k: u32, prime_bound: u64) -> Result<DensityValue> {
    if k < 2 {
        return Err(Error::bad(format!("den_matrix needs k >= 2, got {k}")));
    }
    match n {
        2 if k == 2 => Ok(Approx::exact(0.0).finish(None, DensityMethod::ExactZeta)),
        2 => Ok(zeta_approx(k - 1).mul(zeta_approx(k)).recip().finish(None, DensityMethod::ExactZeta)),
        3 => {
            let phi = phi_poly(k)?;
            let top = 3 * k as usize - 2;
            let d = phi.degree().expect("phi_k is nonzero");
            // for p > P: |phi(p)| <= sum |c_i| (P+1)^(i-d) * p^d
            let pb1 = (prime_bound + 1) as f64;
            let coeffs: Vec<f64> = phi.coeffs().iter().map(|c| num_traits::ToPrimitive::to_f64(c).expect("small")).collect();
            let c: f64 = coeffs.iter().enumerate().map(|(i, ci)| ci.abs() * pb1.powi(i as i32 - d as i32)).sum();
            let e = (top - d) as f64;
            // Horner in u = 1/p over the powers u^(top - i)
            let delta = |p: u64| {
                let u = TwoFloat::from(1.0) / p as f64;
                let mut acc = TwoFloat::from(0.0);
                for j in (0..=top).rev() {
                    let c = if top - j < coeffs.len() { coeffs[top - j] } else { 0.0 };
                    acc = acc * u + c;
                }
                acc
            };
            let prod = product_dd(prime_bound, e, c, 1e-29, delta)?;
            let zetas = zeta_approx(2 * k - 2).mul(zeta_approx(k)).recip();
            Ok(zetas.mul(prod).finish(Some(prime_bound), DensityMethod::EulerTruncation))
        }
        _ => Err(Error::bad(format!("den_matrix needs n in {{2, 3}}, got {n}"))),
    }
}
