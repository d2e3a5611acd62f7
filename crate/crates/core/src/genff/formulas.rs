use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{big_pow, ceil_sqrt, is_prime_u64, prime_power};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffalg::group_orders;
use crate::genff::count::brute_count;

fn check_q(q: u64) -> Result<()> {
    match prime_power(q) {
        Some(_) => Ok(()),
        None => Err(Error::bad(format!("q = {q} is not a prime power"))),
    }
}

fn pw(q: u64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    big_pow(q, e as u64)
}

/// Number of generating `m`-tuples of `M_n(F_q)`, `n` in `{2, 3}`.
pub fn g_closed_form(m: u32, n: u32, q: u64) -> Result<BigInt> {
    if m < 1 {
        return Err(Error::bad("m must be >= 1"));
    }
    check_q(q)?;
    let m = m as i64;
    let one = BigInt::one();
    match n {
        2 => Ok(pw(q, 2 * m + 1) * (pw(q, m - 1) - &one) * (pw(q, m) - &one)),
        3 => {
            let last = pw(q, 3 * m - 2) + pw(q, 2 * m - 2) - pw(q, m) - 2 * pw(q, m - 1) - pw(q, (m - 2).max(0))
                + BigInt::from(q)
                + 1;
            // m = 1 makes the q^(m-1) - 1 factor vanish, so the m - 2 exponent never matters
            Ok(pw(q, 3 * m + 4) * (pw(q, m - 1) - &one) * (pw(q, m - 1) + &one) * (pw(q, m) - &one) * last)
        }
        _ => Err(Error::UnsupportedSize(n as usize)),
    }
}

/// The direct orbit-count expressions for `n = 2, 3`, independent of `g_closed_form`.
fn orbit_form(m: u32, n: u32, q: u64) -> Result<BigInt> {
    let m = m as i64;
    let qb = BigInt::from(q);
    let (num, den): (BigInt, BigInt) = match n {
        2 => (pw(q, 2 * m - 1) * (pw(q, m) - 1) * (pw(q, m) - &qb), &qb * &qb - 1),
        3 => {
            let tail = pw(q, 3 * m) - pw(q, m + 2) + pw(q, 2 * m) - 2 * pw(q, m + 1) - pw(q, m) + pw(q, 3) + pw(q, 2);
            let num: BigInt = pw(q, 3 * m - 3) * (pw(q, m) - 1) * (pw(q, m) - &qb) * (pw(q, m) + &qb) * tail;
            let den = BigInt::pow(&(&qb - 1), 2) * (&qb + 1) * (&qb * &qb + &qb + 1);
            (num, den)
        }
        _ => return Err(Error::UnsupportedSize(n as usize)),
    };
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::CertificationFailed(format!("orbit form for (m, n, q) = ({m}, {n}, {q}) is not integral")));
    }
    Ok(quot)
}

/// The `q = 2` specializations with the denominators `3` and `21`.
fn orbit_form_q2(m: u32, n: u32) -> Result<BigInt> {
    let m = m as i64;
    let two = |e: i64| pw(2, e);
    let (num, den): (BigInt, u32) = match n {
        2 => (two(2 * m - 1) * (two(m) - 2) * (two(m) - 1), 3),
        3 => (
            (two(m) - 2) * (two(m) - 1) * (two(m) + 2) * (two(3 * m) + two(2 * m) - two(m + 3) - two(m) + 12) * two(3 * m - 3),
            21,
        ),
        _ => return Err(Error::UnsupportedSize(n as usize)),
    };
    let (quot, rem) = num.div_rem(&BigInt::from(den));
    if !rem.is_zero() {
        return Err(Error::CertificationFailed(format!("q = 2 orbit form for (m, n) = ({m}, {n}) is not integral")));
    }
    Ok(quot)
}

/// `g_{m,n}(q) / |PGL_n(F_q)|`: the largest number of copies of `M_n(F_q)`
/// whose product is generated by `m` elements.
pub fn gen_count(m: u32, n: u32, q: u64) -> Result<BigInt> {
    let g = g_closed_form(m, n, q)?;
    let (_, pgl) = group_orders(n, q)?;
    let (quot, rem) = g.div_rem(&pgl);
    if !rem.is_zero() {
        return Err(Error::CertificationFailed(format!("|PGL_{n}(F_{q})| does not divide g_({m},{n})({q})")));
    }
    if orbit_form(m, n, q)? != quot {
        return Err(Error::CertificationFailed(format!("orbit form disagrees with g/|PGL| at (m, n, q) = ({m}, {n}, {q})")));
    }
    if q == 2 && orbit_form_q2(m, n)? != quot {
        return Err(Error::CertificationFailed(format!("q = 2 orbit form disagrees at (m, n) = ({m}, {n})")));
    }
    Ok(quot)
}

/// `|Gen_k(M_n(F_{q^s})^m, F_q)|` as the falling factorial
/// `prod_{i<m} (g - i * s * |PGL_n(F_{q^s})|)`.
pub fn count_gen_power_formula(k: u32, n: u32, q: u64, s: u32, m: u32, limits: &Limits) -> Result<BigInt> {
    if n < 1 || s < 1 || m < 1 {
        return Err(Error::bad("count_gen_power_formula needs n, s, m >= 1"));
    }
    check_q(q)?;
    let g = if s == 1 && (n == 2 || n == 3) && k >= 1 {
        g_closed_form(k, n, q)?
    } else {
        match brute_count(k, n, q, s, 1, limits) {
            Ok(r) => r.value,
            Err(Error::TooLarge { .. }) => return Err(Error::UnsupportedSize(n as usize)),
            Err(e) => return Err(e),
        }
    };
    let qs = q.checked_pow(s).ok_or_else(|| Error::bad(format!("q^s = {q}^{s} overflows")))?;
    let (_, pgl) = group_orders(n, qs)?;
    let t = pgl * BigInt::from(s);
    // factors decrease, so the last one decides whether any vanishes
    if !(&g - &t * BigInt::from(m - 1)).is_positive() {
        return Ok(BigInt::zero());
    }
    let mut acc = BigInt::one();
    for i in 0..m {
        acc *= &g - &t * BigInt::from(i);
    }
    Ok(acc)
}

/// Number of `m`-tuples spanning `F_q^n`: `prod_{i<n} (q^m - q^i)`.
pub fn alpha(m: u32, n: u32, q: u64) -> BigInt {
    let qm = big_pow(q, m as u64);
    (0..n).fold(BigInt::one(), |acc, i| {
        let f = &qm - big_pow(q, i as u64);
        if f.is_positive() {
            acc * f
        } else {
            BigInt::zero()
        }
    })
}

/// `q^(m n^2) - ceil(2^((n+6)/2)) q^(n^2 m - (m-1)(n-1))`, a lower bound for
/// `g_{m,n}(q)`. `None` for `n < 2`, where the bound is not meant to apply.
pub fn lower_bound(m: u32, n: u32, q: u64) -> Option<BigInt> {
    if n < 2 || m < 1 {
        return None;
    }
    let (m, n) = (m as u64, n as u64);
    let c = BigInt::from(ceil_sqrt(&(BigUint::one() << (n + 6))));
    Some(big_pow(q, m * n * n) - c * big_pow(q, n * n * m - (m - 1) * (n - 1)))
}

/// Number of subalgebras of `M_n(F_q)` isomorphic to `M_{n/s}(F_{q^s})`:
/// `s^-1 prod_{s !| i, 1 <= i < n} (q^n - q^i)`.
pub fn count_field_type_subalgebras(n: u32, s: u32, q: u64) -> Result<BigInt> {
    if !is_prime_u64(s as u64) || n == 0 || n % s != 0 {
        return Err(Error::bad(format!("s = {s} must be a prime divisor of n = {n}")));
    }
    check_q(q)?;
    let qn = big_pow(q, n as u64);
    let prod = (1..n).filter(|i| i % s != 0).fold(BigInt::one(), |acc, i| acc * (&qn - big_pow(q, i as u64)));
    let (quot, rem) = prod.div_rem(&BigInt::from(s));
    if !rem.is_zero() {
        return Err(Error::CertificationFailed(format!("s = {s} does not divide the product for (n, q) = ({n}, {q})")));
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{make_field, FqMat};
    use crate::genff::{subalgebra_dimension, AlgebraShape, GenTuple};

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(g_closed_form(2, 2, 2).unwrap(), b(96));
        assert_eq!(g_closed_form(2, 3, 2).unwrap(), b(129024));
        assert_eq!(g_closed_form(2, 2, 3).unwrap(), b(3888));
        assert_eq!(g_closed_form(3, 2, 2).unwrap(), b(2688));
        assert_eq!(g_closed_form(1, 2, 5).unwrap(), b(0));
        assert_eq!(g_closed_form(1, 3, 5).unwrap(), b(0));
        assert!(matches!(g_closed_form(2, 4, 2), Err(Error::UnsupportedSize(4))));
        assert!(g_closed_form(2, 2, 6).is_err());
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(gen_count(2, 2, 2).unwrap(), b(16));
        assert_eq!(gen_count(2, 3, 2).unwrap(), b(768));
        assert_eq!(gen_count(3, 2, 2).unwrap(), b(448));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 1..8 {
                for n in [2, 3] {
                    gen_count(m, n, q).unwrap();
                }
            }
        }
    }

    #[test]
    fn falling_factorial() {
        let lim = Limits::default();
        assert_eq!(count_gen_power_formula(2, 2, 2, 1, 2, &lim).unwrap(), b(8640));
        assert_eq!(count_gen_power_formula(2, 2, 2, 1, 17, &lim).unwrap(), b(0));
        assert!(count_gen_power_formula(2, 2, 2, 1, 16, &lim).unwrap() > b(0));
        assert_eq!(count_gen_power_formula(3, 3, 2, 1, 1, &lim).unwrap(), g_closed_form(3, 3, 2).unwrap());
        // brute-backed g: M_1(F_4) over F_2, one generator; 2 generators, t = 2
        assert_eq!(count_gen_power_formula(1, 1, 2, 2, 1, &lim).unwrap(), b(2));
        assert_eq!(count_gen_power_formula(1, 1, 2, 2, 2, &lim).unwrap(), b(0));
    }

    #[test]
    fn falling_factorial_matches_brute_on_extension() {
        let lim = Limits::default();
        for k in 1..=2 {
            let brute = brute_count(k, 1, 2, 2, 2, &lim).unwrap().value;
            assert_eq!(count_gen_power_formula(k, 1, 2, 2, 2, &lim).unwrap(), brute);
        }
    }

    #[test]
    fn alpha_matches_spanning_count() {
        for (m, n, q) in [(2u32, 2u32, 2u64), (3, 2, 2), (2, 2, 3), (1, 1, 5), (3, 3, 2), (2, 3, 2)] {
            let f = make_field(q, 1).unwrap();
            let total = q.pow(m * n);
            let mut count = 0u64;
            for code in 0..total {
                let mut rest = code;
                let vs: Vec<Vec<_>> = (0..m)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let d = rest % q;
                                rest /= q;
                                f.from_code(d).unwrap()
                            })
                            .collect()
                    })
                    .collect();
                if crate::ffalg::span_dimension(&f, n as usize, &vs).unwrap() == n as usize {
                    count += 1;
                }
            }
            assert_eq!(alpha(m, n, q), BigInt::from(count), "(m, n, q) = ({m}, {n}, {q})");
        }
        assert_eq!(alpha(5, 0, 7), b(1));
        assert_eq!(alpha(1, 2, 3), b(0));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(2, 2, 2).unwrap(), b(256 - 16 * 128));
        let lb = lower_bound(2, 2, 101).unwrap();
        assert!(lb > b(0) && lb <= g_closed_form(2, 2, 101).unwrap());
        assert_eq!(lower_bound(1, 1, 3), None);
        // n = 3: ceil(2^4.5) = 23
        assert_eq!(lower_bound(1, 3, 2).unwrap(), b(512 - 23 * 512));
    }

    fn field_type_oracle(n: usize, q: u64) -> BigInt {
        // every copy of F_{q^n} holds q^n - q elements generating it, each with
        // a one-generator subalgebra of dimension n that is a field
        let f = make_field(q, 1).unwrap();
        let shape = AlgebraShape::matrix_algebra(&f, n).unwrap();
        let cells = (n * n) as u32;
        let mut hits = 0u64;
        for code in 0..q.pow(cells) {
            let mut rest = code;
            let e = (0..cells)
                .map(|_| {
                    let d = rest % q;
                    rest /= q;
                    f.from_code(d).unwrap()
                })
                .collect();
            let a = FqMat::new(n, e).unwrap();
            if subalgebra_dimension(&shape, &GenTuple::of_matrices(vec![a.clone()])).unwrap() != n {
                continue;
            }
            let mut powers = vec![FqMat::identity(&f, n)];
            for i in 1..n {
                powers.push(powers[i - 1].mul(&f, &a));
            }
            let is_field = (1..q.pow(n as u32)).all(|c| {
                let mut rest = c;
                let mut x = FqMat::zero(n);
                for p in &powers {
                    x = x.add(&f, &p.scale(&f, f.from_code(rest % q).unwrap()));
                    rest /= q;
                }
                x.is_invertible(&f)
            });
            if is_field {
                hits += 1;
            }
        }
        BigInt::from(hits) / (big_pow(q, n as u64) - q)
    }

    #[test]
    fn field_type_counts() {
        assert_eq!(count_field_type_subalgebras(2, 2, 2).unwrap(), b(1));
        assert_eq!(count_field_type_subalgebras(2, 2, 3).unwrap(), b(3));
        assert_eq!(count_field_type_subalgebras(3, 3, 2).unwrap(), b(8));
        assert!(count_field_type_subalgebras(4, 3, 2).is_err());
        assert!(count_field_type_subalgebras(4, 4, 2).is_err());
        for (n, q) in [(2usize, 2u64), (2, 3), (2, 5), (3, 2)] {
            assert_eq!(count_field_type_subalgebras(n as u32, n as u32, q).unwrap(), field_type_oracle(n, q), "n={n} q={q}");
        }
    }
}
