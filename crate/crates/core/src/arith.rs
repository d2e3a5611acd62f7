//! Small integer number theory shared by the other modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0u32);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary precision integers with fixed small-prime bases.
/// Exact below 3.3e24; a probable-prime verdict above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    let bases = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    'witness: for a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits `q = p^t` into `(p, t)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = None;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q % d == 0 {
            p = Some(d);
            break;
        }
        d += 1;
    }
    let p = p.unwrap_or(q);
    let (mut rest, mut t) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        t += 1;
    }
    (rest == 1).then_some((p, t))
}

/// Prime factors of `|n|` by trial division up to `trial_bound`; the second
/// component is the unfactored cofactor (1 when the factorization is complete).
pub fn trial_factor(n: &BigUint, trial_bound: u64) -> (Vec<u64>, BigUint) {
    let mut rest = n.clone();
    let mut primes = Vec::new();
    if rest.is_zero() {
        return (primes, rest);
    }
    let mut d = 2u64;
    while d <= trial_bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        if (&rest % &dd).is_zero() {
            primes.push(d);
            while (&rest % &dd).is_zero() {
                rest /= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        if let Some(r) = rest.to_u64() {
            if r <= trial_bound.saturating_mul(trial_bound) {
                // every remaining factor exceeds the trial bound, so this is prime
                primes.push(r);
                rest = BigUint::one();
            }
        }
    }
    (primes, rest)
}

/// Sieve of Eratosthenes, primes `<= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn big_pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Smallest integer `c` with `c * c >= n`.
pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

pub fn to_biguint(n: &BigInt) -> BigUint {
    match n.sign() {
        Sign::Minus => (-n).to_biguint().unwrap_or_default(),
        _ => n.to_biguint().unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn big_primality() {
        let m61 = (BigUint::one() << 61) - 1u32;
        let m89 = (BigUint::one() << 89) - 1u32;
        assert!(is_probable_prime(&m61));
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m61 * &m89)));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn trial_factoring() {
        let (ps, rest) = trial_factor(&BigUint::from(2u32 * 2 * 3 * 3 * 1_000_003), 1000);
        assert_eq!(ps, vec![2, 3]);
        assert_eq!(rest, BigUint::from(1_000_003u32));
        let (ps, rest) = trial_factor(&BigUint::from(2u32 * 2 * 3 * 3 * 1_009), 1000);
        assert_eq!(ps, vec![2, 3, 1_009]);
        assert!(rest.is_one());
        let big = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let (ps, rest) = trial_factor(&big, 1000);
        assert!(ps.is_empty());
        assert_eq!(rest, big);
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(100_000).len(), 9592);
    }
}
