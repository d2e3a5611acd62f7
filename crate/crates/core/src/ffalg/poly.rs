//! Dense univariate polynomials over a prime field, coefficients low degree first.
//!
//! Only what field construction and the mod-p irreducibility probe need.

use crate::arith::{mul_mod, pow_mod};

pub type FpPoly = Vec<u64>;

pub fn trim(f: &mut FpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p);
    let mut r: FpPoly = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (j, &mj) in m[..=dm].iter().enumerate() {
            let t = mul_mod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

pub fn mul_mod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

/// `base^exp mod m`.
pub fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_poly(&acc, &b, m, p);
        }
        b = mul_mod_poly(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Degree-by-degree factor search: `f` (degree `d >= 1`, nonzero leading
/// coefficient) is irreducible iff `gcd(x^(p^i) - x, f) = 1` for `1 <= i <= d/2`.
/// Returns the smallest `i` with a nontrivial gcd, i.e. the degree of the
/// smallest irreducible factor when `f` is reducible.
pub fn smallest_factor_degree(f: &[u64], p: u64) -> Option<usize> {
    let d = degree(f).expect("zero polynomial");
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for i in 1..=d / 2 {
        h = pow_mod_poly(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g).is_some_and(|dg| dg > 0) {
            return Some(i);
        }
    }
    None
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    match degree(f) {
        None | Some(0) => false,
        Some(_) => smallest_factor_degree(f, p).is_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_rem() {
        // (x+1)(x+2) and (x+1)(x+3) over F_5
        let a = mul(&[1, 1], &[2, 1], 5);
        let b = mul(&[1, 1], &[3, 1], 5);
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
        assert!(rem(&a, &[1, 1], 5).is_empty());
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 7));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_2 is 3, over F_3 it is 18
        for (p, want) in [(2u64, 3usize), (3, 18)] {
            let mut count = 0;
            for code in 0..p.pow(4) {
                let mut f: FpPoly = (0..4).map(|i| (code / p.pow(i)) % p).collect();
                f.push(1);
                if is_irreducible(&f, p) {
                    count += 1;
                }
            }
            assert_eq!(count, want);
        }
    }
}
