use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::ffalg::poly::{is_irreducible, trim};
use crate::polys::intpoly::IntPoly;

fn xpow_plus(d: usize, c: i64) -> IntPoly {
    &IntPoly::monomial(1, d) + &IntPoly::constant(c)
}

/// `phi_k(x) = x^(2k-2) - x^k - 2x^(k-1) - x^(k-2) + x + 1`, `k >= 2`.
pub fn phi_poly(k: u32) -> Result<IntPoly> {
    if k < 2 {
        return Err(Error::bad(format!("phi_k needs k >= 2, got {k}")));
    }
    let k = k as usize;
    let terms = [(1, 2 * k - 2), (-1, k), (-2, k - 1), (-1, k - 2), (1, 1), (1, 0)];
    Ok(terms.iter().fold(IntPoly::zero(), |acc, &(c, d)| &acc + &IntPoly::monomial(c, d)))
}

fn divide(num: &IntPoly, den: &IntPoly, what: &str, k: u32) -> Result<IntPoly> {
    num.div_exact(den).ok_or_else(|| Error::DivisionInexact(format!("{what} at k = {k}")))
}

/// Threshold polynomial for `M_3`: `f_k(q)` generating `k`-tuples up to conjugacy.
pub fn f_poly(k: u32) -> Result<IntPoly> {
    if k < 1 {
        return Err(Error::bad("f_k needs k >= 1"));
    }
    if k == 1 {
        return Ok(IntPoly::zero());
    }
    let ku = k as usize;
    let num = [
        IntPoly::monomial(1, 3 * ku + 1),
        xpow_plus(ku - 1, -1),
        xpow_plus(ku - 1, 1),
        xpow_plus(ku, -1),
        &IntPoly::monomial(1, 3 * ku - 2) + &phi_poly(k)?,
    ]
    .iter()
    .fold(IntPoly::constant(1), |acc, f| &acc * f);
    let den = IntPoly::from_i64(&[1, 1, 1]) * IntPoly::from_i64(&[-1, 1]).pow(2) * IntPoly::from_i64(&[1, 1]);
    divide(&num, &den, "f_k", k)
}

/// Threshold polynomial for `M_2`.
pub fn h_poly(k: u32) -> Result<IntPoly> {
    if k < 1 {
        return Err(Error::bad("h_k needs k >= 1"));
    }
    if k == 1 {
        return Ok(IntPoly::zero());
    }
    let ku = k as usize;
    let num = IntPoly::monomial(1, 2 * ku) * xpow_plus(ku - 1, -1) * xpow_plus(ku, -1);
    let den = IntPoly::from_i64(&[-1, 0, 1]);
    divide(&num, &den, "h_k", k)
}

/// `(x^(3k-2) + phi_k) / d_k` with `d_k` chosen by `k mod 6`.
pub fn psi_poly(k: u32) -> Result<IntPoly> {
    if k < 2 {
        return Err(Error::bad(format!("psi_k needs k >= 2, got {k}")));
    }
    let num = &IntPoly::monomial(1, 3 * k as usize - 2) + &phi_poly(k)?;
    let den = match k % 6 {
        0 | 4 => IntPoly::from_i64(&[-1, 1]),
        1 | 3 => IntPoly::from_i64(&[-1, 0, 1]),
        2 => IntPoly::from_i64(&[-1, 0, 0, 1]),
        _ => IntPoly::from_i64(&[1, 1]) * IntPoly::from_i64(&[-1, 0, 0, 1]),
    };
    num.div_exact(&den).ok_or(Error::NotDivisible { k })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// The leading coefficient vanishes mod `p`, or the reduction is constant.
    Degenerate,
}

/// Reduction mod `p` followed by a distinct-degree test. `Irreducible` here
/// implies irreducibility over `Q` for primitive polynomials; `Reducible` says
/// nothing over `Q`.
pub fn is_irreducible_mod_p(poly: &IntPoly, p: u64) -> Result<Irreducibility> {
    if !is_prime_u64(p) {
        return Err(Error::NonPrime(p));
    }
    let pb = BigInt::from(p);
    let mut f: Vec<u64> =
        poly.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue below p")).collect();
    if f.last().is_none_or(|&c| c == 0) {
        return Ok(Irreducibility::Degenerate);
    }
    trim(&mut f);
    if f.len() < 2 {
        return Ok(Irreducibility::Degenerate);
    }
    Ok(if is_irreducible(&f, p) { Irreducibility::Irreducible } else { Irreducibility::Reducible })
}

/// Minimal number of generators of `M_n(Z)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGenReport {
    pub n: u32,
    pub m: u64,
    pub r: u32,
    /// Largest `m` generated by `r - 1` elements (0 when `r = 2`).
    pub lower: BigInt,
    /// Largest `m` generated by `r` elements.
    pub upper: BigInt,
}

/// Largest power of `M_n(Z)` generated by `k` elements: the threshold
/// polynomial at 2, where the two-generator case for `n = 2` is 16.
pub fn generator_threshold(n: u32, k: u32) -> Result<BigInt> {
    match (n, k) {
        (2 | 3, 0 | 1) => Ok(BigInt::zero()),
        (2, 2) => Ok(BigInt::from(16)),
        (2, _) => Ok(h_poly(k)?.eval_i64(2)),
        (3, _) => Ok(f_poly(k)?.eval_i64(2)),
        _ => Err(Error::bad(format!("thresholds are only known for n in {{2, 3}}, got {n}"))),
    }
}

pub fn min_generators(n: u32, m: u64) -> Result<MinGenReport> {
    if n != 2 && n != 3 {
        return Err(Error::bad(format!("min_generators needs n in {{2, 3}}, got {n}")));
    }
    if m < 1 {
        return Err(Error::bad("min_generators needs m >= 1"));
    }
    let mb = BigInt::from(m);
    let mut r = 2;
    let mut lower = BigInt::zero();
    loop {
        let upper = generator_threshold(n, r)?;
        if mb <= upper {
            return Ok(MinGenReport { n, m, r, lower, upper });
        }
        lower = upper;
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genff::gen_count;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn family_values() {
        assert_eq!(f_poly(2).unwrap().eval_i64(2), b(768));
        assert!(f_poly(1).unwrap().is_zero());
        assert_eq!(h_poly(2).unwrap().eval_i64(2), b(16));
        assert_eq!(h_poly(3).unwrap().eval_i64(2), b(448));
        assert!(h_poly(1).unwrap().is_zero());
        assert_eq!(f_poly(2).unwrap().eval_i64(3), gen_count(2, 3, 3).unwrap());
    }

    #[test]
    fn phi_and_psi() {
        assert_eq!(phi_poly(2).unwrap(), IntPoly::from_i64(&[0, -1]));
        assert_eq!(phi_poly(3).unwrap(), IntPoly::from_i64(&[1, 0, -2, -1, 1]));
        for k in 3..20 {
            assert_eq!(phi_poly(k).unwrap().degree(), Some(2 * k as usize - 2));
        }
        assert!(phi_poly(1).is_err());
        assert_eq!(psi_poly(2).unwrap(), IntPoly::x());
    }

    #[test]
    fn psi_twelve_display() {
        let mut expect = vec![-1i64];
        expect.extend([-2; 9]);
        expect.extend([-1, 1]);
        expect.extend([2; 10]);
        expect.extend([1; 12]);
        assert_eq!(expect.len(), 34);
        assert_eq!(psi_poly(12).unwrap(), IntPoly::from_i64(&expect));
    }

    #[test]
    fn thresholds() {
        let r = |n, m| min_generators(n, m).unwrap().r;
        assert_eq!((r(3, 768), r(3, 769)), (2, 3));
        assert_eq!((r(2, 16), r(2, 17)), (2, 3));
        assert_eq!((r(2, 448), r(2, 449)), (3, 4));
        assert_eq!(r(2, 1), 2);
        let rep = min_generators(3, 769).unwrap();
        assert_eq!((rep.lower, rep.upper), (b(768), f_poly(3).unwrap().eval_i64(2)));
        assert!(min_generators(4, 3).is_err());
        assert!(min_generators(2, 0).is_err());
    }

    #[test]
    fn irreducibility_probe() {
        let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(is_irreducible_mod_p(&x2p1, 2).unwrap(), Irreducibility::Reducible);
        assert_eq!(is_irreducible_mod_p(&x2p1, 3).unwrap(), Irreducibility::Irreducible);
        assert_eq!(is_irreducible_mod_p(&phi_poly(3).unwrap(), 2).unwrap(), Irreducibility::Irreducible);
        assert_eq!(is_irreducible_mod_p(&IntPoly::from_i64(&[1, 1, 2]), 2).unwrap(), Irreducibility::Degenerate);
        assert!(is_irreducible_mod_p(&x2p1, 4).is_err());
    }
}
