use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::prime_power;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffalg::{make_field, FieldCtx, FqMat, GlGroup};
use crate::genff::closure::generates;
use crate::genff::shape::{AlgebraShape, Block, GenTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Brute,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountParams {
    pub k: u32,
    pub n: u32,
    pub q: u64,
    pub s: u32,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub method: CountMethod,
    pub value: BigInt,
    pub params: CountParams,
}

/// Decides generation of `M_n(F_{q^s})^m` over `F_q` coordinatewise: every
/// coordinate tuple must generate `M_n(F_{q^s})`, and no two coordinates may
/// be related by an `F_q`-automorphism (conjugation composed with a power of
/// `x -> x^q`).
pub struct PowerTester {
    single: AlgebraShape,
    group: GlGroup,
    galois_step: u32,
}

impl PowerTester {
    pub fn new(base: &FieldCtx, n: usize, s: u32, conj_cap: u64) -> Result<Self> {
        let single = AlgebraShape::over_field(base, vec![Block::new(n, s, 1)])?;
        let field = single.block_field(0).expect("field side").clone();
        let group = GlGroup::enumerate(&field, n, conj_cap)?;
        Ok(PowerTester { single, group, galois_step: base.s() })
    }

    pub fn field(&self) -> &FieldCtx {
        self.single.block_field(0).expect("field side")
    }

    pub fn coordinate_generates(&self, coord: &[FqMat]) -> Result<bool> {
        generates(&self.single, &GenTuple::of_matrices(coord.to_vec()))
    }

    pub fn generates(&self, coords: &[Vec<FqMat>]) -> Result<bool> {
        for c in coords {
            if !self.coordinate_generates(c)? {
                return Ok(false);
            }
        }
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                if self.group.conjugate(&coords[i], &coords[j], Some(self.galois_step))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Generation test for `(M_n(F_{q^s}))^m` given its `m` coordinate tuples
/// (each a `k`-tuple of matrices over `F_{q^s}`), with `ctx` the base `F_q`.
pub fn generates_power(ctx: &FieldCtx, n: usize, s: u32, m: usize, coordinate_tuples: &[Vec<FqMat>]) -> Result<bool> {
    generates_power_capped(ctx, n, s, m, coordinate_tuples, crate::ffalg::DEFAULT_CONJ_CAP)
}

pub fn generates_power_capped(
    ctx: &FieldCtx,
    n: usize,
    s: u32,
    m: usize,
    coordinate_tuples: &[Vec<FqMat>],
    conj_cap: u64,
) -> Result<bool> {
    if m < 1 || coordinate_tuples.len() != m {
        return Err(Error::bad(format!("expected m = {m} >= 1 coordinate tuples, got {}", coordinate_tuples.len())));
    }
    PowerTester::new(ctx, n, s, conj_cap)?.generates(coordinate_tuples)
}

pub(crate) fn base_field(q: u64) -> Result<FieldCtx> {
    let (p, t) = prime_power(q).ok_or_else(|| Error::bad(format!("q = {q} is not a prime power")))?;
    make_field(p, t)
}

/// Exhaustive count of generating `k`-tuples of `(M_n(F_{q^s}))^m` as an
/// `F_q`-algebra.
pub fn brute_count(k: u32, n: u32, q: u64, s: u32, m: u32, limits: &Limits) -> Result<CountReport> {
    if n < 1 || s < 1 || m < 1 {
        return Err(Error::bad("brute_count needs n, s, m >= 1"));
    }
    if n as usize > crate::ffalg::MAX_ENUM_N {
        return Err(Error::UnsupportedSize(n as usize));
    }
    let base = base_field(q)?;
    let cells = k as u64 * m as u64 * (n as u64) * (n as u64);
    let big_q = BigInt::from(q).pow(s);
    let total = big_q.pow(cells as u32);
    let total_u64 = total.to_u64().filter(|&t| t <= limits.enum_cap);
    let Some(total) = total_u64 else {
        return Err(Error::too_large("tuple enumeration", total, limits.enum_cap));
    };
    let n = n as usize;
    let (k, m) = (k as usize, m as usize);

    let count = if m == 1 {
        let shape = AlgebraShape::over_field(&base, vec![Block::new(n, s, 1)])?;
        let field = shape.block_field(0).expect("field side").clone();
        limits.install(|| {
            (0..total)
                .into_par_iter()
                .filter(|&code| {
                    let mats = decode(&field, n, k, code);
                    generates(&shape, &GenTuple::of_matrices(mats)).expect("tuple matches shape")
                })
                .count()
        })
    } else {
        let tester = PowerTester::new(&base, n, s, limits.conj_cap)?;
        let field = tester.field().clone();
        limits.install(|| {
            (0..total)
                .into_par_iter()
                .filter(|&code| {
                    // element-major layout: element j holds m matrices
                    let mats = decode(&field, n, k * m, code);
                    let coords: Vec<Vec<FqMat>> =
                        (0..m).map(|c| (0..k).map(|j| mats[j * m + c].clone()).collect()).collect();
                    tester.generates(&coords).expect("tuple matches shape")
                })
                .count()
        })
    };
    Ok(CountReport {
        method: CountMethod::Brute,
        value: BigInt::from(count),
        params: CountParams { k: k as u32, n: n as u32, q, s, m: m as u32 },
    })
}

/// The `code`-th tuple of `count` matrices in mixed radix, first matrix most
/// significant, entries in canonical element order.
fn decode(field: &FieldCtx, n: usize, count: usize, mut code: u64) -> Vec<FqMat> {
    let q = field.q();
    let cells = n * n;
    let mut entries = vec![field.zero(); cells * count];
    for e in entries.iter_mut().rev() {
        *e = field.from_code(code % q).expect("digit below q");
        code /= q;
    }
    entries.chunks(cells).map(|c| FqMat::new(n, c.to_vec()).expect("n^2 entries")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_brute_counts() {
        let lim = Limits::default();
        assert_eq!(brute_count(2, 2, 2, 1, 1, &lim).unwrap().value, BigInt::from(96));
        assert_eq!(brute_count(1, 2, 2, 1, 1, &lim).unwrap().value, BigInt::from(0));
        // M_1(F_q) needs nothing: every tuple generates under the unital convention
        assert_eq!(brute_count(2, 1, 3, 1, 1, &lim).unwrap().value, BigInt::from(9));
        // F_4 over F_2: a single element generates iff it is not in F_2
        assert_eq!(brute_count(1, 1, 2, 2, 1, &lim).unwrap().value, BigInt::from(2));
    }

    #[test]
    fn power_counts_match_full_closure() {
        // M_1(F_4)^2 over F_2: the coordinatewise test must agree with the
        // closure on the product shape
        let lim = Limits::default();
        let f2 = make_field(2, 1).unwrap();
        let shape = AlgebraShape::over_field(&f2, vec![Block::new(1, 2, 2)]).unwrap();
        let f4 = shape.block_field(0).unwrap().clone();
        for k in 1..=2u32 {
            let via_power = brute_count(k, 1, 2, 2, 2, &lim).unwrap().value;
            let mut direct = 0;
            for code in 0..16u64.pow(k) {
                let els: Vec<Vec<FqMat>> = (0..k)
                    .map(|j| {
                        let digit = (code >> (4 * j)) & 15;
                        let a = f4.from_code(digit & 3).unwrap();
                        let b = f4.from_code(digit >> 2).unwrap();
                        vec![FqMat::scalar(&f4, 1, a), FqMat::scalar(&f4, 1, b)]
                    })
                    .collect();
                if generates(&shape, &GenTuple::new(els)).unwrap() {
                    direct += 1;
                }
            }
            assert_eq!(via_power, BigInt::from(direct), "k = {k}");
        }
        assert_eq!(brute_count(1, 1, 2, 2, 2, &lim).unwrap().value, BigInt::from(0));
    }

    #[test]
    fn power_test_examples() {
        let f2 = make_field(2, 1).unwrap();
        let e12 = FqMat::unit(&f2, 2, 1, 2);
        let e21 = FqMat::unit(&f2, 2, 2, 1);
        let coord = vec![e12.clone(), e21.clone()];
        assert!(generates_power(&f2, 2, 1, 1, &[coord.clone()]).unwrap());
        assert!(!generates_power(&f2, 2, 1, 2, &[coord.clone(), coord.clone()]).unwrap());
        let g = FqMat::from_ints(&f2, 2, &[1, 1, 0, 1]).unwrap(); // its own inverse
        let conj: Vec<FqMat> = coord.iter().map(|x| g.mul(&f2, x).mul(&f2, &g)).collect();
        assert_ne!(conj, coord);
        assert!(!generates_power(&f2, 2, 1, 2, &[coord.clone(), conj]).unwrap());
        let other = vec![FqMat::from_ints(&f2, 2, &[1, 1, 0, 0]).unwrap(), e21];
        assert!(generates_power(&f2, 2, 1, 2, &[coord, other]).unwrap());
    }

    #[test]
    fn enumeration_cap() {
        let lim = Limits { enum_cap: 100, ..Limits::default() };
        assert!(matches!(brute_count(2, 2, 2, 1, 1, &lim), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn thread_count_does_not_change_counts() {
        let a = brute_count(2, 2, 2, 1, 1, &Limits::default().with_threads(1)).unwrap();
        let b = brute_count(2, 2, 2, 1, 1, &Limits::default().with_threads(4)).unwrap();
        assert_eq!(a, b);
    }
}
