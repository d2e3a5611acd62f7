use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffalg::{make_field, FieldCtx, FqMat, GlGroup};
use crate::genff::{generates, AlgebraShape, Block, GenTuple};
use crate::genz::closure::{closure_flat, closure_rows, generates_z, ZGenReport};
use crate::genz::hnf::Lattice;
use crate::genz::zmat::ZMat;

/// The `{0,1}`-pair with the given code: entries of `A` then `B`, row-major,
/// first entry in the most significant bit.
pub fn decode_zero_one_pair(n: usize, code: u64) -> (ZMat, ZMat) {
    let cells = n * n;
    let bit = |idx: usize| ((code >> (2 * cells - 1 - idx)) & 1) as i64;
    let a: Vec<i64> = (0..cells).map(bit).collect();
    let b: Vec<i64> = (cells..2 * cells).map(bit).collect();
    (ZMat::from_ints(n, &a).expect("n^2 entries"), ZMat::from_ints(n, &b).expect("n^2 entries"))
}

fn bits_to_f2(f2: &FieldCtx, n: usize, code: u64, start: usize) -> FqMat {
    let cells = n * n;
    let e = (0..cells).map(|i| f2.from_int(((code >> (2 * cells - 1 - start - i)) & 1) as i64)).collect();
    FqMat::new(n, e).expect("n^2 entries")
}

fn f2_pair(f2: &FieldCtx, n: usize, code: u64) -> (FqMat, FqMat) {
    (bits_to_f2(f2, n, code, 0), bits_to_f2(f2, n, code, n * n))
}

fn f2_code(a: &FqMat, b: &FqMat) -> u64 {
    a.entries().iter().chain(b.entries()).fold(0u64, |acc, e| (acc << 1) | e.code())
}

fn z_lattice_of_pair(n: usize, code: u64) -> Lattice {
    let cells = n * n;
    let gens: Vec<Vec<i128>> = (0..2)
        .map(|j| (0..cells).map(|i| ((code >> (2 * cells - 1 - j * cells - i)) & 1) as i128).collect())
        .collect();
    let lay = [(0usize, n)];
    match closure_rows(&lay, cells, &gens) {
        Some(rows) => Lattice::from_hnf_rows(cells, &rows),
        None => {
            let big: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
            closure_flat(&lay, cells, &big)
        }
    }
}

/// `{0,1}`-matrix pairs in `M_n`: how many generate mod 2, and which of
/// those fail to generate over `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroOneCensus {
    pub n: usize,
    pub gen_mod2: u64,
    pub fail_over_z: u64,
    /// `(code, index)` for every failure, in code order.
    pub failures: Vec<(u64, BigInt)>,
}

pub fn zero_one_census(n: usize, limits: &Limits) -> Result<ZeroOneCensus> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedSize(n));
    }
    let f2 = make_field(2, 1)?;
    let shape = AlgebraShape::matrix_algebra(&f2, n)?;
    let total = 1u64 << (2 * n * n);
    let results: Vec<(u64, Option<BigInt>)> = limits.install(|| {
        (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let (a, b) = f2_pair(&f2, n, code);
                if !generates(&shape, &GenTuple::of_matrices(vec![a, b])).expect("shape matches") {
                    return None;
                }
                let lattice = z_lattice_of_pair(n, code);
                let index = lattice.index();
                Some((code, (!index.is_one()).then(|| index.clone())))
            })
            .collect()
    });
    let failures: Vec<(u64, BigInt)> = results.iter().filter_map(|(c, i)| i.clone().map(|i| (*c, i))).collect();
    Ok(ZeroOneCensus { n, gen_mod2: results.len() as u64, fail_over_z: failures.len() as u64, failures })
}

/// A generating pair of `M_2(Z)^16`, one generating pair of `M_2(F_2)` per
/// conjugacy orbit, each orbit represented by its smallest code.
#[derive(Clone, Debug)]
pub struct M2Z16 {
    pub tuple: GenTuple<ZMat>,
    pub generating_pairs_mod2: usize,
    pub orbit_count: usize,
    pub report: ZGenReport,
}

pub fn construct_m2z16() -> Result<M2Z16> {
    let f2 = make_field(2, 1)?;
    let shape = AlgebraShape::matrix_algebra(&f2, 2)?;
    let generating: Vec<u64> = (0..1u64 << 8)
        .filter(|&code| {
            let (a, b) = f2_pair(&f2, 2, code);
            generates(&shape, &GenTuple::of_matrices(vec![a, b])).expect("shape matches")
        })
        .collect();
    let group = GlGroup::enumerate(&f2, 2, crate::ffalg::DEFAULT_CONJ_CAP)?;
    let inverse = |g: &FqMat| {
        let id = FqMat::identity(&f2, 2);
        group.elements().iter().find(|h| h.mul(&f2, g) == id).expect("group is closed under inverses").clone()
    };
    let conj: Vec<(FqMat, FqMat)> = group.elements().iter().map(|g| (g.clone(), inverse(g))).collect();
    let mut orbits: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &code in &generating {
        let (a, b) = f2_pair(&f2, 2, code);
        let rep = conj
            .iter()
            .map(|(g, gi)| f2_code(&g.mul(&f2, &a).mul(&f2, gi), &g.mul(&f2, &b).mul(&f2, gi)))
            .min()
            .expect("nonempty group");
        orbits.entry(rep).or_default().push(code);
    }
    let (xs, ys): (Vec<ZMat>, Vec<ZMat>) = orbits.keys().map(|&c| decode_zero_one_pair(2, c)).unzip();
    let m = xs.len();
    let tuple = GenTuple::new(vec![xs, ys]);
    let zshape = AlgebraShape::over_z(vec![Block::matrices(2, m)])?;
    let report = generates_z(&zshape, &tuple)?;
    if !report.generates {
        return Err(Error::CertificationFailed(format!("M_2(Z)^{m} pair has index {}", report.index)));
    }
    Ok(M2Z16 { tuple, generating_pairs_mod2: generating.len(), orbit_count: m, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_order() {
        let (a, b) = decode_zero_one_pair(2, 0b1000_0001);
        assert_eq!(a, ZMat::unit(2, 1, 1));
        assert_eq!(b, ZMat::unit(2, 2, 2));
        let f2 = make_field(2, 1).unwrap();
        let (fa, fb) = f2_pair(&f2, 3, 0x2_0001);
        assert_eq!(f2_code(&fa, &fb), 0x2_0001);
    }

    #[test]
    fn census_two_by_two() {
        let c = zero_one_census(2, &Limits::default()).unwrap();
        assert_eq!((c.gen_mod2, c.fail_over_z), (96, 0));
    }

    #[test]
    fn census_three_by_three() {
        let c = zero_one_census(3, &Limits::default()).unwrap();
        assert_eq!((c.gen_mod2, c.fail_over_z), (129024, 9132));
        let remark = 0b000_000_011_001_101_001u64;
        let hit = c.failures.iter().find(|(code, _)| *code == remark).unwrap();
        assert_eq!(hit.1, BigInt::from(9));
    }

    #[test]
    fn witness_for_sixteen_copies() {
        let w = construct_m2z16().unwrap();
        assert_eq!(w.generating_pairs_mod2, 96);
        assert_eq!(w.orbit_count, 16);
        assert_eq!(w.report.index, BigInt::one());
    }
}
