use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{is_probable_prime, to_biguint, trial_factor};
use crate::error::{Error, Result};
use crate::genff::{AlgebraShape, GenTuple};
use crate::genz::hnf::{hnf_rows, Lattice};
use crate::genz::int::Int;
use crate::genz::zmat::ZMat;

/// Trial-division bound used when factoring a lattice index.
pub const INDEX_TRIAL_BOUND: u64 = 1_000_000;

/// Outcome of a generation test over `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGenReport {
    pub generates: bool,
    /// `[A : Z<t>]`, or 0 when the generated subring has lower rank.
    pub index: BigInt,
    /// Primes dividing the index, ascending; exactly the primes modulo which
    /// the tuple fails to generate.
    pub bad_primes: Vec<BigUint>,
}

/// Offsets and sizes of the simple factors inside a flat coordinate vector.
pub(crate) fn layout(shape: &AlgebraShape) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for b in shape.blocks() {
        for _ in 0..b.m {
            out.push((off, b.n));
            off += b.n * b.n;
        }
    }
    out
}

fn flatten(shape: &AlgebraShape, t: &GenTuple<ZMat>) -> Result<Vec<Vec<BigInt>>> {
    if shape.is_field_side() {
        return Err(Error::ShapeMismatch("integer closure needs an integer-side shape".into()));
    }
    let lay = layout(shape);
    let mut out = Vec::with_capacity(t.k());
    for (j, el) in t.elements.iter().enumerate() {
        if el.len() != lay.len() {
            return Err(Error::ShapeMismatch(format!("element {j} has {} factors, shape has {}", el.len(), lay.len())));
        }
        let mut v = Vec::with_capacity(shape.rank());
        for (mat, &(_, n)) in el.iter().zip(&lay) {
            if mat.n() != n {
                return Err(Error::ShapeMismatch(format!("element {j}: expected {n}x{n} matrix, got {0}x{0}", mat.n())));
            }
            v.extend(mat.entries().iter().cloned());
        }
        out.push(v);
    }
    Ok(out)
}

fn product<T: Int>(lay: &[(usize, usize)], a: &[T], b: &[T]) -> Option<Vec<T>> {
    let mut out = vec![T::nil(); a.len()];
    for &(off, n) in lay {
        for i in 0..n {
            for k in 0..n {
                let x = &a[off + i * n + k];
                if x.is_nil() {
                    continue;
                }
                for j in 0..n {
                    let y = &b[off + k * n + j];
                    if !y.is_nil() {
                        let slot = &mut out[off + i * n + j];
                        *slot = slot.add(&x.mul(y)?)?;
                    }
                }
            }
        }
    }
    Some(out)
}

fn one_vector<T: Int>(lay: &[(usize, usize)], dim: usize) -> Vec<T> {
    let one = T::from_big(&BigInt::one()).expect("1 fits");
    let mut v = vec![T::nil(); dim];
    for &(off, n) in lay {
        for i in 0..n {
            v[off + i * n + i] = one.clone();
        }
    }
    v
}

/// Rounds of "adjoin basis * generator, re-HNF" from the unit lattice `Z 1`
/// until the canonical basis stops changing. Once the lattice has full rank
/// with index `d`, new products are reduced mod `d` first, which leaves the
/// span unchanged because `d Z^D` already lies inside it.
pub(crate) fn closure_rows<T: Int>(lay: &[(usize, usize)], dim: usize, gens: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let mut basis = hnf_rows(vec![one_vector(lay, dim)], dim)?;
    loop {
        let modulus = if basis.len() == dim {
            basis.iter().enumerate().try_fold(T::from_big(&BigInt::one())?, |acc, (i, r)| acc.mul(&r[i]))
        } else {
            None
        };
        let mut rows = basis.clone();
        for b in &basis {
            for g in gens {
                let mut p = product(lay, b, g)?;
                if let Some(d) = &modulus {
                    for x in p.iter_mut() {
                        *x = x.fmod(d);
                    }
                }
                rows.push(p);
            }
        }
        let next = hnf_rows(rows, dim)?;
        if next == basis {
            return Some(basis);
        }
        basis = next;
    }
}

pub(crate) fn closure_flat(lay: &[(usize, usize)], dim: usize, gens: &[Vec<BigInt>]) -> Lattice {
    let small: Option<Vec<Vec<i128>>> = gens.iter().map(|g| g.iter().map(<i128 as Int>::from_big).collect()).collect();
    if let Some(rows) = small.and_then(|s| closure_rows(lay, dim, &s)) {
        return Lattice::from_hnf_rows(dim, &rows);
    }
    let rows = closure_rows(lay, dim, gens).expect("BigInt never overflows");
    Lattice::from_hnf_rows(dim, &rows)
}

/// The subring of `A` generated by `t`, as a lattice in `Z^D`.
pub fn closure_lattice(shape: &AlgebraShape, t: &GenTuple<ZMat>) -> Result<Lattice> {
    let gens = flatten(shape, t)?;
    Ok(closure_flat(&layout(shape), shape.rank(), &gens))
}

/// Primes dividing `index`; errors when a cofactor above the trial bound is
/// neither 1 nor prime.
pub fn index_primes(index: &BigInt) -> Result<Vec<BigUint>> {
    if index.is_zero() {
        return Ok(Vec::new());
    }
    let (small, rest) = trial_factor(&to_biguint(index), INDEX_TRIAL_BOUND);
    let mut primes: Vec<BigUint> = small.into_iter().map(BigUint::from).collect();
    if !rest.is_one() {
        if is_probable_prime(&rest) {
            primes.push(rest);
        } else {
            return Err(Error::FactorizationIncomplete(BigInt::from(rest)));
        }
    }
    Ok(primes)
}

pub(crate) fn report_from(lattice: &Lattice) -> Result<ZGenReport> {
    let index = lattice.index().clone();
    Ok(ZGenReport { generates: index.is_one(), bad_primes: index_primes(&index)?, index })
}

/// Whether `t` generates `A` as a ring, with the index of what it does generate.
pub fn generates_z(shape: &AlgebraShape, t: &GenTuple<ZMat>) -> Result<ZGenReport> {
    report_from(&closure_lattice(shape, t)?)
}

/// For a pair in `M_2(Z)`: generation holds iff `det(AB - BA) = +-1`.
pub fn det_commutator_test(a: &ZMat, b: &ZMat) -> Result<bool> {
    if a.n() != 2 || b.n() != 2 {
        return Err(Error::UnsupportedSize(a.n().max(b.n())));
    }
    let d = a.mul(b).sub(&b.mul(a)).det();
    Ok(d.is_one() || (-d).is_one())
}

/// `(tr X, det X, tr Y, det Y, tr XY)` for 2x2 integer matrices.
pub fn conj_invariant(x: &ZMat, y: &ZMat) -> Result<[BigInt; 5]> {
    if x.n() != 2 || y.n() != 2 {
        return Err(Error::UnsupportedSize(x.n().max(y.n())));
    }
    Ok([x.trace(), x.det(), y.trace(), y.det(), x.mul(y).trace()])
}
