use crate::error::{Error, Result};
use crate::ffalg::{FieldCtx, FqMat};
use crate::genff::closure::generates;
use crate::genff::count::base_field;
use crate::genff::shape::{AlgebraShape, Block, GenTuple};

/// An explicit generating pair of `M_n(F_{q^s})` over `F_q`.
#[derive(Clone, Debug)]
pub struct TwoGenerators {
    /// The field `F_{q^s}` the entries live in.
    pub field: FieldCtx,
    pub a: FqMat,
    pub b: FqMat,
}

/// `A = u E_11` with `u` a multiplicative generator of `F_{q^s}`, and the
/// cyclic shift `B = E_1n + sum_i E_{i+1,i}`. Verified by closure before
/// returning.
pub fn two_generators_ext(n: usize, q: u64, s: u32) -> Result<TwoGenerators> {
    if n < 1 || s < 1 {
        return Err(Error::bad("two_generators_ext needs n, s >= 1"));
    }
    let base = base_field(q)?;
    let shape = AlgebraShape::over_field(&base, vec![Block::new(n, s, 1)])?;
    let field = shape.block_field(0).expect("field side").clone();
    let u = field.multiplicative_generator();
    let mut a = FqMat::zero(n);
    a.set(0, 0, u);
    let mut b = FqMat::zero(n);
    b.set(0, n - 1, field.one());
    for i in 1..n {
        b.set(i, i - 1, field.one());
    }
    let tuple = GenTuple::of_matrices(vec![a.clone(), b.clone()]);
    if !generates(&shape, &tuple)? {
        return Err(Error::CertificationFailed(format!("two-generator pair fails for (n, q, s) = ({n}, {q}, {s})")));
    }
    Ok(TwoGenerators { field, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = two_generators_ext(2, 2, 1).unwrap();
        assert_eq!(g.a, FqMat::unit(&g.field, 2, 1, 1));
        assert_eq!(g.b, FqMat::from_ints(&g.field, 2, &[0, 1, 1, 0]).unwrap());
        two_generators_ext(3, 2, 1).unwrap();
        let g = two_generators_ext(2, 2, 2).unwrap();
        assert_eq!(g.field.q(), 4);
    }

    #[test]
    fn many_parameters() {
        for (n, q, s) in [(1, 2, 1), (1, 2, 3), (1, 9, 2), (4, 2, 1), (3, 3, 2), (2, 4, 2), (5, 2, 1), (2, 5, 3)] {
            two_generators_ext(n, q, s).unwrap();
        }
    }
}
