//! Integer back ends for lattice work: `i128` with overflow detection, and
//! `BigInt` as the exact fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Int: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn nil() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division; `o != 0`.
    fn fdiv(&self, o: &Self) -> Option<Self>;
    /// Non-negative remainder for `o > 0`.
    fn fmod(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
}

impl Int for i128 {
    fn nil() -> Self {
        0
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        num_traits::ToPrimitive::to_i128(b)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        if *o == -1 {
            return self.checked_neg();
        }
        Some(Integer::div_floor(self, o))
    }
    fn fmod(&self, o: &Self) -> Self {
        Integer::mod_floor(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Int for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn fmod(&self, o: &Self) -> Self {
        Integer::mod_floor(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

/// `(g, x, y)` with `g = gcd(a, b) = a x + b y >= 0`.
pub(crate) fn ext_gcd<T: Int>(a: &T, b: &T) -> Option<(T, T, T)> {
    let one = T::from_big(&BigInt::one())?;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (one.clone(), T::nil());
    let (mut y0, mut y1) = (T::nil(), one);
    while !r1.is_nil() {
        let q = r0.fdiv(&r1)?;
        let r2 = r0.sub(&q.mul(&r1)?)?;
        let x2 = x0.sub(&q.mul(&x1)?)?;
        let y2 = y0.sub(&q.mul(&y1)?)?;
        r0 = std::mem::replace(&mut r1, r2);
        x0 = std::mem::replace(&mut x1, x2);
        y0 = std::mem::replace(&mut y1, y2);
    }
    if r0.is_neg() {
        Some((r0.neg()?, x0.neg()?, y0.neg()?))
    } else {
        Some((r0, x0, y0))
    }
}
