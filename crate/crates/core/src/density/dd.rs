//! Double-double helpers. The crate's own reciprocal drops the low word, so
//! everything here goes through multiplication and division by `f64` only.

use twofloat::TwoFloat;

/// `1 / x` by one Newton step from the double reciprocal.
pub(crate) fn recip(x: TwoFloat) -> TwoFloat {
    let r0 = 1.0 / x.hi();
    let e = TwoFloat::from(1.0) - x * TwoFloat::from(r0);
    TwoFloat::from(r0) + e * r0
}

/// `x^(-e)` for a positive double `x`.
pub(crate) fn inv_pow(x: f64, e: u32) -> TwoFloat {
    (0..e).fold(TwoFloat::from(1.0), |acc, _| acc / x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_keeps_low_word() {
        for v in [3.0, 7.0, 1e7, 0.1, 343.0] {
            let x = TwoFloat::from(v) + TwoFloat::from(1e-20);
            assert!((recip(x) * x - 1.0).hi().abs() < 1e-30, "{v}");
        }
        let t = inv_pow(3.0, 5) * 243.0 - 1.0;
        assert!(t.hi().abs() < 1e-30);
    }
}
