//! Numerical densities: zeta values and truncated Euler products, each with
//! a certified absolute error bound.

mod dd;
mod euler;
mod zeta;

use serde::Serialize;

pub use euler::{den_matrix, den_zn, euler_product, EulerProductSpec, MAX_PRIME_BOUND};
pub use zeta::{zeta_value, MIN_EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMethod {
    ExactZeta,
    EulerTruncation,
}

impl DensityMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DensityMethod::ExactZeta => "exact-zeta",
            DensityMethod::EulerTruncation => "euler-truncation",
        }
    }
}

/// A real number with a bound on its distance from the true value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityValue {
    pub value: f64,
    pub error_bound: f64,
    /// Largest prime kept in a truncated product.
    #[serde(rename = "P")]
    pub prime_bound: Option<u64>,
    pub method: DensityMethod,
}

impl DensityValue {
    /// Whether `x` lies within the certified interval.
    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.error_bound
    }
}
