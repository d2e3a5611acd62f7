//! Empirical densities in the box `[-N, N]`: Monte-Carlo estimates for
//! matrix tuples and exhaustive counts for polynomial systems.

mod mc;
mod multipoly;
mod poly_density;

pub use mc::{mc_density, mc_estimate, sample_tuple, BoxModel, DensityEstimate, SHARD_SIZE};
pub use multipoly::MultiPoly;
pub use poly_density::{exhaustive_poly_density, local_zero_count, ExactDensity};
