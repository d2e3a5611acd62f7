use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::genff::{AlgebraShape, GenTuple};
use crate::genz::{generates_z, ZMat};

/// Samples per shard. Shard `i` draws from ChaCha8 stream `i` of the seed, so
/// the sample sequence does not depend on the worker count.
pub const SHARD_SIZE: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxModel {
    #[serde(rename = "N")]
    pub half_width: u64,
    pub seed: u64,
    pub samples: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub hits: u64,
    pub trials: u64,
    /// `hits / trials`.
    pub estimate: f64,
    pub ci95_halfwidth: f64,
}

impl DensityEstimate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        let p = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
        let ci = if trials == 0 { 0.0 } else { 1.96 * (p * (1.0 - p) / trials as f64).sqrt() };
        DensityEstimate { hits, trials, estimate: p, ci95_halfwidth: ci }
    }
}

fn draw_tuple(rng: &mut ChaCha8Rng, shape: &AlgebraShape, k: usize, half: i64) -> GenTuple<ZMat> {
    let elements = (0..k)
        .map(|_| {
            shape
                .blocks()
                .iter()
                .flat_map(|b| std::iter::repeat_n(b.n, b.m))
                .map(|n| {
                    let entries = (0..n * n).map(|_| BigInt::from(rng.random_range(-half..=half))).collect();
                    ZMat::new(n, entries).expect("n^2 entries")
                })
                .collect()
        })
        .collect();
    GenTuple::new(elements)
}

fn check_box(shape: &AlgebraShape, b: &BoxModel) -> Result<i64> {
    if shape.is_field_side() {
        return Err(Error::ShapeMismatch("sampling needs an integer-side shape".into()));
    }
    i64::try_from(b.half_width).map_err(|_| Error::bad(format!("N = {} is too large", b.half_width)))
}

/// The first tuple of the sample stream for `box_model`.
pub fn sample_tuple(shape: &AlgebraShape, k: usize, box_model: &BoxModel) -> Result<GenTuple<ZMat>> {
    let half = check_box(shape, box_model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(box_model.seed);
    rng.set_stream(0);
    Ok(draw_tuple(&mut rng, shape, k, half))
}

/// Fraction of sampled tuples accepted by `pred`.
pub fn mc_estimate<F>(shape: &AlgebraShape, k: usize, box_model: &BoxModel, limits: &Limits, pred: F) -> Result<DensityEstimate>
where
    F: Fn(&GenTuple<ZMat>) -> Result<bool> + Sync,
{
    let half = check_box(shape, box_model)?;
    let total = box_model.samples;
    let shards = total.div_ceil(SHARD_SIZE);
    let hits: Result<u64> = limits.install(|| {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(box_model.seed);
                rng.set_stream(s);
                let len = SHARD_SIZE.min(total - s * SHARD_SIZE);
                let mut hits = 0u64;
                for _ in 0..len {
                    if pred(&draw_tuple(&mut rng, shape, k, half))? {
                        hits += 1;
                    }
                }
                Ok(hits)
            })
            .sum()
    });
    Ok(DensityEstimate::from_counts(hits?, total))
}

/// Monte-Carlo estimate of the density of generating `k`-tuples over `Z`.
pub fn mc_density(shape: &AlgebraShape, k: usize, box_model: &BoxModel, limits: &Limits) -> Result<DensityEstimate> {
    mc_estimate(shape, k, box_model, limits, |t| Ok(generates_z(shape, t)?.generates))
}
