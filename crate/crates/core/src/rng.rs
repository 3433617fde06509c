//! Seeded random streams.
//!
//! Every random quantity is drawn from a ChaCha8 stream keyed by the caller's seed.
//! The 64-bit stream id is `(kind << 48) | lane`, where `kind` names the consumer
//! (Gaussian sketch, SRHT signs, sampler, ...) and `lane` is usually a row index.
//! Rows of a random matrix therefore do not depend on how many other rows are drawn
//! or in which order.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Consumer tags used to split streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamKind {
    Gaussian = 1,
    Sign = 2,
    SrhtSigns = 3,
    SrhtRows = 4,
    Sampling = 5,
    Lloyd = 6,
    Synthetic = 7,
}

/// Generator for `(seed, kind, lane)`.
pub fn stream(seed: u64, kind: StreamKind, lane: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((kind as u64) << 48) | (lane & 0xFFFF_FFFF_FFFF));
    rng
}

/// Seed for trial `counter` of a repeated experiment (splitmix64 finalizer).
pub fn derive_seed(base: u64, counter: u64) -> u64 {
    let mut z = base.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard normal variates by the Box–Muller transform.
pub struct Normals<R: Rng> {
    rng: R,
    spare: Option<f64>,
}

impl<R: Rng> Normals<R> {
    pub fn new(rng: R) -> Self {
        Normals { rng, spare: None }
    }

    pub fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2 = self.rng.gen::<f64>();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

/// Draw `count` i.i.d. indices from the (unnormalized) weights.
pub fn sample_indices(weights: &[f64], count: usize, rng: &mut impl Rng) -> Result<Vec<usize>> {
    let dist = WeightedIndex::new(weights)
        .map_err(|e| Error::arg(format!("invalid sampling distribution: {e}")))?;
    Ok((0..count).map(|_| dist.sample(rng)).collect())
}
