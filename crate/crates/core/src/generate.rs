//! Seeded random generation of parameters, chains, and hence rotations.
//!
//! Determinism contract: the generator is ChaCha8 (`rand_chacha`), seeded
//! with `SeedableRng::seed_from_u64(seed)`. All bounded draws come from
//! `next_u64` with rejection sampling (accept `v < 2^64 - (2^64 mod m)`,
//! return `v % m`), so the byte stream and every derived value are identical
//! across platforms and releases. Draw order:
//!
//! 1. Levels are sampled first to last (lengths `n-1, n-2, ..., 1`).
//! 2. Per level, when `inf_weight = p/q` is nonzero, one draw in `[0, q)`
//!    decides infinity (`< p`); with `inf_weight = 0` no draw is consumed.
//! 3. A finite level draws each slot in order: numerator in `[0, 2B]`
//!    (shifted to `[-B, B]`), then denominator in `[0, B)` (shifted to
//!    `[1, B]`). With `B = 0` the slot is zero and no draws are consumed.
//!
//! Batch item `i` uses the stream seeded with `seed + i` (wrapping), so
//! parallel generation is deterministic and order-independent.
//!
//! No uniformity over the group is claimed; the distribution is simply the
//! pushforward of this sampling scheme through composition.

use num_traits::{Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::factor::{compose, FactorChain};
use crate::linalg::MatQ;
use crate::rational::{BigInt, Rational};
use crate::sphere::{ExtParam, StereoCoords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("infinity weight must satisfy 0 <= w < 1, got {0}")]
    InfWeightOutOfRange(Rational),
    #[error("infinity weight denominator must fit in 64 bits")]
    InfWeightTooFine,
    #[error("bound must be at most {0}", (u64::MAX - 1) / 2)]
    BoundTooLarge,
}

/// Sampling configuration: dimension, magnitude bound for numerators and
/// denominators, probability of an infinity level, and the stream seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    dim: usize,
    bound: u64,
    inf_weight: Rational,
    seed: u64,
}

impl GenConfig {
    /// Validates and builds a configuration. `bound = 0` is the degenerate
    /// smoke case: every sampled rational is zero and the chain composes to
    /// the identity.
    pub fn new(
        dim: usize,
        bound: u64,
        inf_weight: Rational,
        seed: u64,
    ) -> Result<Self, GenError> {
        if dim < 2 {
            return Err(GenError::DimensionTooSmall(dim));
        }
        if bound > (u64::MAX - 1) / 2 {
            return Err(GenError::BoundTooLarge);
        }
        if inf_weight.is_negative() || inf_weight >= Rational::from_integer(1.into()) {
            return Err(GenError::InfWeightOutOfRange(inf_weight));
        }
        if inf_weight.denom().to_u64().is_none() {
            return Err(GenError::InfWeightTooFine);
        }
        Ok(Self {
            dim,
            bound,
            inf_weight,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn inf_weight(&self) -> &Rational {
        &self.inf_weight
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// The deterministic stream for a seed.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The stream for item `index` of a batch: seed plus index, wrapping.
pub fn item_stream(seed: u64, index: u64) -> ChaCha8Rng {
    stream(seed.wrapping_add(index))
}

/// Uniform draw in `[0, m)` by rejection sampling on `next_u64`.
fn uniform_below(rng: &mut ChaCha8Rng, m: u64) -> u64 {
    debug_assert!(m > 0);
    // 2^64 mod m; draws at or above 2^64 - r would bias the remainder.
    let r = ((u64::MAX % m) + 1) % m;
    loop {
        let v = rng.next_u64();
        if r == 0 || v <= u64::MAX - r {
            return v % m;
        }
    }
}

/// One rational with |numerator| and denominator bounded by the config:
/// numerator uniform in `[-B, B]`, then denominator uniform in `[1, B]`,
/// canonicalized.
pub fn sample_rational(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Rational {
    if cfg.bound == 0 {
        return Rational::zero();
    }
    let numer = uniform_below(rng, 2 * cfg.bound + 1) as i128 - cfg.bound as i128;
    let denom = 1 + uniform_below(rng, cfg.bound);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// One full parameter chain for the configured dimension.
pub fn sample_chain(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> FactorChain {
    let mut levels = Vec::with_capacity(cfg.dim - 1);
    for len in (1..cfg.dim).rev() {
        levels.push(sample_level(cfg, len, rng));
    }
    FactorChain::new(cfg.dim, levels).expect("sampled chain has the required shape")
}

fn sample_level(cfg: &GenConfig, len: usize, rng: &mut ChaCha8Rng) -> ExtParam {
    if !cfg.inf_weight.is_zero() {
        let p = cfg.inf_weight.numer().to_u64().expect("validated");
        let q = cfg.inf_weight.denom().to_u64().expect("validated");
        if uniform_below(rng, q) < p {
            return ExtParam::infinity(len).expect("len >= 1");
        }
    }
    let coords = (0..len).map(|_| sample_rational(cfg, rng)).collect();
    ExtParam::finite(StereoCoords::new(coords).expect("len >= 1"))
}

/// One random rotation: the composition of a sampled chain. Always passes
/// the exact membership test.
pub fn random_rotation(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> MatQ {
    compose(&sample_chain(cfg, rng))
}
