//! Batch operations over many matrices or chains.
//!
//! With the default `parallel` feature these fan out across a rayon pool;
//! results always come back in input order, and generation stays
//! deterministic because item `i` draws from its own stream seeded with
//! `seed + i`. The `_seq` variants are always available and are what the
//! parallel versions fall back to when the feature is disabled; benchmarks
//! compare the two directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::factor::{self, FactorChain, FactorError, VerifyReport};
use crate::generate::{item_stream, sample_chain, GenConfig};
use crate::linalg::MatQ;

/// One chain per item, item `i` from the stream seeded with `seed + i`.
pub fn sample(cfg: &GenConfig, count: usize) -> Vec<FactorChain> {
    #[cfg(feature = "parallel")]
    {
        (0..count as u64)
            .into_par_iter()
            .map(|i| sample_chain(cfg, &mut item_stream(cfg.seed(), i)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_seq(cfg, count)
    }
}

pub fn sample_seq(cfg: &GenConfig, count: usize) -> Vec<FactorChain> {
    (0..count as u64)
        .map(|i| sample_chain(cfg, &mut item_stream(cfg.seed(), i)))
        .collect()
}

/// One rotation per item: the composition of the sampled chains.
pub fn generate(cfg: &GenConfig, count: usize) -> Vec<MatQ> {
    #[cfg(feature = "parallel")]
    {
        (0..count as u64)
            .into_par_iter()
            .map(|i| factor::compose(&sample_chain(cfg, &mut item_stream(cfg.seed(), i))))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        generate_seq(cfg, count)
    }
}

pub fn generate_seq(cfg: &GenConfig, count: usize) -> Vec<MatQ> {
    (0..count as u64)
        .map(|i| factor::compose(&sample_chain(cfg, &mut item_stream(cfg.seed(), i))))
        .collect()
}

/// Composes every chain, results keyed to inputs by position.
pub fn compose(chains: &[FactorChain]) -> Vec<MatQ> {
    #[cfg(feature = "parallel")]
    {
        chains.par_iter().map(factor::compose).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        compose_seq(chains)
    }
}

pub fn compose_seq(chains: &[FactorChain]) -> Vec<MatQ> {
    chains.iter().map(factor::compose).collect()
}

/// Decomposes every matrix, results keyed to inputs by position.
pub fn decompose(matrices: &[MatQ]) -> Vec<Result<FactorChain, FactorError>> {
    #[cfg(feature = "parallel")]
    {
        matrices.par_iter().map(factor::decompose).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        decompose_seq(matrices)
    }
}

pub fn decompose_seq(matrices: &[MatQ]) -> Vec<Result<FactorChain, FactorError>> {
    matrices.iter().map(factor::decompose).collect()
}

/// Verification reports for every (square) matrix, in input order.
pub fn verify(matrices: &[MatQ]) -> Vec<VerifyReport> {
    #[cfg(feature = "parallel")]
    {
        matrices.par_iter().map(factor::verify_report).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_seq(matrices)
    }
}

pub fn verify_seq(matrices: &[MatQ]) -> Vec<VerifyReport> {
    matrices.iter().map(factor::verify_report).collect()
}
