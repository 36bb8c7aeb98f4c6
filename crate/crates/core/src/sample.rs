//! Random states for self-tests and sweeps.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::partition::Bipartition;
use crate::state::StateVector;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Dense state with i.i.d. complex Gaussian amplitudes.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<StateVector> {
    let amps = (0..1usize << n).map(|_| gaussian(rng)).collect();
    StateVector::new(n, amps)
}

/// Places `factors[i]` on the qubits `blocks[i]` (ascending labels, first
/// label most significant within the factor). The blocks must partition
/// `1..=n`.
pub fn embed_factors(
    n: usize,
    blocks: &[Vec<usize>],
    factors: &[StateVector],
) -> Result<StateVector> {
    if blocks.len() != factors.len() {
        return Err(Error::InvalidPartition(
            "one factor per block is required".to_string(),
        ));
    }
    let mut owner = vec![None; n + 1];
    for (b, (block, factor)) in blocks.iter().zip(factors).enumerate() {
        if block.is_empty()
            || factor.num_qubits() != block.len()
            || block.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidPartition(format!(
                "block {b} does not match its factor"
            )));
        }
        for &q in block {
            if q == 0 || q > n || owner[q].replace(b).is_some() {
                return Err(Error::InvalidPartition(format!("qubit {q} misassigned")));
            }
        }
    }
    if owner[1..].iter().any(Option::is_none) {
        return Err(Error::InvalidPartition(
            "blocks do not cover every qubit".to_string(),
        ));
    }
    let amps = (0..1usize << n)
        .map(|index| {
            blocks
                .iter()
                .zip(factors)
                .map(|(block, factor)| {
                    let local = block
                        .iter()
                        .fold(0usize, |acc, &q| (acc << 1) | (index >> (n - q) & 1));
                    factor.amplitudes()[local]
                })
                .product()
        })
        .collect();
    StateVector::new(n, amps)
}

/// Uniformly random bipartition of `n >= 2` qubits.
pub fn random_bipartition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Bipartition> {
    let rest = rng.random_range(0..(1u32 << (n - 1)) - 1);
    Bipartition::from_mask(n, 1 | (rest << 1))
}

/// Product across a uniformly random bipartition with Gaussian factors.
pub fn random_product_state<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<(StateVector, Bipartition)> {
    let p = random_bipartition(rng, n)?;
    let a = random_state(rng, p.block_a().len())?;
    let b = random_state(rng, p.block_b().len())?;
    let s = embed_factors(n, &[p.block_a().to_vec(), p.block_b().to_vec()], &[a, b])?;
    Ok((s, p))
}
