//! The losing-one-qubit operator `|psi> -> <0|_k psi> + <1|_k psi>`.
//!
//! With `l = 2^(n-k)` the projected amplitude at `m * l + i` is
//! `a[2ml + i] + a[(2m+1)l + i]` for `m < 2^(k-1)` and `i < l`. The result is
//! an (n-1)-qubit pure state; it is never renormalized.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{max_modulus, StateVector};

/// A projection is flagged zero when every output amplitude is below this
/// fraction of the largest input amplitude.
pub const ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionResult {
    pub state: StateVector,
    /// 1-based label of the qubit that was lost.
    pub lost_qubit: usize,
    pub is_zero: bool,
}

/// Projects out qubit `k` (1-based, qubit 1 most significant).
pub fn lose_qubit(s: &StateVector, k: usize) -> Result<ProjectionResult> {
    let n = s.num_qubits();
    if n < 2 {
        return Err(Error::TooFewQubits {
            required: 2,
            qubits: n,
        });
    }
    if k == 0 || k > n {
        return Err(Error::QubitOutOfRange {
            qubit: k,
            qubits: n,
        });
    }
    let amps = project_amplitudes(s.amplitudes(), n, k);
    let is_zero = is_negligible(&amps, s.max_modulus());
    Ok(ProjectionResult {
        state: StateVector::from_parts_unchecked(n - 1, amps),
        lost_qubit: k,
        is_zero,
    })
}

/// All `n` single-qubit projections, element `k - 1` losing qubit `k`.
pub fn all_projections(s: &StateVector) -> Result<Vec<ProjectionResult>> {
    (1..=s.num_qubits()).map(|k| lose_qubit(s, k)).collect()
}

/// Loses every qubit in `ks` (original 1-based labels). At least two qubits
/// must remain. The order of `ks` does not matter.
pub fn lose_qubit_set(s: &StateVector, ks: &[usize]) -> Result<StateVector> {
    let n = s.num_qubits();
    if ks.is_empty() {
        return Err(Error::InvalidPartition(
            "set of qubits to lose is empty".to_string(),
        ));
    }
    let mut sorted = ks.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit { qubit: w[0] });
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::QubitOutOfRange {
            qubit: bad,
            qubits: n,
        });
    }
    if sorted.len() + 2 > n {
        return Err(Error::TooFewQubits {
            required: sorted.len() + 2,
            qubits: n,
        });
    }
    let mut amps = s.amplitudes().to_vec();
    let mut width = n;
    // After losing `removed` lower-numbered qubits, original label k sits at
    // position k - removed.
    for (removed, &k) in sorted.iter().enumerate() {
        amps = project_amplitudes(&amps, width, k - removed);
        width -= 1;
    }
    Ok(StateVector::from_parts_unchecked(width, amps))
}

pub(crate) fn project_amplitudes(a: &[Complex64], n: usize, k: usize) -> Vec<Complex64> {
    debug_assert!(k >= 1 && k <= n && a.len() == 1 << n);
    let block = 1usize << (n - k);
    let mut out = Vec::with_capacity(a.len() / 2);
    for pair in a.chunks_exact(2 * block) {
        let (low, high) = pair.split_at(block);
        out.extend(low.iter().zip(high).map(|(&x, &y)| x + y));
    }
    out
}

pub(crate) fn is_negligible(out: &[Complex64], input_scale: f64) -> bool {
    input_scale == 0.0 || max_modulus(out) < ZERO_THRESHOLD * input_scale
}
