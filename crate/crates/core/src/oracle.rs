//! Brute-force ground truth.
//!
//! A pure state is genuinely entangled iff no bipartition unfolding has rank
//! at most one. Ranks come from singular values, which keeps this path
//! independent of the minor-based proportionality test used by the
//! detectors. Also provides the partial trace and the two-qubit PPT test.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::partition::Bipartition;
use crate::proportional::Tolerance;
use crate::state::StateVector;

/// The bipartition scan is exponential; refuse registers larger than this.
pub const MAX_ORACLE_QUBITS: usize = 12;

const HERMITIAN_TOL: f64 = 1e-10;

/// Amplitudes rearranged into a `2^|A| x 2^|B|` matrix. Row bits follow
/// block A and column bits block B, each in ascending qubit order with the
/// lowest label most significant.
pub fn unfold(s: &StateVector, p: &Bipartition) -> Result<DMatrix<Complex64>> {
    let n = s.num_qubits();
    if p.num_qubits() != n {
        return Err(Error::InvalidPartition(format!(
            "partition of {} qubits applied to a {n}-qubit state",
            p.num_qubits()
        )));
    }
    let rows = 1usize << p.block_a().len();
    let cols = 1usize << p.block_b().len();
    let mut m = DMatrix::zeros(rows, cols);
    let bit = |index: usize, q: usize| (index >> (n - q)) & 1;
    for (index, &a) in s.amplitudes().iter().enumerate() {
        let r = p
            .block_a()
            .iter()
            .fold(0, |acc, &q| (acc << 1) | bit(index, q));
        let c = p
            .block_b()
            .iter()
            .fold(0, |acc, &q| (acc << 1) | bit(index, q));
        m[(r, c)] = a;
    }
    Ok(m)
}

/// Numerical rank: singular values above `tol.rel * sigma_max`.
pub fn numerical_rank(m: &DMatrix<Complex64>, tol: Tolerance) -> usize {
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol.rel * top).count()
}

fn check_oracle_input(s: &StateVector) -> Result<()> {
    let n = s.num_qubits();
    if n < 2 {
        return Err(Error::TooFewQubits {
            required: 2,
            qubits: n,
        });
    }
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: MAX_ORACLE_QUBITS,
        });
    }
    if s.max_modulus() == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(())
}

/// All bipartitions (qubit 1 in block A) whose unfolding has rank <= 1.
pub fn product_cuts(s: &StateVector, tol: Tolerance) -> Result<Vec<Bipartition>> {
    check_oracle_input(s)?;
    let mut cuts = Vec::new();
    for p in Bipartition::all(s.num_qubits())? {
        if numerical_rank(&unfold(s, &p)?, tol) <= 1 {
            cuts.push(p);
        }
    }
    Ok(cuts)
}

/// First bipartition in enumeration order across which the state is a
/// product, if any.
pub fn find_product_cut(s: &StateVector, tol: Tolerance) -> Result<Option<Bipartition>> {
    check_oracle_input(s)?;
    for p in Bipartition::all(s.num_qubits())? {
        if numerical_rank(&unfold(s, &p)?, tol) <= 1 {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Genuinely entangled iff every bipartition unfolding has rank >= 2.
pub fn oracle_genuine(s: &StateVector, tol: Tolerance) -> Result<bool> {
    Ok(find_product_cut(s, tol)?.is_none())
}

/// Hermitian, positive-trace matrix on `2^k` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || !r.is_power_of_two() {
            return Err(Error::WrongDimension {
                expected: r.next_power_of_two(),
                got: r.max(c),
            });
        }
        let scale = entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let deviation = (&entries - entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(deviation));
        }
        let trace = entries.trace();
        if trace.re.is_nan() || trace.re <= 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Reduced state on `keep`: `rho = M M^dagger` with `M` the unfolding of the
/// normalized state along `keep | rest`.
pub fn partial_trace(s: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let p = Bipartition::new(s.num_qubits(), keep)?;
    let m = unfold(&s.normalize()?, &p)?;
    DensityMatrix::new(&m * m.adjoint())
}

/// Partial transpose on the second qubit of a two-qubit density matrix.
pub fn partial_transpose_second(rho: &DensityMatrix) -> Result<DMatrix<Complex64>> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let e = rho.entries();
    Ok(DMatrix::from_fn(4, 4, |row, col| {
        let (a, b) = (row >> 1, row & 1);
        let (c, d) = (col >> 1, col & 1);
        e[(a << 1 | d, c << 1 | b)]
    }))
}

/// PPT test for two qubits, exact for 2x2 systems. Returns true for
/// separable: the partial transpose of the trace-normalized matrix has no
/// eigenvalue below `-tol.rel`.
pub fn ppt_2qubit(rho: &DensityMatrix, tol: Tolerance) -> Result<bool> {
    let pt = partial_transpose_second(rho)? / Complex64::new(rho.trace(), 0.0);
    let min = pt
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(min >= -tol.rel)
}
