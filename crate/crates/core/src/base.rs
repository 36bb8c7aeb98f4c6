//! Exact product tests for two, three and four qubits.
//!
//! A state on n <= 4 qubits factorizes across a cut iff the coefficient
//! vectors obtained by fixing the bits of one block are proportional. Two
//! qubits have one cut, three qubits have three (`1|23`, `2|13`, `3|12`) and
//! four qubits have seven: the four single-qubit cuts followed by
//! `12|34`, `13|24` and `14|23`.
//!
//! Each family is generated from its grouping block: the vectors are indexed
//! by the bits of the grouping qubits and each vector lists the remaining
//! amplitudes in ascending index order.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Bipartition;
use crate::proportional::{family_proportional, pair_proportional, Tolerance, VectorFamily};
use crate::state::StateVector;

/// Which exact test produced a base verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BaseRule {
    /// Two qubits: `c0 c3 = c1 c2`.
    TwoQubit,
    /// Three qubits: three pairs of 4-vectors.
    ThreeQubit,
    /// Four qubits: seven families.
    FourQubit,
}

impl BaseRule {
    pub fn for_qubits(n: usize) -> Option<Self> {
        match n {
            2 => Some(BaseRule::TwoQubit),
            3 => Some(BaseRule::ThreeQubit),
            4 => Some(BaseRule::FourQubit),
            _ => None,
        }
    }
}

/// A cut across which the state was found to factorize, with the family
/// that tested proportional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationWitness {
    pub partition: Bipartition,
    /// 1-based position of the family in the fixed cut order for this size.
    pub family_index: usize,
    pub family: VectorFamily,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseVerdict {
    pub genuinely_entangled: bool,
    pub witness: Option<FactorizationWitness>,
}

/// Outcome of the three-qubit shortcut built from the three projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sufficient3q {
    /// Whether losing qubit 1, 2, 3 leaves an entangled two-qubit state.
    pub per_projection_entangled: [bool; 3],
    /// At least two projections entangled, which guarantees genuine
    /// entanglement.
    pub certified: bool,
}

/// Grouping blocks in the fixed cut order for `n` qubits.
pub fn grouping_blocks(n: usize) -> &'static [&'static [usize]] {
    match n {
        2 => &[&[1]],
        3 => &[&[1], &[2], &[3]],
        4 => &[&[1], &[2], &[3], &[4], &[1, 2], &[1, 3], &[2, 3]],
        _ => &[],
    }
}

/// Basis indices of each vector in the family for `grouping`. Vector `r`
/// holds the indices whose grouping bits spell `r` (first grouping qubit
/// most significant).
pub fn family_indices(n: usize, grouping: &[usize]) -> Vec<Vec<usize>> {
    let mut vectors = vec![Vec::with_capacity(1 << (n - grouping.len())); 1 << grouping.len()];
    for index in 0..1usize << n {
        let r = grouping
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | (index >> (n - q) & 1));
        vectors[r].push(index);
    }
    vectors
}

fn family_for(s: &StateVector, grouping: &[usize]) -> VectorFamily {
    let amps = s.amplitudes();
    let vectors = family_indices(s.num_qubits(), grouping)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| amps[i]).collect())
        .collect();
    VectorFamily::new(vectors).expect("generated families have equal lengths")
}

fn check_qubits(s: &StateVector, expected: usize) -> Result<()> {
    if s.num_qubits() != expected {
        return Err(Error::SizeMismatch {
            left: s.num_qubits(),
            right: expected,
        });
    }
    Ok(())
}

/// Exact verdict for 2, 3 or 4 qubits. Reports the first factorizing cut in
/// the fixed order. The zero state is not genuinely entangled and carries no
/// witness.
pub fn detect_base(s: &StateVector, tol: Tolerance) -> Result<BaseVerdict> {
    let n = s.num_qubits();
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidPartition(format!(
            "exact base tests cover 2 to 4 qubits, got {n}"
        )));
    }
    if s.max_modulus() == 0.0 {
        return Ok(BaseVerdict {
            genuinely_entangled: false,
            witness: None,
        });
    }
    for (i, grouping) in grouping_blocks(n).iter().enumerate() {
        let family = family_for(s, grouping);
        if family_proportional(&family, tol) {
            return Ok(BaseVerdict {
                genuinely_entangled: false,
                witness: Some(FactorizationWitness {
                    partition: Bipartition::new(n, grouping)?.canonical(),
                    family_index: i + 1,
                    family,
                }),
            });
        }
    }
    Ok(BaseVerdict {
        genuinely_entangled: true,
        witness: None,
    })
}

/// Every factorizing cut in the fixed order, not just the first.
pub fn all_witnesses(s: &StateVector, tol: Tolerance) -> Result<Vec<FactorizationWitness>> {
    let n = s.num_qubits();
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidPartition(format!(
            "exact base tests cover 2 to 4 qubits, got {n}"
        )));
    }
    let mut found = Vec::new();
    for (i, grouping) in grouping_blocks(n).iter().enumerate() {
        let family = family_for(s, grouping);
        if family_proportional(&family, tol) {
            found.push(FactorizationWitness {
                partition: Bipartition::new(n, grouping)?.canonical(),
                family_index: i + 1,
                family,
            });
        }
    }
    Ok(found)
}

pub fn detect_2q(s: &StateVector, tol: Tolerance) -> Result<BaseVerdict> {
    check_qubits(s, 2)?;
    detect_base(s, tol)
}

pub fn detect_3q(s: &StateVector, tol: Tolerance) -> Result<BaseVerdict> {
    check_qubits(s, 3)?;
    detect_base(s, tol)
}

pub fn detect_4q(s: &StateVector, tol: Tolerance) -> Result<BaseVerdict> {
    check_qubits(s, 4)?;
    detect_base(s, tol)
}

/// Three-qubit sufficient condition: evaluates the two-qubit product test on
/// the coefficient sums of each projection, e.g. losing qubit 1 compares
/// `(c0+c4)(c3+c7)` with `(c1+c5)(c2+c6)`.
pub fn sufficient_3q(s: &StateVector, tol: Tolerance) -> Result<Sufficient3q> {
    check_qubits(s, 3)?;
    let c = s.amplitudes();
    let sums = |pairs: [(usize, usize); 4]| -> [Complex64; 4] { pairs.map(|(i, j)| c[i] + c[j]) };
    let projections = [
        sums([(0, 4), (1, 5), (2, 6), (3, 7)]),
        sums([(0, 2), (1, 3), (4, 6), (5, 7)]),
        sums([(0, 1), (2, 3), (4, 5), (6, 7)]),
    ];
    let mut per_projection_entangled = [false; 3];
    for (flag, p) in per_projection_entangled.iter_mut().zip(&projections) {
        *flag = !pair_proportional(&p[..2], &p[2..], tol)?;
    }
    let holds = per_projection_entangled.iter().filter(|&&b| b).count();
    Ok(Sufficient3q {
        per_projection_entangled,
        certified: holds >= 2,
    })
}
