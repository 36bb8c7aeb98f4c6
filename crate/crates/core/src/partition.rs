//! Bipartitions of a qubit register.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest register whose bipartitions are enumerated.
pub const MAX_PARTITION_QUBITS: usize = 30;

/// A split of qubits `1..=n` into two nonempty blocks. Blocks are kept in
/// ascending label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    num_qubits: usize,
    block_a: Vec<usize>,
    block_b: Vec<usize>,
}

impl Bipartition {
    /// Builds the split with `block_a` on one side and its complement on the
    /// other.
    pub fn new(num_qubits: usize, block_a: &[usize]) -> Result<Self> {
        if !(2..=MAX_PARTITION_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidPartition(format!(
                "cannot split a {num_qubits}-qubit register"
            )));
        }
        let mut a = block_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != block_a.len() {
            return Err(Error::InvalidPartition("repeated qubit label".to_string()));
        }
        if let Some(&q) = a.iter().find(|&&q| q == 0 || q > num_qubits) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                qubits: num_qubits,
            });
        }
        if a.is_empty() || a.len() == num_qubits {
            return Err(Error::InvalidPartition(
                "both blocks must be nonempty".to_string(),
            ));
        }
        let b = (1..=num_qubits).filter(|q| !a.contains(q)).collect();
        Ok(Self {
            num_qubits,
            block_a: a,
            block_b: b,
        })
    }

    /// From a bit mask where bit `q - 1` marks qubit `q` as belonging to
    /// block A.
    pub fn from_mask(num_qubits: usize, mask: u32) -> Result<Self> {
        let a: Vec<usize> = (1..=num_qubits)
            .filter(|q| mask >> (q - 1) & 1 == 1)
            .collect();
        Self::new(num_qubits, &a)
    }

    /// Every bipartition of `n` qubits once, with qubit 1 in block A:
    /// `2^(n-1) - 1` of them.
    pub fn all(num_qubits: usize) -> Result<Vec<Self>> {
        if !(2..=MAX_PARTITION_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidPartition(format!(
                "cannot split a {num_qubits}-qubit register"
            )));
        }
        let rest = num_qubits - 1;
        (0..(1u32 << rest) - 1)
            .map(|subset| Self::from_mask(num_qubits, 1 | (subset << 1)))
            .collect()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn block_a(&self) -> &[usize] {
        &self.block_a
    }

    pub fn block_b(&self) -> &[usize] {
        &self.block_b
    }

    /// Same split with the blocks exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            block_a: self.block_b.clone(),
            block_b: self.block_a.clone(),
        }
    }

    /// Orientation with qubit 1 in block A.
    pub fn canonical(&self) -> Self {
        if self.block_a.first() == Some(&1) {
            self.clone()
        } else {
            self.swapped()
        }
    }

    /// True when both describe the same split regardless of orientation.
    pub fn same_split(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |block: &[usize]| {
            block
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}}|{{{}}}", show(&self.block_a), show(&self.block_b))
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
