//! Named example states.
//!
//! GHZ, W, Dicke, Phi4 and the cluster state come back normalized. The two
//! integer-coefficient states (`EXAMPLE3_4Q`, `WCLASS_3Q`) are returned with
//! their literal unit coefficients so that their projections read exactly as
//! the textbook traces do.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{StateVector, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CatalogKey {
    Ghz,
    W,
    /// Uniform superposition of all weight-`k` basis states.
    Dicke(usize),
    /// `|0001> + |0010> + |1100> + |1111>`.
    Phi4,
    /// `|0000> + |0111> - |1111>`.
    Example3,
    /// `|001> + |010> + |100> + |111>`.
    WClass3,
    /// Linear cluster state `(|0000> + |0011> + |1100> - |1111>) / 2`.
    Cluster4,
}

impl CatalogKey {
    /// Register size forced by the key, if any.
    pub fn fixed_qubits(self) -> Option<usize> {
        match self {
            CatalogKey::Phi4 | CatalogKey::Example3 | CatalogKey::Cluster4 => Some(4),
            CatalogKey::WClass3 => Some(3),
            CatalogKey::Ghz | CatalogKey::W | CatalogKey::Dicke(_) => None,
        }
    }

    pub fn all_fixed() -> [CatalogKey; 4] {
        [
            CatalogKey::Phi4,
            CatalogKey::Example3,
            CatalogKey::WClass3,
            CatalogKey::Cluster4,
        ]
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Ghz => f.write_str("GHZ"),
            CatalogKey::W => f.write_str("W"),
            CatalogKey::Dicke(k) => write!(f, "DICKE({k})"),
            CatalogKey::Phi4 => f.write_str("PHI4"),
            CatalogKey::Example3 => f.write_str("EXAMPLE3_4Q"),
            CatalogKey::WClass3 => f.write_str("WCLASS_3Q"),
            CatalogKey::Cluster4 => f.write_str("CLUSTER4"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    /// Case-insensitive. Dicke states are written `DICKE(k)` or `DICKEk`.
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let key = match upper.as_str() {
            "GHZ" => CatalogKey::Ghz,
            "W" => CatalogKey::W,
            "PHI4" => CatalogKey::Phi4,
            "EXAMPLE3_4Q" | "EXAMPLE3" => CatalogKey::Example3,
            "WCLASS_3Q" | "WCLASS3" => CatalogKey::WClass3,
            "CLUSTER4" | "CLUSTER" => CatalogKey::Cluster4,
            other => {
                let weight = other
                    .strip_prefix("DICKE")
                    .map(|rest| {
                        rest.strip_prefix('(')
                            .and_then(|r| r.strip_suffix(')'))
                            .unwrap_or(rest)
                    })
                    .filter(|digits| {
                        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
                    })
                    .and_then(|digits| digits.parse::<usize>().ok());
                match weight {
                    Some(k) => CatalogKey::Dicke(k),
                    None => return Err(Error::UnknownState(s.to_string())),
                }
            }
        };
        Ok(key)
    }
}

/// Builds the catalog state `key` on `n` qubits. Keys with a fixed register
/// size accept `None` or the matching size.
pub fn named_state(key: CatalogKey, n: Option<usize>) -> Result<StateVector> {
    let inconsistent = |qubits| Error::InconsistentQubits {
        name: key.to_string(),
        qubits,
    };
    if let Some(fixed) = key.fixed_qubits() {
        if let Some(n) = n.filter(|&n| n != fixed) {
            return Err(inconsistent(n));
        }
    }
    let n = match (key.fixed_qubits(), n) {
        (Some(fixed), _) => fixed,
        (None, Some(n)) => n,
        (None, None) => return Err(inconsistent(0)),
    };
    if n == 0 {
        return Err(inconsistent(0));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: MAX_QUBITS,
        });
    }
    let one = Complex64::new(1.0, 0.0);
    match key {
        CatalogKey::Ghz => ghz(n),
        CatalogKey::W => dicke(n, 1).ok_or_else(|| inconsistent(n)),
        CatalogKey::Dicke(k) => dicke(n, k).ok_or_else(|| inconsistent(n)),
        CatalogKey::Phi4 => {
            StateVector::from_terms([("0001", one), ("0010", one), ("1100", one), ("1111", one)])?
                .normalize()
        }
        CatalogKey::Example3 => {
            StateVector::from_terms([("0000", one), ("0111", one), ("1111", -one)])
        }
        CatalogKey::WClass3 => {
            StateVector::from_terms([("001", one), ("010", one), ("100", one), ("111", one)])
        }
        CatalogKey::Cluster4 => {
            StateVector::from_terms([("0000", one), ("0011", one), ("1100", one), ("1111", -one)])?
                .normalize()
        }
    }
}

/// `(|0...0> + |1...1>) / sqrt(2)`.
pub fn ghz(n: usize) -> Result<StateVector> {
    let dim = 1usize << n;
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = h;
    amps[dim - 1] += h;
    StateVector::new(n, amps)
}

/// Normalized Dicke state with `k` excitations, `None` if `k > n`.
pub fn dicke(n: usize, k: usize) -> Option<StateVector> {
    if k > n {
        return None;
    }
    let dim = 1usize << n;
    let count = (0..dim).filter(|i| i.count_ones() as usize == k).count();
    let a = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
    let amps = (0..dim)
        .map(|i| {
            if i.count_ones() as usize == k {
                a
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    StateVector::new(n, amps).ok()
}
