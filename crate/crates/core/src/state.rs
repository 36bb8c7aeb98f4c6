//! Pure n-qubit state vectors.
//!
//! Basis index `i` is read as the bit string `i_1 i_2 ... i_n` with qubit 1
//! the most significant bit, so the amplitude of `|b_1 ... b_n>` sits at
//! `sum_k b_k * 2^(n-k)`. States are not normalized unless asked: every test
//! built on top of them is invariant under a global nonzero scale.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::proportional::{pair_proportional, Tolerance};

/// A single complex coefficient.
pub type Amplitude = Complex64;

/// Largest register the crate will allocate for.
pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    /// Builds a state from `2^n` amplitudes without normalizing.
    pub fn new(num_qubits: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::TooFewQubits {
                required: 1,
                qubits: 0,
            });
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                qubits: num_qubits,
                expected,
                got: amplitudes.len(),
            });
        }
        if let Some(index) = amplitudes
            .iter()
            .position(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Convenience constructor for real amplitudes.
    pub fn from_real(num_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            num_qubits,
            amplitudes
                .iter()
                .map(|&re| Complex64::new(re, 0.0))
                .collect(),
        )
    }

    /// Builds a state from `(basis string, amplitude)` terms such as
    /// `("0111", 1.0)`. Bit strings must all have the same length.
    pub fn from_terms<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Amplitude)>,
    {
        let mut num_qubits = None;
        let mut pending = Vec::new();
        for (bits, amp) in terms {
            let n = bits.len();
            match num_qubits {
                None => num_qubits = Some(n),
                Some(m) if m != n => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("basis string `{bits}` has {n} qubits, expected {m}"),
                    })
                }
                _ => {}
            }
            let index = usize::from_str_radix(bits, 2).map_err(|_| Error::Parse {
                line: 0,
                msg: format!("`{bits}` is not a bit string"),
            })?;
            pending.push((index, amp));
        }
        let n = num_qubits.ok_or(Error::TooFewQubits {
            required: 1,
            qubits: 0,
        })?;
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: n,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (index, amp) in pending {
            amps[index] += amp;
        }
        Self::new(n, amps)
    }

    /// Computational basis state `|index>` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize
            .checked_shl(num_qubits as u32)
            .filter(|_| num_qubits <= MAX_QUBITS)
            .ok_or(Error::TooManyQubits {
                qubits: num_qubits,
                max: MAX_QUBITS,
            })?;
        if index >= dim {
            return Err(Error::Parse {
                line: 0,
                msg: format!("basis index {index} out of range for {num_qubits} qubits"),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amps)
    }

    pub(crate) fn from_parts_unchecked(num_qubits: usize, amplitudes: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    /// Amplitude of the basis state spelled by `bits` (qubit 1 first).
    pub fn amplitude_of(&self, bits: &[u8]) -> Option<Amplitude> {
        if bits.len() != self.num_qubits || bits.iter().any(|&b| b > 1) {
            return None;
        }
        let index = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        Some(self.amplitudes[index])
    }

    /// Largest amplitude modulus.
    pub fn max_modulus(&self) -> f64 {
        max_modulus(&self.amplitudes)
    }

    /// True when every amplitude is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: Amplitude) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|&a| a * factor).collect(),
        }
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Amplitude, other: &Self, beta: Amplitude) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self {
            num_qubits: self.num_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(&a, &b)| alpha * a + beta * b)
                .collect(),
        })
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.num_qubits + other.num_qubits;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: n,
                max: MAX_QUBITS,
            });
        }
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            amps.extend(other.amplitudes.iter().map(|&b| a * b));
        }
        Ok(Self::from_parts_unchecked(n, amps))
    }

    /// Scale-free comparison: true iff `self = lambda * other` for some
    /// nonzero complex `lambda`, judged by the 2x2 cross minors
    /// `a_i b_j - a_j b_i` relative to `max|a| * max|b|`.
    pub fn equal_up_to_scale(&self, other: &Self, tol: Tolerance) -> Result<bool> {
        self.check_same_size(other)?;
        let ma = self.max_modulus();
        let mb = other.max_modulus();
        let scale = ma.max(mb);
        if scale == 0.0 {
            return Ok(true);
        }
        let a_zero = ma <= tol.rel * scale;
        let b_zero = mb <= tol.rel * scale;
        if a_zero || b_zero {
            return Ok(a_zero && b_zero);
        }
        pair_proportional(&self.amplitudes, &other.amplitudes, tol)
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(())
    }
}

pub(crate) fn max_modulus(v: &[Amplitude]) -> f64 {
    v.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn construction_checks_length_and_finiteness() {
        assert!(StateVector::from_real(2, &[1.0, 0.0, 0.0, 1.0]).is_ok());
        assert!(StateVector::from_real(1, &[1.0, 0.0]).is_ok());
        assert!(StateVector::from_real(3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0]).is_ok());
        assert_eq!(
            StateVector::from_real(2, &[1.0, 0.0, 0.0]),
            Err(Error::LengthMismatch {
                qubits: 2,
                expected: 4,
                got: 3
            })
        );
        assert_eq!(
            StateVector::from_real(1, &[f64::NAN, 0.0]),
            Err(Error::NonFinite { index: 0 })
        );
        assert_eq!(
            StateVector::from_real(1, &[0.0, f64::INFINITY]),
            Err(Error::NonFinite { index: 1 })
        );
        assert!(StateVector::new(0, vec![c(1.0)]).is_err());
    }

    #[test]
    fn construction_does_not_normalize() {
        let s = StateVector::from_real(1, &[2.0, 0.0]).unwrap();
        assert_eq!(s.amplitudes()[0], c(2.0));
    }

    #[test]
    fn norm_and_normalize() {
        let bell = StateVector::from_real(2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((bell.norm() - 2f64.sqrt()).abs() < 1e-15);
        let s = StateVector::from_real(1, &[2.0, 0.0])
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0), c(0.0)]);
        let zero = StateVector::from_real(1, &[0.0, 0.0]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.normalize(), Err(Error::ZeroState));
    }

    #[test]
    fn msb_first_index_convention() {
        let s = StateVector::from_terms([("011", c(3.0)), ("100", c(5.0))]).unwrap();
        assert_eq!(s.amplitudes()[3], c(3.0));
        assert_eq!(s.amplitudes()[4], c(5.0));
        assert_eq!(s.amplitude_of(&[0, 1, 1]), Some(c(3.0)));
        assert_eq!(s.amplitude_of(&[1, 0, 0]), Some(c(5.0)));
        assert_eq!(s.amplitude_of(&[1, 0]), None);
    }

    #[test]
    fn tensor_puts_left_factor_on_leading_qubits() {
        let zero = StateVector::from_real(1, &[1.0, 0.0]).unwrap();
        let bell = StateVector::from_real(2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let s = zero.tensor(&bell).unwrap();
        assert_eq!(s.num_qubits(), 3);
        let expected =
            StateVector::from_real(3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn equal_up_to_scale_examples() {
        let tol = Tolerance::default();
        let a = StateVector::from_real(2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let b = StateVector::from_real(2, &[2.0, 0.0, 0.0, 2.0]).unwrap();
        let d = StateVector::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(a.equal_up_to_scale(&b, tol).unwrap());
        assert!(!a.equal_up_to_scale(&d, tol).unwrap());
        let i = a.scale(Complex64::new(0.0, 3.0));
        assert!(a.equal_up_to_scale(&i, tol).unwrap());
        let zero = StateVector::from_real(2, &[0.0; 4]).unwrap();
        assert!(!a.equal_up_to_scale(&zero, tol).unwrap());
        assert!(zero.equal_up_to_scale(&zero, tol).unwrap());
        let one = StateVector::from_real(1, &[1.0, 0.0]).unwrap();
        assert!(matches!(
            a.equal_up_to_scale(&one, tol),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
