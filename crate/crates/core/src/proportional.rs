//! Proportionality of complex coefficient vectors.
//!
//! A family of vectors is proportional when some nonzero member spans all of
//! them, i.e. the matrix with the vectors as columns has rank at most one.
//! Everything is decided through 2x2 minors `u_i v_j - u_j v_i`, so zero
//! entries need no special casing and the test is symmetric in its inputs.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::max_modulus;

/// Relative tolerance shared by the proportionality test and the oracle's
/// singular-value threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-9;

    /// Exact arithmetic: only exactly vanishing minors count.
    pub const EXACT: Tolerance = Tolerance { rel: 0.0 };

    pub fn new(rel: f64) -> Result<Self> {
        if !(rel.is_finite() && rel >= 0.0) {
            return Err(Error::InvalidTolerance(rel));
        }
        Ok(Self { rel })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: Self::DEFAULT_REL,
        }
    }
}

/// An ordered set of equal-length coefficient vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorFamily {
    vectors: Vec<Vec<Complex64>>,
}

impl VectorFamily {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if let Some(first) = vectors.first() {
            if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
                return Err(Error::VectorLengthMismatch {
                    left: first.len(),
                    right: bad.len(),
                });
            }
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Largest 2x2 minor modulus `max_{i<j} |u_i v_j - u_j v_i|`.
pub fn max_minor(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::VectorLengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut worst = 0.0f64;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            worst = worst.max((u[i] * v[j] - u[j] * v[i]).norm());
        }
    }
    Ok(worst)
}

/// True iff `u` and `v` are proportional: every 2x2 minor is within
/// `tol.rel * max|u| * max|v|`. A (numerically) zero vector is proportional
/// to anything.
pub fn pair_proportional(u: &[Complex64], v: &[Complex64], tol: Tolerance) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::VectorLengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mu = max_modulus(u);
    let mv = max_modulus(v);
    if mu == 0.0 || mv == 0.0 || mu <= tol.rel * mv || mv <= tol.rel * mu {
        return Ok(true);
    }
    let bound = tol.rel * mu * mv;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if (u[i] * v[j] - u[j] * v[i]).norm() > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff all vectors are zero or all are proportional to the member with
/// the largest entry modulus.
pub fn family_proportional(family: &VectorFamily, tol: Tolerance) -> bool {
    let pivot = family.vectors.iter().map(|v| (max_modulus(v), v)).fold(
        None::<(f64, &Vec<Complex64>)>,
        |best, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        },
    );
    let Some((scale, pivot)) = pivot else {
        return true;
    };
    if scale == 0.0 {
        return true;
    }
    family.vectors.iter().all(|v| {
        std::ptr::eq(v, pivot)
            || pair_proportional(pivot, v, tol).expect("family vectors share a length")
    })
}

/// The raw two-qubit minor `c0 c3 - c1 c2`; zero iff the state is a product.
/// Its squared modulus is the quantity the concurrence is built from, up to
/// the usual normalization.
pub fn two_qubit_minor(c: &[Complex64; 4]) -> Complex64 {
    c[0] * c[3] - c[1] * c[2]
}
