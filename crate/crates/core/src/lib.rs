//! Detection of genuine multipartite entanglement in pure qubit states.
//!
//! The losing-one-qubit operator maps an n-qubit state to the (n-1)-qubit
//! state `<0|_k psi> + <1|_k psi>`. A product state has at most one genuinely
//! entangled projection, so two genuinely entangled projections certify the
//! parent. Applying this recursively reduces the question to the exact
//! product tests for 2, 3 and 4 qubits.
//!
//! ```
//! use qubitloss::{catalog::{named_state, CatalogKey}, detect, Tolerance, VerdictKind};
//!
//! let w6 = named_state(CatalogKey::W, Some(6)).unwrap();
//! let verdict = detect(&w6, Tolerance::default()).unwrap();
//! assert_eq!(verdict.kind, VerdictKind::CertifiedGenuine);
//! ```

#![forbid(unsafe_code)]

pub mod base;
pub mod catalog;
pub mod detector;
pub mod error;
pub mod format;
pub mod oracle;
pub mod partition;
pub mod projection;
pub mod proportional;
pub mod sample;
pub mod state;
pub mod tables;

pub use base::{detect_2q, detect_3q, detect_4q, sufficient_3q, BaseVerdict, FactorizationWitness};
pub use detector::{
    detect, detect_with, detect_with_trace, entanglement_measure, Certificate, DetectOptions,
    MeasureReport, ProjectionClass, Trace, Verdict, VerdictKind,
};
pub use error::{Error, Result};
pub use partition::Bipartition;
pub use projection::{all_projections, lose_qubit, lose_qubit_set, ProjectionResult};
pub use proportional::{family_proportional, pair_proportional, Tolerance, VectorFamily};
pub use state::{Amplitude, StateVector};
