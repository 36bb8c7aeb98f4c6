//! Recursive genuine-entanglement certification.
//!
//! If two distinct single-qubit projections of a state are genuinely
//! entangled, the state itself is. The search applies this rule recursively
//! and bottoms out at the exact tests for 2 to 4 qubits. It is sound but not
//! complete: above four qubits a state that is genuinely entangled may come
//! back [`VerdictKind::Inconclusive`].
//!
//! Projections commute, so the state reached after losing a set of qubits
//! depends only on the set. Results are cached by the set of remaining
//! original qubit labels and each subset is evaluated at most once.

use std::collections::HashMap;

use serde::Serialize;

use crate::base::{detect_base, BaseRule, FactorizationWitness};
use crate::error::{Error, Result};
use crate::projection::{lose_qubit, lose_qubit_set};
use crate::proportional::Tolerance;
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    CertifiedGenuine,
    CertifiedNotGenuine,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CertificateRule {
    /// Decided by the exact test for this register size.
    BaseCase(BaseRule),
    /// Two projections, losing the given original qubits, are genuinely
    /// entangled.
    TwoProjections { lost: [usize; 2] },
}

/// Proof tree for a genuine-entanglement verdict. Qubit labels refer to the
/// original register.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub qubits_remaining: Vec<usize>,
    pub rule: CertificateRule,
    pub children: Vec<Certificate>,
}

impl Certificate {
    /// Re-derives every node from `root`: recomputes the projected state for
    /// each node's qubit set and reruns the exact test at the leaves.
    pub fn replay(&self, root: &StateVector, tol: Tolerance) -> Result<bool> {
        let n = root.num_qubits();
        let lost: Vec<usize> = (1..=n)
            .filter(|q| !self.qubits_remaining.contains(q))
            .collect();
        if lost.len() + self.qubits_remaining.len() != n {
            return Ok(false);
        }
        let state = if lost.is_empty() {
            root.clone()
        } else {
            lose_qubit_set(root, &lost)?
        };
        match self.rule {
            CertificateRule::BaseCase(rule) => Ok(self.children.is_empty()
                && BaseRule::for_qubits(self.qubits_remaining.len()) == Some(rule)
                && detect_base(&state, tol)?.genuinely_entangled),
            CertificateRule::TwoProjections { lost } => {
                if self.children.len() != 2 || lost[0] == lost[1] {
                    return Ok(false);
                }
                for (child, &q) in self.children.iter().zip(&lost) {
                    let expected: Vec<usize> = self
                        .qubits_remaining
                        .iter()
                        .copied()
                        .filter(|&r| r != q)
                        .collect();
                    if expected.len() + 1 != self.qubits_remaining.len()
                        || child.qubits_remaining != expected
                        || !child.replay(root, tol)?
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(Certificate::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(Certificate::leaves).sum()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Factorizing cut, for not-genuine verdicts on nonzero states.
    pub witness: Option<FactorizationWitness>,
    /// Proof tree, for genuine verdicts.
    pub certificate: Option<Certificate>,
}

impl Verdict {
    fn zero() -> Self {
        Self {
            kind: VerdictKind::CertifiedNotGenuine,
            witness: None,
            certificate: None,
        }
    }

    pub fn is_genuine(&self) -> bool {
        self.kind == VerdictKind::CertifiedGenuine
    }
}

/// Classification of one single-qubit projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionClass {
    Product,
    Entangled,
    Zero,
    Inconclusive,
}

impl ProjectionClass {
    /// Zero projections are counted with the products.
    pub fn is_product_like(self) -> bool {
        matches!(self, ProjectionClass::Product | ProjectionClass::Zero)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProjectionClass::Product => "product",
            ProjectionClass::Entangled => "entangled",
            ProjectionClass::Zero => "zero",
            ProjectionClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectOptions {
    pub tol: Tolerance,
    /// Evaluate every projection instead of stopping after two certificates.
    pub exhaustive: bool,
    /// Cache node results by remaining-qubit subset.
    pub memoize: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            exhaustive: false,
            memoize: true,
        }
    }
}

impl DetectOptions {
    pub fn with_tol(tol: Tolerance) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Verdict plus the per-projection row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub verdict: Verdict,
    /// Entry `k - 1` classifies the projection that loses qubit `k`.
    pub row: Vec<ProjectionClass>,
    /// Distinct recursion nodes evaluated.
    pub nodes_evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    /// Verdict for the projection losing qubit `k`, at index `k - 1`.
    pub per_qubit: Vec<Verdict>,
    pub row: Vec<ProjectionClass>,
    /// Number of projections certified genuinely entangled.
    pub k: usize,
    /// True when the projections are small enough for the exact tests, so
    /// `k` is exact rather than a lower bound.
    pub k_is_exact: bool,
    /// All projections genuinely entangled.
    pub is_mes: bool,
}

pub fn detect(s: &StateVector, tol: Tolerance) -> Result<Verdict> {
    detect_with(s, DetectOptions::with_tol(tol))
}

pub fn detect_with(s: &StateVector, opts: DetectOptions) -> Result<Verdict> {
    check_input(s, 2)?;
    let mut search = Search::new(s.num_qubits(), opts);
    search.evaluate(search.full_mask(), s)
}

pub fn detect_with_trace(s: &StateVector, tol: Tolerance) -> Result<Trace> {
    trace_with(s, DetectOptions::with_tol(tol))
}

pub fn trace_with(s: &StateVector, opts: DetectOptions) -> Result<Trace> {
    check_input(s, 2)?;
    let mut search = Search::new(s.num_qubits(), opts);
    let full = search.full_mask();
    let verdict = search.evaluate(full, s)?;
    let children = search.children(full, s)?;
    let row = children.iter().map(|c| c.class()).collect();
    Ok(Trace {
        verdict,
        row,
        nodes_evaluated: search.nodes_evaluated,
    })
}

/// Counts genuinely entangled single-qubit projections.
pub fn entanglement_measure(s: &StateVector, tol: Tolerance) -> Result<MeasureReport> {
    measure_with(s, DetectOptions::with_tol(tol))
}

pub fn measure_with(s: &StateVector, opts: DetectOptions) -> Result<MeasureReport> {
    check_input(s, 3)?;
    let n = s.num_qubits();
    let mut search = Search::new(n, opts);
    let children = search.children(search.full_mask(), s)?;
    let row: Vec<ProjectionClass> = children.iter().map(|c| c.class()).collect();
    let per_qubit: Vec<Verdict> = children
        .into_iter()
        .map(|c| match c {
            Child::Zero => Verdict::zero(),
            Child::Evaluated(v) => v,
        })
        .collect();
    let k = per_qubit.iter().filter(|v| v.is_genuine()).count();
    Ok(MeasureReport {
        per_qubit,
        row,
        k,
        k_is_exact: n - 1 <= 4,
        is_mes: k == n,
    })
}

fn check_input(s: &StateVector, min_qubits: usize) -> Result<()> {
    if s.num_qubits() < min_qubits {
        return Err(Error::TooFewQubits {
            required: min_qubits,
            qubits: s.num_qubits(),
        });
    }
    if s.max_modulus() == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(())
}

enum Child {
    Zero,
    Evaluated(Verdict),
}

impl Child {
    fn class(&self) -> ProjectionClass {
        match self {
            Child::Zero => ProjectionClass::Zero,
            Child::Evaluated(v) => match v.kind {
                VerdictKind::CertifiedGenuine => ProjectionClass::Entangled,
                VerdictKind::CertifiedNotGenuine => ProjectionClass::Product,
                VerdictKind::Inconclusive => ProjectionClass::Inconclusive,
            },
        }
    }
}

struct Search {
    num_qubits: usize,
    opts: DetectOptions,
    memo: HashMap<u32, Verdict>,
    nodes_evaluated: usize,
}

impl Search {
    fn new(num_qubits: usize, opts: DetectOptions) -> Self {
        Self {
            num_qubits,
            opts,
            memo: HashMap::new(),
            nodes_evaluated: 0,
        }
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.num_qubits) - 1) as u32
    }

    fn labels(&self, mask: u32) -> Vec<usize> {
        (1..=self.num_qubits)
            .filter(|q| mask >> (q - 1) & 1 == 1)
            .collect()
    }

    /// `state` is the register restricted to the qubits in `mask`.
    fn evaluate(&mut self, mask: u32, state: &StateVector) -> Result<Verdict> {
        if self.opts.memoize {
            if let Some(v) = self.memo.get(&mask) {
                return Ok(v.clone());
            }
        }
        self.nodes_evaluated += 1;
        let labels = self.labels(mask);
        let verdict = match BaseRule::for_qubits(labels.len()) {
            Some(rule) => {
                let base = detect_base(state, self.opts.tol)?;
                if base.genuinely_entangled {
                    Verdict {
                        kind: VerdictKind::CertifiedGenuine,
                        witness: None,
                        certificate: Some(Certificate {
                            qubits_remaining: labels,
                            rule: CertificateRule::BaseCase(rule),
                            children: Vec::new(),
                        }),
                    }
                } else {
                    Verdict {
                        kind: VerdictKind::CertifiedNotGenuine,
                        witness: base.witness,
                        certificate: None,
                    }
                }
            }
            None => self.recurse(mask, &labels, state)?,
        };
        if self.opts.memoize {
            self.memo.insert(mask, verdict.clone());
        }
        Ok(verdict)
    }

    fn recurse(&mut self, mask: u32, labels: &[usize], state: &StateVector) -> Result<Verdict> {
        let mut certified: Vec<(usize, Certificate)> = Vec::with_capacity(2);
        for (pos, &label) in labels.iter().enumerate() {
            let projection = lose_qubit(state, pos + 1)?;
            if projection.is_zero {
                continue;
            }
            let child = self.evaluate(mask & !(1 << (label - 1)), &projection.state)?;
            if let (VerdictKind::CertifiedGenuine, Some(cert)) = (child.kind, child.certificate) {
                if certified.len() < 2 {
                    certified.push((label, cert));
                }
                if certified.len() == 2 && !self.opts.exhaustive {
                    break;
                }
            }
        }
        if certified.len() < 2 {
            return Ok(Verdict {
                kind: VerdictKind::Inconclusive,
                witness: None,
                certificate: None,
            });
        }
        let (second_label, second) = certified.pop().expect("two certificates");
        let (first_label, first) = certified.pop().expect("two certificates");
        Ok(Verdict {
            kind: VerdictKind::CertifiedGenuine,
            witness: None,
            certificate: Some(Certificate {
                qubits_remaining: labels.to_vec(),
                rule: CertificateRule::TwoProjections {
                    lost: [first_label, second_label],
                },
                children: vec![first, second],
            }),
        })
    }

    /// Classifies every single-qubit projection of the node at `mask`.
    fn children(&mut self, mask: u32, state: &StateVector) -> Result<Vec<Child>> {
        let labels = self.labels(mask);
        let mut out = Vec::with_capacity(labels.len());
        for (pos, &label) in labels.iter().enumerate() {
            let projection = lose_qubit(state, pos + 1)?;
            let child = if projection.is_zero {
                Child::Zero
            } else if labels.len() == 2 {
                // A single qubit is never entangled.
                Child::Evaluated(Verdict {
                    kind: VerdictKind::CertifiedNotGenuine,
                    witness: None,
                    certificate: None,
                })
            } else {
                Child::Evaluated(self.evaluate(mask & !(1 << (label - 1)), &projection.state)?)
            };
            out.push(child);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{named_state, CatalogKey};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn real(n: usize, xs: &[f64]) -> StateVector {
        StateVector::from_real(n, xs).unwrap()
    }

    #[test]
    fn base_sizes_are_exact() {
        let v = detect(&named_state(CatalogKey::Example3, None).unwrap(), tol()).unwrap();
        assert_eq!(v.kind, VerdictKind::CertifiedGenuine);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.rule, CertificateRule::BaseCase(BaseRule::FourQubit));
        assert_eq!(cert.qubits_remaining, [1, 2, 3, 4]);

        let zero_epr = real(3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let v = detect(&zero_epr, tol()).unwrap();
        assert_eq!(v.kind, VerdictKind::CertifiedNotGenuine);
        assert_eq!(v.witness.unwrap().partition.to_string(), "{1}|{2,3}");
    }

    #[test]
    fn ghz6_and_w6_are_certified() {
        for key in [CatalogKey::Ghz, CatalogKey::W] {
            let s = named_state(key, Some(6)).unwrap();
            let v = detect(&s, tol()).unwrap();
            assert_eq!(v.kind, VerdictKind::CertifiedGenuine, "{key}");
            let cert = v.certificate.unwrap();
            assert_eq!(cert.depth(), 3);
            assert!(cert.replay(&s, tol()).unwrap());
        }
    }

    #[test]
    fn product_of_five_is_not_certified() {
        // (|00> + |11>)_12 ⊗ GHZ_345: a product that still has one genuine
        // projection (losing a qubit of the GHZ factor leaves a product).
        let bell = real(2, &[1.0, 0.0, 0.0, 1.0]);
        let ghz = named_state(CatalogKey::Ghz, Some(3)).unwrap();
        let s = bell.tensor(&ghz).unwrap();
        let v = detect(&s, tol()).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn trace_rows() {
        let row = |s: &StateVector| detect_with_trace(s, tol()).unwrap().row;
        use ProjectionClass::*;
        assert_eq!(
            row(&StateVector::basis(3, 0).unwrap()),
            [Product, Product, Product]
        );
        let zero_epr = real(3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(row(&zero_epr), [Entangled, Product, Product]);
        assert_eq!(
            row(&named_state(CatalogKey::W, Some(3)).unwrap()),
            [Entangled; 3]
        );
        assert_eq!(
            row(&named_state(CatalogKey::WClass3, None).unwrap()),
            [Product; 3]
        );
        let bell = real(2, &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(row(&bell), [Product, Product]);
        let minus = real(2, &[1.0, 0.0, -1.0, 0.0]);
        assert_eq!(row(&minus), [Zero, Product]);
    }

    #[test]
    fn measure_examples() {
        let m = entanglement_measure(&named_state(CatalogKey::Phi4, None).unwrap(), tol()).unwrap();
        assert_eq!(m.k, 2);
        assert!(!m.is_mes);
        assert!(m.k_is_exact);
        assert!(m.per_qubit[0].is_genuine() && m.per_qubit[1].is_genuine());
        for key in [CatalogKey::Ghz, CatalogKey::W] {
            let m = entanglement_measure(&named_state(key, Some(4)).unwrap(), tol()).unwrap();
            assert_eq!(m.k, 4);
            assert!(m.is_mes);
        }
        let m =
            entanglement_measure(&named_state(CatalogKey::Ghz, Some(6)).unwrap(), tol()).unwrap();
        assert!(!m.k_is_exact);
        assert_eq!(m.k, 6);
    }

    #[test]
    fn input_errors() {
        assert_eq!(detect(&real(2, &[0.0; 4]), tol()), Err(Error::ZeroState));
        assert!(matches!(
            detect(&real(1, &[1.0, 0.0]), tol()),
            Err(Error::TooFewQubits { .. })
        ));
        assert!(matches!(
            entanglement_measure(&real(2, &[1.0, 0.0, 0.0, 1.0]), tol()),
            Err(Error::TooFewQubits { .. })
        ));
        assert_eq!(
            entanglement_measure(&real(3, &[0.0; 8]), tol()),
            Err(Error::ZeroState)
        );
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let s = named_state(CatalogKey::Ghz, Some(5)).unwrap();
        let cert = detect(&s, tol()).unwrap().certificate.unwrap();
        let mut bad = cert.clone();
        bad.children.pop();
        assert!(!bad.replay(&s, tol()).unwrap());
        let mut bad = cert.clone();
        if let CertificateRule::TwoProjections { lost } = &mut bad.rule {
            lost[1] = lost[0];
        }
        assert!(!bad.replay(&s, tol()).unwrap());
        // A valid tree for one state is not valid for a product state.
        let prod = StateVector::basis(5, 0).unwrap();
        assert!(!cert.replay(&prod, tol()).unwrap());
    }
}
