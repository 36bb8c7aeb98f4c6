//! Machine-readable reports and their plain-text rendering.

use std::fmt::Write as _;

use qubitloss::detector::CertificateRule;
use qubitloss::{Certificate, FactorizationWitness, MeasureReport, ProjectionClass, VerdictKind};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Input {
    Catalog { name: String, qubits: usize },
    File { path: String, qubits: usize },
}

impl Input {
    pub fn describe(&self) -> String {
        match self {
            Input::Catalog { name, qubits } => format!("catalog {name} ({qubits} qubits)"),
            Input::File { path, qubits } => format!("file {path} ({qubits} qubits)"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub partition: String,
    pub family: usize,
}

impl From<&FactorizationWitness> for WitnessReport {
    fn from(w: &FactorizationWitness) -> Self {
        Self {
            partition: w.partition.to_string(),
            family: w.family_index,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureSummary {
    pub k: usize,
    pub k_is_exact: bool,
    pub is_mes: bool,
    pub per_qubit: Vec<VerdictKind>,
}

impl From<&MeasureReport> for MeasureSummary {
    fn from(m: &MeasureReport) -> Self {
        Self {
            k: m.k,
            k_is_exact: m.k_is_exact,
            is_mes: m.is_mes,
            per_qubit: m.per_qubit.iter().map(|v| v.kind).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub genuine: bool,
    pub product_cut: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detector: Option<VerdictKind>,
    /// False only when the detector's verdict contradicts the oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    /// Three-qubit registers only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortcut_certified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestSummary {
    pub seed: u64,
    pub products: usize,
    pub dense: usize,
    pub dense_certified: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub tolerance: f64,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Input>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub all_witnesses: Vec<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub projections: Vec<ProjectionClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, tolerance: f64, exhaustive: bool) -> Self {
        Self {
            tool: "qubitloss",
            version: env!("CARGO_PKG_VERSION"),
            command,
            tolerance,
            exhaustive,
            input: None,
            verdict: None,
            witness: None,
            all_witnesses: Vec::new(),
            certificate: None,
            projections: Vec::new(),
            measure: None,
            oracle: None,
            selftest: None,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(input) = &self.input {
            let _ = writeln!(out, "input: {}", input.describe());
        }
        if let Some(kind) = self.verdict {
            let _ = writeln!(out, "verdict: {}", verdict_text(kind));
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {} (family {})", w.partition, w.family);
        }
        if !self.all_witnesses.is_empty() {
            let list: Vec<String> = self
                .all_witnesses
                .iter()
                .map(|w| format!("{} (family {})", w.partition, w.family))
                .collect();
            let _ = writeln!(out, "all factorizations: {}", list.join(", "));
        }
        if !self.projections.is_empty() {
            let cells: Vec<String> = self
                .projections
                .iter()
                .enumerate()
                .map(|(i, c)| format!("lose {}: {}", i + 1, c.as_str()))
                .collect();
            let _ = writeln!(out, "projections: {}", cells.join(", "));
        }
        if let Some(cert) = &self.certificate {
            out.push_str("certificate:\n");
            render_certificate(cert, 1, &mut out);
        }
        if let Some(m) = &self.measure {
            let exact = if m.k_is_exact { "" } else { " (lower bound)" };
            let _ = writeln!(out, "measure: k = {}{exact}", m.k);
            let _ = writeln!(
                out,
                "maximally entangled: {}",
                if m.is_mes { "yes" } else { "no" }
            );
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle: {}",
                if o.genuine {
                    "genuinely entangled"
                } else {
                    "not genuinely entangled"
                }
            );
            if let Some(cut) = &o.product_cut {
                let _ = writeln!(out, "product cut: {cut}");
            }
            if let Some(kind) = o.detector {
                let _ = writeln!(out, "detector: {}", verdict_text(kind));
            }
            if let Some(consistent) = o.consistent {
                let _ = writeln!(out, "consistent: {}", if consistent { "yes" } else { "NO" });
            }
            if let Some(certified) = o.shortcut_certified {
                let _ = writeln!(
                    out,
                    "three-qubit shortcut: {}",
                    if certified {
                        "certified"
                    } else {
                        "not certified"
                    }
                );
                if o.genuine && !certified {
                    out.push_str(
                        "note: genuinely entangled although no pair of projections certifies it\n",
                    );
                }
            }
        }
        if let Some(s) = &self.selftest {
            let _ = writeln!(
                out,
                "selftest (seed {}): {} products, {} dense states ({} certified), {} violations",
                s.seed,
                s.products,
                s.dense,
                s.dense_certified,
                s.violations.len()
            );
            for v in &s.violations {
                let _ = writeln!(out, "  violation: {v}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms:.3} ms");
        }
        out
    }
}

pub fn verdict_text(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::CertifiedGenuine => "certified genuinely entangled",
        VerdictKind::CertifiedNotGenuine => "certified not genuinely entangled",
        VerdictKind::Inconclusive => "inconclusive",
    }
}

fn label_set(labels: &[usize]) -> String {
    let items: Vec<String> = labels.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn render_certificate(cert: &Certificate, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    let set = label_set(&cert.qubits_remaining);
    match cert.rule {
        CertificateRule::BaseCase(_) => {
            let _ = writeln!(
                out,
                "{indent}{set}: exact {}-qubit test",
                cert.qubits_remaining.len()
            );
        }
        CertificateRule::TwoProjections { lost: [a, b] } => {
            let _ = writeln!(
                out,
                "{indent}{set}: losing {a} and losing {b} both stay genuine"
            );
        }
    }
    for child in &cert.children {
        render_certificate(child, depth + 1, out);
    }
}
