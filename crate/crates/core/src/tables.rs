//! Live reproduction of the two three-qubit comparison tables: projection
//! classifications for four reference states, and reduced density matrices
//! against projected states for GHZ and W.

use serde::Serialize;

use crate::base::detect_2q;
use crate::catalog::{named_state, CatalogKey};
use crate::detector::{detect_with_trace, ProjectionClass};
use crate::error::Result;
use crate::oracle::{partial_trace, ppt_2qubit};
use crate::projection::all_projections;
use crate::proportional::Tolerance;
use crate::state::StateVector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionRow {
    pub label: &'static str,
    pub expected: [ProjectionClass; 3],
    pub computed: Vec<ProjectionClass>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionRow {
    pub label: &'static str,
    /// PPT verdicts for rho_12, rho_23, rho_13.
    pub reductions_separable: [bool; 3],
    pub expected_separable: bool,
    pub projections_entangled: [bool; 3],
    /// Whether each projection is scale-equal to the two-qubit member of the
    /// same family.
    pub projections_same_family: [bool; 3],
    pub expected_same_family: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tables {
    pub projections: Vec<ProjectionRow>,
    pub reductions: Vec<ReductionRow>,
}

impl Tables {
    pub fn all_match(&self) -> bool {
        self.projections.iter().all(|r| r.matches) && self.reductions.iter().all(|r| r.matches)
    }
}

pub fn projection_reference_states(
) -> Result<Vec<(&'static str, StateVector, [ProjectionClass; 3])>> {
    use ProjectionClass::{Entangled as E, Product as P};
    let zero_epr = StateVector::from_real(3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0])?;
    Ok(vec![
        ("|000>", StateVector::basis(3, 0)?, [P, P, P]),
        ("|0>_1|EPR>_23", zero_epr, [E, P, P]),
        ("GHZ", named_state(CatalogKey::Ghz, Some(3))?, [E, E, E]),
        ("W", named_state(CatalogKey::W, Some(3))?, [E, E, E]),
    ])
}

fn class_matches(expected: ProjectionClass, computed: ProjectionClass) -> bool {
    match expected {
        ProjectionClass::Product => computed.is_product_like(),
        other => other == computed,
    }
}

pub fn projection_table(tol: Tolerance) -> Result<Vec<ProjectionRow>> {
    projection_reference_states()?
        .into_iter()
        .map(|(label, state, expected)| {
            let computed = detect_with_trace(&state, tol)?.row;
            let matches = computed.len() == 3
                && expected
                    .iter()
                    .zip(&computed)
                    .all(|(&e, &c)| class_matches(e, c));
            Ok(ProjectionRow {
                label,
                expected,
                computed,
                matches,
            })
        })
        .collect()
}

pub fn reduction_table(tol: Tolerance) -> Result<Vec<ReductionRow>> {
    let mut rows = Vec::new();
    for (label, key, expected_separable, expected_same_family) in [
        ("GHZ", CatalogKey::Ghz, true, true),
        ("W", CatalogKey::W, false, false),
    ] {
        let state = named_state(key, Some(3))?;
        let two = named_state(key, Some(2))?;
        let mut reductions_separable = [false; 3];
        for (slot, keep) in reductions_separable
            .iter_mut()
            .zip([[1, 2], [2, 3], [1, 3]])
        {
            *slot = ppt_2qubit(&partial_trace(&state, &keep)?, tol)?;
        }
        let mut projections_entangled = [false; 3];
        let mut projections_same_family = [false; 3];
        for (i, p) in all_projections(&state)?.iter().enumerate() {
            projections_entangled[i] = detect_2q(&p.state, tol)?.genuinely_entangled;
            projections_same_family[i] = p.state.equal_up_to_scale(&two, tol)?;
        }
        let matches = reductions_separable
            .iter()
            .all(|&b| b == expected_separable)
            && projections_entangled.iter().all(|&b| b)
            && projections_same_family
                .iter()
                .all(|&b| b == expected_same_family);
        rows.push(ReductionRow {
            label,
            reductions_separable,
            expected_separable,
            projections_entangled,
            projections_same_family,
            expected_same_family,
            matches,
        });
    }
    Ok(rows)
}

pub fn compute_tables(tol: Tolerance) -> Result<Tables> {
    Ok(Tables {
        projections: projection_table(tol)?,
        reductions: reduction_table(tol)?,
    })
}

/// Plain-text rendering of both tables.
pub fn render(tables: &Tables) -> String {
    let mut out = String::new();
    out.push_str("Projections of three-qubit states (losing qubit 1, 2, 3)\n");
    out.push_str(&format!(
        "{:<16} {:<12} {:<12} {:<12} {}\n",
        "state", "lose 1", "lose 2", "lose 3", "check"
    ));
    for row in &tables.projections {
        let cells: Vec<&str> = row.computed.iter().map(|c| c.as_str()).collect();
        out.push_str(&format!(
            "{:<16} {:<12} {:<12} {:<12} {}\n",
            row.label,
            cells.first().copied().unwrap_or("-"),
            cells.get(1).copied().unwrap_or("-"),
            cells.get(2).copied().unwrap_or("-"),
            if row.matches { "ok" } else { "MISMATCH" }
        ));
    }
    out.push('\n');
    out.push_str("Reduced density matrices vs projected states\n");
    out.push_str(&format!(
        "{:<6} {:<28} {:<28} {}\n",
        "state", "rho_12, rho_23, rho_13", "projections", "check"
    ));
    for row in &tables.reductions {
        let rho = if row.reductions_separable.iter().all(|&b| b) {
            "separable".to_string()
        } else if row.reductions_separable.iter().all(|&b| !b) {
            "entangled".to_string()
        } else {
            format!("mixed {:?}", row.reductions_separable)
        };
        let ent = if row.projections_entangled.iter().all(|&b| b) {
            "entangled"
        } else {
            "not all entangled"
        };
        let fam = if row.projections_same_family.iter().all(|&b| b) {
            row.label.to_string()
        } else {
            format!("not {}", row.label)
        };
        out.push_str(&format!(
            "{:<6} {:<28} {:<28} {}\n",
            row.label,
            rho,
            format!("{ent}, {fam}"),
            if row.matches { "ok" } else { "MISMATCH" }
        ));
    }
    out
}
