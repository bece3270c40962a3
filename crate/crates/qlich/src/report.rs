//! Deterministic report documents emitted by the CLI and the C ABI.
//!
//! The JSON schema is versioned ("schema": "1"); cohomology representatives
//! and states are emitted as strings in the canonical render syntax. Field
//! order is fixed by the struct layout and all collections are ordered, so
//! identical invocations produce byte-identical JSON.

use crate::poisson::ClassicalCohomology;
use crate::quantum::{
    ChiralCompatReport, CohomologyReport, NilpotencyReport, SelfOpeReport, Truncation,
};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

/// One named pass/fail outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: Some(detail.into()),
        }
    }
}

/// Tensor and invocation metadata echoed into every report.
#[derive(Clone, Debug, Serialize, Default)]
pub struct Invocation {
    pub dimension: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u8>,
    pub entries: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub page: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_poly_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator: Option<String>,
}

/// Payload of `build-operator`: the density and the single-generator table.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorSection {
    pub density: String,
    /// Rendered ħ¹ actions on every underived single generator.
    pub hbar1_table: Vec<(String, String)>,
}

/// Payload of `verify-nilpotent`.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotencySection {
    pub general: NilpotencyReport,
    /// The transposed-pairing variant, reported when it is constructible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transposed: Option<NilpotencyReport>,
    pub self_ope: SelfOpeReport,
}

/// Payload of `nambu-check`.
#[derive(Clone, Debug, Serialize, Default)]
pub struct NambuSection {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub algebraic_residuals: Vec<(Vec<u8>, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub differential_residuals: Vec<(Vec<u8>, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leibniz_trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filippov_trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_density: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_nilpotency: Option<NilpotencyReport>,
}

/// The complete document: one per CLI invocation.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub command: String,
    pub invocation: Invocation,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobi_residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_cohomology: Option<ClassicalCohomology>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_cohomology: Option<CohomologyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<NilpotencySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chiral: Option<ChiralCompatReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nambu: Option<NambuSection>,
}

impl ReportDocument {
    pub fn new(command: &str, invocation: Invocation) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            invocation,
            checks: Vec::new(),
            jacobi_residual: None,
            operator: None,
            classical_cohomology: None,
            quantum_cohomology: None,
            nilpotency: None,
            chiral: None,
            nambu: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Plain-text rendering of the same content.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("command: {}", self.command));
        push(
            &mut out,
            format!("dimension: {}", self.invocation.dimension),
        );
        if let Some(order) = self.invocation.order {
            push(&mut out, format!("order: {}", order));
        }
        for e in &self.invocation.entries {
            push(&mut out, format!("entry: {}", e));
        }
        if let Some(cv) = &self.invocation.convention {
            push(&mut out, format!("convention: {}", cv));
        }
        if let Some(pg) = &self.invocation.page {
            push(&mut out, format!("page: {}", pg));
        }
        if let Some(t) = &self.invocation.truncation {
            push(
                &mut out,
                format!(
                    "truncation: weight <= {}, letters <= {}, fermion in {}..={}",
                    t.max_weight, t.max_letters, t.fermion_min, t.fermion_max
                ),
            );
        }
        if let Some(m) = self.invocation.max_poly_degree {
            push(&mut out, format!("max poly degree: {}", m));
        }
        if let Some(s) = self.invocation.seed {
            push(&mut out, format!("seed: {}", s));
        }
        for check in &self.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            match &check.detail {
                Some(d) => push(
                    &mut out,
                    format!("check {}: {} ({})", check.name, status, d),
                ),
                None => push(&mut out, format!("check {}: {}", check.name, status)),
            }
        }
        if let Some(r) = &self.jacobi_residual {
            push(&mut out, format!("jacobi residual: {}", r));
        }
        if let Some(op) = &self.operator {
            push(&mut out, format!("density: {}", op.density));
            for (gen, img) in &op.hbar1_table {
                push(&mut out, format!("  d1({}) = {}", gen, img));
            }
        }
        if let Some(c) = &self.classical_cohomology {
            for cell in &c.cells {
                if cell.dim_space == 0 {
                    continue;
                }
                push(
                    &mut out,
                    format!(
                        "H(k={}, deg={}): dim {} (space {}, closed {}, exact {}){}{}",
                        cell.multivector_degree,
                        cell.poly_degree,
                        cell.dim_cohomology,
                        cell.dim_space,
                        cell.dim_closed,
                        cell.dim_exact,
                        if cell.truncated { " [banded]" } else { "" },
                        if cell.representatives.is_empty() {
                            String::new()
                        } else {
                            format!("  reps: {}", cell.representatives.join(", "))
                        }
                    ),
                );
            }
        }
        if let Some(q) = &self.quantum_cohomology {
            for cell in &q.cells {
                let letters = match cell.letters {
                    Some(l) => l.to_string(),
                    None => format!("<={}", q.truncation.max_letters),
                };
                push(
                    &mut out,
                    format!(
                        "H(w={}, f={}, l={}): dim {} (space {}, closed {}, exact {}){}{}",
                        cell.weight,
                        cell.fermion,
                        letters,
                        cell.dim_cohomology,
                        cell.dim_space,
                        cell.dim_closed,
                        cell.dim_exact,
                        if cell.truncated { " [banded]" } else { "" },
                        if cell.representatives.is_empty() {
                            String::new()
                        } else {
                            format!("  reps: {}", cell.representatives.join(", "))
                        }
                    ),
                );
            }
        }
        if let Some(n) = &self.nilpotency {
            push(
                &mut out,
                format!(
                    "nilpotency: checked {} words, {} violations",
                    n.general.checked,
                    n.general.violations.len()
                ),
            );
            for v in &n.general.violations {
                push(&mut out, format!("  d2({}) != 0", v.word));
            }
            if let Some(t) = &n.transposed {
                push(
                    &mut out,
                    format!(
                        "transposed-pairing variant: checked {} words, {} violations",
                        t.checked,
                        t.violations.len()
                    ),
                );
            }
            push(
                &mut out,
                format!(
                    "self-OPE pole-1 total derivative: {} (pole-1 = {})",
                    n.self_ope.is_total_derivative, n.self_ope.pole1
                ),
            );
        }
        if let Some(ch) = &self.chiral {
            for conv in &ch.per_convention {
                push(
                    &mut out,
                    format!(
                        "convention {}: delta^2 {} | commutator {}",
                        conv.convention,
                        if conv.delta_squared_ok {
                            "PASS"
                        } else {
                            "FAIL"
                        },
                        if conv.commutator_ok { "PASS" } else { "FAIL" }
                    ),
                );
            }
        }
        if let Some(nb) = &self.nambu {
            for (idx, r) in &nb.algebraic_residuals {
                push(&mut out, format!("algebraic residual {:?}: {}", idx, r));
            }
            for (idx, r) in &nb.differential_residuals {
                push(&mut out, format!("differential residual {:?}: {}", idx, r));
            }
            if let Some(t) = nb.leibniz_trials {
                push(&mut out, format!("leibniz trials: {}", t));
            }
            if let Some(t) = nb.filippov_trials {
                push(&mut out, format!("filippov trials: {}", t));
            }
            if let Some(d) = &nb.bridge_density {
                push(&mut out, format!("bridge density: {}", d));
            }
            if let Some(o) = &nb.bridge_obstruction {
                push(&mut out, format!("bridge obstruction: {}", o));
            }
            if let Some(r) = &nb.bridge_nilpotency {
                push(
                    &mut out,
                    format!(
                        "bridge nilpotency: checked {} words, {} violations",
                        r.checked,
                        r.violations.len()
                    ),
                );
            }
        }
        let status = if self.all_passed() { "ok" } else { "FAILED" };
        push(&mut out, format!("status: {}", status));
        out
    }
}
