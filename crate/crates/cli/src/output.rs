//! Human and machine-readable renderings of the analysis reports.
//!
//! JSON documents are serialized from fixed structs so field names and
//! ordering stay stable across commands and releases. Floats in the human
//! output are printed in exponent form with a fixed digit count so output is
//! reproducible.

use serde::Serialize;

use puresep::{MeasureReport, PureState, SeparabilityReport};

use crate::statefile::StateFile;

/// Fixed-width scientific formatting for the human-readable tables.
pub fn fnum(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn describe_state(label: Option<&str>, state: &PureState) -> String {
    match label {
        Some(l) => format!("state: {l}  dims: {}", state.dims()),
        None => format!("state: dims: {}", state.dims()),
    }
}

#[derive(Serialize)]
pub struct PartiteJson {
    /// 1-based, matching the CLI convention.
    pub partite: usize,
    pub norm_sq: f64,
    pub target: f64,
    pub deficit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minor_max: Option<f64>,
    pub separable: bool,
    pub borderline: bool,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dims: Vec<usize>,
    pub tol: f64,
    pub per_partite: Vec<PartiteJson>,
    pub fully_separable: bool,
    pub separable_partites: Vec<usize>,
    pub borderline_partites: Vec<usize>,
}

pub fn check_json(label: Option<String>, state: &PureState, report: &SeparabilityReport) -> CheckJson {
    CheckJson {
        command: "check",
        label,
        dims: state.dims().dims().to_vec(),
        tol: report.tolerance,
        per_partite: report
            .per_partite
            .iter()
            .map(|v| PartiteJson {
                partite: v.partite + 1,
                norm_sq: v.norm_sq,
                target: v.target,
                deficit: v.deficit,
                minor_max: v.minor_max,
                separable: v.separable,
                borderline: v.borderline,
            })
            .collect(),
        fully_separable: report.fully_separable,
        separable_partites: report.separable_partites().iter().map(|i| i + 1).collect(),
        borderline_partites: report.borderline_partites().iter().map(|i| i + 1).collect(),
    }
}

pub fn print_check_human(label: Option<&str>, state: &PureState, report: &SeparabilityReport) {
    println!("{}", describe_state(label, state));
    println!(
        "criterion: coherence-vector norms cross-checked against minors (tol {:e})",
        report.tolerance
    );
    for v in &report.per_partite {
        let verdict = if v.separable { "separable" } else { "entangled" };
        let flag = if v.borderline { "  [borderline]" } else { "" };
        println!(
            "partite {}: norm_sq {}  target {}  deficit {}  {verdict}{flag}",
            v.partite + 1,
            fnum(v.norm_sq),
            fnum(v.target),
            fnum(v.deficit),
        );
    }
    println!(
        "fully separable: {}",
        if report.fully_separable { "yes" } else { "no" }
    );
    let sep = report.separable_partites();
    if sep.is_empty() {
        println!("separable partites: none");
    } else {
        let list: Vec<String> = sep.iter().map(|i| (i + 1).to_string()).collect();
        println!("separable partites: {}", list.join(", "));
    }
}

#[derive(Serialize)]
pub struct FactorJson {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dims: Vec<usize>,
    pub tol: f64,
    pub separable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<StateFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_partites: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct CoherenceJson {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dims: Vec<usize>,
    /// 1-based.
    pub partite: usize,
    pub values: Vec<f64>,
    pub norm_sq: f64,
    pub target: f64,
}

#[derive(Serialize)]
pub struct MeasurePartiteJson {
    /// 1-based.
    pub partite: usize,
    pub norm_deficit: f64,
    pub linear_entropy: f64,
    pub von_neumann_bits: f64,
}

#[derive(Serialize)]
pub struct MeasureJson {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dims: Vec<usize>,
    pub per_partite: Vec<MeasurePartiteJson>,
    pub mean_deficit: f64,
    pub max_deficit: f64,
    pub mean_von_neumann_bits: f64,
}

pub fn measure_json(label: Option<String>, state: &PureState, report: &MeasureReport) -> MeasureJson {
    MeasureJson {
        command: "measure",
        label,
        dims: state.dims().dims().to_vec(),
        per_partite: report
            .per_partite
            .iter()
            .map(|m| MeasurePartiteJson {
                partite: m.partite + 1,
                norm_deficit: m.norm_deficit,
                linear_entropy: m.linear_entropy,
                von_neumann_bits: m.von_neumann_entropy,
            })
            .collect(),
        mean_deficit: report.mean_deficit,
        max_deficit: report.max_deficit,
        mean_von_neumann_bits: report.mean_von_neumann,
    }
}

pub fn print_measure_human(label: Option<&str>, state: &PureState, report: &MeasureReport) {
    println!("{}", describe_state(label, state));
    for m in &report.per_partite {
        println!(
            "partite {}: deficit {}  linear_entropy {}  von_neumann_bits {}",
            m.partite + 1,
            fnum(m.norm_deficit),
            fnum(m.linear_entropy),
            fnum(m.von_neumann_entropy),
        );
    }
    println!(
        "mean deficit: {}  max deficit: {}  mean von neumann bits: {}",
        fnum(report.mean_deficit),
        fnum(report.max_deficit),
        fnum(report.mean_von_neumann),
    );
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}
