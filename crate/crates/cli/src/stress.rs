//! Randomized criterion-vs-oracle stress harness.
//!
//! Each sample draws a state (cycling Haar-like, product, and near-product
//! kinds so both sides of the threshold and the borderline band are hit),
//! runs the combined norm+minor criterion, and compares the per-partite
//! verdict against the Schmidt-rank oracle across each single-partite cut.
//! Any mismatch, or an internal criterion disagreement, is reported verbatim
//! as a counterexample.

use serde::Serialize;

use puresep::{check, schmidt, Error, RandomSpec, StateKind};
use puresep::{generate, purity_oracle, DimVector};

use crate::statefile::StateFile;

const NEAR_PRODUCT_EPS: f64 = 1e-6;

#[derive(Serialize)]
pub struct Counterexample {
    pub sample_index: usize,
    pub kind: String,
    pub seed: u64,
    /// 1-based partite whose verdicts differ; absent when the failure was an
    /// internal criterion disagreement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partite: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion_separable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub state: StateFile,
}

#[derive(Serialize)]
pub struct StressReport {
    pub command: &'static str,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub near_product_eps: f64,
    pub partite_checks: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub borderline_flagged: usize,
    pub worst_separable_deficit: f64,
    pub worst_separable_minor: f64,
    pub worst_purity_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

fn kind_for(index: usize) -> (StateKind, &'static str) {
    match index % 3 {
        0 => (StateKind::HaarLike, "haar"),
        1 => (StateKind::Product, "product"),
        _ => (
            StateKind::BiasedNearProduct {
                eps: NEAR_PRODUCT_EPS,
            },
            "near-product",
        ),
    }
}

/// Runs the harness. The report carries a counterexample exactly when at
/// least one disagreement was found.
pub fn run(dims: &DimVector, samples: usize, seed: u64, tol: f64) -> Result<StressReport, Error> {
    let mut report = StressReport {
        command: "stress",
        dims: dims.dims().to_vec(),
        samples,
        seed,
        tol,
        near_product_eps: NEAR_PRODUCT_EPS,
        partite_checks: 0,
        agreements: 0,
        disagreements: 0,
        borderline_flagged: 0,
        worst_separable_deficit: 0.0,
        worst_separable_minor: 0.0,
        worst_purity_residual: 0.0,
        counterexample: None,
    };

    for k in 0..samples {
        let (kind, kind_name) = kind_for(k);
        let sample_seed = seed.wrapping_add(k as u64);
        let spec = RandomSpec {
            dims: dims.clone(),
            kind,
            seed: sample_seed,
        };
        let state = generate(&spec)?;

        let verdicts = match check(&state, tol) {
            Ok(rep) => rep,
            Err(Error::CriterionDisagreement {
                partite,
                norm_deficit,
                minor_max,
            }) => {
                report.disagreements += 1;
                report.counterexample = Some(Counterexample {
                    sample_index: k,
                    kind: kind_name.to_string(),
                    seed: sample_seed,
                    partite: Some(partite + 1),
                    criterion_separable: None,
                    oracle_rank: None,
                    detail: Some(format!(
                        "norm and minor criteria disagree: deficit {norm_deficit:e}, \
                         max scaled minor {minor_max:e}"
                    )),
                    state: StateFile::from_state(&state, None),
                });
                break;
            }
            Err(e) => return Err(e),
        };

        for v in &verdicts.per_partite {
            report.partite_checks += 1;
            if v.borderline {
                report.borderline_flagged += 1;
            }
            let r = state.dims().dim(v.partite) as f64;
            let purity = purity_oracle(&state, v.partite)?;
            let residual = (v.norm_sq - 2.0 * (purity - 1.0 / r)).abs();
            report.worst_purity_residual = report.worst_purity_residual.max(residual);

            let oracle = schmidt(&state, &[v.partite], tol)?;
            let oracle_separable = oracle.rank_at_tol == 1;
            if v.separable {
                report.worst_separable_deficit = report.worst_separable_deficit.max(v.deficit);
                if let Some(m) = v.minor_max {
                    report.worst_separable_minor = report.worst_separable_minor.max(m);
                }
            }
            if v.separable == oracle_separable {
                report.agreements += 1;
            } else {
                report.disagreements += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample {
                        sample_index: k,
                        kind: kind_name.to_string(),
                        seed: sample_seed,
                        partite: Some(v.partite + 1),
                        criterion_separable: Some(v.separable),
                        oracle_rank: Some(oracle.rank_at_tol),
                        detail: None,
                        state: StateFile::from_state(&state, None),
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn print_human(report: &StressReport) {
    let dims: Vec<String> = report.dims.iter().map(|d| d.to_string()).collect();
    println!("dims: ({})", dims.join(","));
    println!(
        "samples: {} (cycling haar, product, near-product eps {:e})",
        report.samples, report.near_product_eps
    );
    println!("seed: {}", report.seed);
    println!("tol: {:e}", report.tol);
    println!("partite checks: {}", report.partite_checks);
    println!("agreements: {}", report.agreements);
    println!("disagreements: {}", report.disagreements);
    println!("borderline flagged: {}", report.borderline_flagged);
    println!(
        "worst separable deficit: {:.6e}",
        report.worst_separable_deficit
    );
    println!(
        "worst separable minor: {:.6e}",
        report.worst_separable_minor
    );
    println!(
        "worst purity residual: {:.6e}",
        report.worst_purity_residual
    );
    match &report.counterexample {
        None => println!("no counterexample found"),
        Some(ce) => {
            println!(
                "counterexample at sample {} ({}, seed {}):",
                ce.sample_index, ce.kind, ce.seed
            );
            if let Some(p) = ce.partite {
                println!("  partite: {p}");
            }
            if let (Some(c), Some(r)) = (ce.criterion_separable, ce.oracle_rank) {
                println!("  criterion separable: {c}, oracle schmidt rank: {r}");
            }
            if let Some(d) = &ce.detail {
                println!("  {d}");
            }
            println!("{}", ce.state.to_json_pretty());
        }
    }
}
