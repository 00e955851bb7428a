//! Entanglement measures built from the coherence-vector norms of all
//! single-partite reductions.
//!
//! Three monotone functions of each reduction are reported side by side
//! (the norm deficit `D_i = 2 (1 - 1/r_i) - |xi_i|^2`, the linear entropy
//! `1 - Tr(rho_i^2) = D_i / 2`, and the von Neumann entropy in bits), plus
//! mean/max aggregates. None of the three is singled out as *the* measure;
//! they all vanish together exactly on the separable partites and peak
//! together on maximally entangled ones.

use crate::basis::{norm_target, GeneratorBasis};
use crate::state::PureState;

/// Measures for one partite's reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct PartiteMeasures {
    /// 0-based partite index.
    pub partite: usize,
    /// `2 (1 - 1/r_i) - |xi_i|^2`, in `[0, 2 (1 - 1/r_i)]` up to rounding.
    pub norm_deficit: f64,
    /// `1 - Tr(rho_i^2)`, always exactly half the deficit.
    pub linear_entropy: f64,
    /// `-sum_k p_k log2 p_k` over the reduction's eigenvalues, in bits.
    pub von_neumann_entropy: f64,
}

/// Per-partite measures plus aggregates over the whole state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub per_partite: Vec<PartiteMeasures>,
    pub mean_deficit: f64,
    pub max_deficit: f64,
    pub mean_von_neumann: f64,
}

/// Computes all per-partite measures of a normalized state.
pub fn measure(state: &PureState) -> MeasureReport {
    let n = state.dims().n();
    let mut per_partite = Vec::with_capacity(n);
    for i in 0..n {
        let rho = state
            .partial_trace(&[i])
            .expect("single in-range partite index");
        let basis = GeneratorBasis::new(rho.dim()).expect("dimension >= 2");
        let norm_sq = basis
            .coherence_vector(&rho, i)
            .expect("basis built for this dimension")
            .norm_squared();
        let norm_deficit = norm_target(rho.dim()) - norm_sq;
        let linear_entropy = 1.0 - rho.purity();
        let von_neumann_entropy = rho
            .eigenvalues()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum::<f64>()
            .max(0.0);
        per_partite.push(PartiteMeasures {
            partite: i,
            norm_deficit,
            linear_entropy,
            von_neumann_entropy,
        });
    }
    let count = n as f64;
    let mean_deficit = per_partite.iter().map(|m| m.norm_deficit).sum::<f64>() / count;
    let max_deficit = per_partite
        .iter()
        .map(|m| m.norm_deficit)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean_von_neumann = per_partite
        .iter()
        .map(|m| m.von_neumann_entropy)
        .sum::<f64>()
        / count;
    MeasureReport {
        per_partite,
        mean_deficit,
        max_deficit,
        mean_von_neumann,
    }
}
