//! Separability decisions for pure multipartite states, and constructive
//! factorization of the separable ones.
//!
//! Two independent computations back every verdict:
//!
//! * the **norm criterion**: partite `i` factors out of the rest iff the
//!   coherence vector of its reduced density matrix saturates the pure-state
//!   bound, `|xi_i|^2 = 2 (1 - 1/r_i)`;
//! * the **minor criterion**: the same holds iff every 2x2 minor of the
//!   amplitude matrix reshaped with partite `i` as the row index vanishes
//!   (a rank-1 condition; for two qubits it degenerates to `ad = bc`).
//!
//! [`check`] runs both and insists they agree. Near the decision threshold
//! the two respond at different rates (the norm deficit is quadratic in the
//! distance from the product manifold while minors are linear), so verdicts
//! inside a narrow band around the threshold carry a `borderline` flag
//! instead of being trusted blindly.

use num_complex::Complex64;

use crate::basis::{norm_target, GeneratorBasis};
use crate::error::{Error, Result};
use crate::state::{fidelity, normalized_subset, tensor, DimVector, PureState};

/// Which computation(s) produced a [`SeparabilityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionKind {
    /// Coherence-vector norms only.
    Norm,
    /// Norms cross-checked against amplitude-matrix minors.
    NormAndMinor,
}

/// Verdict for a single partite.
#[derive(Debug, Clone, PartialEq)]
pub struct PartiteVerdict {
    /// 0-based partite index.
    pub partite: usize,
    /// `|xi|^2` of the reduced density matrix.
    pub norm_sq: f64,
    /// The pure-reduction value `2 (1 - 1/r)`.
    pub target: f64,
    /// `target - norm_sq`; zero (up to rounding) exactly for separable
    /// partites, never meaningfully negative.
    pub deficit: f64,
    /// Largest scaled 2x2 minor across this partite's cut, when the minor
    /// criterion ran.
    pub minor_max: Option<f64>,
    /// Whether this partite factors out of the rest.
    pub separable: bool,
    /// Set when the verdict sits close enough to the decision threshold that
    /// exact arithmetic could plausibly flip it.
    pub borderline: bool,
}

/// Full per-partite separability report.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub criterion: CriterionKind,
    pub tolerance: f64,
    pub per_partite: Vec<PartiteVerdict>,
    pub fully_separable: bool,
}

impl SeparabilityReport {
    /// Indices (0-based) of the partites that factor out of the rest.
    pub fn separable_partites(&self) -> Vec<usize> {
        self.per_partite
            .iter()
            .filter(|v| v.separable)
            .map(|v| v.partite)
            .collect()
    }

    /// Indices (0-based) of partites whose verdict carries the borderline
    /// flag.
    pub fn borderline_partites(&self) -> Vec<usize> {
        self.per_partite
            .iter()
            .filter(|v| v.borderline)
            .map(|v| v.partite)
            .collect()
    }
}

/// A decomposition of a fully separable state into single-partite factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    /// One normalized single-partite state per partite, in order.
    pub factors: Vec<PureState>,
    /// Fidelity of the reassembled tensor product with the input.
    pub residual_fidelity: f64,
}

fn coherence_norm_sq(state: &PureState, partite: usize) -> Result<f64> {
    let rho = state.partial_trace(&[partite])?;
    let basis = GeneratorBasis::new(rho.dim())?;
    Ok(basis.coherence_vector(&rho, partite)?.norm_squared())
}

/// Largest modulus among the 2x2 minors of the cut matrix for `keep`
/// (sorted, validated), scaled by the squared largest amplitude so the
/// threshold is dimensionless.
fn max_scaled_minor(state: &PureState, keep: &[usize]) -> f64 {
    let m = state.cut_matrix_sorted(keep);
    let scale: f64 = state
        .amps()
        .iter()
        .map(|a| a.norm_sqr())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut worst = 0.0f64;
    for a in 0..rows {
        for b in (a + 1)..rows {
            for c in 0..cols {
                for d in (c + 1)..cols {
                    let minor = m[(a, c)] * m[(b, d)] - m[(a, d)] * m[(b, c)];
                    worst = worst.max(minor.norm());
                }
            }
        }
    }
    worst / scale
}

/// Borderline band: the verdict is suspect when the deficit lands within a
/// factor of 10 of the threshold on the entangled side, or when the two
/// criteria pull in different directions while the deficit is still small.
fn is_borderline(deficit: f64, tol: f64, tension: bool) -> bool {
    deficit <= 10.0 * tol && (tension || deficit > tol)
}

/// Decides per-partite separability from coherence-vector norms alone.
///
/// Partite `i` is marked separable iff `2 (1 - 1/r_i) - |xi_i|^2 <= tol`.
/// The state must be normalized and `tol` positive.
pub fn check_norm_criterion(state: &PureState, tol: f64) -> Result<SeparabilityReport> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = state.dims().n();
    let mut per_partite = Vec::with_capacity(n);
    for i in 0..n {
        let norm_sq = coherence_norm_sq(state, i)?;
        let target = norm_target(state.dims().dim(i));
        let deficit = target - norm_sq;
        let separable = deficit <= tol;
        per_partite.push(PartiteVerdict {
            partite: i,
            norm_sq,
            target,
            deficit,
            minor_max: None,
            separable,
            borderline: is_borderline(deficit, tol, false),
        });
    }
    let fully_separable = per_partite.iter().all(|v| v.separable);
    Ok(SeparabilityReport {
        criterion: CriterionKind::Norm,
        tolerance: tol,
        per_partite,
        fully_separable,
    })
}

/// Minor criterion for one partite: true iff every 2x2 minor of the
/// amplitude matrix with partite `i` as the row index is at most `tol`
/// after scaling.
///
/// For dimension vectors (2,2), (3,3) and (2,2,2) the enumerated minors are
/// exactly the classic closed-form coefficient conditions (`ad = bc` and
/// friends).
pub fn check_minor_criterion(state: &PureState, partite: usize, tol: f64) -> Result<bool> {
    let n = state.dims().n();
    if partite >= n {
        return Err(Error::BadIndex { index: partite, n });
    }
    if n == 1 {
        // a single partite is trivially separable; there are no minors
        return Ok(true);
    }
    Ok(max_scaled_minor(state, &[partite]) <= tol)
}

/// Runs the norm and minor criteria together and cross-checks them.
///
/// The per-partite verdict is the conjunction of the two criteria; the
/// separable partites are exactly those whose single-partite reduction is
/// pure. A disagreement outside the borderline band aborts with
/// [`Error::CriterionDisagreement`] since it indicates tolerance
/// miscalibration rather than anything about the state.
pub fn check(state: &PureState, tol: f64) -> Result<SeparabilityReport> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = state.dims().n();
    let mut per_partite = Vec::with_capacity(n);
    for i in 0..n {
        let norm_sq = coherence_norm_sq(state, i)?;
        let target = norm_target(state.dims().dim(i));
        let deficit = target - norm_sq;
        let norm_sep = deficit <= tol;
        let minor_max = if n == 1 {
            0.0
        } else {
            max_scaled_minor(state, &[i])
        };
        let minor_sep = minor_max <= tol;
        let tension = norm_sep != minor_sep;
        let borderline = is_borderline(deficit, tol, tension);
        if tension && !borderline {
            return Err(Error::CriterionDisagreement {
                partite: i,
                norm_deficit: deficit,
                minor_max,
            });
        }
        per_partite.push(PartiteVerdict {
            partite: i,
            norm_sq,
            target,
            deficit,
            minor_max: Some(minor_max),
            separable: norm_sep && minor_sep,
            borderline,
        });
    }
    let fully_separable = per_partite.iter().all(|v| v.separable);
    Ok(SeparabilityReport {
        criterion: CriterionKind::NormAndMinor,
        tolerance: tol,
        per_partite,
        fully_separable,
    })
}

/// True iff the partites in `subset` jointly factor out of the rest: the
/// amplitude matrix across the subset-vs-rest cut has rank 1, i.e. all its
/// 2x2 minors vanish within `tol` after scaling.
pub fn bipartition_separable(state: &PureState, subset: &[usize], tol: f64) -> Result<bool> {
    let keep = normalized_subset(subset, state.dims().n(), true)?;
    Ok(max_scaled_minor(state, &keep) <= tol)
}

/// Factorizes a fully separable state into normalized single-partite
/// factors whose tensor product reproduces it.
///
/// The pivot is the multi-index of the largest-modulus amplitude (lowest
/// index on ties); factor `i` is the amplitude slice along partite `i`
/// through the pivot. Each factor is gauged to have a real nonnegative
/// entry at its pivot component, and the input's global phase is absorbed
/// into the first factor.
pub fn factorize(state: &PureState, tol: f64) -> Result<Factorization> {
    let report = check(state, tol)?;
    if !report.fully_separable {
        let failing: Vec<usize> = report
            .per_partite
            .iter()
            .filter(|v| !v.separable)
            .map(|v| v.partite)
            .collect();
        return Err(Error::NotSeparable(failing));
    }

    let dims = state.dims();
    let n = dims.n();
    let amps = state.amps();
    let pivot_flat = amps
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap())
        .map(|(idx, _)| idx)
        .ok_or(Error::ZeroState)?;
    let pivot = dims.unflatten(pivot_flat);
    let strides = dims.strides();

    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        let r = dims.dim(i);
        let base = pivot_flat - pivot[i] * strides[i];
        let slice: Vec<Complex64> = (0..r).map(|x| amps[base + x * strides[i]]).collect();
        let factor = PureState::new(DimVector::new(vec![r])?, slice)?.normalize()?;
        // rotate the pivot component onto the positive real axis
        let pivot_amp = factor.amps()[pivot[i]];
        let phase = pivot_amp / Complex64::new(pivot_amp.norm(), 0.0);
        let gauged: Vec<Complex64> = factor.amps().iter().map(|a| a / phase).collect();
        factors.push(PureState::new(DimVector::new(vec![r])?, gauged)?);
    }

    // absorb the input's global phase into the first factor
    let global = amps[pivot_flat] / Complex64::new(amps[pivot_flat].norm(), 0.0);
    let first: Vec<Complex64> = factors[0].amps().iter().map(|a| a * global).collect();
    factors[0] = PureState::new(factors[0].dims().clone(), first)?;

    let reassembled = tensor(&factors)?;
    let residual_fidelity = fidelity(&reassembled, state)?;
    Ok(Factorization {
        factors,
        residual_fidelity,
    })
}
