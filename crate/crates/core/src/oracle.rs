//! Independent ground truth for the separability criteria: Schmidt data from
//! a plain SVD of the cut-reshaped amplitude matrix, reduced-state purity
//! computed directly, and seeded random state generation for property tests
//! and stress runs.
//!
//! Nothing in here touches the generator-basis machinery, so agreement
//! between this module and [`crate::separability`] is a real cross-check
//! rather than the same computation twice.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::state::{normalized_subset, tensor, DimVector, PureState};

/// Singular-value data of a state across one bipartite cut.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtData {
    /// The partites forming the row side of the cut, sorted ascending.
    pub cut: Vec<usize>,
    /// Singular values, nonincreasing. Their squares sum to 1 for a
    /// normalized input.
    pub singular_values: Vec<f64>,
    /// Number of singular values above the tolerance; 1 means product
    /// across the cut.
    pub rank_at_tol: usize,
}

/// Schmidt decomposition data across the `cut`-vs-rest bipartition.
///
/// `cut` must be a proper nonempty subset of the partites.
pub fn schmidt(state: &PureState, cut: &[usize], tol: f64) -> Result<SchmidtData> {
    let cut = normalized_subset(cut, state.dims().n(), true)?;
    let m = state.cut_matrix_sorted(&cut);
    let svd = m.svd(false, false);
    let mut singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank_at_tol = singular_values.iter().filter(|&&s| s > tol).count();
    Ok(SchmidtData {
        cut,
        singular_values,
        rank_at_tol,
    })
}

/// `Tr(rho_i^2)` of the reduced state of partite `i`, computed directly from
/// the partial trace.
pub fn purity_oracle(state: &PureState, partite: usize) -> Result<f64> {
    let rho = state.partial_trace(&[partite])?;
    Ok(rho.purity())
}

/// Families of test states the generator can produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateKind {
    /// i.i.d. complex Gaussian amplitudes, normalized; Haar-distributed on
    /// the unit sphere.
    HaarLike,
    /// Tensor product of independent HaarLike single-partite factors.
    Product,
    /// `(|0..0> + |r-1 .. r-1>) / sqrt(2)`; requires all local dimensions
    /// equal and at least two partites.
    Ghz,
    /// Equal superposition of the single-excitation basis states; requires
    /// all-qubit dimensions and at least two partites.
    W,
    /// The two-qubit state `(|00> + |11>) / sqrt(2)`; requires dims (2,2).
    Bell,
    /// A Product draw with `eps`-scaled Gaussian noise added and the result
    /// renormalized; probes the borderline band around the criterion
    /// threshold.
    BiasedNearProduct { eps: f64 },
}

/// A fully deterministic recipe for one random state: dimension vector,
/// family, and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub dims: DimVector,
    pub kind: StateKind,
    pub seed: u64,
}

fn gaussian_amps(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect()
}

fn haar_like(rng: &mut ChaCha8Rng, dims: &DimVector) -> Result<PureState> {
    loop {
        let amps = gaussian_amps(rng, dims.total());
        let state = PureState::new(dims.clone(), amps)?;
        match state.normalize() {
            Ok(s) => return Ok(s),
            Err(Error::ZeroState) => continue,
            Err(e) => return Err(e),
        }
    }
}

fn product(rng: &mut ChaCha8Rng, dims: &DimVector) -> Result<PureState> {
    let factors: Vec<PureState> = dims
        .dims()
        .iter()
        .map(|&r| haar_like(rng, &DimVector::new(vec![r])?))
        .collect::<Result<_>>()?;
    tensor(&factors)
}

/// Generates the state described by `spec`. The same spec always yields the
/// bit-identical state.
pub fn generate(spec: &RandomSpec) -> Result<PureState> {
    let dims = &spec.dims;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        StateKind::HaarLike => haar_like(&mut rng, dims),
        StateKind::Product => product(&mut rng, dims),
        StateKind::BiasedNearProduct { eps } => {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Error::BadSpec {
                    reason: format!("near-product noise scale must be finite and nonnegative, got {eps}"),
                });
            }
            let base = product(&mut rng, dims)?;
            let noise = gaussian_amps(&mut rng, dims.total());
            let amps: Vec<Complex64> = base
                .amps()
                .iter()
                .zip(noise.iter())
                .map(|(a, g)| a + g * eps)
                .collect();
            PureState::new(dims.clone(), amps)?.normalize()
        }
        StateKind::Bell => {
            if dims.dims() != [2, 2] {
                return Err(Error::BadSpec {
                    reason: format!("bell requires dims (2,2), got {dims}"),
                });
            }
            let r2 = std::f64::consts::FRAC_1_SQRT_2;
            PureState::from_pairs(vec![2, 2], &[(r2, 0.0), (0.0, 0.0), (0.0, 0.0), (r2, 0.0)])
        }
        StateKind::Ghz => {
            let r = dims.dim(0);
            if dims.n() < 2 || dims.dims().iter().any(|&d| d != r) {
                return Err(Error::BadSpec {
                    reason: format!("ghz requires at least two equal local dimensions, got {dims}"),
                });
            }
            let mut amps = vec![Complex64::ZERO; dims.total()];
            let r2 = std::f64::consts::FRAC_1_SQRT_2;
            amps[0] = Complex64::new(r2, 0.0);
            amps[dims.total() - 1] = Complex64::new(r2, 0.0);
            PureState::new(dims.clone(), amps)
        }
        StateKind::W => {
            let n = dims.n();
            if n < 2 || dims.dims().iter().any(|&d| d != 2) {
                return Err(Error::BadSpec {
                    reason: format!("w requires at least two qubits, got {dims}"),
                });
            }
            let mut amps = vec![Complex64::ZERO; dims.total()];
            let coeff = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            let strides = dims.strides();
            for stride in strides {
                amps[stride] = coeff;
            }
            PureState::new(dims.clone(), amps)
        }
    }
}

/// A Haar-distributed random unitary, built from the QR decomposition of a
/// complex Ginibre matrix with the phases of R's diagonal folded into Q.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 {
            Complex64::ONE
        } else {
            d / Complex64::new(d.norm(), 0.0)
        };
        for i in 0..dim {
            u[(i, j)] *= phase;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const R2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn state(dims: &[usize], reals: &[f64]) -> PureState {
        let pairs: Vec<(f64, f64)> = reals.iter().map(|&x| (x, 0.0)).collect();
        PureState::from_pairs(dims.to_vec(), &pairs).unwrap()
    }

    fn spec(dims: &[usize], kind: StateKind, seed: u64) -> RandomSpec {
        RandomSpec {
            dims: DimVector::new(dims.to_vec()).unwrap(),
            kind,
            seed,
        }
    }

    #[test]
    fn schmidt_of_bell_has_two_equal_singular_values() {
        let bell = generate(&spec(&[2, 2], StateKind::Bell, 0)).unwrap();
        let data = schmidt(&bell, &[0], 1e-8).unwrap();
        assert_eq!(data.rank_at_tol, 2);
        assert_abs_diff_eq!(data.singular_values[0], R2, epsilon = 1e-12);
        assert_abs_diff_eq!(data.singular_values[1], R2, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_of_product_state_has_rank_one() {
        let s = generate(&spec(&[2, 3, 2], StateKind::Product, 7)).unwrap();
        for i in 0..3 {
            let data = schmidt(&s, &[i], 1e-8).unwrap();
            assert_eq!(data.rank_at_tol, 1, "cut {{{i}}}");
        }
    }

    #[test]
    fn schmidt_of_w_state_first_cut() {
        let w = generate(&spec(&[2, 2, 2], StateKind::W, 0)).unwrap();
        let data = schmidt(&w, &[0], 1e-8).unwrap();
        assert_eq!(data.rank_at_tol, 2);
        assert_abs_diff_eq!(data.singular_values[0], (2.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(data.singular_values[1], (1.0f64 / 3.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn schmidt_squares_sum_to_one() {
        let s = generate(&spec(&[2, 3, 3], StateKind::HaarLike, 31)).unwrap();
        for cut in [vec![0], vec![1], vec![2], vec![0, 2]] {
            let data = schmidt(&s, &cut, 1e-8).unwrap();
            let total: f64 = data.singular_values.iter().map(|s| s * s).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn schmidt_rejects_improper_cuts() {
        let bell = generate(&spec(&[2, 2], StateKind::Bell, 0)).unwrap();
        assert!(schmidt(&bell, &[], 1e-8).is_err());
        assert!(schmidt(&bell, &[0, 1], 1e-8).is_err());
        assert!(schmidt(&bell, &[4], 1e-8).is_err());
    }

    #[test]
    fn purity_oracle_fixed_points() {
        let product = state(&[2, 2], &[R2, R2, 0.0, 0.0]);
        assert_abs_diff_eq!(purity_oracle(&product, 0).unwrap(), 1.0, epsilon = 1e-12);

        let bell = generate(&spec(&[2, 2], StateKind::Bell, 0)).unwrap();
        assert_abs_diff_eq!(purity_oracle(&bell, 0).unwrap(), 0.5, epsilon = 1e-12);

        let w = generate(&spec(&[2, 2, 2], StateKind::W, 0)).unwrap();
        assert_abs_diff_eq!(purity_oracle(&w, 0).unwrap(), 5.0 / 9.0, epsilon = 1e-12);

        assert!(purity_oracle(&bell, 9).is_err());
    }

    #[test]
    fn generate_is_deterministic_in_the_seed() {
        let a = generate(&spec(&[2, 3], StateKind::HaarLike, 123)).unwrap();
        let b = generate(&spec(&[2, 3], StateKind::HaarLike, 123)).unwrap();
        assert_eq!(a, b);
        let c = generate(&spec(&[2, 3], StateKind::HaarLike, 124)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_product_states_have_vanishing_minors() {
        for seed in 0..20 {
            let s = generate(&spec(&[2, 2], StateKind::Product, seed)).unwrap();
            let a = s.amps();
            let minor = (a[0] * a[3] - a[1] * a[2]).norm();
            assert!(minor <= 1e-12, "seed {seed}: |ad - bc| = {minor:e}");
        }
    }

    #[test]
    fn ghz_amplitudes_sit_at_the_ends() {
        let g = generate(&spec(&[2, 2, 2], StateKind::Ghz, 0)).unwrap();
        assert_abs_diff_eq!(g.amps()[0].re, R2, epsilon = 1e-15);
        assert_abs_diff_eq!(g.amps()[7].re, R2, epsilon = 1e-15);
        let mid: f64 = g.amps()[1..7].iter().map(|a| a.norm()).sum();
        assert_eq!(mid, 0.0);
    }

    #[test]
    fn kind_validation_errors() {
        assert!(matches!(
            generate(&spec(&[2, 3], StateKind::Bell, 0)),
            Err(Error::BadSpec { .. })
        ));
        assert!(matches!(
            generate(&spec(&[2, 3], StateKind::Ghz, 0)),
            Err(Error::BadSpec { .. })
        ));
        assert!(matches!(
            generate(&spec(&[2, 3], StateKind::W, 0)),
            Err(Error::BadSpec { .. })
        ));
    }

    #[test]
    fn near_product_states_stay_close_to_products() {
        let s = generate(&spec(&[2, 2, 2], StateKind::BiasedNearProduct { eps: 1e-6 }, 5)).unwrap();
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        for i in 0..3 {
            let p = purity_oracle(&s, i).unwrap();
            assert!(1.0 - p < 1e-9, "partite {i}: purity {p}");
            assert!(1.0 - p > 0.0, "noise should not vanish entirely");
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for dim in [2usize, 3, 4] {
            let u = random_unitary(dim, &mut rng);
            let id = &u * u.adjoint();
            let eye = DMatrix::<Complex64>::identity(dim, dim);
            assert!((id - eye).camax() < 1e-12);
        }
    }

    #[test]
    fn rank_one_cuts_coincide_with_pure_reductions() {
        // away from the borderline band, a rank-1 cut and a pure reduction
        // are the same statement at matched tolerances
        for seed in 0..30u64 {
            let kind = if seed % 2 == 0 {
                StateKind::HaarLike
            } else {
                StateKind::Product
            };
            let s = generate(&spec(&[2, 3, 2], kind, seed)).unwrap();
            for i in 0..3 {
                let rank1 = schmidt(&s, &[i], 1e-8).unwrap().rank_at_tol == 1;
                let pure = (1.0 - purity_oracle(&s, i).unwrap()).abs() <= 1e-9;
                assert_eq!(rank1, pure, "seed {seed} partite {i}");
            }
        }
    }

    #[test]
    fn purity_identity_against_coherence_norm() {
        // |xi|^2 = 2 (purity - 1/r): cross-module master check
        use crate::basis::GeneratorBasis;
        for seed in 0..10 {
            let s = generate(&spec(&[2, 3, 2], StateKind::HaarLike, seed)).unwrap();
            for i in 0..3 {
                let rho = s.partial_trace(&[i]).unwrap();
                let b = GeneratorBasis::new(rho.dim()).unwrap();
                let norm_sq = b.coherence_vector(&rho, i).unwrap().norm_squared();
                let purity = purity_oracle(&s, i).unwrap();
                let r = s.dims().dim(i) as f64;
                assert_abs_diff_eq!(norm_sq, 2.0 * (purity - 1.0 / r), epsilon = 1e-10);
            }
        }
    }
}
