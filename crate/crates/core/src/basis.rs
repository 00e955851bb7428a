//! Generalized SU(r) generator bases and the coherence vectors and
//! correlation tensors they induce.
//!
//! Every density matrix on an `r`-dimensional space expands as
//!
//! ```text
//! rho = I/r + (1/2) * sum_m  xi_m * lambda_m
//! ```
//!
//! over `r^2 - 1` Hermitian traceless generators normalized to
//! `Tr(lambda_a lambda_b) = 2 delta_ab`. The real coefficient vector `xi`
//! (the coherence vector, a.k.a. Bloch vector for qubits) carries all the
//! information in `rho` beyond its trace; in particular
//!
//! ```text
//! |xi|^2 = 2 * (Tr(rho^2) - 1/r)
//! ```
//!
//! so the norm of the coherence vector of a reduced state measures the purity
//! of that reduction. That identity is the backbone of the separability
//! criteria in [`crate::separability`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{DensityMatrix, DimVector, PureState};

/// Normalization of the identity component `lambda^0` used when expanding a
/// state over the full operator basis `{lambda^0, lambda^1, ...}`.
///
/// The traceless generators are the same either way; only the tensor
/// expansion in [`correlation_tensor`] is affected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentityNormalization {
    /// `lambda^0 = sqrt(2/r) * I`, giving `Tr((lambda^0)^2) = 2` like every
    /// other generator. Single-axis tensor slices then relate to coherence
    /// components by `xi_m = prod_{j != i} sqrt(r_j / 2) * a_{0..m..0}`,
    /// which for all-qutrit systems is the factor `(sqrt(6)/2)^(n-1)`.
    #[default]
    TraceUniform,
    /// `lambda^0 = (2/r) * I`, giving `Tr(lambda^0) = 2` for every dimension.
    /// The all-identity coefficient of any state is then exactly 1 and
    /// single-axis slices equal the coherence components directly:
    /// `a_{0..m..0} = xi_m` for any dimension vector.
    UnitWeight,
}

/// The `r^2 - 1` generators of SU(r), Hermitian and traceless with
/// `Tr(lambda_a lambda_b) = 2 delta_ab`, plus a normalized identity
/// component.
///
/// For `r = 2` the generators are the Pauli matrices and for `r = 3` the
/// Gell-Mann matrices, both in conventional order. For larger `r` the
/// ordering is: all symmetric off-diagonal pairs, then all antisymmetric
/// off-diagonal pairs (each `(j, k)` with `j < k` in lexicographic order),
/// then the diagonal generators. Norm-based quantities are invariant under
/// this ordering choice.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<DMatrix<Complex64>>,
    identity_normalization: IdentityNormalization,
}

fn sym_pair(r: usize, j: usize, k: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(r, r);
    m[(j, k)] = Complex64::new(1.0, 0.0);
    m[(k, j)] = Complex64::new(1.0, 0.0);
    m
}

fn antisym_pair(r: usize, j: usize, k: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(r, r);
    m[(j, k)] = Complex64::new(0.0, -1.0);
    m[(k, j)] = Complex64::new(0.0, 1.0);
    m
}

/// Diagonal generator `sqrt(2 / (l (l+1))) * diag(1, ..., 1, -l, 0, ...)`
/// with `l` ones.
fn diagonal(r: usize, l: usize) -> DMatrix<Complex64> {
    let scale = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
    let mut m = DMatrix::zeros(r, r);
    for j in 0..l {
        m[(j, j)] = Complex64::new(scale, 0.0);
    }
    m[(l, l)] = Complex64::new(-scale * l as f64, 0.0);
    m
}

impl GeneratorBasis {
    /// Builds the generator basis for SU(r) with the default
    /// [`IdentityNormalization::TraceUniform`] identity component.
    pub fn new(r: usize) -> Result<Self> {
        Self::with_normalization(r, IdentityNormalization::default())
    }

    pub fn with_normalization(r: usize, norm: IdentityNormalization) -> Result<Self> {
        if r < 2 {
            return Err(Error::BadDimension(r));
        }
        let generators = if r == 3 {
            // Conventional Gell-Mann order interleaves the (0,1), (0,2) and
            // (1,2) pairs with the first diagonal in third place.
            vec![
                sym_pair(3, 0, 1),
                antisym_pair(3, 0, 1),
                diagonal(3, 1),
                sym_pair(3, 0, 2),
                antisym_pair(3, 0, 2),
                sym_pair(3, 1, 2),
                antisym_pair(3, 1, 2),
                diagonal(3, 2),
            ]
        } else {
            // For r = 2 this grouped order coincides with the Pauli order.
            let mut gens = Vec::with_capacity(r * r - 1);
            for j in 0..r {
                for k in (j + 1)..r {
                    gens.push(sym_pair(r, j, k));
                }
            }
            for j in 0..r {
                for k in (j + 1)..r {
                    gens.push(antisym_pair(r, j, k));
                }
            }
            for l in 1..r {
                gens.push(diagonal(r, l));
            }
            gens
        };
        Ok(GeneratorBasis {
            dim: r,
            generators,
            identity_normalization: norm,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The traceless generators, `r^2 - 1` of them.
    pub fn generators(&self) -> &[DMatrix<Complex64>] {
        &self.generators
    }

    pub fn identity_normalization(&self) -> IdentityNormalization {
        self.identity_normalization
    }

    /// The normalized identity component `lambda^0`.
    pub fn identity_component(&self) -> DMatrix<Complex64> {
        let factor = match self.identity_normalization {
            IdentityNormalization::TraceUniform => (2.0 / self.dim as f64).sqrt(),
            IdentityNormalization::UnitWeight => 2.0 / self.dim as f64,
        };
        DMatrix::identity(self.dim, self.dim) * Complex64::new(factor, 0.0)
    }

    /// Generator indexed with `0` meaning the identity component and `m >= 1`
    /// meaning `lambda_m`.
    fn operator(&self, mu: usize) -> DMatrix<Complex64> {
        if mu == 0 {
            self.identity_component()
        } else {
            self.generators[mu - 1].clone()
        }
    }

    /// `Tr((lambda^mu)^2)` for the extended index convention of
    /// [`Self::operator`].
    fn operator_norm_sq(&self, mu: usize) -> f64 {
        if mu == 0 {
            match self.identity_normalization {
                IdentityNormalization::TraceUniform => 2.0,
                IdentityNormalization::UnitWeight => 4.0 / self.dim as f64,
            }
        } else {
            2.0
        }
    }

    /// Coherence vector of a density matrix: `xi_m = Tr(rho lambda_m)`.
    pub fn coherence_vector(&self, rho: &DensityMatrix, partite: usize) -> Result<CoherenceVector> {
        if rho.dim() != self.dim {
            return Err(Error::DimMismatch {
                left: rho.dim(),
                right: self.dim,
            });
        }
        let values = self
            .generators
            .iter()
            .map(|g| trace_product(rho.matrix(), g).re)
            .collect();
        Ok(CoherenceVector { partite, values })
    }

    /// Rebuilds `rho = I/r + (1/2) sum_m xi_m lambda_m` from a coherence
    /// vector.
    pub fn reconstruct(&self, xi: &CoherenceVector) -> Result<DMatrix<Complex64>> {
        if xi.values.len() != self.generators.len() {
            return Err(Error::DimMismatch {
                left: xi.values.len(),
                right: self.generators.len(),
            });
        }
        let r = self.dim;
        let mut m = DMatrix::identity(r, r) * Complex64::new(1.0 / r as f64, 0.0);
        for (v, g) in xi.values.iter().zip(self.generators.iter()) {
            m += g * Complex64::new(0.5 * v, 0.0);
        }
        Ok(m)
    }
}

/// `Tr(a b)` without forming the product matrix.
fn trace_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut t = Complex64::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            t += a[(j, k)] * b[(k, j)];
        }
    }
    t
}

/// Real expansion coefficients of a single-partite density matrix over the
/// traceless generators.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVector {
    /// Which partite this reduction belongs to (0-based).
    pub partite: usize,
    /// `xi_m = Tr(rho lambda_m)`, length `r^2 - 1`.
    pub values: Vec<f64>,
}

impl CoherenceVector {
    /// `|xi|^2 = sum_m xi_m^2`, which equals `2 (Tr(rho^2) - 1/r)`.
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// The largest attainable `|xi|^2` for an `r`-dimensional density matrix,
/// reached exactly by pure states: `2 (1 - 1/r)`.
pub fn norm_target(r: usize) -> f64 {
    2.0 * (1.0 - 1.0 / r as f64)
}

/// Real coefficient tensor of a multipartite density matrix over products of
/// local generators:
///
/// ```text
/// rho = (1/2^n) * sum_{mu_1..mu_n} a_{mu_1..mu_n} lambda^{mu_1} x ... x lambda^{mu_n}
/// ```
///
/// with `mu_i = 0` denoting the identity component of partite `i`. Entries
/// are stored flat, row-major with the last axis fastest, axis `i` running
/// over `0..r_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    dims: DimVector,
    axis_lens: Vec<usize>,
    entries: Vec<f64>,
}

impl CorrelationTensor {
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// Axis lengths `r_i^2`.
    pub fn axis_lens(&self) -> &[usize] {
        &self.axis_lens
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, mu: &[usize]) -> f64 {
        self.entries[self.flatten(mu)]
    }

    fn flatten(&self, mu: &[usize]) -> usize {
        debug_assert_eq!(mu.len(), self.axis_lens.len());
        mu.iter()
            .zip(self.axis_lens.iter())
            .fold(0, |acc, (&m, &len)| {
                debug_assert!(m < len);
                acc * len + m
            })
    }
}

/// Expands a pure state's projector over products of local generators.
///
/// `bases[i]` must be the generator basis for dimension `r_i`; the identity
/// normalization of each basis decides the scale of entries with `mu_i = 0`.
pub fn correlation_tensor(state: &PureState, bases: &[GeneratorBasis]) -> Result<CorrelationTensor> {
    let dims = state.dims();
    let n = dims.n();
    if bases.len() != n {
        return Err(Error::DimMismatch {
            left: bases.len(),
            right: n,
        });
    }
    for (b, &r) in bases.iter().zip(dims.dims()) {
        if b.dim() != r {
            return Err(Error::DimMismatch {
                left: b.dim(),
                right: r,
            });
        }
    }

    let axis_lens: Vec<usize> = dims.dims().iter().map(|&r| r * r).collect();
    let total: usize = axis_lens.iter().product();
    let rho = state.density();
    let strides = dims.strides();
    let two_pow_n = (1u64 << n) as f64;

    let mut entries = vec![0.0f64; total];
    let mut mu = vec![0usize; n];
    for (flat, slot) in entries.iter_mut().enumerate() {
        // decompose flat into the multi-index mu
        let mut rest = flat;
        for axis in (0..n).rev() {
            mu[axis] = rest % axis_lens[axis];
            rest /= axis_lens[axis];
        }
        let ops: Vec<DMatrix<Complex64>> = mu
            .iter()
            .zip(bases.iter())
            .map(|(&m, b)| b.operator(m))
            .collect();
        // Tr(rho * op_1 x ... x op_n) contracted without building the
        // Kronecker product.
        let mut tr = Complex64::new(0.0, 0.0);
        let total_dim = dims.total();
        for j in 0..total_dim {
            for k in 0..total_dim {
                let mut prod = rho.entry(j, k);
                if prod == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (axis, op) in ops.iter().enumerate() {
                    let r = dims.dim(axis);
                    let jd = (j / strides[axis]) % r;
                    let kd = (k / strides[axis]) % r;
                    prod *= op[(kd, jd)];
                }
                tr += prod;
            }
        }
        let norm_prod: f64 = mu
            .iter()
            .zip(bases.iter())
            .map(|(&m, b)| b.operator_norm_sq(m))
            .product();
        debug_assert!(
            tr.im.abs() < 1e-10,
            "correlation entry has imaginary residue {:e}",
            tr.im
        );
        *slot = two_pow_n * tr.re / norm_prod;
    }
    Ok(CorrelationTensor {
        dims: dims.clone(),
        axis_lens,
        entries,
    })
}

/// Rebuilds the density matrix encoded by a correlation tensor; inverse of
/// [`correlation_tensor`] up to floating-point error.
pub fn reconstruct_density(tensor: &CorrelationTensor, bases: &[GeneratorBasis]) -> Result<DMatrix<Complex64>> {
    let dims = &tensor.dims;
    let n = dims.n();
    if bases.len() != n {
        return Err(Error::DimMismatch {
            left: bases.len(),
            right: n,
        });
    }
    let total_dim = dims.total();
    let strides = dims.strides();
    let scale = 1.0 / (1u64 << n) as f64;
    let mut rho = DMatrix::<Complex64>::zeros(total_dim, total_dim);
    let mut mu = vec![0usize; n];
    for (flat, &a) in tensor.entries.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let mut rest = flat;
        for axis in (0..n).rev() {
            mu[axis] = rest % tensor.axis_lens[axis];
            rest /= tensor.axis_lens[axis];
        }
        let ops: Vec<DMatrix<Complex64>> = mu
            .iter()
            .zip(bases.iter())
            .map(|(&m, b)| b.operator(m))
            .collect();
        let coeff = Complex64::new(scale * a, 0.0);
        for j in 0..total_dim {
            for k in 0..total_dim {
                let mut prod = coeff;
                for (axis, op) in ops.iter().enumerate() {
                    let r = dims.dim(axis);
                    let jd = (j / strides[axis]) % r;
                    let kd = (k / strides[axis]) % r;
                    prod *= op[(jd, kd)];
                }
                rho[(j, k)] += prod;
            }
        }
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state(dims: &[usize], reals: &[f64]) -> PureState {
        let pairs: Vec<(f64, f64)> = reals.iter().map(|&x| (x, 0.0)).collect();
        PureState::from_pairs(dims.to_vec(), &pairs).unwrap()
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = GeneratorBasis::new(2).unwrap();
        assert_eq!(b.generators().len(), 3);
        let sx = &b.generators()[0];
        let sy = &b.generators()[1];
        let sz = &b.generators()[2];
        assert_eq!(sx[(0, 1)], c(1.0, 0.0));
        assert_eq!(sx[(1, 0)], c(1.0, 0.0));
        assert_eq!(sy[(0, 1)], c(0.0, -1.0));
        assert_eq!(sy[(1, 0)], c(0.0, 1.0));
        assert_eq!(sz[(0, 0)], c(1.0, 0.0));
        assert_eq!(sz[(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn qutrit_basis_is_gell_mann_in_conventional_order() {
        let b = GeneratorBasis::new(3).unwrap();
        assert_eq!(b.generators().len(), 8);
        let g = b.generators();
        // lambda_1, lambda_2 act on the (0,1) block, lambda_3 = diag(1,-1,0)
        assert_eq!(g[0][(0, 1)], c(1.0, 0.0));
        assert_eq!(g[1][(0, 1)], c(0.0, -1.0));
        assert_eq!(g[2][(0, 0)], c(1.0, 0.0));
        assert_eq!(g[2][(1, 1)], c(-1.0, 0.0));
        assert_eq!(g[2][(2, 2)], c(0.0, 0.0));
        // lambda_4, lambda_5 on (0,2); lambda_6, lambda_7 on (1,2)
        assert_eq!(g[3][(0, 2)], c(1.0, 0.0));
        assert_eq!(g[4][(0, 2)], c(0.0, -1.0));
        assert_eq!(g[5][(1, 2)], c(1.0, 0.0));
        assert_eq!(g[6][(1, 2)], c(0.0, -1.0));
        // lambda_8 = diag(1, 1, -2)/sqrt(3)
        let s3 = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(g[7][(0, 0)].re, s3, epsilon = 1e-15);
        assert_abs_diff_eq!(g[7][(1, 1)].re, s3, epsilon = 1e-15);
        assert_abs_diff_eq!(g[7][(2, 2)].re, -2.0 * s3, epsilon = 1e-15);
    }

    #[test]
    fn bases_are_hermitian_traceless_orthogonal() {
        for r in 2..=6 {
            let b = GeneratorBasis::new(r).unwrap();
            assert_eq!(b.generators().len(), r * r - 1);
            for (i, g) in b.generators().iter().enumerate() {
                assert!((g - g.adjoint()).camax() < 1e-15, "r={r} gen {i} not Hermitian");
                assert!(g.trace().norm() < 1e-15, "r={r} gen {i} not traceless");
                for (j, h) in b.generators().iter().enumerate() {
                    let t = trace_product(g, h);
                    let want = if i == j { 2.0 } else { 0.0 };
                    assert_abs_diff_eq!(t.re, want, epsilon = 1e-12);
                    assert_abs_diff_eq!(t.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_dimension_below_two() {
        assert!(GeneratorBasis::new(1).is_err());
        assert!(GeneratorBasis::new(0).is_err());
    }

    #[test]
    fn coherence_vector_of_maximally_mixed_qubit_vanishes() {
        let rho = DensityMatrix::new(
            DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]),
        )
        .unwrap();
        let b = GeneratorBasis::new(2).unwrap();
        let xi = b.coherence_vector(&rho, 0).unwrap();
        assert_eq!(xi.values.len(), 3);
        for v in &xi.values {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(xi.norm_squared(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coherence_vector_of_ground_state_points_along_z() {
        let rho = state(&[2], &[1.0, 0.0]).density();
        let b = GeneratorBasis::new(2).unwrap();
        let xi = b.coherence_vector(&rho, 0).unwrap();
        assert_abs_diff_eq!(xi.values[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xi.values[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xi.values[2], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xi.norm_squared(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn coherence_vector_of_w_state_reduction() {
        let rho = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(2.0 / 3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / 3.0, 0.0)],
        ))
        .unwrap();
        let b = GeneratorBasis::new(2).unwrap();
        let xi = b.coherence_vector(&rho, 0).unwrap();
        assert_abs_diff_eq!(xi.values[2], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xi.norm_squared(), 1.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn coherence_vector_rejects_mismatched_dimension() {
        let rho = state(&[2], &[1.0, 0.0]).density();
        let b = GeneratorBasis::new(3).unwrap();
        assert!(b.coherence_vector(&rho, 0).is_err());
    }

    #[test]
    fn reconstruction_recovers_the_density_matrix() {
        let s = state(&[3], &[0.6, 0.0, 0.8]);
        let rho = s.density();
        let b = GeneratorBasis::new(3).unwrap();
        let xi = b.coherence_vector(&rho, 0).unwrap();
        let back = b.reconstruct(&xi).unwrap();
        assert!((rho.matrix() - back).camax() < 1e-10);
    }

    #[test]
    fn norm_targets_for_pure_reductions() {
        // single-partite pure states saturate the norm bound
        let qubit = state(&[2], &[0.6, 0.8]).density();
        let b2 = GeneratorBasis::new(2).unwrap();
        let n2 = b2.coherence_vector(&qubit, 0).unwrap().norm_squared();
        assert_abs_diff_eq!(n2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(norm_target(2), 1.0, epsilon = 1e-15);

        let qutrit = state(&[3], &[0.6, 0.0, 0.8]).density();
        let b3 = GeneratorBasis::new(3).unwrap();
        let n3 = b3.coherence_vector(&qutrit, 0).unwrap().norm_squared();
        assert_abs_diff_eq!(n3, 4.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(norm_target(3), 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn bell_reduction_has_zero_norm() {
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let bell = state(&[2, 2], &[r2, 0.0, 0.0, r2]);
        let rho = bell.partial_trace(&[0]).unwrap();
        let b = GeneratorBasis::new(2).unwrap();
        let xi = b.coherence_vector(&rho, 0).unwrap();
        assert_abs_diff_eq!(xi.norm_squared(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn purity_identity_links_norm_and_purity() {
        // |xi|^2 = 2 (Tr rho^2 - 1/r) for assorted reductions
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let cases = [
            state(&[2, 2], &[r2, 0.0, 0.0, r2]),
            state(&[2, 3], &[0.1, 0.5, 0.2, 0.3, 0.6, 0.1]).normalize().unwrap(),
            state(&[3, 3], &[0.3, 0.1, 0.0, 0.2, 0.5, 0.1, 0.0, 0.4, 0.2])
                .normalize()
                .unwrap(),
        ];
        for s in &cases {
            for i in 0..s.dims().n() {
                let rho = s.partial_trace(&[i]).unwrap();
                let b = GeneratorBasis::new(rho.dim()).unwrap();
                let xi = b.coherence_vector(&rho, i).unwrap();
                let lhs = xi.norm_squared();
                let rhs = 2.0 * (rho.purity() - 1.0 / rho.dim() as f64);
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn correlation_tensor_of_single_qubit_matches_coherence_vector() {
        let s = state(&[2], &[1.0, 0.0]);
        let b = GeneratorBasis::new(2).unwrap();
        let t = correlation_tensor(&s, std::slice::from_ref(&b)).unwrap();
        // n = 1, TraceUniform: a_0 = sqrt(2/r) * something; for r = 2 the
        // identity factor is 1 so a_0 = 1 and a_m = xi_m.
        assert_abs_diff_eq!(t.get(&[0]), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.get(&[1]), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.get(&[2]), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.get(&[3]), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn correlation_tensor_reconstructs_bell_density() {
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let bell = state(&[2, 2], &[r2, 0.0, 0.0, r2]);
        for norm in [IdentityNormalization::TraceUniform, IdentityNormalization::UnitWeight] {
            let bases = vec![
                GeneratorBasis::with_normalization(2, norm).unwrap(),
                GeneratorBasis::with_normalization(2, norm).unwrap(),
            ];
            let t = correlation_tensor(&bell, &bases).unwrap();
            let back = reconstruct_density(&t, &bases).unwrap();
            assert!((bell.density().matrix() - back).camax() < 1e-9);
        }
    }

    #[test]
    fn correlation_tensor_of_product_state_factorizes() {
        let a = state(&[2], &[0.6, 0.8]);
        let b = state(&[3], &[0.0, 0.6, 0.8]);
        let ab = crate::state::tensor(&[a.clone(), b.clone()]).unwrap();
        let b2 = GeneratorBasis::new(2).unwrap();
        let b3 = GeneratorBasis::new(3).unwrap();
        let t_ab = correlation_tensor(&ab, &[b2.clone(), b3.clone()]).unwrap();
        let t_a = correlation_tensor(&a, std::slice::from_ref(&b2)).unwrap();
        let t_b = correlation_tensor(&b, std::slice::from_ref(&b3)).unwrap();
        for mu1 in 0..4 {
            for mu2 in 0..9 {
                assert_abs_diff_eq!(
                    t_ab.get(&[mu1, mu2]),
                    t_a.get(&[mu1]) * t_b.get(&[mu2]),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn trace_uniform_slices_carry_the_qutrit_factor() {
        // xi_m = (sqrt(6)/2)^(n-1) * a_{0..m..0} on all-qutrit systems
        let s = state(&[3, 3], &[0.3, 0.1, 0.0, 0.2, 0.5, 0.1, 0.0, 0.4, 0.2])
            .normalize()
            .unwrap();
        let b = GeneratorBasis::new(3).unwrap();
        let t = correlation_tensor(&s, &[b.clone(), b.clone()]).unwrap();
        let factor = 6f64.sqrt() / 2.0;
        for i in 0..2 {
            let rho = s.partial_trace(&[i]).unwrap();
            let xi = b.coherence_vector(&rho, i).unwrap();
            for m in 1..9 {
                let mu = if i == 0 { [m, 0] } else { [0, m] };
                assert_abs_diff_eq!(xi.values[m - 1], factor * t.get(&mu), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn unit_weight_slices_equal_coherence_components() {
        let s = state(&[2, 3], &[0.1, 0.5, 0.2, 0.3, 0.6, 0.1]).normalize().unwrap();
        let bases = vec![
            GeneratorBasis::with_normalization(2, IdentityNormalization::UnitWeight).unwrap(),
            GeneratorBasis::with_normalization(3, IdentityNormalization::UnitWeight).unwrap(),
        ];
        let t = correlation_tensor(&s, &bases).unwrap();
        // a_{0...0} = 1 under this normalization
        assert_abs_diff_eq!(t.get(&[0, 0]), 1.0, epsilon = 1e-10);
        for (i, b) in bases.iter().enumerate() {
            let rho = s.partial_trace(&[i]).unwrap();
            let xi = b.coherence_vector(&rho, i).unwrap();
            for (m, &v) in xi.values.iter().enumerate() {
                let mu = if i == 0 { [m + 1, 0] } else { [0, m + 1] };
                assert_abs_diff_eq!(v, t.get(&mu), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn trace_uniform_slices_for_mixed_dimensions() {
        // the slice factor is prod_{j != i} sqrt(r_j / 2), derived from the
        // identity normalization and verified here by direct comparison
        let s = state(&[2, 3], &[0.1, 0.5, 0.2, 0.3, 0.6, 0.1]).normalize().unwrap();
        let b2 = GeneratorBasis::new(2).unwrap();
        let b3 = GeneratorBasis::new(3).unwrap();
        let t = correlation_tensor(&s, &[b2.clone(), b3.clone()]).unwrap();

        let xi0 = b2
            .coherence_vector(&s.partial_trace(&[0]).unwrap(), 0)
            .unwrap();
        for (m, &v) in xi0.values.iter().enumerate() {
            assert_abs_diff_eq!(v, (3.0f64 / 2.0).sqrt() * t.get(&[m + 1, 0]), epsilon = 1e-9);
        }
        let xi1 = b3
            .coherence_vector(&s.partial_trace(&[1]).unwrap(), 1)
            .unwrap();
        for (m, &v) in xi1.values.iter().enumerate() {
            assert_abs_diff_eq!(v, t.get(&[0, m + 1]), epsilon = 1e-9);
        }
    }

    #[test]
    fn trace_uniform_zero_entry_is_root_two_over_r_product() {
        let s = state(&[2, 3], &[0.1, 0.5, 0.2, 0.3, 0.6, 0.1]).normalize().unwrap();
        let bases = vec![GeneratorBasis::new(2).unwrap(), GeneratorBasis::new(3).unwrap()];
        let t = correlation_tensor(&s, &bases).unwrap();
        let want = (2.0f64 / 2.0).sqrt() * (2.0f64 / 3.0).sqrt();
        assert_abs_diff_eq!(t.get(&[0, 0]), want, epsilon = 1e-10);
    }
}
