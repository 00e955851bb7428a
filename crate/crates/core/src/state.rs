//! Pure states and density matrices over arbitrary multipartite dimension
//! vectors.
//!
//! A state over local dimensions `(r_1, ..., r_n)` is stored as a flat
//! amplitude vector of length `N = r_1 * ... * r_n` in row-major order with
//! the *last* partite's index varying fastest: the basis ket
//! `|i_1, i_2, ..., i_n>` sits at flat index
//! `((i_1 * r_2 + i_2) * r_3 + i_3) * ...`. For two qubits this makes the
//! amplitude list read `(<00>, <01>, <10>, <11>)`.
//!
//! All types are immutable values; every operation returns a fresh value, so
//! everything here is safe to share across threads without coordination.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used for normalization and Hermiticity checks.
pub const NORM_TOL: f64 = 1e-12;

/// Slack allowed below zero for eigenvalues of a valid density matrix.
pub const EIG_SLACK: f64 = -1e-10;

/// Ordered list of local dimensions `(r_1, ..., r_n)`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    /// Builds a dimension vector, rejecting empty lists and local dimensions
    /// below 2.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::BadDimension(0));
        }
        if let Some(&bad) = dims.iter().find(|&&r| r < 2) {
            return Err(Error::BadDimension(bad));
        }
        // Guard against overflow of the total dimension; anything this large
        // is far outside the dense desk-scale regime anyway.
        dims.iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r))
            .ok_or(Error::BadDimension(usize::MAX))?;
        Ok(DimVector(dims))
    }

    /// Number of partites.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Local dimension of partite `i` (0-based).
    pub fn dim(&self, i: usize) -> usize {
        self.0[i]
    }

    /// The local dimensions as a slice.
    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Total Hilbert-space dimension `N = prod r_i`.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Stride of each partite in the flat amplitude index (last partite has
    /// stride 1).
    pub fn strides(&self) -> Vec<usize> {
        let n = self.n();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.0[i + 1];
        }
        s
    }

    /// Flat index of a multi-index.
    pub fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.n());
        idx.iter()
            .zip(self.0.iter())
            .fold(0, |acc, (&i, &r)| acc * r + i)
    }

    /// Multi-index of a flat index.
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.n()];
        for i in (0..self.n()).rev() {
            idx[i] = flat % self.0[i];
            flat /= self.0[i];
        }
        idx
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A pure multipartite state: a dimension vector plus a flat complex
/// amplitude vector.
///
/// Construction does not force normalization; call [`PureState::normalize`]
/// before handing the state to any criterion. Operations that require a
/// normalized input say so and assume `norm_sqr() == 1` within [`NORM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: DimVector,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, rejecting amplitude vectors whose length does not
    /// match the total dimension.
    pub fn new(dims: DimVector, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimMismatch {
                left: dims.total(),
                right: amps.len(),
            });
        }
        Ok(PureState { dims, amps })
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(dims: Vec<usize>, pairs: &[(f64, f64)]) -> Result<Self> {
        let dims = DimVector::new(dims)?;
        let amps = pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        PureState::new(dims, amps)
    }

    /// The computational basis state `|i_1, ..., i_n>`.
    pub fn basis_state(dims: DimVector, levels: &[usize]) -> Result<Self> {
        if levels.len() != dims.n() {
            return Err(Error::DimMismatch {
                left: dims.n(),
                right: levels.len(),
            });
        }
        for (i, (&l, &r)) in levels.iter().zip(dims.dims().iter()).enumerate() {
            if l >= r {
                return Err(Error::BadSpec {
                    reason: format!("level {l} out of range for dimension {r} at partite {i}"),
                });
            }
        }
        let mut amps = vec![Complex64::ZERO; dims.total()];
        let at = dims.flatten(levels);
        amps[at] = Complex64::ONE;
        Ok(PureState { dims, amps })
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Squared 2-norm of the amplitude vector.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Returns the unit-norm state pointing in the same direction.
    pub fn normalize(&self) -> Result<PureState> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroState);
        }
        let inv = 1.0 / n2.sqrt();
        let amps = self.amps.iter().map(|a| a * inv).collect();
        Ok(PureState {
            dims: self.dims.clone(),
            amps,
        })
    }

    /// Projector `|psi><psi|` as a density matrix on the full space.
    ///
    /// Assumes a normalized input, in which case the result has unit trace
    /// and purity 1.
    pub fn density(&self) -> DensityMatrix {
        let n = self.amps.len();
        let mat = DMatrix::from_fn(n, n, |j, k| self.amps[j] * self.amps[k].conj());
        DensityMatrix { dim: n, mat }
    }

    /// Reduced density matrix on the kept partites, tracing out the rest.
    ///
    /// `keep` is interpreted as a set; the kept partites appear in ascending
    /// index order in the result. Keeping every partite reproduces
    /// [`PureState::density`] entry for entry.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalized_subset(keep, self.dims.n(), false)?;
        let m = self.cut_matrix_sorted(&keep);
        // rho = M M^dagger, accumulated directly so the keep-everything case
        // degenerates to the plain outer product.
        let rows = m.nrows();
        let cols = m.ncols();
        let mat = DMatrix::from_fn(rows, rows, |a, b| {
            (0..cols).map(|r| m[(a, r)] * m[(b, r)].conj()).sum()
        });
        Ok(DensityMatrix { dim: rows, mat })
    }

    /// Reshapes the amplitudes into a matrix with the partites in `keep`
    /// (sorted ascending, assumed valid) fused as the row index and the
    /// remaining partites fused as the column index, each group keeping its
    /// original relative order.
    ///
    /// Separability across the `keep`-vs-rest cut is exactly rank-1-ness of
    /// this matrix.
    pub(crate) fn cut_matrix_sorted(&self, keep: &[usize]) -> DMatrix<Complex64> {
        let n = self.dims.n();
        let mut in_keep = vec![false; n];
        for &i in keep {
            in_keep[i] = true;
        }
        let row_dim: usize = keep.iter().map(|&i| self.dims.dim(i)).product();
        let col_dim = self.dims.total() / row_dim;
        let strides = self.dims.strides();
        let mut m = DMatrix::zeros(row_dim, col_dim);
        for (flat, &a) in self.amps.iter().enumerate() {
            let mut row = 0usize;
            let mut col = 0usize;
            for k in 0..n {
                let digit = (flat / strides[k]) % self.dims.dim(k);
                if in_keep[k] {
                    row = row * self.dims.dim(k) + digit;
                } else {
                    col = col * self.dims.dim(k) + digit;
                }
            }
            m[(row, col)] = a;
        }
        m
    }

    /// Moves partite `k` to position `perm[k]` for every `k`, relabeling
    /// amplitudes without any arithmetic.
    pub fn permute(&self, perm: &SubsystemPermutation) -> Result<PureState> {
        let n = self.dims.n();
        if perm.len() != n {
            return Err(Error::BadPermutation { n });
        }
        let mut new_dims = vec![0usize; n];
        for (k, &p) in perm.map().iter().enumerate() {
            new_dims[p] = self.dims.dim(k);
        }
        let new_dims = DimVector::new(new_dims)?;
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        let mut new_idx = vec![0usize; n];
        for (flat, &a) in self.amps.iter().enumerate() {
            let idx = self.dims.unflatten(flat);
            for (k, &p) in perm.map().iter().enumerate() {
                new_idx[p] = idx[k];
            }
            amps[new_dims.flatten(&new_idx)] = a;
        }
        Ok(PureState {
            dims: new_dims,
            amps,
        })
    }

    /// Applies a unitary (or any matrix) to a single partite, leaving the
    /// others untouched.
    pub fn apply_local(&self, partite: usize, u: &DMatrix<Complex64>) -> Result<PureState> {
        let n = self.dims.n();
        if partite >= n {
            return Err(Error::BadIndex { index: partite, n });
        }
        let r = self.dims.dim(partite);
        if u.nrows() != r || u.ncols() != r {
            return Err(Error::DimMismatch {
                left: r,
                right: u.nrows(),
            });
        }
        let stride = self.dims.strides()[partite];
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        for (flat, out) in amps.iter_mut().enumerate() {
            let digit = (flat / stride) % r;
            let base = flat - digit * stride;
            *out = (0..r)
                .map(|s| u[(digit, s)] * self.amps[base + s * stride])
                .sum();
        }
        Ok(PureState {
            dims: self.dims.clone(),
            amps,
        })
    }
}

/// Tensor product of single- or multi-partite states, concatenating their
/// dimension vectors in order.
pub fn tensor(factors: &[PureState]) -> Result<PureState> {
    let first = factors.first().ok_or(Error::BadDimension(0))?;
    let mut dims: Vec<usize> = first.dims().dims().to_vec();
    let mut amps: Vec<Complex64> = first.amps().to_vec();
    for f in &factors[1..] {
        dims.extend_from_slice(f.dims().dims());
        let mut next = Vec::with_capacity(amps.len() * f.amps().len());
        for &a in &amps {
            for &b in f.amps() {
                next.push(a * b);
            }
        }
        amps = next;
    }
    PureState::new(DimVector::new(dims)?, amps)
}

/// Squared overlap `|<a|b>|^2` of two states on the same dimension vector.
///
/// Symmetric in its arguments, 1 exactly when the states agree up to a global
/// phase, 0 when they are orthogonal.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimMismatch {
            left: a.dims().total(),
            right: b.dims().total(),
        });
    }
    let inner: Complex64 = a
        .amps()
        .iter()
        .zip(b.amps().iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(inner.norm_sqr())
}

/// Validates a partite index set: in range, free of duplicates, nonempty, and
/// (when `proper` is set) not the full system. Returns the set sorted
/// ascending.
pub(crate) fn normalized_subset(subset: &[usize], n: usize, proper: bool) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::BadSubset {
            reason: "subset is empty".into(),
        });
    }
    let mut seen = vec![false; n];
    for &i in subset {
        if i >= n {
            return Err(Error::BadIndex { index: i, n });
        }
        if seen[i] {
            return Err(Error::BadSubset {
                reason: format!("partite {i} listed twice"),
            });
        }
        seen[i] = true;
    }
    if proper && subset.len() == n {
        return Err(Error::BadSubset {
            reason: "subset must be proper (leave at least one partite out)".into(),
        });
    }
    let mut sorted: Vec<usize> = subset.to_vec();
    sorted.sort_unstable();
    Ok(sorted)
}

/// A bijection on partite positions: partite `k` of the input becomes partite
/// `perm[k]` of the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemPermutation(Vec<usize>);

impl SubsystemPermutation {
    /// Builds a permutation from its one-line notation, rejecting anything
    /// that is not a bijection.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &p in &map {
            if p >= n || seen[p] {
                return Err(Error::BadPermutation { n });
            }
            seen[p] = true;
        }
        Ok(SubsystemPermutation(map))
    }

    /// Identity on `n` partites.
    pub fn identity(n: usize) -> Self {
        SubsystemPermutation((0..n).collect())
    }

    /// Transposition of two adjacent partites `i` and `i + 1` among `n`.
    pub fn adjacent_swap(n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(Error::BadIndex { index: i + 1, n });
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, i + 1);
        Ok(SubsystemPermutation(map))
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.0.len()];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p] = k;
        }
        SubsystemPermutation(inv)
    }
}

/// A dense Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Builds a density matrix from a raw square matrix, checking Hermiticity
    /// and unit trace within [`NORM_TOL`] and eigenvalue positivity within
    /// [`EIG_SLACK`].
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        let r = mat.nrows();
        if mat.ncols() != r || r == 0 {
            return Err(Error::DimMismatch {
                left: r,
                right: mat.ncols(),
            });
        }
        let herm_defect = (&mat - mat.adjoint()).camax();
        if herm_defect > NORM_TOL {
            return Err(Error::BadSpec {
                reason: format!("matrix is not Hermitian (defect {herm_defect:e})"),
            });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::BadSpec {
                reason: format!("trace is {tr}, expected 1"),
            });
        }
        let dm = DensityMatrix { dim: r, mat };
        if let Some(&worst) = dm
            .eigenvalues()
            .iter()
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            if worst < EIG_SLACK {
                return Err(Error::BadSpec {
                    reason: format!("negative eigenvalue {worst:e}"),
                });
            }
        }
        Ok(dm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.mat[(j, k)]
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// `Tr(rho^2)`, computed as the squared Frobenius norm since the matrix
    /// is Hermitian.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues, ascending. Real because the matrix is Hermitian.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = nalgebra::linalg::SymmetricEigen::new(self.mat.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }
}
