//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building states or running criteria.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A state vector with zero norm cannot be normalized.
    #[error("state has zero norm")]
    ZeroState,

    /// A local dimension smaller than 2 has no nontrivial generator basis.
    #[error("local dimension must be at least 2, got {0}")]
    BadDimension(usize),

    /// Two objects that must live on the same space do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    /// A partite index outside `0..n`.
    #[error("partite index {index} out of range for {n} partites")]
    BadIndex { index: usize, n: usize },

    /// A subsystem permutation that is not a bijection on `0..n`.
    #[error("invalid permutation of {n} partites")]
    BadPermutation { n: usize },

    /// A partite subset that is empty, improper, or out of range where a
    /// proper nonempty subset is required.
    #[error("invalid partite subset: {reason}")]
    BadSubset { reason: String },

    /// A random-state specification that the generator cannot honor.
    #[error("invalid random state spec: {reason}")]
    BadSpec { reason: String },

    /// Factorization was requested for a state that fails the separability
    /// criterion on the listed partites (0-based).
    #[error("state is not separable: partites {0:?} fail the criterion")]
    NotSeparable(Vec<usize>),

    /// The norm criterion and the minor criterion returned different verdicts
    /// for a partite that is not in the borderline band. This signals
    /// tolerance miscalibration, not a property of the state.
    #[error(
        "criterion disagreement on partite {partite}: norm deficit {norm_deficit:e}, \
         max scaled minor {minor_max:e}"
    )]
    CriterionDisagreement {
        partite: usize,
        norm_deficit: f64,
        minor_max: f64,
    },
}
