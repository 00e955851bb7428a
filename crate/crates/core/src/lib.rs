//! Separability analysis of pure multipartite quantum states.
//!
//! The crate decides, for a pure state over any dimension vector
//! `(r_1, ..., r_n)`, which partites factor out of the rest and whether the
//! whole state is a tensor product of single-partite states. The working
//! criterion is that partite `i` is separable from the rest exactly when the
//! coherence vector of its reduced density matrix saturates the pure-state
//! norm bound `|xi_i|^2 = 2 (1 - 1/r_i)`; an equivalent formulation via
//! vanishing 2x2 minors of the cut-reshaped amplitude matrix is computed
//! alongside, and an SVD-based Schmidt oracle is kept entirely separate so
//! the criteria can be stress-tested against independent ground truth.
//!
//! Modules:
//!
//! * [`state`]: pure states, density matrices, partial traces, subsystem
//!   permutations.
//! * [`basis`]: generalized SU(r) generator bases, coherence vectors,
//!   correlation tensors.
//! * [`separability`]: the norm and minor criteria, partial-separability
//!   detection, and constructive factorization.
//! * [`oracle`]: Schmidt/SVD ground truth and seeded random state
//!   generation.
//! * [`measures`]: entanglement measures derived from the coherence-vector
//!   norms.

pub mod basis;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod separability;
pub mod state;

pub use basis::{
    correlation_tensor, norm_target, reconstruct_density, CoherenceVector, CorrelationTensor,
    GeneratorBasis, IdentityNormalization,
};
pub use error::{Error, Result};
pub use measures::{measure, MeasureReport, PartiteMeasures};
pub use oracle::{generate, purity_oracle, schmidt, RandomSpec, SchmidtData, StateKind};
pub use separability::{
    bipartition_separable, check, check_minor_criterion, check_norm_criterion, factorize,
    CriterionKind, Factorization, PartiteVerdict, SeparabilityReport,
};
pub use state::{
    fidelity, tensor, DensityMatrix, DimVector, PureState, SubsystemPermutation,
};
