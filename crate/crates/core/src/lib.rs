//! Single-qubit quantum channels built from two-qubit dynamics.
//!
//! A channel is fixed by a coupling unitary `U` on system ⊗ bath and an assignment
//! (sharp) map `♯` that prepares a correlated composite state from each tomography
//! state: `ε(τ) = Tr_B(U τ♯ U†)`. The crate simulates single-qubit process tomography
//! to get the Choi matrix of `ε`, and measures how far the channel is from complete
//! positivity with the negativity `η = Σ_{λ<0} |λ| / Σ |λ|` of that Choi matrix.
//!
//! ```
//! use negativity_core::{assemble_choi, negativity, AssignmentMap, CouplingSpec};
//!
//! let choi = assemble_choi(&CouplingSpec::Cz, &AssignmentMap::Hadamard).unwrap();
//! let report = negativity(&choi).unwrap();
//! assert!((report.eta - 1.0 / 6.0).abs() < 1e-12);
//! ```

pub mod channel;
pub mod choi;
pub mod cmatrix;
pub mod error;
pub mod negativity;
pub mod qstates;
pub mod sweep;

pub use channel::{apply_channel, apply_sharp, realize_coupling, AssignmentMap, Channel, CouplingSpec};
pub use choi::{analytic_choi_alpha, assemble_choi, validate_choi, ChoiMatrix, ChoiSource};
pub use cmatrix::{
    expm_unitary, hermitian_eig, kron, partial_trace_bath, trace_norm, ComplexMatrix, EigenDecomposition,
};
pub use error::{ChoiViolation, Error, Result};
pub use negativity::{
    gate_distance, negativity, negativity_distance, negativity_from_positivity, positivity_from_negativity,
    trace_distance, DistanceReport, NegativityReport,
};
pub use num_complex::Complex64;
pub use qstates::{canonical_tomography_vector, decompose_matrix_units, MatrixUnitDecomposition, TomographyVector};
pub use sweep::{cp_map, run_sweep, xform_spectrum, Axis, Family, SweepGrid, SweepResult, SweepRow};
