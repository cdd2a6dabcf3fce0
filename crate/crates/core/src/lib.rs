//! Finite quantum systems under a global ℤ_n symmetry.
//!
//! Covers charge sectors of shift representations, the weak and strong ways
//! of imposing the symmetry, the operator algebras they leave behind, the
//! relativization map to a frame's perspective, and a small mode-space
//! apparatus with gate-level measurement circuits.

pub mod algebra;
pub mod error;
pub mod group;
pub mod json;
pub mod matrix;
pub mod perspectives;
pub mod random;
pub mod scenario;
pub mod symmetry;

pub use algebra::{find_isomorphism, span_closure, AlgebraReport, BlockStructure, IsomorphismReport, StarAlgebra};
pub use error::{Error, Result};
pub use group::{
    charge_decomposition, charge_eigenstate, charge_observable, shift_representation, ChargeDecomposition,
    ChargeObservable, FiniteAbelianRep, RepDocument,
};
pub use matrix::{hs_inner, tensor, ComplexMatrix, Tolerance, C64};
pub use symmetry::{is_symmetric, strong_twirl, weak_twirl, SymmetryKind};
