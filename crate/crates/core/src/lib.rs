//! Exact Hermitian forms over fields with involution.
//!
//! The crate covers four fields (`F_p`, `F_{p^2}`, `Q`, `Q(sqrt d)`), Gram-matrix
//! forms over them, constructive orthogonal diagonalization, isotropic-vector
//! search through norm equations and diagonal quadrics, and finite matrix-group
//! representations with invariant-form averaging and Maschke decomposition.

pub mod cli;
pub mod field;
pub mod forms;
pub mod isotropy;
pub mod linalg;
pub mod maschke;
pub mod text;

pub use field::{FieldElement, FieldError, FieldKind, FieldSpec};
pub use forms::{Diagonalization, FormError, HermitianForm};
pub use linalg::{LinalgError, Matrix, Subspace};
