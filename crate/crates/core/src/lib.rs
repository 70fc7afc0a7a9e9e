//! Exact construction and exhaustive verification of Z2^N graded color
//! superalgebras and color Lie algebras.
//!
//! Modules, bottom-up:
//!
//! - [`grading`]: grading vectors, the dot and symplectic pairings.
//! - [`clifford`]: signed blades of Cl(p,q) and the κ sign.
//! - [`algebra`]: generic color (super)algebras from structure constants, with
//!   closure, antisymmetry and graded Jacobi auditors.
//! - [`superalgebra`]: ordinary Lie superalgebras, the JSON format, a builtin catalog.
//! - [`tensor`]: superalgebra ⊗ Clifford → color superalgebra, and back.
//! - [`envelope`]: normal ordering for the boson-fermion system and the
//!   Z2⊗Z2 algebra `bf(n)` derived from it.
//! - [`grassmann`]: Z2⊗Z2 graded polynomials, left derivatives, and the vector
//!   field representation of `bf(1)`.
//! - [`oracle`]: explicit gamma matrices and truncated Fock matrices used as
//!   independent ground truth.

pub mod algebra;
pub mod clifford;
pub mod envelope;
pub mod error;
pub mod grading;
pub mod grassmann;
pub mod json;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod superalgebra;
pub mod tensor;

pub use algebra::{BasisElement, ColorAlgebra, Element};
pub use clifford::{Blade, Sign, Signature};
pub use error::{Error, Result};
pub use grading::{GradeVec, PairingKind, Parity};
pub use report::{Report, Violation};
pub use scalar::Scalar;
pub use superalgebra::Superalgebra;
