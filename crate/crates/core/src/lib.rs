//! Hilbert-Schmidt geometry of two-qubit and two-qutrit entanglement.
//!
//! The crate is layered bottom-up:
//!
//! - [`numeric`]: dense complex matrices, Jacobi eigenvalues and singular
//!   values, Kronecker and Hilbert-Schmidt products. Generic over [`Scalar`].
//! - [`weyl`]: the Weyl operator basis, Bloch vectors and Bell projectors.
//! - [`families`]: the two-qubit, two-qutrit, three-parameter, Horodecki and
//!   isotropic state families with their analytic positivity predicates.
//! - [`criteria`]: partial transposition, realignment and classification.
//! - [`witness`]: geometric entanglement witnesses and their validity checks.
//! - [`measure`]: closed-form Hilbert-Schmidt measures and nearest
//!   separable states.
//! - [`bound`]: the `ρ_λ` line construction, `λ_min` analysis and bound
//!   entanglement certificates.
//!
//! ```
//! use qutrit_geometry::bound::{certify_point, CertifyOptions};
//! use qutrit_geometry::criteria::{classify, Label};
//! use qutrit_geometry::families::{FamilyPoint, HorodeckiParam};
//!
//! let point = FamilyPoint::Horodecki(HorodeckiParam::new(3.5).unwrap());
//! assert_eq!(classify(&point).unwrap().label, Label::BoundEntangled);
//!
//! let outcome = certify_point(&point, CertifyOptions::default()).unwrap();
//! let certificate = outcome.certificate().unwrap();
//! assert!(certificate.witness.is_valid());
//! assert!(certificate.violation < 0.0);
//! ```

pub mod bound;
pub mod criteria;
pub mod error;
pub mod families;
pub mod measure;
pub mod numeric;
pub mod sampling;
pub mod state;
pub mod tol;
pub mod weyl;
pub mod witness;

pub use error::{Error, Result};
pub use numeric::{ComplexMatrix, Scalar};
pub use state::DensityMatrix;

/// `f64` complex matrix, the carrier used by the physics modules.
pub type Matrix = ComplexMatrix<f64>;
/// `f64` density matrix.
pub type State = DensityMatrix<f64>;
/// `f32` complex matrix.
pub type Matrix32 = ComplexMatrix<f32>;
