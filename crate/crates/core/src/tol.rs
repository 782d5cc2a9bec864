//! Numerical thresholds shared across modules.

/// A Hermitian matrix is positive semidefinite iff its smallest eigenvalue
/// is at least `-POSITIVITY`.
pub const POSITIVITY: f64 = 1e-10;

/// Hermiticity and trace tolerance when validating a density matrix.
pub const STATE: f64 = 1e-10;

/// Realignment is violated iff the singular-value sum exceeds `1 + REALIGNMENT`.
pub const REALIGNMENT: f64 = 1e-10;

/// Slack on analytic parameter inequalities so that boundary points computed
/// in floating point are still accepted.
pub const ANALYTIC_SLACK: f64 = 1e-12;

/// A decomposed operator is "of lemma form" if the reconstruction residual
/// (max entry modulus) stays below this.
pub const LEMMA_FORM: f64 = 1e-10;

/// Lemma coefficients may exceed one by this much and still pass.
pub const LEMMA_COEFF: f64 = 1e-12;

/// Witnesses whose reference and target are closer than this are degenerate.
pub const DEGENERATE_DISTANCE: f64 = 1e-13;
