//! The state families: two-qubit `ρ_{α,β}`, two-qutrit `ρ_{α,β}`, the
//! three-parameter two-qutrit `ρ_{α,β,γ}`, the Horodecki line `ρ_b` and the
//! isotropic two-qudit state.
//!
//! Constructors validate parameters with the analytic positivity inequalities
//! (with a `1e-12` slack) rather than eigenvalues, so boundary states are
//! accepted exactly. `state_strict` on [`FamilyPoint`] re-checks numerically.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::ComplexMatrix;
use crate::tol;
use crate::weyl::{self, pauli, qutrit_bell_projectors, qutrit_ops};
use crate::{Matrix, State};

/// The half-plane `a·α + b·β + c ≥ 0` (with `γ` folded in by the caller).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HalfPlane {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn eval(&self, alpha: f64, beta: f64) -> f64 {
        self.a * alpha + self.b * beta + self.c
    }

    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        self.eval(alpha, beta) >= -tol::ANALYTIC_SLACK
    }
}

fn all_contain(planes: &[HalfPlane], alpha: f64, beta: f64) -> bool {
    planes.iter().all(|h| h.contains(alpha, beta))
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("non-finite parameter in {values:?}")))
    }
}

/// Two-qubit Bell-diagonal family
/// `(1-α-β)/4·1 + α|φ+><φ+| + β/2(|ψ+><ψ+| + |ψ-><ψ-|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    pub alpha: f64,
    pub beta: f64,
}

impl QubitParams {
    /// `α ≤ 1-β`, `α ≥ β/3 - 1/3`, `α ≤ β + 1`.
    pub const POSITIVITY: [HalfPlane; 3] = [
        HalfPlane::new(-1.0, -1.0, 1.0),
        HalfPlane::new(1.0, -1.0 / 3.0, 1.0 / 3.0),
        HalfPlane::new(-1.0, 1.0, 1.0),
    ];
    /// `α ≥ β - 1`, `α ≤ β/3 + 1/3`, `α ≥ -β - 1`.
    pub const PPT: [HalfPlane; 3] = [
        HalfPlane::new(1.0, -1.0, 1.0),
        HalfPlane::new(-1.0, 1.0 / 3.0, 1.0 / 3.0),
        HalfPlane::new(1.0, 1.0, 1.0),
    ];

    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn is_positive(&self) -> bool {
        all_contain(&Self::POSITIVITY, self.alpha, self.beta)
    }

    pub fn is_ppt(&self) -> bool {
        all_contain(&Self::PPT, self.alpha, self.beta)
    }
}

/// Two-qutrit family `(1-α-β)/9·1 + α P_00 + β/2 (P_10 + P_20)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QutritParams {
    pub alpha: f64,
    pub beta: f64,
}

impl QutritParams {
    /// `α ≤ 7β/2 + 1`, `α ≤ 1-β`, `α ≥ β/8 - 1/8`.
    pub const POSITIVITY: [HalfPlane; 3] = [
        HalfPlane::new(-1.0, 3.5, 1.0),
        HalfPlane::new(-1.0, -1.0, 1.0),
        HalfPlane::new(1.0, -0.125, 0.125),
    ];
    /// `α ≥ -β - 1/2`, `α ≥ 5β/4 - 1/2`, `α ≤ β/8 + 1/4`.
    pub const PPT: [HalfPlane; 3] = [
        HalfPlane::new(1.0, 1.0, 0.5),
        HalfPlane::new(1.0, -1.25, 0.5),
        HalfPlane::new(-1.0, 0.125, 0.25),
    ];

    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn is_positive(&self) -> bool {
        all_contain(&Self::POSITIVITY, self.alpha, self.beta)
    }

    pub fn is_ppt(&self) -> bool {
        all_contain(&Self::PPT, self.alpha, self.beta)
    }
}

/// Three-parameter family
/// `(1-α-β-γ)/9·1 + α P_00 + β/2 (P_10 + P_20) + γ/3 (P_01 + P_11 + P_21)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ThreeParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// Values of the four positivity constraints, each `≥ 0` inside.
    pub fn positivity_margins(&self) -> [f64; 4] {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        [
            3.5 * b + 1.0 - g - a,
            -b + 1.0 - g - a,
            -b + 1.0 + 2.0 * g - a,
            a - (b - 1.0 + g) / 8.0,
        ]
    }

    pub fn is_positive(&self) -> bool {
        self.positivity_margins()
            .iter()
            .all(|&m| m >= -tol::ANALYTIC_SLACK)
    }

    pub fn reduces_to_two_param(&self) -> Option<QutritParams> {
        (self.gamma == 0.0).then(|| QutritParams::new(self.alpha, self.beta))
    }
}

/// Parameter of the Horodecki line, `0 ≤ b ≤ 5`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorodeckiParam {
    pub b: f64,
}

impl HorodeckiParam {
    pub fn new(b: f64) -> Result<Self> {
        if !(0.0..=5.0).contains(&b) {
            return Err(Error::InvalidParams(format!("Horodecki b = {b} outside [0, 5]")));
        }
        Ok(Self { b })
    }

    /// `(α, β, γ) = ((6-b)/21, -2b/21, (5-2b)/7)`.
    ///
    /// This point of the three-parameter family is `ρ_b` with the two
    /// subsystems exchanged; every quantity computed here (spectra, partial
    /// transpose spectra, realignment norm) is invariant under that exchange.
    pub fn to_simplex(&self) -> ThreeParams {
        let b = self.b;
        ThreeParams::new((6.0 - b) / 21.0, -2.0 * b / 21.0, (5.0 - 2.0 * b) / 7.0)
    }
}

/// The Horodecki line written with `γ` as parameter:
/// `α = (1+γ)/6`, `β = (-5+7γ)/21`.
pub fn simplex_line_from_gamma(gamma: f64) -> ThreeParams {
    ThreeParams::new((1.0 + gamma) / 6.0, (-5.0 + 7.0 * gamma) / 21.0, gamma)
}

fn ket(d: usize, i: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    v[i * d + j] = Complex64::new(1.0, 0.0);
    v
}

/// Two-qubit Bell states `φ+, φ-, ψ+, ψ-`.
pub fn qubit_bell_states() -> [Vec<Complex64>; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        vec![c(h), c(0.0), c(0.0), c(h)],
        vec![c(h), c(0.0), c(0.0), c(-h)],
        vec![c(0.0), c(h), c(h), c(0.0)],
        vec![c(0.0), c(h), c(-h), c(0.0)],
    ]
}

pub fn qubit_two_param(p: QubitParams) -> Result<State> {
    check_finite(&[p.alpha, p.beta])?;
    if !p.is_positive() {
        return Err(Error::InvalidParams(format!(
            "qubit (α, β) = ({}, {}) violates positivity",
            p.alpha, p.beta
        )));
    }
    State::from_validated(qubit_two_param_matrix(p), Some((2, 2)))
}

/// The qubit family matrix for arbitrary parameters.
pub fn qubit_two_param_matrix(p: QubitParams) -> Matrix {
    let [phi_plus, _, psi_plus, psi_minus] = qubit_bell_states();
    let mut rho = Matrix::identity(4).scale_real((1.0 - p.alpha - p.beta) / 4.0);
    rho += &Matrix::outer(&phi_plus, &phi_plus).scale_real(p.alpha);
    rho += &Matrix::outer(&psi_plus, &psi_plus).scale_real(p.beta / 2.0);
    rho += &Matrix::outer(&psi_minus, &psi_minus).scale_real(p.beta / 2.0);
    rho
}

/// `1/4 (1 + α(σ1⊗σ1 - σ2⊗σ2) + (α-β) σ3⊗σ3)`.
pub fn qubit_pauli_form(p: QubitParams) -> Matrix {
    let [s1, s2, s3] = pauli::<f64>();
    let k = crate::numeric::kron;
    let mut rho = Matrix::identity(4);
    rho += &(&k(&s1, &s1) - &k(&s2, &s2)).scale_real(p.alpha);
    rho += &k(&s3, &s3).scale_real(p.alpha - p.beta);
    rho.scale_real(0.25)
}

pub fn qutrit_two_param(p: QutritParams) -> Result<State> {
    check_finite(&[p.alpha, p.beta])?;
    if !p.is_positive() {
        return Err(Error::InvalidParams(format!(
            "qutrit (α, β) = ({}, {}) violates positivity",
            p.alpha, p.beta
        )));
    }
    State::from_validated(
        three_param_matrix(ThreeParams::new(p.alpha, p.beta, 0.0)),
        Some((3, 3)),
    )
}

/// `1/9 (1 + (α - β/2) U1 + (α + β) U2)`.
pub fn qutrit_weyl_form(p: QutritParams) -> Matrix {
    let ops = qutrit_ops();
    let mut rho = Matrix::identity(9);
    rho += &ops.u1.scale_real(p.alpha - p.beta / 2.0);
    rho += &ops.u2().scale_real(p.alpha + p.beta);
    rho.scale_real(1.0 / 9.0)
}

pub fn qutrit_three_param(p: ThreeParams) -> Result<State> {
    check_finite(&[p.alpha, p.beta, p.gamma])?;
    if !p.is_positive() {
        return Err(Error::InvalidParams(format!(
            "(α, β, γ) = ({}, {}, {}) violates positivity",
            p.alpha, p.beta, p.gamma
        )));
    }
    State::from_validated(three_param_matrix(p), Some((3, 3)))
}

/// The three-parameter family matrix for arbitrary parameters.
pub fn three_param_matrix(p: ThreeParams) -> Matrix {
    let proj = qutrit_bell_projectors();
    let mut rho = Matrix::identity(9).scale_real((1.0 - p.alpha - p.beta - p.gamma) / 9.0);
    rho += &proj[0].scale_real(p.alpha);
    for n in [1, 2] {
        rho += &proj[n * 3].scale_real(p.beta / 2.0);
    }
    for n in 0..3 {
        rho += &proj[n * 3 + 1].scale_real(p.gamma / 3.0);
    }
    rho
}

/// `σ+ = (|01><01| + |12><12| + |20><20|)/3`.
pub fn sigma_plus() -> Matrix {
    cyclic_diagonal(1)
}

/// `σ- = (|10><10| + |21><21| + |02><02|)/3`.
pub fn sigma_minus() -> Matrix {
    cyclic_diagonal(2)
}

fn cyclic_diagonal(shift: usize) -> Matrix {
    let mut m = Matrix::zeros(9, 9);
    for i in 0..3 {
        let v = ket(3, i, (i + shift) % 3);
        m += &Matrix::outer(&v, &v);
    }
    m.scale_real(1.0 / 3.0)
}

/// `ρ_b = 2/7 |φ+><φ+| + b/7 σ+ + (5-b)/7 σ-`.
pub fn horodecki(p: HorodeckiParam) -> Result<State> {
    let p = HorodeckiParam::new(p.b)?;
    State::from_validated(horodecki_matrix(p), Some((3, 3)))
}

fn horodecki_matrix(p: HorodeckiParam) -> Matrix {
    let phi = weyl::bell_state::<f64>(3);
    let mut rho = Matrix::outer(&phi, &phi).scale_real(2.0 / 7.0);
    rho += &sigma_plus().scale_real(p.b / 7.0);
    rho += &sigma_minus().scale_real((5.0 - p.b) / 7.0);
    rho
}

/// Exchanges the two subsystems of a `d × d` system.
pub fn swap(d: usize) -> Matrix {
    let mut s = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s[(i * d + j, j * d + i)] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Range `-1/(d²-1) ≤ α ≤ 1` of the isotropic state.
pub fn isotropic_range(d: usize) -> (f64, f64) {
    let n = (d * d) as f64;
    (-1.0 / (n - 1.0), 1.0)
}

/// `α |φ+><φ+| + (1-α)/d² 1`.
pub fn isotropic(d: usize, alpha: f64) -> Result<State> {
    check_finite(&[alpha])?;
    if d < 2 {
        return Err(Error::InvalidParams(format!("isotropic state needs d >= 2, got {d}")));
    }
    let (lo, hi) = isotropic_range(d);
    if alpha < lo - tol::ANALYTIC_SLACK || alpha > hi + tol::ANALYTIC_SLACK {
        return Err(Error::InvalidParams(format!(
            "isotropic α = {alpha} outside [{lo}, {hi}]"
        )));
    }
    State::from_validated(isotropic_matrix(d, alpha), Some((d, d)))
}

fn isotropic_matrix(d: usize, alpha: f64) -> Matrix {
    let phi = weyl::bell_state::<f64>(d);
    let mut rho = Matrix::identity(d * d).scale_real((1.0 - alpha) / (d * d) as f64);
    rho += &Matrix::outer(&phi, &phi).scale_real(alpha);
    rho
}

/// `1/d² (1⊗1 + α U)`.
pub fn isotropic_weyl_form(d: usize, alpha: f64) -> Result<Matrix> {
    let u = weyl::WeylBasis::<f64>::new(d)?.total_u();
    Ok((&ComplexMatrix::identity(d * d) + &u.scale_real(alpha)).scale_real(1.0 / (d * d) as f64))
}

/// Names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Qubit,
    Qutrit2,
    Qutrit3,
    Horodecki,
    Isotropic(usize),
}

impl FamilyKind {
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            FamilyKind::Qubit | FamilyKind::Qutrit2 => &["alpha", "beta"],
            FamilyKind::Qutrit3 => &["alpha", "beta", "gamma"],
            FamilyKind::Horodecki => &["b"],
            FamilyKind::Isotropic(_) => &["alpha"],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Qubit => f.write_str("qubit"),
            FamilyKind::Qutrit2 => f.write_str("qutrit2"),
            FamilyKind::Qutrit3 => f.write_str("qutrit3"),
            FamilyKind::Horodecki => f.write_str("horodecki"),
            FamilyKind::Isotropic(d) => write!(f, "isotropic{d}"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qubit" => Ok(FamilyKind::Qubit),
            "qutrit2" | "qutrit" => Ok(FamilyKind::Qutrit2),
            "qutrit3" => Ok(FamilyKind::Qutrit3),
            "horodecki" => Ok(FamilyKind::Horodecki),
            "isotropic" => Ok(FamilyKind::Isotropic(3)),
            other => other
                .strip_prefix("isotropic")
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&d| d >= 2)
                .map(FamilyKind::Isotropic)
                .ok_or_else(|| Error::UnknownFamily(other.to_string())),
        }
    }
}

/// A point of one of the families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyPoint {
    Qubit(QubitParams),
    Qutrit2(QutritParams),
    Qutrit3(ThreeParams),
    Horodecki(HorodeckiParam),
    Isotropic { d: usize, alpha: f64 },
}

impl FamilyPoint {
    /// Builds a point from parameters listed in [`FamilyKind::param_names`]
    /// order.
    pub fn from_params(kind: FamilyKind, params: &[f64]) -> Result<Self> {
        let expected = kind.param_names().len();
        if params.len() != expected {
            return Err(Error::InvalidParams(format!(
                "{kind} takes {expected} parameters, got {}",
                params.len()
            )));
        }
        check_finite(params)?;
        Ok(match kind {
            FamilyKind::Qubit => FamilyPoint::Qubit(QubitParams::new(params[0], params[1])),
            FamilyKind::Qutrit2 => FamilyPoint::Qutrit2(QutritParams::new(params[0], params[1])),
            FamilyKind::Qutrit3 => {
                FamilyPoint::Qutrit3(ThreeParams::new(params[0], params[1], params[2]))
            }
            FamilyKind::Horodecki => FamilyPoint::Horodecki(HorodeckiParam::new(params[0])?),
            FamilyKind::Isotropic(d) => FamilyPoint::Isotropic { d, alpha: params[0] },
        })
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyPoint::Qubit(_) => FamilyKind::Qubit,
            FamilyPoint::Qutrit2(_) => FamilyKind::Qutrit2,
            FamilyPoint::Qutrit3(_) => FamilyKind::Qutrit3,
            FamilyPoint::Horodecki(_) => FamilyKind::Horodecki,
            FamilyPoint::Isotropic { d, .. } => FamilyKind::Isotropic(*d),
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            FamilyPoint::Qubit(p) => vec![p.alpha, p.beta],
            FamilyPoint::Qutrit2(p) => vec![p.alpha, p.beta],
            FamilyPoint::Qutrit3(p) => vec![p.alpha, p.beta, p.gamma],
            FamilyPoint::Horodecki(p) => vec![p.b],
            FamilyPoint::Isotropic { alpha, .. } => vec![alpha],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match *self {
            FamilyPoint::Qubit(_) => (2, 2),
            FamilyPoint::Isotropic { d, .. } => (d, d),
            _ => (3, 3),
        }
    }

    /// Analytic positivity.
    pub fn is_positive(&self) -> bool {
        match *self {
            FamilyPoint::Qubit(p) => p.is_positive(),
            FamilyPoint::Qutrit2(p) => p.is_positive(),
            FamilyPoint::Qutrit3(p) => p.is_positive(),
            FamilyPoint::Horodecki(p) => (0.0..=5.0).contains(&p.b),
            FamilyPoint::Isotropic { d, alpha } => {
                let (lo, hi) = isotropic_range(d);
                alpha >= lo - tol::ANALYTIC_SLACK && alpha <= hi + tol::ANALYTIC_SLACK
            }
        }
    }

    /// The family matrix, built whether or not the parameters are valid.
    pub fn matrix_unchecked(&self) -> Matrix {
        match *self {
            FamilyPoint::Qubit(p) => qubit_two_param_matrix(p),
            FamilyPoint::Qutrit2(p) => three_param_matrix(ThreeParams::new(p.alpha, p.beta, 0.0)),
            FamilyPoint::Qutrit3(p) => three_param_matrix(p),
            FamilyPoint::Horodecki(p) => horodecki_matrix(p),
            FamilyPoint::Isotropic { d, alpha } => isotropic_matrix(d, alpha),
        }
    }

    /// The state, validated analytically.
    pub fn state(&self) -> Result<State> {
        match *self {
            FamilyPoint::Qubit(p) => qubit_two_param(p),
            FamilyPoint::Qutrit2(p) => qutrit_two_param(p),
            FamilyPoint::Qutrit3(p) => qutrit_three_param(p),
            FamilyPoint::Horodecki(p) => horodecki(p),
            FamilyPoint::Isotropic { d, alpha } => isotropic(d, alpha),
        }
    }

    /// The state, validated by eigenvalues instead of the inequalities.
    pub fn state_strict(&self) -> Result<State> {
        if let FamilyPoint::Horodecki(p) = self {
            HorodeckiParam::new(p.b)?;
        }
        State::new(self.matrix_unchecked(), Some(self.dims()))
    }
}

impl From<QubitParams> for FamilyPoint {
    fn from(p: QubitParams) -> Self {
        FamilyPoint::Qubit(p)
    }
}

impl From<QutritParams> for FamilyPoint {
    fn from(p: QutritParams) -> Self {
        FamilyPoint::Qutrit2(p)
    }
}

impl From<ThreeParams> for FamilyPoint {
    fn from(p: ThreeParams) -> Self {
        FamilyPoint::Qutrit3(p)
    }
}

impl From<HorodeckiParam> for FamilyPoint {
    fn from(p: HorodeckiParam) -> Self {
        FamilyPoint::Horodecki(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::hs_inner;

    fn min_eig(m: &Matrix) -> f64 {
        crate::numeric::hermitian_eigenvalues(m, 1e-10).unwrap().min()
    }

    #[test]
    fn qubit_corners() {
        let mixed = qubit_two_param(QubitParams::new(0.0, 0.0)).unwrap();
        assert!(mixed.matrix().max_abs_diff(&Matrix::identity(4).scale_real(0.25)) < 1e-15);
        let bell = qubit_two_param(QubitParams::new(1.0, 0.0)).unwrap();
        let phi = &qubit_bell_states()[0];
        assert!(bell.matrix().max_abs_diff(&Matrix::outer(phi, phi)) < 1e-15);
    }

    #[test]
    fn qubit_pauli_form_matches() {
        for &(a, b) in &[(0.3, -0.2), (1.0, 0.0), (-0.5, 0.4), (0.1, 0.9)] {
            let p = QubitParams::new(a, b);
            assert!(qubit_two_param_matrix(p).max_abs_diff(&qubit_pauli_form(p)) < 1e-12);
        }
    }

    #[test]
    fn qubit_boundary_is_singular() {
        let p = QubitParams::new(0.5, -0.5);
        assert!(min_eig(qubit_two_param(p).unwrap().matrix()).abs() < 1e-10);
    }

    #[test]
    fn qubit_rejects_outside() {
        assert!(matches!(
            qubit_two_param(QubitParams::new(1.5, 0.0)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn qutrit_corners_and_weyl_form() {
        let mixed = qutrit_two_param(QutritParams::new(0.0, 0.0)).unwrap();
        assert!(mixed.matrix().max_abs_diff(&Matrix::identity(9).scale_real(1.0 / 9.0)) < 1e-15);
        let pure = qutrit_two_param(QutritParams::new(1.0, 0.0)).unwrap();
        assert!(pure.matrix().max_abs_diff(&qutrit_bell_projectors()[0]) < 1e-12);
        for &(a, b) in &[(0.2, 0.1), (0.0, 0.6), (0.5, -0.1)] {
            let p = QutritParams::new(a, b);
            let lhs = qutrit_two_param(p).unwrap();
            assert!(lhs.matrix().max_abs_diff(&qutrit_weyl_form(p)) < 1e-12);
        }
    }

    #[test]
    fn qutrit_boundary_is_singular() {
        let p = QutritParams::new(-0.125, 0.0);
        assert!(min_eig(qutrit_two_param(p).unwrap().matrix()).abs() < 1e-10);
    }

    #[test]
    fn three_param_reduces_at_zero_gamma() {
        let a = qutrit_three_param(ThreeParams::new(0.3, 0.2, 0.0)).unwrap();
        let b = qutrit_two_param(QutritParams::new(0.3, 0.2)).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
        assert_eq!(
            ThreeParams::new(0.3, 0.2, 0.0).reduces_to_two_param(),
            Some(QutritParams::new(0.3, 0.2))
        );
    }

    #[test]
    fn three_param_vertex_is_singular() {
        // intersection of the first, second and fourth positivity planes
        // 7β/2 + 1 - γ = -β + 1 - γ  =>  β = 0;  α = 1 - γ = (γ - 1)/8  =>  γ = 1
        let p = ThreeParams::new(0.0, 0.0, 1.0);
        assert!(p.is_positive());
        assert!(min_eig(qutrit_three_param(p).unwrap().matrix()).abs() < 1e-10);
    }

    #[test]
    fn horodecki_matches_simplex_up_to_swap() {
        let s = swap(3);
        for b in [0.0, 1.0, 2.5, 3.5, 5.0] {
            let p = HorodeckiParam::new(b).unwrap();
            let lit = horodecki(p).unwrap();
            let img = three_param_matrix(p.to_simplex());
            let swapped = &(&s * &img) * &s;
            assert!(lit.matrix().max_abs_diff(&swapped) < 1e-12, "b = {b}");
        }
    }

    #[test]
    fn horodecki_simplex_values() {
        let p = HorodeckiParam::new(2.5).unwrap().to_simplex();
        assert!((p.alpha - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.beta + 5.0 / 21.0).abs() < 1e-15);
        assert!(p.gamma.abs() < 1e-15);
        let p = HorodeckiParam::new(0.0).unwrap().to_simplex();
        assert!((p.gamma - 5.0 / 7.0).abs() < 1e-15);
        assert!((p.alpha - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn horodecki_gamma_form() {
        for b in [0.0, 1.3, 2.5, 4.0] {
            let p = HorodeckiParam::new(b).unwrap().to_simplex();
            let q = simplex_line_from_gamma(p.gamma);
            assert!((p.alpha - q.alpha).abs() < 1e-15);
            assert!((p.beta - q.beta).abs() < 1e-15);
        }
    }

    #[test]
    fn horodecki_range() {
        assert!(HorodeckiParam::new(5.1).is_err());
        assert!(HorodeckiParam::new(-0.1).is_err());
    }

    #[test]
    fn sigma_components_orthogonal() {
        let phi = weyl::bell_state::<f64>(3);
        let p = Matrix::outer(&phi, &phi);
        for (x, y) in [
            (sigma_plus(), p.clone()),
            (sigma_minus(), p.clone()),
            (sigma_plus(), sigma_minus()),
        ] {
            assert!(hs_inner(&x, &y).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn isotropic_forms() {
        for d in [2, 3] {
            for alpha in [-1.0 / (d * d - 1) as f64, 0.0, 0.4, 1.0] {
                let s = isotropic(d, alpha).unwrap();
                assert!(s.matrix().max_abs_diff(&isotropic_weyl_form(d, alpha).unwrap()) < 1e-12);
            }
        }
        let edge = isotropic(3, -0.125).unwrap();
        assert!(min_eig(edge.matrix()).abs() < 1e-10);
        assert!(isotropic(3, 1.1).is_err());
    }

    #[test]
    fn family_kind_parsing() {
        assert_eq!("qutrit3".parse::<FamilyKind>().unwrap(), FamilyKind::Qutrit3);
        assert_eq!("isotropic2".parse::<FamilyKind>().unwrap(), FamilyKind::Isotropic(2));
        assert!(matches!("ququart".parse::<FamilyKind>(), Err(Error::UnknownFamily(_))));
        for k in [FamilyKind::Qubit, FamilyKind::Horodecki, FamilyKind::Isotropic(4)] {
            assert_eq!(k.to_string().parse::<FamilyKind>().unwrap(), k);
        }
    }

    #[test]
    fn from_params_counts() {
        assert!(FamilyPoint::from_params(FamilyKind::Qutrit3, &[0.1, 0.2]).is_err());
        assert!(FamilyPoint::from_params(FamilyKind::Qubit, &[f64::NAN, 0.2]).is_err());
        let p = FamilyPoint::from_params(FamilyKind::Qutrit3, &[0.1, 0.2, 0.0]).unwrap();
        assert_eq!(p.params(), vec![0.1, 0.2, 0.0]);
    }

    #[test]
    fn strict_mode_agrees_inside() {
        let p = FamilyPoint::Qutrit3(ThreeParams::new(0.1, -0.1, 0.2));
        assert!(p.state_strict().is_ok());
        let q = FamilyPoint::Qutrit3(ThreeParams::new(2.0, 0.0, 0.0));
        assert!(q.state().is_err());
        assert!(matches!(q.state_strict(), Err(Error::NotPositive { .. })));
    }
}
