//! Separability criteria: partial transposition, realignment, the analytic
//! PPT and realignment boundaries of each family, and classification.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::{FamilyPoint, ThreeParams};
use crate::numeric::{hermitian_eigenvalues, singular_values, ComplexMatrix, Scalar};
use crate::state::DensityMatrix;
use crate::{tol, Matrix, State};

fn check_bipartite<T: Scalar>(m: &ComplexMatrix<T>, da: usize, db: usize) -> Result<()> {
    if !m.is_square() || m.rows() != da * db {
        return Err(Error::dims(
            format!("{0}x{0}", da * db),
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(())
}

/// Transpose on subsystem B: `<ik|ρ^{T_B}|jl> = <il|ρ|jk>`.
pub fn partial_transpose_b<T: Scalar>(
    m: &ComplexMatrix<T>,
    da: usize,
    db: usize,
) -> Result<ComplexMatrix<T>> {
    check_bipartite(m, da, db)?;
    Ok(ComplexMatrix::from_fn(da * db, da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        m[(i * db + l, j * db + k)]
    }))
}

/// Transpose on subsystem A: `<ik|ρ^{T_A}|jl> = <jk|ρ|il>`.
pub fn partial_transpose_a<T: Scalar>(
    m: &ComplexMatrix<T>,
    da: usize,
    db: usize,
) -> Result<ComplexMatrix<T>> {
    check_bipartite(m, da, db)?;
    Ok(ComplexMatrix::from_fn(da * db, da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        m[(j * db + k, i * db + l)]
    }))
}

/// Partial transpose on subsystem B of a tagged state.
pub fn partial_transpose<T: Scalar>(rho: &DensityMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (da, db) = rho.bipartition()?;
    partial_transpose_b(rho.matrix(), da, db)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptVerdict {
    pub min_pt_eigenvalue: f64,
    pub is_ppt: bool,
}

impl PptVerdict {
    pub fn from_min(min_pt_eigenvalue: f64) -> Self {
        Self {
            min_pt_eigenvalue,
            is_ppt: min_pt_eigenvalue >= -tol::POSITIVITY,
        }
    }
}

pub fn ppt_check(rho: &State) -> Result<PptVerdict> {
    let pt = partial_transpose(rho)?;
    Ok(PptVerdict::from_min(hermitian_eigenvalues(&pt, tol::STATE)?.min()))
}

/// Realignment `(ρ_R)_{ij,kl} = ρ_{ik,jl}` of a `d × d` bipartite matrix.
///
/// The map is an involution, so it is also its own inverse.
pub fn realign_matrix<T: Scalar>(m: &ComplexMatrix<T>, d: usize) -> Result<ComplexMatrix<T>> {
    check_bipartite(m, d, d)?;
    Ok(ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        m[(i * d + k, j * d + l)]
    }))
}

/// Inverse of [`realign_matrix`].
pub fn realign_inverse<T: Scalar>(m: &ComplexMatrix<T>, d: usize) -> Result<ComplexMatrix<T>> {
    realign_matrix(m, d)
}

pub fn realign<T: Scalar>(rho: &DensityMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (da, db) = rho.bipartition()?;
    if da != db {
        return Err(Error::dims(format!("d_A = d_B, d_A = {da}"), format!("d_B = {db}")));
    }
    realign_matrix(rho.matrix(), da)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealignmentVerdict {
    pub singular_sum: f64,
    pub violated: bool,
}

impl RealignmentVerdict {
    pub fn from_sum(singular_sum: f64) -> Self {
        Self {
            singular_sum,
            violated: singular_sum > 1.0 + tol::REALIGNMENT,
        }
    }
}

pub fn realignment_check(rho: &State) -> Result<RealignmentVerdict> {
    Ok(RealignmentVerdict::from_sum(singular_values(&realign(rho)?).sum()))
}

/// `Δ = 4 + 9β² + 4γ - 7γ² - 6β(2+γ)`, the discriminant of the
/// three-parameter PPT boundary.
pub fn three_param_ppt_delta(beta: f64, gamma: f64) -> f64 {
    4.0 + 9.0 * beta * beta + 4.0 * gamma - 7.0 * gamma * gamma - 6.0 * beta * (2.0 + gamma)
}

/// Interval of `α` allowed by the quadratic part of the three-parameter PPT
/// condition, `None` when `Δ < 0` (no PPT state at this `(β, γ)`).
pub fn three_param_ppt_alpha_window(beta: f64, gamma: f64) -> Option<(f64, f64)> {
    let delta = three_param_ppt_delta(beta, gamma);
    if delta < -tol::ANALYTIC_SLACK {
        return None;
    }
    let root = 3.0 * delta.max(0.0).sqrt();
    let mid = -2.0 + 11.0 * beta - gamma;
    Some(((mid - root) / 16.0, (mid + root) / 16.0))
}

/// Analytic PPT condition of the three-parameter family:
/// `α ≥ -β - 1/2 + γ/2` and `α` inside [`three_param_ppt_alpha_window`].
pub fn three_param_ppt(p: &ThreeParams) -> bool {
    let s = tol::ANALYTIC_SLACK;
    if p.alpha < -p.beta - 0.5 + p.gamma / 2.0 - s {
        return false;
    }
    match three_param_ppt_alpha_window(p.beta, p.gamma) {
        Some((lo, hi)) => p.alpha >= lo - s && p.alpha <= hi + s,
        None => false,
    }
}

/// Isotropic states are PPT iff `α ≤ 1/(d+1)`.
pub fn isotropic_ppt(d: usize, alpha: f64) -> bool {
    alpha <= 1.0 / (d as f64 + 1.0) + tol::ANALYTIC_SLACK
}

/// Analytic PPT region of a family point. Positivity is not checked.
pub fn analytic_ppt_region(point: &FamilyPoint) -> bool {
    match point {
        FamilyPoint::Qubit(p) => p.is_ppt(),
        FamilyPoint::Qutrit2(p) => p.is_ppt(),
        FamilyPoint::Qutrit3(p) => three_param_ppt(p),
        FamilyPoint::Horodecki(p) => three_param_ppt(&p.to_simplex()),
        FamilyPoint::Isotropic { d, alpha } => isotropic_ppt(*d, *alpha),
    }
}

/// The radicals `Δ1`, `Δ2` of the realignment boundary. Radicands are
/// positive inside the positivity pyramid; outside they are clamped at zero.
pub fn realignment_deltas(beta: f64, gamma: f64) -> (f64, f64) {
    let common = 4.0 + 81.0 * beta * beta - 54.0 * beta * gamma + 33.0 * gamma * gamma;
    let shift = 36.0 * beta - 12.0 * gamma;
    ((common + shift).max(0.0).sqrt(), (common - shift).max(0.0).sqrt())
}

/// The four realignment inequalities as margins (`≥ 0` when satisfied), in
/// the order: `α ≤ (6+11β-γ-Δ1)/16`, `α ≤ (6+11β-γ+Δ1)/16`,
/// `α ≥ (-6+11β-γ-Δ2)/16`, `α ≥ (-6+11β-γ+Δ2)/16`.
pub fn realignment_margins(p: &ThreeParams) -> [f64; 4] {
    let (d1, d2) = realignment_deltas(p.beta, p.gamma);
    let base = 11.0 * p.beta - p.gamma;
    [
        (6.0 + base - d1) / 16.0 - p.alpha,
        (6.0 + base + d1) / 16.0 - p.alpha,
        p.alpha - (-6.0 + base - d2) / 16.0,
        p.alpha - (-6.0 + base + d2) / 16.0,
    ]
}

/// `α` on the binding realignment surface `α = (6+11β-γ-Δ1)/16`.
pub fn realignment_surface_alpha(beta: f64, gamma: f64) -> f64 {
    let (d1, _) = realignment_deltas(beta, gamma);
    (6.0 + 11.0 * beta - gamma - d1) / 16.0
}

/// True when all four realignment inequalities hold.
pub fn analytic_realignment_region(p: &ThreeParams) -> bool {
    realignment_margins(p)
        .iter()
        .all(|&m| m >= -tol::ANALYTIC_SLACK)
}

/// The five classification labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Invalid,
    NptEntangled,
    Separable,
    BoundEntangled,
    PptUndetermined,
}

impl Label {
    pub const ALL: [Label; 5] = [
        Label::Invalid,
        Label::NptEntangled,
        Label::Separable,
        Label::BoundEntangled,
        Label::PptUndetermined,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Invalid => "Invalid",
            Label::NptEntangled => "NPT-Entangled",
            Label::Separable => "Separable",
            Label::BoundEntangled => "BoundEntangled",
            Label::PptUndetermined => "PPT-Undetermined",
        }
    }

    pub fn is_ppt(&self) -> bool {
        matches!(
            self,
            Label::Separable | Label::BoundEntangled | Label::PptUndetermined
        )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Label::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown label `{s}`")))
    }
}

/// What a label rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Outside the family's positivity region.
    Positivity,
    /// A negative partial-transpose eigenvalue.
    PartialTranspose,
    /// PPT and a realignment norm above one.
    Realignment,
    /// PPT is sufficient for separability of two qubits.
    TwoQubitPpt,
    /// PPT is sufficient for separability of isotropic states.
    IsotropicPpt,
    /// PPT two-parameter qutrit states are all separable (cited result).
    CitedTwoParamQutrit,
    /// PPT and realignment together describe the separable three-parameter
    /// states (a numerical result, not a proof).
    NumericalThreeParam,
    /// PPT with no violated criterion and no family-specific result.
    Undetermined,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Positivity => "positivity",
            Provenance::PartialTranspose => "partial-transpose",
            Provenance::Realignment => "realignment",
            Provenance::TwoQubitPpt => "two-qubit-ppt",
            Provenance::IsotropicPpt => "isotropic-ppt",
            Provenance::CitedTwoParamQutrit => "cited-two-param-qutrit",
            Provenance::NumericalThreeParam => "numerical-three-param",
            Provenance::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub point: Option<FamilyPoint>,
    pub label: Label,
    pub provenance: Provenance,
    pub min_eigenvalue: f64,
    pub min_pt_eigenvalue: f64,
    pub realignment_sum: f64,
}

/// Numeric scalars of any square bipartite matrix: minimum eigenvalue,
/// minimum partial-transpose eigenvalue and realignment norm.
pub fn scalars(m: &Matrix, da: usize, db: usize) -> Result<(f64, f64, f64)> {
    let min_eig = hermitian_eigenvalues(m, tol::STATE)?.min();
    let min_pt = hermitian_eigenvalues(&partial_transpose_b(m, da, db)?, tol::STATE)?.min();
    let realign_sum = if da == db {
        singular_values(&realign_matrix(m, da)?).sum()
    } else {
        f64::NAN
    };
    Ok((min_eig, min_pt, realign_sum))
}

/// Classifies a family point.
///
/// Positivity is decided by the analytic inequalities, PPT and realignment by
/// the numeric criteria. PPT points are labelled separable where a family
/// result says so; [`Classification::provenance`] records which.
pub fn classify(point: &FamilyPoint) -> Result<Classification> {
    let (da, db) = point.dims();
    let (min_eig, min_pt, realign_sum) = scalars(&point.matrix_unchecked(), da, db)?;
    let ppt = PptVerdict::from_min(min_pt);
    let realignment = RealignmentVerdict::from_sum(realign_sum);
    let (label, provenance) = if !point.is_positive() {
        (Label::Invalid, Provenance::Positivity)
    } else if !ppt.is_ppt {
        (Label::NptEntangled, Provenance::PartialTranspose)
    } else if realignment.violated {
        (Label::BoundEntangled, Provenance::Realignment)
    } else {
        match point {
            FamilyPoint::Qubit(_) => (Label::Separable, Provenance::TwoQubitPpt),
            FamilyPoint::Qutrit2(_) => (Label::Separable, Provenance::CitedTwoParamQutrit),
            FamilyPoint::Qutrit3(_) | FamilyPoint::Horodecki(_) => {
                (Label::Separable, Provenance::NumericalThreeParam)
            }
            FamilyPoint::Isotropic { .. } => (Label::Separable, Provenance::IsotropicPpt),
        }
    };
    Ok(Classification {
        point: Some(*point),
        label,
        provenance,
        min_eigenvalue: min_eig,
        min_pt_eigenvalue: min_pt,
        realignment_sum: realign_sum,
    })
}

/// Classifies an arbitrary tagged state. PPT states that do not violate
/// realignment are [`Label::PptUndetermined`].
pub fn classify_state(rho: &State) -> Result<Classification> {
    let (da, db) = rho.bipartition()?;
    let (min_eig, min_pt, realign_sum) = scalars(rho.matrix(), da, db)?;
    let (label, provenance) = if min_eig < -tol::POSITIVITY {
        (Label::Invalid, Provenance::Positivity)
    } else if !PptVerdict::from_min(min_pt).is_ppt {
        (Label::NptEntangled, Provenance::PartialTranspose)
    } else if RealignmentVerdict::from_sum(realign_sum).violated {
        (Label::BoundEntangled, Provenance::Realignment)
    } else if da * db <= 6 {
        (Label::Separable, Provenance::TwoQubitPpt)
    } else {
        (Label::PptUndetermined, Provenance::Undetermined)
    };
    Ok(Classification {
        point: None,
        label,
        provenance,
        min_eigenvalue: min_eig,
        min_pt_eigenvalue: min_pt,
        realignment_sum: realign_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{HorodeckiParam, QubitParams, QutritParams};
    use crate::weyl::bell_state;

    fn bell(d: usize) -> State {
        let v = bell_state::<f64>(d);
        State::from_validated(Matrix::outer(&v, &v), Some((d, d))).unwrap()
    }

    #[test]
    fn maximally_mixed_is_fixed() {
        let rho = State::maximally_mixed(3, 3);
        assert_eq!(partial_transpose(&rho).unwrap(), *rho.matrix());
    }

    #[test]
    fn bell_pt_spectrum() {
        let pt = partial_transpose(&bell(2)).unwrap();
        let s = hermitian_eigenvalues(&pt, 1e-12).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in s.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_tag() {
        let rho = State::from_validated(Matrix::identity(4).scale_real(0.25), None).unwrap();
        assert_eq!(partial_transpose(&rho), Err(Error::MissingBipartition));
        assert_eq!(realign(&rho), Err(Error::MissingBipartition));
    }

    #[test]
    fn side_independence_on_bell() {
        let m = bell(3).into_matrix();
        let a = hermitian_eigenvalues(&partial_transpose_a(&m, 3, 3).unwrap(), 1e-12).unwrap();
        let b = hermitian_eigenvalues(&partial_transpose_b(&m, 3, 3).unwrap(), 1e-12).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn realignment_examples() {
        let mixed = realignment_check(&State::maximally_mixed(3, 3)).unwrap();
        assert!((mixed.singular_sum - 1.0 / 3.0).abs() < 1e-12);
        assert!(!mixed.violated);
        let bell = realignment_check(&bell(3)).unwrap();
        assert!((bell.singular_sum - 3.0).abs() < 1e-12);
        assert!(bell.violated);
        let sv = singular_values(&realign(&self::bell(3)).unwrap());
        assert!(sv.values().iter().all(|s| (s - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn ppt_examples() {
        let q = FamilyPoint::Qubit(QubitParams::new(1.0, 0.0)).state().unwrap();
        assert!(!ppt_check(&q).unwrap().is_ppt);
        let h = |b| FamilyPoint::Horodecki(HorodeckiParam::new(b).unwrap()).state().unwrap();
        assert!(ppt_check(&h(2.5)).unwrap().is_ppt);
        assert!(!ppt_check(&h(0.5)).unwrap().is_ppt);
        assert!(ppt_check(&h(3.5)).unwrap().is_ppt);
        assert!(realignment_check(&h(3.5)).unwrap().violated);
    }

    #[test]
    fn analytic_ppt_examples() {
        assert!(!analytic_ppt_region(&FamilyPoint::Qubit(QubitParams::new(0.5, 0.0))));
        assert!(analytic_ppt_region(&FamilyPoint::Qubit(QubitParams::new(0.3, 0.0))));
        assert!(!analytic_ppt_region(&FamilyPoint::Qutrit2(QutritParams::new(0.5, 0.0))));
        let b2 = HorodeckiParam::new(2.0).unwrap().to_simplex();
        assert!(three_param_ppt(&b2));
    }

    #[test]
    fn three_param_ppt_reduces_to_two_param() {
        for i in 0..=40 {
            for j in 0..=40 {
                let a = -0.2 + 1.2 * i as f64 / 40.0;
                let b = -0.3 + 1.3 * j as f64 / 40.0;
                let two = QutritParams::new(a, b);
                if !two.is_positive() {
                    continue;
                }
                assert_eq!(two.is_ppt(), three_param_ppt(&ThreeParams::new(a, b, 0.0)), "{a} {b}");
            }
        }
    }

    #[test]
    fn analytic_realignment_examples() {
        assert!(analytic_realignment_region(&ThreeParams::new(0.0, 0.0, 0.0)));
        let b35 = HorodeckiParam::new(3.5).unwrap().to_simplex();
        assert!(!analytic_realignment_region(&b35));
        assert!(realignment_margins(&b35)[0] < 0.0);
        assert!(realignment_margins(&b35)[1..].iter().all(|&m| m >= 0.0));
        let b25 = HorodeckiParam::new(2.5).unwrap().to_simplex();
        assert!(analytic_realignment_region(&b25));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&FamilyPoint::Qubit(QubitParams::new(1.0, 0.0))).unwrap();
        assert_eq!(c.label, Label::NptEntangled);
        let h = |b| classify(&FamilyPoint::Horodecki(HorodeckiParam::new(b).unwrap())).unwrap();
        assert_eq!(h(3.5).label, Label::BoundEntangled);
        assert_eq!(h(2.5).label, Label::Separable);
        assert_eq!(h(2.5).provenance, Provenance::NumericalThreeParam);
        assert_eq!(h(4.5).label, Label::NptEntangled);
        let bad = classify(&FamilyPoint::Qutrit3(ThreeParams::new(2.0, 0.0, 0.0))).unwrap();
        assert_eq!(bad.label, Label::Invalid);
        let q = classify(&FamilyPoint::Qutrit2(QutritParams::new(0.2, 0.0))).unwrap();
        assert_eq!((q.label, q.provenance), (Label::Separable, Provenance::CitedTwoParamQutrit));
    }

    #[test]
    fn classify_state_undetermined() {
        let c = classify_state(&State::maximally_mixed(3, 3)).unwrap();
        assert_eq!(c.label, Label::PptUndetermined);
        let c = classify_state(&State::maximally_mixed(2, 2)).unwrap();
        assert_eq!(c.label, Label::Separable);
    }

    #[test]
    fn label_strings_round_trip() {
        for l in Label::ALL {
            assert_eq!(l.as_str().parse::<Label>().unwrap(), l);
        }
    }

    #[test]
    fn isotropic_ppt_threshold() {
        for d in [2usize, 3] {
            let edge = 1.0 / (d as f64 + 1.0);
            let inside = State::from_validated(
                FamilyPoint::Isotropic { d, alpha: edge }.matrix_unchecked(),
                Some((d, d)),
            )
            .unwrap();
            assert!(ppt_check(&inside).unwrap().is_ppt);
            let outside = FamilyPoint::Isotropic { d, alpha: edge + 0.01 }.state().unwrap();
            assert!(!ppt_check(&outside).unwrap().is_ppt);
        }
    }
}
