//! Bound entanglement in the three-parameter qutrit family.
//!
//! PPT starting points are taken on the positivity plane
//! `α = 7β/2 + 1 - γ`, parameterized by `(γ, ε)`. Mixing such a point with
//! the maximally mixed state gives the line `ρ_λ = λ ρ_plane + (1-λ)/9 · 1`,
//! and the operator `C_λ = ρ_λ - ρ_plane - <ρ_λ, ρ_λ - ρ_plane> 1` has the
//! closed form `a (2·1 + c1 U1 + c2 U2^I + c2* U2^II)`. Above the `λ` where
//! `max(|c1|, |c2|) = 1` it is a valid witness, so every PPT state on the line
//! beyond that point is bound entangled.
//!
//! A second family of witnesses comes from the planes tangent to the
//! realignment boundary.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::criteria::{ppt_check, three_param_ppt};
use crate::error::{Error, Result};
use crate::families::{qutrit_three_param, FamilyPoint, ThreeParams};
use crate::numeric::hs_inner;
use crate::weyl::qutrit_ops;
use crate::witness::{build_witness_matrix, witness_violation, Decomposition, WitnessOperator};
use crate::{tol, Matrix, State};

/// Lower end of the `ε` range with admissible starting points.
pub const EPSILON_MIN: f64 = -0.25;
/// Upper end of the `ε` range with admissible starting points.
pub const EPSILON_MAX: f64 = 1.0 / 3.0;

/// `(3 + √13)/8`, the smallest `λ_min` over all admissible starting points.
pub fn lambda_min_total() -> f64 {
    (3.0 + 13f64.sqrt()) / 8.0
}

/// `(7√13 - 25)/2`, the `ε` at which [`lambda_min_total`] is attained.
pub fn epsilon_at_total_min() -> f64 {
    (7.0 * 13f64.sqrt() - 25.0) / 2.0
}

/// A starting point on the plane `α = 7β/2 + 1 - γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSpec {
    pub gamma: f64,
    pub epsilon: f64,
}

impl LineSpec {
    pub fn new(gamma: f64, epsilon: f64) -> Self {
        Self { gamma, epsilon }
    }

    /// `α = (1+γ+ε)/6`, `β = (-5+7γ+ε)/21`.
    pub fn plane_point(&self) -> ThreeParams {
        let (g, e) = (self.gamma, self.epsilon);
        ThreeParams::new((1.0 + g + e) / 6.0, (-5.0 + 7.0 * g + e) / 21.0, g)
    }

    /// The line point at `λ`, `λ·(α, β, γ)` of the plane point.
    pub fn line_point(&self, lambda: f64) -> ThreeParams {
        let p = self.plane_point();
        ThreeParams::new(lambda * p.alpha, lambda * p.beta, lambda * p.gamma)
    }

    /// `d = 1 + 3γ² + 3ε(2+ε)/7`.
    pub fn dval(&self) -> f64 {
        let (g, e) = (self.gamma, self.epsilon);
        1.0 + 3.0 * g * g + 3.0 * e * (2.0 + e) / 7.0
    }

    pub fn is_ppt(&self) -> bool {
        three_param_ppt(&self.plane_point())
    }

    /// Inverts [`LineSpec::line_point`]: the starting point and `λ` whose line
    /// passes through `p`, or `None` for points with `λ ≤ 0`.
    pub fn through(p: &ThreeParams) -> Option<(LineSpec, f64)> {
        let lambda = p.alpha - 3.5 * p.beta + p.gamma;
        if lambda <= tol::ANALYTIC_SLACK {
            return None;
        }
        let (alpha, gamma) = (p.alpha / lambda, p.gamma / lambda);
        Some((LineSpec::new(gamma, 6.0 * alpha - 1.0 - gamma), lambda))
    }
}

/// Closed-form coefficients of `C_λ = a (2·1 + c1 U1 + c2 U2^I + c2* U2^II)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaCoefficients {
    pub a: f64,
    pub dval: f64,
    pub c1: f64,
    pub c2: Complex64,
    /// `|c1|`.
    pub g1: f64,
    /// `|c2|`.
    pub g2: f64,
}

impl LambdaCoefficients {
    pub fn max_abs_coeff(&self) -> f64 {
        self.g1.max(self.g2)
    }

    pub fn decomposition(&self) -> Decomposition {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 9];
        for n in 0..3 {
            for m in 1..3 {
                coeffs[n * 3 + m] = Complex64::new(self.c1, 0.0);
            }
        }
        coeffs[3] = self.c2;
        coeffs[6] = self.c2.conj();
        Decomposition::Qudit {
            d: 3,
            a: self.a,
            coeffs,
        }
    }

    pub fn matrix(&self) -> Matrix {
        let ops = qutrit_ops();
        let mut m = Matrix::identity(9).scale_real(2.0);
        m += &ops.u1.scale_real(self.c1);
        m += &ops.u2_i.scale(self.c2);
        m += &ops.u2_ii.scale(self.c2.conj());
        m.scale_real(self.a)
    }

    /// `||C_λ||`, using `||U_lm ⊗ U_{-l,m}||² = 9` and six terms in `U1`.
    pub fn hs_norm(&self) -> f64 {
        3.0 * self.a * (4.0 + 6.0 * self.g1 * self.g1 + 2.0 * self.g2 * self.g2).sqrt()
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParams(format!("λ = {lambda} outside (0, 1]")));
    }
    Ok(())
}

/// `a = dλ(1-λ)/36`, `c1 = -4(2+ε)/(7dλ)`, `c2 = 2(1 - 7√3 γ i - 3ε)/(7dλ)`.
pub fn lambda_coefficients(spec: &LineSpec, lambda: f64) -> Result<LambdaCoefficients> {
    check_lambda(lambda)?;
    let (g, e) = (spec.gamma, spec.epsilon);
    let d = spec.dval();
    let scale = 7.0 * d * lambda;
    let c1 = -4.0 * (2.0 + e) / scale;
    let c2 = Complex64::new(2.0 * (1.0 - 3.0 * e), -14.0 * 3f64.sqrt() * g) / scale;
    Ok(LambdaCoefficients {
        a: d * lambda * (1.0 - lambda) / 36.0,
        dval: d,
        c1,
        c2,
        g1: c1.abs(),
        g2: c2.norm(),
    })
}

/// `λ ρ + (1-λ)/D · 1`.
pub fn rho_lambda(rho: &State, lambda: f64) -> Result<State> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParams(format!("λ = {lambda} outside [0, 1]")));
    }
    let n = rho.dim();
    let m = &rho.matrix().scale_real(lambda) + &Matrix::identity(n).scale_real((1.0 - lambda) / n as f64);
    State::from_validated(m, rho.dims())
}

/// `C_λ = ρ_λ - ρ - <ρ_λ, ρ_λ - ρ> 1`, unnormalized.
pub fn c_lambda(rho: &State, lambda: f64) -> Result<WitnessOperator> {
    check_lambda(lambda)?;
    let rl = rho_lambda(rho, lambda)?;
    WitnessOperator::from_matrix(build_witness_matrix(rl.matrix(), rho.matrix(), false)?)
}

/// Starting-point part of `λ_min`: the coefficient magnitudes times `λ`,
/// `(4(2+ε)/(7d), 2√((1-3ε)² + 147γ²)/(7d))`.
pub fn scaled_coefficient_magnitudes(spec: &LineSpec) -> (f64, f64) {
    let (g, e) = (spec.gamma, spec.epsilon);
    let d7 = 7.0 * spec.dval();
    (
        4.0 * (2.0 + e) / d7,
        2.0 * ((1.0 - 3.0 * e).powi(2) + 147.0 * g * g).sqrt() / d7,
    )
}

/// The `λ` at which `max(|c1|, |c2|) = 1`; `C_λ` is a valid witness above it.
/// Values above one mean the line carries no detected state.
pub fn lambda_min(spec: &LineSpec) -> Result<f64> {
    if !spec.is_ppt() {
        let p = spec.plane_point();
        let state = State::from_validated(crate::families::three_param_matrix(p), Some((3, 3)))?;
        return Err(Error::NotPpt {
            min_pt_eigenvalue: ppt_check(&state)?.min_pt_eigenvalue,
        });
    }
    Ok(lambda_min_unchecked(spec))
}

/// [`lambda_min`] without the PPT check on the starting point.
pub fn lambda_min_unchecked(spec: &LineSpec) -> f64 {
    let (h1, h2) = scaled_coefficient_magnitudes(spec);
    h1.max(h2)
}

/// Solves `max(g1, g2)(λ) = 1` by bisection on the coefficients from
/// [`lambda_coefficients`], without using their `1/λ` scaling.
pub fn lambda_min_bisection(spec: &LineSpec, tolerance: f64) -> Result<f64> {
    if !spec.is_ppt() {
        return lambda_min(spec);
    }
    let excess = |l: f64| -> f64 {
        let c = lambda_coefficients(spec, l).expect("λ in (0, 1]");
        c.max_abs_coeff() - 1.0
    };
    if excess(1.0) > 0.0 {
        // no crossing inside (0, 1]; extend with the λ·g invariance
        let at_one = excess(1.0) + 1.0;
        return Ok(at_one);
    }
    let (mut lo, mut hi) = (1e-6, 1.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `γ₀ = √(15 + 22ε - 5ε²)/(7√3)`, where `g1 = g2`.
pub fn gamma0(epsilon: f64) -> f64 {
    (15.0 + 22.0 * epsilon - 5.0 * epsilon * epsilon).max(0.0).sqrt() / (7.0 * 3f64.sqrt())
}

/// `ε₀ ≈ -0.027`, where the upper bound of the admissible `|γ|` interval
/// switches from the `λ_min = 1` curve to the PPT boundary.
pub fn epsilon_zero() -> f64 {
    let k = (2.0 / (-5.0 + 29f64.sqrt())).cbrt();
    (8.0 - 7.0 * k + 7.0 / k) / 3.0
}

/// Interval of `|γ|` with `λ_min < 1` and a PPT plane point at a given `ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaInterval {
    pub lower: f64,
    pub upper: f64,
}

impl GammaInterval {
    pub fn contains(&self, gamma: f64) -> bool {
        let g = gamma.abs();
        g > self.lower && g < self.upper
    }
}

/// Closed-form admissible `|γ|` interval for `-1/4 < ε < 1/3`.
///
/// Lower bound `√(1 - 2ε - 3ε²)/√21`; upper bound
/// `√(7 - 6ε - 3ε² - 2√(1 - 48ε - 12ε²))/√21` below `ε₀` and
/// `√(9 - 26ε - 3ε²)/7` above.
pub fn admissible_region(epsilon: f64) -> Result<GammaInterval> {
    if !(epsilon > EPSILON_MIN && epsilon < EPSILON_MAX) {
        return Err(Error::InvalidParams(format!(
            "ε = {epsilon} outside (-1/4, 1/3)"
        )));
    }
    let e = epsilon;
    let s21 = 21f64.sqrt();
    let lower = (1.0 - 2.0 * e - 3.0 * e * e).max(0.0).sqrt() / s21;
    let upper = if e < epsilon_zero() {
        let inner = (1.0 - 48.0 * e - 12.0 * e * e).max(0.0).sqrt();
        (7.0 - 6.0 * e - 3.0 * e * e - 2.0 * inner).max(0.0).sqrt() / s21
    } else {
        (9.0 - 26.0 * e - 3.0 * e * e).max(0.0).sqrt() / 7.0
    };
    Ok(GammaInterval { lower, upper })
}

/// Largest `γ ≥ 0` whose plane point at `ε` is PPT, by bisection on the
/// analytic PPT condition.
pub fn ppt_gamma_limit(epsilon: f64) -> f64 {
    let ppt = |g: f64| LineSpec::new(g, epsilon).is_ppt();
    if !ppt(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if ppt(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Result of [`total_min_search`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TotalMinimum {
    pub lambda: f64,
    pub epsilon: f64,
    /// `|γ|` at the minimum.
    pub gamma: f64,
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tolerance: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tolerance {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Minimum of `λ_min` over `γ ∈ [0, γ_PPT(ε)]` at fixed `ε`.
fn best_gamma(epsilon: f64) -> (f64, f64) {
    let limit = ppt_gamma_limit(epsilon);
    let f = |g: f64| lambda_min_unchecked(&LineSpec::new(g, epsilon));
    // bracket on a coarse scan, then golden section
    let steps = 64;
    let h = limit / steps as f64;
    let (mut best_i, mut best_v) = (0, f64::INFINITY);
    for i in 0..=steps {
        let v = f(i as f64 * h);
        if v < best_v {
            best_i = i;
            best_v = v;
        }
    }
    let lo = (best_i as f64 - 1.0).max(0.0) * h;
    let hi = ((best_i + 1) as f64 * h).min(limit);
    let (g, v) = golden_min(f, lo, hi, 1e-13);
    if best_v < v {
        (best_i as f64 * h, best_v)
    } else {
        (g, v)
    }
}

/// Minimizes `λ_min` over all PPT starting points.
///
/// A `resolution × resolution` grid over `ε ∈ (-1/4, 1/3)` and
/// `γ ∈ [0, 1)` brackets the minimum, which is then refined by nested golden
/// section searches (outer over `ε`, inner over `γ` up to the PPT limit).
pub fn total_min_search(resolution: usize) -> Result<TotalMinimum> {
    if resolution < 2 {
        return Err(Error::InvalidParams(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let n = resolution;
    let de = (EPSILON_MAX - EPSILON_MIN) / (n + 1) as f64;
    let dg = 1.0 / n as f64;
    let (best_k, _) = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let spec = LineSpec::new((k % n) as f64 * dg, EPSILON_MIN + ((k / n) + 1) as f64 * de);
            let v = if spec.is_ppt() {
                lambda_min_unchecked(&spec)
            } else {
                f64::INFINITY
            };
            (k, v)
        })
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    if best_k == usize::MAX {
        return Err(Error::InvalidParams("no PPT starting point on the grid".into()));
    }
    let e0 = EPSILON_MIN + ((best_k / n) + 1) as f64 * de;
    let lo = (e0 - 2.0 * de).max(EPSILON_MIN + 1e-12);
    let hi = (e0 + 2.0 * de).min(EPSILON_MAX - 1e-12);
    let (epsilon, lambda) = golden_min(|e| best_gamma(e).1, lo, hi, 1e-12);
    let (gamma, _) = best_gamma(epsilon);
    Ok(TotalMinimum {
        lambda,
        epsilon,
        gamma,
    })
}

/// Which `Δ_c` enters the tangent witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCVariant {
    /// Radicand `4 + 36β + 81β² - 12γ - 54βγ + 33γ²`, equal to `Δ1`.
    Corrected,
    /// Radicand `4 + 36 + 81β² - 12γ - 54βγ + 33γ²`.
    Printed,
}

fn delta_c(beta: f64, gamma: f64, variant: DeltaCVariant) -> Result<f64> {
    let linear = match variant {
        DeltaCVariant::Corrected => 36.0 * beta,
        DeltaCVariant::Printed => 36.0,
    };
    let radicand = 4.0 + linear + 81.0 * beta * beta - 12.0 * gamma - 54.0 * beta * gamma
        + 33.0 * gamma * gamma;
    if radicand < 0.0 {
        return Err(Error::InvalidParams(format!(
            "tangent point (β, γ) = ({beta}, {gamma}) has negative radicand {radicand:e}"
        )));
    }
    Ok(radicand.sqrt())
}

/// Coefficients `(a, c)` of the realignment tangent witness at `(β_t, γ_t)`.
pub fn tangent_coefficients(beta: f64, gamma: f64, variant: DeltaCVariant) -> Result<(f64, Complex64)> {
    let dc = delta_c(beta, gamma, variant)?;
    let b9 = 2.0 + 9.0 * beta;
    let denom = b9 * b9 - 6.0 * b9 * gamma + 36.0 * gamma * gamma;
    if denom.abs() < 1e-300 {
        return Err(Error::InvalidParams(format!(
            "tangent point (β, γ) = ({beta}, {gamma}) has a vanishing denominator"
        )));
    }
    let a = (-b9 + 3.0 * gamma + 3.0 * dc) / 36.0;
    let re = 9.0 * gamma * gamma + (-b9 + 3.0 * gamma) * dc;
    let im = 3f64.sqrt() * gamma * (b9 - 3.0 * gamma + 3.0 * dc);
    Ok((a, Complex64::new(re, im) / denom))
}

/// Witness tangent to the realignment boundary
/// `α = (6 + 11β - γ - Δ1)/16` at `(β_t, γ_t)`:
/// `a (2·1 - U1 + c* U2^I + c U2^II)`.
///
/// With `U2^I = U_10 ⊗ U_20` the coefficient `c*` multiplies `U2^I`; this
/// is the assignment under which the operator vanishes on the tangent state.
pub fn realignment_tangent_witness(
    beta_t: f64,
    gamma_t: f64,
    variant: DeltaCVariant,
) -> Result<WitnessOperator> {
    let (a, c) = tangent_coefficients(beta_t, gamma_t, variant)?;
    let mut coeffs = vec![Complex64::new(-1.0, 0.0); 9];
    coeffs[0] = Complex64::new(0.0, 0.0);
    coeffs[3] = c.conj();
    coeffs[6] = c;
    WitnessOperator::from_decomposition(Decomposition::Qudit { d: 3, a, coeffs })
}

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CertificateMethod {
    /// Realignment tangent witness at `(β_t, γ_t)`.
    RealignmentTangent { beta: f64, gamma: f64 },
    /// `C_λ` from the starting point `spec`, at the given `λ`.
    LambdaLine { spec: LineSpec, lambda: f64 },
}

/// A lemma-valid witness with negative expectation on the certified state.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub method: CertificateMethod,
    pub witness: WitnessOperator,
    /// `Tr(ρ C)`, negative.
    pub violation: f64,
}

#[derive(Clone, Debug)]
pub enum CertifyOutcome {
    BoundEntangled(Certificate),
    Undetected,
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::BoundEntangled(c) => Some(c),
            CertifyOutcome::Undetected => None,
        }
    }
}

/// Options for [`certify_bound_entangled`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Grid size per axis of the `(ε, γ)` scan over `C_λ` witnesses.
    pub grid: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { grid: 200 }
    }
}

fn accept(method: CertificateMethod, witness: WitnessOperator, state: &State) -> Result<Option<Certificate>> {
    if !witness.is_valid() {
        return Ok(None);
    }
    let violation = witness_violation(&witness, state)?;
    Ok((violation < -tol::LEMMA_COEFF).then_some(Certificate {
        method,
        witness,
        violation,
    }))
}

/// Certifies `p` with `C_λ` taken at `λ_min` of the line through `p`.
///
/// `C_λ` vanishes on `ρ_λ` and is negative on the line beyond it, so any
/// point of the line with `λ_min < λ ≤ 1` is detected.
pub fn certify_on_own_line(p: &ThreeParams) -> Result<Option<Certificate>> {
    let state = qutrit_three_param(*p)?;
    let Some((spec, lambda)) = LineSpec::through(p) else {
        return Ok(None);
    };
    let lambda_w = lambda_min_unchecked(&spec);
    if !spec.is_ppt() || lambda > 1.0 + tol::ANALYTIC_SLACK || lambda <= lambda_w {
        return Ok(None);
    }
    let coeffs = lambda_coefficients(&spec, lambda_w)?;
    let witness = WitnessOperator::from_decomposition(coeffs.decomposition())?;
    accept(
        CertificateMethod::LambdaLine {
            spec,
            lambda: lambda_w,
        },
        witness,
        &state,
    )
}

/// Searches for a lemma-valid witness detecting the PPT state `p`.
///
/// Tries, in order: the realignment tangent witness at `(β, γ)` of `p`; `C_λ`
/// on the line through `p`; the most violated `C_λ` over a grid of starting
/// points, each taken at its own `λ_min`.
pub fn certify_bound_entangled(p: &ThreeParams, options: CertifyOptions) -> Result<CertifyOutcome> {
    let state = qutrit_three_param(*p)?;
    let ppt = ppt_check(&state)?;
    if !ppt.is_ppt {
        return Err(Error::NotPpt {
            min_pt_eigenvalue: ppt.min_pt_eigenvalue,
        });
    }
    if let Ok(w) = realignment_tangent_witness(p.beta, p.gamma, DeltaCVariant::Corrected) {
        let method = CertificateMethod::RealignmentTangent {
            beta: p.beta,
            gamma: p.gamma,
        };
        if let Some(cert) = accept(method, w, &state)? {
            return Ok(CertifyOutcome::BoundEntangled(cert));
        }
    }
    if let Some(cert) = certify_on_own_line(p)? {
        return Ok(CertifyOutcome::BoundEntangled(cert));
    }
    Ok(match grid_search(&state, options.grid)? {
        Some(cert) => CertifyOutcome::BoundEntangled(cert),
        None => CertifyOutcome::Undetected,
    })
}

/// Certifies a three-parameter or Horodecki point.
///
/// Horodecki points are certified through their three-parameter image, which
/// is the same state with the subsystems exchanged; the returned witness is
/// exchanged back so that it detects `ρ_b` itself.
pub fn certify_point(point: &FamilyPoint, options: CertifyOptions) -> Result<CertifyOutcome> {
    match point {
        FamilyPoint::Qutrit3(p) => certify_bound_entangled(p, options),
        FamilyPoint::Horodecki(h) => {
            let outcome = certify_bound_entangled(&h.to_simplex(), options)?;
            let CertifyOutcome::BoundEntangled(cert) = outcome else {
                return Ok(CertifyOutcome::Undetected);
            };
            let decomposition = cert
                .witness
                .decomposition()
                .expect("certificates carry a decomposition")
                .swapped();
            let witness = WitnessOperator::from_decomposition(decomposition)?;
            let state = point.state()?;
            Ok(match accept(cert.method, witness, &state)? {
                Some(c) => CertifyOutcome::BoundEntangled(c),
                None => CertifyOutcome::Undetected,
            })
        }
        other => Err(Error::InvalidParams(format!(
            "bound entanglement certificates cover qutrit3 and horodecki, not {}",
            other.kind()
        ))),
    }
}

fn grid_search(state: &State, n: usize) -> Result<Option<Certificate>> {
    if n < 2 {
        return Ok(None);
    }
    let ops = qutrit_ops();
    let rho = state.matrix();
    let t1 = hs_inner(&ops.u1, rho)?.re;
    let t2 = hs_inner(&ops.u2_i.adjoint(), rho)?;
    let t3 = hs_inner(&ops.u2_ii.adjoint(), rho)?;
    let trace = rho.trace().re;
    let de = (EPSILON_MAX - EPSILON_MIN) / (n + 1) as f64;
    let dg = 2.0 / (n + 1) as f64;
    let best = (0..n * n)
        .into_par_iter()
        .filter_map(|k| {
            let spec = LineSpec::new(
                -1.0 + ((k % n) + 1) as f64 * dg,
                EPSILON_MIN + ((k / n) + 1) as f64 * de,
            );
            let lambda = lambda_min_unchecked(&spec);
            if lambda.is_nan() || lambda >= 1.0 || !spec.is_ppt() {
                return None;
            }
            let c = lambda_coefficients(&spec, lambda).ok()?;
            let value = c.a
                * (2.0 * trace + c.c1 * t1 + (c.c2 * t2 + c.c2.conj() * t3).re);
            Some((k, value / c.hs_norm(), spec, lambda))
        })
        .reduce_with(|a, b| if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a });
    let Some((_, score, spec, lambda)) = best else {
        return Ok(None);
    };
    if score >= 0.0 {
        return Ok(None);
    }
    let witness = WitnessOperator::from_decomposition(lambda_coefficients(&spec, lambda)?.decomposition())?;
    accept(CertificateMethod::LambdaLine { spec, lambda }, witness, state)
}
