//! Geometric entanglement witnesses and their analytic validity checks.
//!
//! A witness built from a reference state `ρ̃` and an entangled state
//! `ρ_ent` is `C = ρ̃ - ρ_ent - <ρ̃, ρ̃ - ρ_ent> 1`, optionally divided by
//! `||ρ̃ - ρ_ent||`. Its validity on all separable states is decided by
//! decomposing it into one of two forms:
//!
//! - qubits: `C = a (1 + c1 σ1⊗σ1 + c2 σ2⊗σ2 + c3 σ3⊗σ3)`,
//! - qudits: `C = a ((d-1) 1 + sum c_nm U_nm ⊗ U_{-n,m})`,
//!
//! both of which are nonnegative on separable states when `a > 0` and every
//! `|c| ≤ 1`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::{hs_inner, hs_norm, kron};
use crate::sampling::{par_min, random_pure_state};
use crate::weyl::{pauli, WeylBasis};
use crate::{tol, Matrix, State};

/// Coefficients of a witness in one of the two lemma forms.
#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    /// `a (1 + sum c_i σ_i⊗σ_i)`.
    Qubit { a: f64, c: [f64; 3] },
    /// `a ((d-1) 1 + sum c_nm U_nm ⊗ U_{-n,m})`, `coeffs[n·d + m] = c_nm`,
    /// `c_00 = 0`.
    Qudit { d: usize, a: f64, coeffs: Vec<Complex64> },
}

impl Decomposition {
    pub fn a(&self) -> f64 {
        match self {
            Decomposition::Qubit { a, .. } | Decomposition::Qudit { a, .. } => *a,
        }
    }

    /// Weight of the identity: `a` for qubits, `a(d-1)` for qudits.
    pub fn identity_weight(&self) -> f64 {
        match self {
            Decomposition::Qubit { a, .. } => *a,
            Decomposition::Qudit { d, a, .. } => a * (*d as f64 - 1.0),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        match self {
            Decomposition::Qubit { c, .. } => c.iter().fold(0.0, |m, x| m.max(x.abs())),
            Decomposition::Qudit { coeffs, .. } => {
                coeffs.iter().fold(0.0, |m, x| m.max(x.norm()))
            }
        }
    }

    /// Decomposition of `SWAP · C · SWAP`, the same witness with the two
    /// subsystems exchanged. Exchange maps `U_nm ⊗ U_{-n,m}` to
    /// `U_{-n,m} ⊗ U_nm` and leaves every `σ_i ⊗ σ_i` fixed.
    pub fn swapped(&self) -> Self {
        match self {
            Decomposition::Qubit { .. } => self.clone(),
            Decomposition::Qudit { d, a, coeffs } => {
                let d = *d;
                let coeffs = (0..d * d)
                    .map(|idx| coeffs[((d - idx / d) % d) * d + idx % d])
                    .collect();
                Decomposition::Qudit { d, a: *a, coeffs }
            }
        }
    }

    /// Rebuilds the operator.
    pub fn reconstruct(&self) -> Result<Matrix> {
        match self {
            Decomposition::Qubit { a, c } => {
                let s = pauli::<f64>();
                let mut m = Matrix::identity(4);
                for (ci, si) in c.iter().zip(&s) {
                    m += &kron(si, si).scale_real(*ci);
                }
                Ok(m.scale_real(*a))
            }
            Decomposition::Qudit { d, a, coeffs } => {
                let basis = WeylBasis::<f64>::new(*d)?;
                let mut m = Matrix::identity(d * d).scale_real(*d as f64 - 1.0);
                for (idx, c) in coeffs.iter().enumerate().skip(1) {
                    if c.norm() > 0.0 {
                        m += &basis.pair((idx / d) as i64, (idx % d) as i64).scale(*c);
                    }
                }
                Ok(m.scale_real(*a))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaVerdict {
    pub passes: bool,
    pub max_abs_coeff: f64,
}

/// A successful decomposition together with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaForm {
    pub decomposition: Decomposition,
    /// Frobenius norm of `C` minus the reconstruction.
    pub residual: f64,
    pub verdict: LemmaVerdict,
}

fn verdict(decomposition: &Decomposition) -> LemmaVerdict {
    let max_abs_coeff = decomposition.max_abs_coeff();
    LemmaVerdict {
        passes: decomposition.a() > 0.0 && max_abs_coeff <= 1.0 + tol::LEMMA_COEFF,
        max_abs_coeff,
    }
}

fn finish(c: &Matrix, decomposition: Decomposition) -> Result<LemmaForm> {
    if decomposition.a() <= tol::LEMMA_FORM {
        return Err(Error::NotOfLemmaForm(format!(
            "identity weight a = {:e} is not positive",
            decomposition.a()
        )));
    }
    let residual = hs_norm(&(c - &decomposition.reconstruct()?));
    if residual > tol::LEMMA_FORM * hs_norm(c).max(1.0) {
        return Err(Error::NotOfLemmaForm(format!(
            "residual {residual:e} after projection"
        )));
    }
    let verdict = verdict(&decomposition);
    Ok(LemmaForm {
        decomposition,
        residual,
        verdict,
    })
}

fn check_hermitian(c: &Matrix, n: usize) -> Result<()> {
    if c.rows() != n || c.cols() != n {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", c.rows(), c.cols())));
    }
    let defect = c.hermiticity_defect();
    if defect > tol::STATE {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Decomposes a two-qubit operator as `a (1 + sum c_i σ_i⊗σ_i)`.
pub fn lemma2_check(c: &Matrix) -> Result<LemmaForm> {
    check_hermitian(c, 4)?;
    let a = c.trace().re / 4.0;
    let s = pauli::<f64>();
    let mut coeffs = [0.0; 3];
    if a > tol::LEMMA_FORM {
        for (ci, si) in coeffs.iter_mut().zip(&s) {
            *ci = hs_inner(&kron(si, si), c)?.re / (4.0 * a);
        }
    }
    finish(c, Decomposition::Qubit { a, c: coeffs })
}

/// Decomposes a `d × d` operator as `a ((d-1) 1 + sum c_nm U_nm ⊗ U_{-n,m})`.
pub fn lemma3_check(c: &Matrix, d: usize) -> Result<LemmaForm> {
    check_hermitian(c, d * d)?;
    let basis = WeylBasis::<f64>::new(d)?;
    let n2 = (d * d) as f64;
    let a = c.trace().re / (n2 * (d as f64 - 1.0));
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d * d];
    if a > tol::LEMMA_FORM {
        for (idx, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let pair = basis.pair((idx / d) as i64, (idx % d) as i64);
            *slot = hs_inner(&pair, c)? / (n2 * a);
        }
    }
    finish(c, Decomposition::Qudit { d, a, coeffs })
}

/// Runs the lemma check matching the operator's size: the qubit form for
/// `4 × 4`, the qudit form for `d² × d²` with `d ≥ 3`.
pub fn lemma_check(c: &Matrix) -> Result<LemmaForm> {
    match c.rows() {
        4 => lemma2_check(c),
        n => {
            let d = (n as f64).sqrt().round() as usize;
            if d * d != n || d < 2 {
                return Err(Error::dims("d² x d²", format!("{n}x{n}")));
            }
            lemma3_check(c, d)
        }
    }
}

/// A Hermitian witness operator with its lemma decomposition when one exists.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOperator {
    matrix: Matrix,
    form: Option<LemmaForm>,
}

impl WitnessOperator {
    /// Wraps a matrix and runs the lemma check matching its size.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let n = matrix.rows();
        check_hermitian(&matrix, n)?;
        let form = lemma_check(&matrix).ok();
        Ok(Self { matrix, form })
    }

    /// Uses a known decomposition and checks that it reproduces `matrix`.
    pub fn from_decomposition(decomposition: Decomposition) -> Result<Self> {
        let matrix = decomposition.reconstruct()?;
        let form = finish(&matrix, decomposition)?;
        Ok(Self {
            matrix,
            form: Some(form),
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn form(&self) -> Option<&LemmaForm> {
        self.form.as_ref()
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.form.as_ref().map(|f| &f.decomposition)
    }

    pub fn verdict(&self) -> Option<LemmaVerdict> {
        self.form.as_ref().map(|f| f.verdict)
    }

    /// True when the lemma decomposition exists and passes.
    pub fn is_valid(&self) -> bool {
        self.verdict().is_some_and(|v| v.passes)
    }
}

/// `C = ρ̃ - ρ_ent - <ρ̃, ρ̃ - ρ_ent> 1`, divided by `||ρ̃ - ρ_ent||` when
/// `normalize` is set.
pub fn build_witness_matrix(reference: &Matrix, entangled: &Matrix, normalize: bool) -> Result<Matrix> {
    if reference.rows() != entangled.rows() || reference.cols() != entangled.cols() {
        return Err(Error::dims(
            format!("{}x{}", reference.rows(), reference.cols()),
            format!("{}x{}", entangled.rows(), entangled.cols()),
        ));
    }
    let diff = reference - entangled;
    let distance = hs_norm(&diff);
    if distance < tol::DEGENERATE_DISTANCE {
        return Err(Error::DegenerateDistance { distance });
    }
    let shift = hs_inner(reference, &diff)?.re;
    let c = &diff - &Matrix::identity(diff.rows()).scale_real(shift);
    Ok(if normalize {
        c.scale_real(1.0 / distance)
    } else {
        c
    })
}

pub fn build_witness(reference: &State, entangled: &State, normalize: bool) -> Result<WitnessOperator> {
    WitnessOperator::from_matrix(build_witness_matrix(
        reference.matrix(),
        entangled.matrix(),
        normalize,
    )?)
}

/// `Tr(ρ C)`.
pub fn expectation(c: &Matrix, rho: &Matrix) -> Result<f64> {
    Ok(hs_inner(c, rho)?.re)
}

/// `Tr(ρ C)`; negative values detect entanglement.
pub fn witness_violation(c: &WitnessOperator, rho: &State) -> Result<f64> {
    expectation(c.matrix(), rho.matrix())
}

/// Minimum of `Tr(ρ C)` over `n_samples` random separable states on
/// `d × d`, each a Dirichlet mixture of one to four random pure product
/// states. Deterministic in `seed` and independent of the thread count.
pub fn sample_separable_min(c: &Matrix, d: usize, n_samples: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidParams("n_samples must be at least 1".into()));
    }
    if c.rows() != d * d || c.cols() != d * d {
        return Err(Error::dims(format!("{0}x{0}", d * d), format!("{}x{}", c.rows(), c.cols())));
    }
    Ok(par_min(n_samples, seed, |rng| {
        let k = rng.random_range(1..=4usize);
        let raw: Vec<f64> = (0..k).map(|_| rng.sample(rand_distr::Exp1)).collect();
        let total: f64 = raw.iter().sum();
        raw.iter()
            .map(|w| {
                let a = random_pure_state(d, rng);
                let b = random_pure_state(d, rng);
                let v: Vec<Complex64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
                w / total * c.expectation(&v).re
            })
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::named_qutrit_operators;

    #[test]
    fn qubit_region_one_witness() {
        let ops = named_qutrit_operators::<f64>();
        let c = (&Matrix::identity(4) - &ops.sigma).scale_real(1.0 / (2.0 * 3f64.sqrt()));
        let form = lemma2_check(&c).unwrap();
        match form.decomposition {
            Decomposition::Qubit { a, c } => {
                assert!((a - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-14);
                for (x, y) in c.iter().zip([-1.0, 1.0, -1.0]) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
            _ => panic!("qubit form expected"),
        }
        assert!(form.verdict.passes);
    }

    #[test]
    fn qubit_coefficient_too_large() {
        let d = Decomposition::Qubit { a: 0.5, c: [1.5, 0.0, 0.0] };
        let w = WitnessOperator::from_decomposition(d).unwrap();
        let v = w.verdict().unwrap();
        assert!(!v.passes);
        assert!((v.max_abs_coeff - 1.5).abs() < 1e-12);
    }

    #[test]
    fn qutrit_region_one_witness() {
        let ops = named_qutrit_operators::<f64>();
        let c = (&Matrix::identity(9).scale_real(2.0) - &ops.u).scale_real(1.0 / (6.0 * 2f64.sqrt()));
        let form = lemma3_check(&c, 3).unwrap();
        let Decomposition::Qudit { coeffs, .. } = &form.decomposition else {
            panic!("qudit form expected")
        };
        for c in &coeffs[1..] {
            assert!((c - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        }
        assert!(form.verdict.passes);
    }

    #[test]
    fn non_lemma_form_rejected() {
        let mut c = Matrix::identity(9);
        c[(0, 0)] = Complex64::new(3.0, 0.0);
        assert!(matches!(lemma3_check(&c, 3), Err(Error::NotOfLemmaForm(_))));
        let neg = Matrix::identity(9).scale_real(-1.0);
        assert!(matches!(lemma3_check(&neg, 3), Err(Error::NotOfLemmaForm(_))));
    }

    #[test]
    fn decomposition_round_trip() {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 9];
        // U2^I and U2^II carry c and c* so the operator stays Hermitian
        coeffs[3] = Complex64::new(0.3, 0.4);
        coeffs[6] = Complex64::new(0.3, -0.4);
        for i in [1, 2, 4, 5, 7, 8] {
            coeffs[i] = Complex64::new(-0.5, 0.0);
        }
        let d = Decomposition::Qudit { d: 3, a: 0.2, coeffs: coeffs.clone() };
        let m = d.reconstruct().unwrap();
        let form = lemma3_check(&m, 3).unwrap();
        let Decomposition::Qudit { coeffs: back, a, .. } = form.decomposition else {
            panic!()
        };
        assert!((a - 0.2).abs() < 1e-12);
        for (x, y) in back.iter().zip(&coeffs) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn swapped_decomposition_conjugates_by_swap() {
        let mut coeffs = vec![Complex64::new(-0.5, 0.0); 9];
        coeffs[0] = Complex64::new(0.0, 0.0);
        coeffs[3] = Complex64::new(0.6, 0.8);
        coeffs[6] = Complex64::new(0.6, -0.8);
        let d = Decomposition::Qudit { d: 3, a: 0.1, coeffs };
        let s = crate::families::swap(3);
        let m = d.reconstruct().unwrap();
        let expected = &(&s * &m) * &s;
        assert!(d.swapped().reconstruct().unwrap().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn degenerate_distance() {
        let rho = State::maximally_mixed(3, 3);
        assert!(matches!(
            build_witness(&rho, &rho, true),
            Err(Error::DegenerateDistance { .. })
        ));
    }

    #[test]
    fn constant_operator_sampling() {
        let c = Matrix::identity(9).scale_real(-1.0);
        let m = sample_separable_min(&c, 3, 100, 1).unwrap();
        assert!((m + 1.0).abs() < 1e-12);
        assert!(sample_separable_min(&c, 3, 0, 1).is_err());
    }

    #[test]
    fn expectation_on_maximally_mixed_is_trace_over_n() {
        let ops = named_qutrit_operators::<f64>();
        let c = (&Matrix::identity(9).scale_real(2.0) - &ops.u).scale_real(0.1);
        let rho = State::maximally_mixed(3, 3);
        let w = WitnessOperator::from_matrix(c.clone()).unwrap();
        assert!((witness_violation(&w, &rho).unwrap() - c.trace().re / 9.0).abs() < 1e-14);
    }
}
