//! The Weyl operator basis `U_nm = sum_k e^{2πi kn/d} |k><k+m|` of a
//! `d`-level system, Bloch vectors over it, the `d²` Bell projectors and the
//! named two-qutrit operators `U`, `U1`, `U2^I`, `U2^II` (plus the two-qubit
//! `Σ`).
//!
//! Tensor products put subsystem A on the left: `|j>_A |k>_B` is row
//! `j·d + k`. Negative Weyl indices are reduced mod `d` on construction.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{kron, ComplexMatrix, Scalar};
use crate::Matrix;

/// `e^{2πi k/d}`.
pub fn root_of_unity<T: Scalar>(d: usize, k: i64) -> Complex<T> {
    let k = k.rem_euclid(d as i64) as usize;
    let angle = T::TAU() * T::count(k) / T::count(d);
    Complex::new(angle.cos(), angle.sin())
}

/// Reduces a possibly negative index into `0..d`.
#[inline]
pub fn reduce(d: usize, index: i64) -> usize {
    index.rem_euclid(d as i64) as usize
}

fn check_index(d: usize, n: usize, m: usize) -> Result<()> {
    if d < 2 || n >= d || m >= d {
        return Err(Error::IndexOutOfRange { d, n, m });
    }
    Ok(())
}

/// The Weyl operator `U_nm` for dimension `d`.
pub fn weyl_op<T: Scalar>(d: usize, n: usize, m: usize) -> Result<ComplexMatrix<T>> {
    check_index(d, n, m)?;
    let mut u = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        u[(k, (k + m) % d)] = root_of_unity(d, (k * n) as i64);
    }
    Ok(u)
}

/// All `d²` Weyl operators of one dimension.
#[derive(Clone, Debug)]
pub struct WeylBasis<T> {
    d: usize,
    ops: Vec<ComplexMatrix<T>>,
}

impl<T: Scalar> WeylBasis<T> {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("Weyl basis needs d >= 2, got {d}")));
        }
        let mut ops = Vec::with_capacity(d * d);
        for n in 0..d {
            for m in 0..d {
                ops.push(weyl_op(d, n, m)?);
            }
        }
        Ok(Self { d, ops })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `U_nm` with indices taken mod `d`.
    pub fn op(&self, n: i64, m: i64) -> &ComplexMatrix<T> {
        &self.ops[reduce(self.d, n) * self.d + reduce(self.d, m)]
    }

    /// `U_lm ⊗ U_{-l,m}`, the building block of the Bell projectors.
    pub fn pair(&self, l: i64, m: i64) -> ComplexMatrix<T> {
        kron(self.op(l, m), self.op(-l, m))
    }

    /// `U = sum_{(l,m) != (0,0)} U_lm ⊗ U_{-l,m}`.
    pub fn total_u(&self) -> ComplexMatrix<T> {
        let d = self.d as i64;
        let mut u = ComplexMatrix::zeros(self.d * self.d, self.d * self.d);
        for l in 0..d {
            for m in 0..d {
                if (l, m) != (0, 0) {
                    u += &self.pair(l, m);
                }
            }
        }
        u
    }

    /// Bloch vector with `b_nm = Tr(U_nm^dagger ρ)/d`, the convention that
    /// makes `ρ = 1/d + sum b_nm U_nm` an identity.
    pub fn decompose(&self, rho: &ComplexMatrix<T>) -> Result<BlochVector<T>> {
        if rho.rows() != self.d || rho.cols() != self.d {
            return Err(Error::dims(
                format!("{0}x{0}", self.d),
                format!("{}x{}", rho.rows(), rho.cols()),
            ));
        }
        let trace = rho.trace();
        let tol = T::lit(crate::tol::STATE);
        if (trace.re - T::one()).abs() > tol || trace.im.abs() > tol {
            return Err(Error::InvalidTrace {
                trace: trace.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let inv_d = T::one() / T::count(self.d);
        let coeffs = self
            .ops
            .iter()
            .enumerate()
            .map(|(idx, u)| {
                if idx == 0 {
                    Complex::new(T::zero(), T::zero())
                } else {
                    // Tr(U^dagger ρ) = sum_ij conj(U_ij) ρ_ij
                    u.entries()
                        .iter()
                        .zip(rho.entries())
                        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
                        * inv_d
                }
            })
            .collect();
        Ok(BlochVector { d: self.d, coeffs })
    }

    pub fn reconstruct(&self, bv: &BlochVector<T>) -> Result<ComplexMatrix<T>> {
        if bv.d != self.d {
            return Err(Error::dims(self.d, bv.d));
        }
        let mut rho = ComplexMatrix::identity(self.d).scale_real(T::one() / T::count(self.d));
        for (u, b) in self.ops.iter().zip(&bv.coeffs).skip(1) {
            rho += &u.scale(*b);
        }
        Ok(rho)
    }

    pub fn expand(&self, e: &WeylExpansion<T>) -> Result<ComplexMatrix<T>> {
        if e.d != self.d {
            return Err(Error::dims(self.d, e.d));
        }
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for (u, c) in self.ops.iter().zip(&e.coeffs) {
            out += &u.scale(*c);
        }
        Ok(out)
    }
}

/// Coefficients `b_nm` of a single-system state over the Weyl basis, with
/// `b_00 = 0` (the identity part `1/d` is implicit).
#[derive(Clone, Debug, PartialEq)]
pub struct BlochVector<T> {
    d: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> BlochVector<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, n: i64, m: i64) -> Complex<T> {
        self.coeffs[reduce(self.d, n) * self.d + reduce(self.d, m)]
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coeffs
    }
}

/// General operator expansion `sum c_lm U_lm` (identity term included).
#[derive(Clone, Debug, PartialEq)]
pub struct WeylExpansion<T> {
    d: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> WeylExpansion<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, l: i64, m: i64) -> Complex<T> {
        self.coeffs[reduce(self.d, l) * self.d + reduce(self.d, m)]
    }

    /// The `(l, m)` pairs with nonzero coefficient.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.d * self.d)
            .filter(|&i| self.coeffs[i].norm() > T::zero())
            .map(|i| (i / self.d, i % self.d))
            .collect()
    }
}

pub fn bloch_decompose<T: Scalar>(rho: &ComplexMatrix<T>, d: usize) -> Result<BlochVector<T>> {
    WeylBasis::new(d)?.decompose(rho)
}

pub fn bloch_reconstruct<T: Scalar>(bv: &BlochVector<T>) -> Result<ComplexMatrix<T>> {
    WeylBasis::new(bv.d)?.reconstruct(bv)
}

/// `|j><k| = (1/d) sum_l e^{-2πi lj/d} U_{l,(k-j) mod d}`.
pub fn standard_matrix_in_wob<T: Scalar>(d: usize, j: usize, k: usize) -> Result<WeylExpansion<T>> {
    check_index(d, j, k)?;
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); d * d];
    let inv_d = T::one() / T::count(d);
    let m = reduce(d, k as i64 - j as i64);
    for l in 0..d {
        coeffs[l * d + m] = root_of_unity::<T>(d, -((l * j) as i64)) * inv_d;
    }
    Ok(WeylExpansion { d, coeffs })
}

/// `|φ+^d> = (1/sqrt d) sum_j |j>|j>`.
pub fn bell_state<T: Scalar>(d: usize) -> Vec<Complex<T>> {
    let mut v = vec![Complex::new(T::zero(), T::zero()); d * d];
    let amp = T::one() / T::count(d).sqrt();
    for j in 0..d {
        v[j * d + j] = Complex::new(amp, T::zero());
    }
    v
}

/// `P_nk = (U_nk ⊗ 1)|φ+><φ+|(U_nk^dagger ⊗ 1)`.
pub fn bell_projector<T: Scalar>(d: usize, n: usize, k: usize) -> Result<ComplexMatrix<T>> {
    let u = weyl_op::<T>(d, n, k)?;
    let rotated = kron(&u, &ComplexMatrix::identity(d)).apply(&bell_state(d));
    Ok(ComplexMatrix::outer(&rotated, &rotated))
}

/// Bloch form `P_nk = (1/d²) sum_{m,l} e^{2πi(kl - nm)/d} U_lm ⊗ U_{-l,m}`.
pub fn bell_projector_bloch<T: Scalar>(d: usize, n: usize, k: usize) -> Result<ComplexMatrix<T>> {
    check_index(d, n, k)?;
    let basis = WeylBasis::<T>::new(d)?;
    let mut p = ComplexMatrix::zeros(d * d, d * d);
    let di = d as i64;
    for l in 0..di {
        for m in 0..di {
            let phase = root_of_unity::<T>(d, k as i64 * l - n as i64 * m);
            p += &basis.pair(l, m).scale(phase);
        }
    }
    Ok(p.scale_real(T::one() / T::count(d * d)))
}

/// The named operators of the two-qutrit constructions and the two-qubit `Σ`.
#[derive(Clone, Debug)]
pub struct NamedOperators<T> {
    /// `sum_{(l,m) != (0,0)} U_lm ⊗ U_{-l,m}` for `d = 3`.
    pub u: ComplexMatrix<T>,
    /// The six terms of `U` with `m != 0`.
    pub u1: ComplexMatrix<T>,
    /// `U_10 ⊗ U_20`.
    pub u2_i: ComplexMatrix<T>,
    /// `U_20 ⊗ U_10`, the adjoint of `u2_i`.
    pub u2_ii: ComplexMatrix<T>,
    /// Two-qubit `σ1⊗σ1 - σ2⊗σ2 + σ3⊗σ3`.
    pub sigma: ComplexMatrix<T>,
}

impl<T: Scalar> NamedOperators<T> {
    pub fn u2(&self) -> ComplexMatrix<T> {
        &self.u2_i + &self.u2_ii
    }
}

/// Pauli matrices `σ1, σ2, σ3`.
pub fn pauli<T: Scalar>() -> [ComplexMatrix<T>; 3] {
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    [
        ComplexMatrix::new(2, 2, vec![z, one, one, z]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![z, -i, i, z]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![one, z, z, -one]).expect("2x2"),
    ]
}

pub fn named_qutrit_operators<T: Scalar>() -> NamedOperators<T> {
    let basis = WeylBasis::<T>::new(3).expect("d = 3");
    let mut u1 = ComplexMatrix::zeros(9, 9);
    for l in 0..3 {
        for m in 1..3 {
            u1 += &basis.pair(l, m);
        }
    }
    let u2_i = basis.pair(1, 0);
    let u2_ii = basis.pair(2, 0);
    let u = &(&u1 + &u2_i) + &u2_ii;
    let [s1, s2, s3] = pauli::<T>();
    let sigma = &(&kron(&s1, &s1) - &kron(&s2, &s2)) + &kron(&s3, &s3);
    NamedOperators {
        u,
        u1,
        u2_i,
        u2_ii,
        sigma,
    }
}

/// Cached `f64` qutrit operators.
pub(crate) fn qutrit_ops() -> &'static NamedOperators<f64> {
    static OPS: OnceLock<NamedOperators<f64>> = OnceLock::new();
    OPS.get_or_init(named_qutrit_operators)
}

/// Cached `f64` Bell projectors for `d = 3`, indexed `n·3 + k`.
pub(crate) fn qutrit_bell_projectors() -> &'static [Matrix; 9] {
    static PROJ: OnceLock<[Matrix; 9]> = OnceLock::new();
    PROJ.get_or_init(|| {
        std::array::from_fn(|i| bell_projector(3, i / 3, i % 3).expect("valid index"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::hs_norm;
    use num_complex::Complex64;

    fn m(rows: &[&[(f64, f64)]]) -> Matrix {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(a, b)| Complex64::new(a, b)))
            .collect();
        ComplexMatrix::new(n, n, data).unwrap()
    }

    #[test]
    fn u00_is_identity() {
        assert_eq!(weyl_op::<f64>(3, 0, 0).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn u01_is_cyclic_shift() {
        let z = (0.0, 0.0);
        let o = (1.0, 0.0);
        let expected = m(&[&[z, o, z], &[z, z, o], &[o, z, z]]);
        assert_eq!(weyl_op::<f64>(3, 0, 1).unwrap(), expected);
    }

    #[test]
    fn qubit_u11() {
        let u = weyl_op::<f64>(2, 1, 1).unwrap();
        let expected = m(&[&[(0.0, 0.0), (1.0, 0.0)], &[(-1.0, 0.0), (0.0, 0.0)]]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn qutrit_u11_matches_table() {
        let w = root_of_unity::<f64>(3, 1);
        let u = weyl_op::<f64>(3, 1, 1).unwrap();
        assert!((u[(1, 2)] - w).norm() < 1e-15);
        assert!((u[(2, 0)] - w.conj()).norm() < 1e-15);
        assert_eq!(u[(0, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            weyl_op::<f64>(3, 3, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(standard_matrix_in_wob::<f64>(2, 0, 2).is_err());
        assert!(bell_projector::<f64>(3, 0, 5).is_err());
        assert!(bell_projector_bloch::<f64>(3, 4, 0).is_err());
    }

    #[test]
    fn maximally_mixed_has_zero_bloch_vector() {
        let rho = ComplexMatrix::<f64>::identity(3).scale_real(1.0 / 3.0);
        let bv = bloch_decompose(&rho, 3).unwrap();
        assert!(bv.coefficients().iter().all(|b| b.norm() < 1e-15));
    }

    #[test]
    fn ket_zero_bloch_vector() {
        let mut rho = ComplexMatrix::<f64>::zeros(3, 3);
        rho[(0, 0)] = Complex64::new(1.0, 0.0);
        let bv = bloch_decompose(&rho, 3).unwrap();
        for n in 0..3 {
            for mm in 0..3 {
                let expected = if mm == 0 && n != 0 { 1.0 / 3.0 } else { 0.0 };
                assert!((bv.get(n, mm) - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
        assert!(bloch_reconstruct(&bv).unwrap().max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn decompose_checks_shape_and_trace() {
        let basis = WeylBasis::<f64>::new(3).unwrap();
        assert!(matches!(
            basis.decompose(&ComplexMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            basis.decompose(&ComplexMatrix::identity(3)),
            Err(Error::InvalidTrace { .. })
        ));
    }

    #[test]
    fn standard_matrix_examples() {
        let basis = WeylBasis::<f64>::new(3).unwrap();
        let e = standard_matrix_in_wob::<f64>(3, 0, 0).unwrap();
        assert_eq!(e.support(), vec![(0, 0), (1, 0), (2, 0)]);
        let third = Complex64::new(1.0 / 3.0, 0.0);
        assert!((e.get(1, 0) - third).norm() < 1e-15);
        let mut e00 = ComplexMatrix::zeros(3, 3);
        e00[(0, 0)] = Complex64::new(1.0, 0.0);
        assert!(basis.expand(&e).unwrap().max_abs_diff(&e00) < 1e-15);

        let qubit = WeylBasis::<f64>::new(2).unwrap();
        let e = standard_matrix_in_wob::<f64>(2, 0, 1).unwrap();
        assert_eq!(e.support(), vec![(0, 1), (1, 1)]);
        let mut e01 = ComplexMatrix::zeros(2, 2);
        e01[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(qubit.expand(&e).unwrap().max_abs_diff(&e01) < 1e-15);
    }

    #[test]
    fn named_operator_norms() {
        let ops = named_qutrit_operators::<f64>();
        assert!((hs_norm(&ops.u) - 6.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((hs_norm(&ops.sigma) - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        let split = &ops.u1 + &ops.u2();
        assert!(split.max_abs_diff(&ops.u) < 1e-15);
    }

    #[test]
    fn named_operators_hermiticity() {
        let ops = named_qutrit_operators::<f64>();
        for h in [&ops.u, &ops.u1, &ops.u2(), &ops.sigma] {
            assert!(h.is_hermitian(1e-12));
        }
        // U2^I alone is not Hermitian; its adjoint is U2^II
        assert!(!ops.u2_i.is_hermitian(1e-12));
        assert!(ops.u2_i.adjoint().max_abs_diff(&ops.u2_ii) < 1e-12);
    }

    #[test]
    fn bloch_projector_reproduces_maximally_entangled_form() {
        let ops = named_qutrit_operators::<f64>();
        let p = bell_projector_bloch::<f64>(3, 0, 0).unwrap();
        let expected = (&ComplexMatrix::identity(9) + &ops.u).scale_real(1.0 / 9.0);
        assert!(p.max_abs_diff(&expected) < 1e-12);
    }
}
