use num_complex::Complex;

use super::{ComplexMatrix, Scalar};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Real spectrum of a matrix. Eigenvalues are stored ascending, singular
/// values descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &x| acc + x)
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors as
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Spectrum<T>,
    pub vectors: ComplexMatrix<T>,
}

/// Jacobi rotation parameters `(c, s)` zeroing the off-diagonal entry of
/// the real symmetric 2x2 block `[[app, g], [g, aqq]]`.
#[inline]
fn rotation<T: Scalar>(app: T, aqq: T, g: T) -> (T, T) {
    let theta = (aqq - app) / (g + g);
    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
    let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    (c, c * t)
}

fn off_diagonal_mass<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn check_hermitian<T: Scalar>(h: &ComplexMatrix<T>, tol: T) -> Result<()> {
    if !h.is_square() {
        return Err(Error::dims(
            "square matrix",
            format!("{}x{}", h.rows(), h.cols()),
        ));
    }
    let defect = h.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(())
}

/// Cyclic complex Jacobi on a Hermitian matrix. Runs sweeps until the
/// off-diagonal Frobenius mass drops below `64·eps·max(1, ||h||)`, which is
/// below 1e-13 for unit-scale `f64` input.
pub fn hermitian_eigen<T: Scalar>(h: &ComplexMatrix<T>, tol: T) -> Result<HermitianEigen<T>> {
    check_hermitian(h, tol)?;
    let n = h.rows();
    let zero = Complex::new(T::zero(), T::zero());

    // Work on the Hermitian part so tiny asymmetries inside `tol` do not
    // leak into the rotations.
    let half = T::lit(0.5);
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * half);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(T::one());
    let threshold = T::epsilon() * T::lit(64.0) * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= T::min_positive_value() {
                    continue;
                }
                let phase = apq / g;
                let (c, s) = rotation(a[(p, p)].re, a[(q, q)].re, g);
                // G = diag-phase · real rotation on the (p, q) plane:
                // G_pp = c, G_pq = s, G_qp = -s·conj(phase), G_qq = c·conj(phase)
                let gpp = Complex::new(c, T::zero());
                let gpq = Complex::new(s, T::zero());
                let gqp = phase.conj() * (-s);
                let gqq = phase.conj() * c;

                // A <- A G
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                // A <- G^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

                // V <- V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        values: Spectrum { values },
        vectors,
    })
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues<T: Scalar>(h: &ComplexMatrix<T>, tol: T) -> Result<Spectrum<T>> {
    hermitian_eigen(h, tol).map(|e| e.values)
}

/// Descending singular values via one-sided (Hestenes) Jacobi on the
/// columns of `m`. Works directly on `m` rather than `m^dagger m`, so zero
/// singular values come out at rounding level instead of its square root.
pub fn singular_values<T: Scalar>(m: &ComplexMatrix<T>) -> Spectrum<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut columns: Vec<Vec<Complex<T>>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)]).collect())
        .collect();
    let eps = T::epsilon() * T::count(rows.max(1));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta) = (T::zero(), T::zero());
                let mut gamma = Complex::new(T::zero(), T::zero());
                for k in 0..rows {
                    alpha += columns[p][k].norm_sqr();
                    beta += columns[q][k].norm_sqr();
                    gamma += columns[p][k].conj() * columns[q][k];
                }
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let (c, s) = rotation(alpha, beta, g);
                let gqp = phase.conj() * (-s);
                let gqq = phase.conj() * c;
                for k in 0..rows {
                    let xp = columns[p][k];
                    let xq = columns[q][k];
                    columns[p][k] = xp * c + xq * gqp;
                    columns[q][k] = xp * s + xq * gqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<T> = columns
        .iter()
        .map(|col| col.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt())
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    values.truncate(rows.min(cols));
    Spectrum { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, entries: &[f64]) -> ComplexMatrix<f64> {
        ComplexMatrix::from_real(rows, entries.len() / rows, entries).unwrap()
    }

    #[test]
    fn identity_eigenvalues() {
        let s = hermitian_eigenvalues(&ComplexMatrix::<f64>::identity(3), 1e-12).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn sigma3_eigenvalues() {
        let s = hermitian_eigenvalues(&real(2, &[1.0, 0.0, 0.0, -1.0]), 1e-12).unwrap();
        assert_eq!(s.values(), &[-1.0, 1.0]);
    }

    #[test]
    fn sigma2_eigenvalues() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex::new(0.0, 0.0),
                Complex::new(0.0, -1.0),
                Complex::new(0.0, 1.0),
                Complex::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let s = hermitian_eigenvalues(&m, 1e-12f64).unwrap();
        assert!((s.values()[0] + 1.0).abs() < 1e-15);
        assert!((s.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = real(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            hermitian_eigenvalues(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_non_square() {
        assert!(hermitian_eigenvalues(&ComplexMatrix::<f64>::zeros(2, 3), 1e-12).is_err());
    }

    #[test]
    fn singular_values_basic() {
        let s = singular_values(&ComplexMatrix::<f64>::identity(4));
        assert_eq!(s.values(), &[1.0; 4]);
        let s = singular_values(&real(2, &[2.0, 0.0, 0.0, 0.0]));
        assert_eq!(s.values(), &[2.0, 0.0]);
    }

    #[test]
    fn singular_values_rectangular() {
        // [[3, 0], [4, 0], [0, 0]] has singular values 5, 0
        let s = singular_values(&real(3, &[3.0, 0.0, 4.0, 0.0, 0.0, 0.0]));
        assert!((s.values()[0] - 5.0).abs() < 1e-14);
        assert!(s.values()[1].abs() < 1e-14);
    }

    #[test]
    fn f32_eigenvalues() {
        let m = ComplexMatrix::<f32>::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let s = hermitian_eigenvalues(&m, 1e-6).unwrap();
        assert!((s.values()[0] - 1.0).abs() < 1e-6);
        assert!((s.values()[1] - 3.0).abs() < 1e-6);
    }
}
