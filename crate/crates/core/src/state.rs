use crate::error::{Error, Result};
use crate::numeric::{hermitian_eigenvalues, ComplexMatrix, Scalar};
use crate::tol;

/// A density matrix with an optional bipartite dimension tag `(d_A, d_B)`.
///
/// [`DensityMatrix::new`] checks Hermiticity, unit trace and positivity
/// numerically. The family constructors validate their parameters
/// analytically and use [`DensityMatrix::from_validated`] so that states
/// sitting exactly on a positivity boundary are never rejected by rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T = f64> {
    matrix: ComplexMatrix<T>,
    dims: Option<(usize, usize)>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>, dims: Option<(usize, usize)>) -> Result<Self> {
        let state = Self::from_validated(matrix, dims)?;
        let m = &state.matrix;
        let defect = m.hermiticity_defect();
        if defect > T::lit(tol::STATE) {
            return Err(Error::NotHermitian {
                defect: defect.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        let trace = m.trace();
        if (trace.re - T::one()).abs() > T::lit(tol::STATE) || trace.im.abs() > T::lit(tol::STATE) {
            return Err(Error::InvalidTrace {
                trace: trace.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let min = hermitian_eigenvalues(m, T::lit(tol::STATE))?.min();
        if min < -T::lit(tol::POSITIVITY) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Wraps a matrix whose validity the caller has already established.
    /// Only the shape and the dimension tag are checked.
    pub fn from_validated(matrix: ComplexMatrix<T>, dims: Option<(usize, usize)>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dims(
                "square matrix",
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        if let Some((da, db)) = dims {
            if da * db != matrix.rows() {
                return Err(Error::dims(
                    format!("{}", matrix.rows()),
                    format!("d_A·d_B = {da}·{db}"),
                ));
            }
        }
        Ok(Self { matrix, dims })
    }

    /// `1/n` on an `n = d_A·d_B` dimensional bipartite space.
    pub fn maximally_mixed(da: usize, db: usize) -> Self {
        let n = da * db;
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(T::one() / T::count(n)),
            dims: Some((da, db)),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn bipartition(&self) -> Result<(usize, usize)> {
        self.dims.ok_or(Error::MissingBipartition)
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(hermitian_eigenvalues(&self.matrix, T::lit(tol::STATE))?.min())
    }
}
