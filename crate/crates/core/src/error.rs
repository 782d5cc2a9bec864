use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (||h - h^dagger|| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("index ({n}, {m}) out of range for dimension {d}")]
    IndexOutOfRange { d: usize, n: usize, m: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("state carries no bipartite dimension tag")]
    MissingBipartition,

    #[error("trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("operator is not of lemma form: {0}")]
    NotOfLemmaForm(String),

    #[error("reference and entangled states coincide (distance {distance:e})")]
    DegenerateDistance { distance: f64 },

    #[error("state is not in an entangled region of its family")]
    NotEntangledRegion,

    #[error("state is not PPT (min partial-transpose eigenvalue {min_pt_eigenvalue:e})")]
    NotPpt { min_pt_eigenvalue: f64 },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
