use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("dimension mismatch: Cl_{left} vs Cl_{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a pure grade-1 element, found grades {grades:?}")]
    NotAVector { grades: Vec<usize> },
    #[error("self-dual splitting needs n = 0 mod 4, got n = {n}")]
    NoSelfDualSplit { n: usize },
    #[error("unsupported dimension n = {n} (1 <= n <= 10)")]
    UnsupportedDimension { n: usize },
    #[error("malformed multivector record: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("unsupported n = {n} for spinor representations (supported: 6, 7, 8)")]
    UnsupportedN { n: usize },
    #[error("dimension mismatch: representation for n = {rep}, element of Cl_{elem}")]
    DimensionMismatch { rep: usize, elem: usize },
    #[error("spinor has squared norm {norm_sq}, expected {expected}")]
    NotUnit { norm_sq: String, expected: String },
    #[error("spinor does not lie in S{0}")]
    WrongChirality(char),
    #[error("spinor has {got} coordinates, representation needs {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    WrongShape { rows: usize, cols: usize, expected: usize },
    #[error("representation search failed: {0}")]
    Construction(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("spinors are not orthogonal")]
    NotOrthogonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("span is not closed under the commutator")]
    NotClosed,
    #[error("dimension mismatch among elements of Cl_{0} and Cl_{1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("torsion element is zero")]
    Zero,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("spectrum is not traceless (sum of m*lambda = {0})")]
    NotTraceless(String),
    #[error("multiplicities plus kernel dimension must be 8, got {0}")]
    BadMultiplicity(usize),
    #[error("spectrum is not rational")]
    NonRationalSpectrum,
    #[error("invalid constructor: {0}")]
    InvalidConstructor(String),
    #[error("invariant check failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("pair ({i}, {j}) invalid for a spectrum with {len} eigenvalues")]
    BadIndices { i: usize, j: usize, len: usize },
    #[error("invalid spectrum candidate: {0}")]
    InvalidCandidate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown criterion {0} (valid: 1..=12)")]
    UnknownCriterion(u32),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("invalid config at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("{0}")]
    Io(String),
    #[error("scenario `{id}`: {source}")]
    Scenario { id: String, source: Box<ReportError> },
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

impl ReportError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        ReportError::Config { path: path.into(), message: message.into() }
    }
}
