use thiserror::Error;

/// Errors raised by dictionary construction, rank machinery and experiments.
///
/// Numerical payloads are carried as `f64` regardless of the scalar type the
/// failing routine ran with.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("column {column} has norm {norm:e}, expected 1")]
    NotUnitNorm { column: usize, norm: f64 },

    #[error("atoms span a space of dimension {rank}, expected {m}")]
    NotSpanning { rank: usize, m: usize },

    #[error(
        "tight-frame iteration did not converge after {iterations} iterations \
         (redundancy residual {rho_residual:e}, column-norm residual {norm_residual:e})"
    )]
    TightFrameNotConverged {
        iterations: usize,
        rho_residual: f64,
        norm_residual: f64,
    },

    #[error("invalid atom set: {0}")]
    InvalidAtomSet(String),

    #[error("atom set of size {size} is linearly dependent (numerical rank {rank})")]
    DependentSet { size: usize, rank: usize },

    #[error("atom sets must be disjoint but share {overlap} atoms")]
    OverlappingSets { overlap: usize },

    #[error("leading block is singular: smallest eigenvalue {min_eigenvalue:e} <= {threshold:e}")]
    SingularLeadingBlock { min_eigenvalue: f64, threshold: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is zero")]
    ZeroMatrix,

    #[error("Schatten order must satisfy p >= 1, got {0}")]
    InvalidSchattenOrder(f64),

    #[error("norm-ratio bound requires p < q, got p = {p}, q = {q}")]
    InvalidNormPair { p: f64, q: f64 },

    #[error("coherence is zero: no finite threshold")]
    NoFiniteThreshold,

    #[error("overlap condition is vacuous: t*mu^2 = {t_mu_sq} >= 1")]
    VacuousCondition { t_mu_sq: f64 },

    #[error("formula inapplicable: s - delta = {s_minus_delta} < 2")]
    FormulaInapplicable { s_minus_delta: i64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("signal is zero")]
    ZeroSignal,

    #[error("could not draw {what} for dictionary {dictionary} with s = {s} after {attempts} attempts")]
    RedrawCapExceeded {
        what: &'static str,
        dictionary: String,
        s: usize,
        attempts: usize,
    },

    #[error("malformed dictionary file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
