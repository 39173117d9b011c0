//! Error type shared across the toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or configuration value.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An option index outside the diagnosis space.
    #[error("option index {index} out of range for {n} options")]
    OptionOutOfRange { index: usize, n: usize },

    /// Two vectors that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A belief update left zero total mass to normalize.
    #[error("degenerate update: unnormalized posterior mass is zero")]
    DegenerateUpdate,

    /// Implied accuracy is 0/0: prior and posterior both saturated on the
    /// recommended option.
    #[error("implied accuracy indeterminate: prior and posterior both place full mass on the recommendation")]
    IndeterminateImpliedAccuracy,

    /// An aggregation cell had no observations.
    #[error("empty cell: {0}")]
    EmptyCell(String),

    /// A median split could not separate subjects.
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),

    /// Calibration could not reach the target; carries the best point found.
    #[error("calibration failed: best lambda {best_lambda:.4} achieved ({achieved_benefit:+.2}pp, {achieved_harm:+.2}pp)")]
    CalibrationFailed {
        best_lambda: f64,
        achieved_benefit: f64,
        achieved_harm: f64,
    },

    /// Trial CSV schema violation, citing the offending row (1-based, header = row 1).
    #[error("csv schema violation at row {row}: {message}")]
    Schema { row: usize, message: String },

    /// A required input (e.g. policy treatment effects) was not supplied.
    #[error("missing input: {0}")]
    MissingInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
