//! Error type shared by every pipeline stage.

use thiserror::Error;

/// Errors produced by the causal analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Schema/column mismatch: missing column, duplicate short name, unknown node.
    #[error("schema error: {0}")]
    Schema(String),

    /// A cell could not be parsed according to its declared column kind.
    #[error("parse error at data row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    /// Operation applied to a column of the wrong kind.
    #[error("column kind error: {0}")]
    Kind(String),

    /// Matrix/vector dimension mismatch.
    #[error("shape error: {0}")]
    Shape(String),

    /// Invalid argument value (out-of-range fraction, empty input, bad probabilities).
    #[error("argument error: {0}")]
    Argument(String),

    /// Degenerate data: a computation that needs at least two classes saw one.
    #[error("degenerate data: {0}")]
    Degenerate(String),

    /// Structure learning did not reach the acyclicity tolerance.
    #[error("structure learning did not converge: h = {h:.3e} after {iterations} dual iterations")]
    Convergence { h: f64, iterations: usize },

    /// Counterfactual search exhausted its budget before finding enough valid candidates.
    #[error("counterfactual search exhausted: found {found} of {requested} valid candidates")]
    Exhausted {
        found: usize,
        requested: usize,
        /// Best candidate seen, kept for diagnostics.
        diagnostic: String,
    },

    /// File format error when reading a serialized artifact.
    #[error("format error in {what}: {message}")]
    Format { what: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
