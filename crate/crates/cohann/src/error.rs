//! Crate-wide error type and exit-code mapping for the CLI.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error in a polynomial string, with a byte offset into the input.
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// A polynomial referred to a variable that is not part of the ambient ring.
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },

    /// Two objects live over different variable lists.
    #[error("ambient mismatch: expected variables ({expected}), found ({found})")]
    AmbientMismatch { expected: String, found: String },

    /// A pair of square matrices failed the factorization identity `AB = BA = f*I`.
    #[error("not a matrix factorization of {f}: ({which})[{row}][{col}] = {got}, expected {want}")]
    NotAFactorization {
        f: String,
        which: &'static str,
        row: usize,
        col: usize,
        got: String,
        want: String,
    },

    /// det(A) disagreed with the designated hypersurface equation.
    #[error("determinant mismatch: det(A) = {got}, expected {want}")]
    DeterminantMismatch { got: String, want: String },

    /// A fresh variable name collided with an existing one.
    #[error("variable name `{name}` already in use")]
    VariableCollision { name: String },

    /// A subspace handed in as an ideal is not closed under multiplication.
    #[error("subspace is not an ideal: {witness} leaves the span")]
    NotAnIdeal { witness: String },

    /// Catch-all for argument validation (ranges, coprimality, empty lists, ...).
    #[error("{0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Process exit code for the CLI: 3 for syntax-level failures, 2 for
    /// mathematical validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::Json(_) => 3,
            _ => 2,
        }
    }
}
