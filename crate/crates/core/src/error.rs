use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite sample at k={k}, xi={xi}")]
    NonFinite { k: i64, xi: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },

    #[error("edge spill {level:.3e} exceeds tolerance {tol:.3e} in mode {k}")]
    Spill { k: i64, level: f64, tol: f64 },

    #[error("quadrature tail not negligible at t={t}: |w|={level:.3e}")]
    Divergence { t: f64, level: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("denominator too small: |D|={0:.3e}")]
    Singular(f64),

    #[error("newton iteration stagnated with residual {0:.3e}")]
    Stagnation(f64),

    #[error("continuation left the admissible rectangle at M={mass}: lambda = {re} + {im}i")]
    LeftRectangle { mass: f64, re: f64, im: f64 },

    #[error("penrose margin {margin:.3e} is not positive (k={k}, lambda_i={lambda_i})")]
    Margin { k: i64, lambda_i: f64, margin: f64 },

    #[error("step guard violated: {0}")]
    Guard(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
