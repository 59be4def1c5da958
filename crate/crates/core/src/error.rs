use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("class {class} needs residue data modulo p^{needed}")]
    MissingResidue { class: String, needed: u32 },

    #[error("half-integral depth {0} has no principal series component")]
    HalfIntegralPrincipalSeries(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("brute-force budget exceeded: q = {q} is above the cap {cap}")]
    QAboveBudget { q: u64, cap: u64 },

    #[error("point budget exceeded: {required} lattice points needed, cap is {cap}")]
    PointBudget { required: u128, cap: u128 },

    #[error("precision too low: {0}")]
    Precision(String),

    #[error("exponential does not converge: {0}")]
    Convergence(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
