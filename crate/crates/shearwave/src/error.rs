use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid needs an odd number of points >= 3 and positive half width (got n={n}, L={half_width})")]
    InvalidGrid { n: usize, half_width: f64 },
    #[error("profile is not strictly increasing at index {index}")]
    MonotonicityViolated { index: usize },
    #[error("non-finite sample at index {index}")]
    NanSample { index: usize },
    #[error("negative time step {0}")]
    NegativeTime(f64),
    #[error("value {value} outside the range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("wavenumber must be nonzero")]
    ZeroWavenumber,
    #[error("epsilon {eps} exceeds the contraction bound {bound}")]
    EpsilonTooLarge { eps: f64, bound: f64 },
    #[error("Wronskian modulus {0:e} below the eigenvalue guard")]
    NearEigenvalue(f64),
    #[error("phase step h*|k|*t*max b' = {0} exceeds 0.5")]
    UnderResolvedOscillation(f64),
    #[error("time step violates the advective limit: {0}")]
    Cfl(String),
    #[error("principal value cross-check failed: {a} vs {b}")]
    InconsistentPv { a: f64, b: f64 },
    #[error("no cached center near y = {0}")]
    MissingCache(f64),
    #[error("non-finite value encountered in {0}")]
    Blowup(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
