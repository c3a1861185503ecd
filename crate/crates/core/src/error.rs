use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a bandit instance needs at least one arm")]
    NoArms,

    #[error("mean of arm {arm} is {value}, expected a value in [0, 1]")]
    InvalidMean { arm: usize, value: f64 },

    #[error("no unique best arm: maximum mean {mean} is attained by arms {first} and {second}")]
    NoUniqueBest { mean: f64, first: usize, second: usize },

    #[error("play request is empty")]
    EmptyRequest,

    #[error("arm {arm} is out of range for an instance with {n} arms")]
    ArmOutOfRange { arm: usize, n: usize },

    #[error("arm {next} follows arm {prev}; requested arms must be strictly increasing")]
    NotIncreasing { prev: usize, next: usize },

    #[error("per-arm sample count must be at least 1")]
    ZeroSamples,

    #[error("play budget must be at least 1")]
    ZeroBudget,

    #[error("confidence delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("accuracy epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("minimum gap must lie in (0, 1], got {0}")]
    InvalidGap(f64),

    #[error("play cap of {cap} reached after {plays} plays; under-sampled arms: {under_sampled:?}")]
    PlayCap {
        cap: u64,
        plays: u64,
        under_sampled: Vec<usize>,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("means file line {line}: {message}")]
    MeansFormat { line: usize, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("csv error: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
