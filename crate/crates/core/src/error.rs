use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid mass assignment: {0}")]
    InvalidMass(String),

    #[error("frames differ")]
    FrameMismatch,

    #[error("not a belief function: Möbius mass of {subset} is {mass}")]
    NotABeliefFunction { subset: String, mass: f64 },

    #[error("total conflict: combination leaves no mass to normalize")]
    TotalConflict,

    #[error("cannot condition on the empty set")]
    EmptyConditioningSet,

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid probability point: {0}")]
    InvalidPoint(String),

    #[error("invalid credal component: {0}")]
    InvalidComponent(String),

    #[error("credal set mixes components of different dimensions")]
    MixedDimensions,

    #[error("credal set has {0} components; at most {max} are supported", max = crate::ternary::MAX_COMPONENTS)]
    TooManyComponents(usize),

    #[error("contradictory knowledge: {0}")]
    ContradictoryKnowledge(String),

    #[error("measure is not normalized (conflict {0})")]
    UnnormalizedMeasure(f64),

    #[error("invalid Monte Carlo configuration: {0}")]
    InvalidConfig(String),

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the `credal` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ContradictoryKnowledge(_) | Error::TotalConflict => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
