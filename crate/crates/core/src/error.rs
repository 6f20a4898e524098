use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("probability {0} is outside the admissible interval")]
    ProbabilityOutOfRange(f64),

    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("{0} marginal is not symmetric; operation requires a symmetric marginal")]
    UnsupportedMarginal(&'static str),

    #[error("correlations ({rho12}, {rho13}, {rho23}) do not form a valid correlation matrix")]
    InvalidCorrelation { rho12: f64, rho13: f64, rho23: f64 },

    #[error("column has zero standard deviation")]
    DegenerateColumn,

    #[error("conditional column has zero standard deviation on the event")]
    DegenerateConditionalColumn,

    #[error("event selects {selected} rows, at least {required} required")]
    InsufficientEventRows { selected: usize, required: usize },

    #[error("need at least {required} rows, got {got}")]
    TooFewRows { required: usize, got: usize },

    #[error("column lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("dimension {got} not supported here (need {required})")]
    Dimension { required: &'static str, got: usize },

    #[error("quadrature did not converge: error estimate {error:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { error: f64, tolerance: f64 },

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },
}
