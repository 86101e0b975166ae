use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(
        "integration did not reach tolerance: value {value:e}, error estimate {error:e} \
         after {evaluations} evaluations"
    )]
    Accuracy {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("internal consistency check failed for {what}: {first:e} vs {second:e}")]
    Consistency {
        what: &'static str,
        first: f64,
        second: f64,
    },

    #[error("regime branch {branch} needs {missing}")]
    BranchData {
        branch: &'static str,
        missing: String,
    },

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// The angular integral needs a direction; at zero separation use the isotropic limit.
    #[error("direction vector has zero length")]
    DegenerateDirection,

    #[error("kernel table range exceeded at |x| = {x}, t = {t}")]
    TableRange { x: f64, t: f64 },

    #[error("non-finite value encountered in {0}")]
    Numeric(&'static str),

    #[error("regression fit failed: {0}")]
    Fit(String),
}
