use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("triangle discriminant negative at a = {a} (sublinkage {index})")]
    DiscriminantNegative { index: usize, a: f64 },

    #[error("negative radicand: {0}")]
    RadicandNegative(String),

    #[error("degenerate tip: b = 0 at a = {a}")]
    DegenerateTip { a: f64 },

    #[error("flexible branch switches at a = {a}")]
    BranchSwitch { a: f64 },

    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    #[error("invalid tip configuration: {0}")]
    InvalidTipConfiguration(String),

    #[error("point maps to infinity")]
    IdealImage,

    #[error("sublinkages match different cases: {0}")]
    MixedCases(String),

    #[error("linkage is not flexible (residual {residual:e}, offending {offending:?})")]
    NotFlexible { residual: f64, offending: Vec<usize> },

    #[error("meridian planes do not form a simple fan at index {index}")]
    NonSimpleFan { index: usize },

    #[error("inadmissible sample {index}: {reason}")]
    InadmissibleSample { index: usize, reason: String },

    #[error("incompatible chaining at triple {triple}: {reason}")]
    IncompatibleChaining { triple: usize, reason: String },

    #[error("angle constraint unsolvable at a = {a} (column edge {index})")]
    AngleUnsolvable { index: usize, a: f64 },

    #[error("parallel closure failed at quad ({row}, {col}): {reason}")]
    ClosureFailure { row: usize, col: usize, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal leaving the flexion range.
    pub fn is_range_error(&self) -> bool {
        matches!(
            self,
            Error::DiscriminantNegative { .. }
                | Error::RadicandNegative(_)
                | Error::BranchSwitch { .. }
                | Error::DegenerateTip { .. }
                | Error::AngleUnsolvable { .. }
        )
    }
}
