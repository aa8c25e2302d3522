use thiserror::Error;

/// Crate-wide error type.
///
/// Variants split into two families the CLI cares about: input/data problems
/// (bad files, bad references, degenerate data) and numerical failures
/// (eigensolver breakdown, integer overflow in the homogeneity denominator).
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("fact file: {0}")]
    Csv(#[from] csv::Error),

    #[error("schema document: {0}")]
    SchemaParse(String),

    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    #[error("unknown column {column:?} (not present in the fact file header)")]
    UnknownColumn { column: String },

    #[error(
        "row {row}, dimension {dimension:?}: modality {label:?} is not in the declared catalog"
    )]
    UnknownModality {
        row: usize,
        dimension: String,
        label: String,
    },

    #[error("row {row}, column {column:?}: non-numeric measure value {value:?}")]
    NonNumericMeasure {
        row: usize,
        column: String,
        value: String,
    },

    #[error("dimension {dimension:?} has no modalities (empty fact file and no explicit catalog)")]
    EmptyDimension { dimension: String },

    #[error("sampling rate {rate} outside (0, 1]")]
    InvalidRate { rate: f64 },

    #[error("dimension {dimension:?}: {detail}")]
    InvalidPermutation { dimension: String, detail: String },

    #[error("empty cube: no facts to analyze")]
    EmptyCube,

    #[error("all modality columns have zero weight")]
    AllColumnsEmpty,

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    EigenNoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("no retained factorial axes")]
    NoRetainedAxes,

    #[error("axis {axis} is not a retained axis (retained count {retained})")]
    AxisOutOfRange { axis: usize, retained: usize },

    #[error("dimension index {index} out of range (cube has {count} dimensions)")]
    DimensionOutOfRange { index: usize, count: usize },

    #[error("unknown dimension name {name:?}")]
    UnknownDimension { name: String },

    #[error("degenerate shape: every dimension has a single modality, the homogeneity index is undefined")]
    DegenerateShape,

    #[error("baseline has no adjacent full pairs")]
    ZeroBaseline,

    #[error("arrangement search space has {configurations} configurations, above the limit {limit}; use a smaller shape")]
    SearchSpaceExceeded { configurations: u128, limit: u64 },

    #[error("integer overflow computing {what}")]
    NumericOverflow { what: &'static str },

    #[error("arrangement document: {0}")]
    ArrangementParse(String),

    #[error("arrangement does not fit the cube: {0}")]
    ArrangementMismatch(String),

    #[error("report document: {0}")]
    ReportParse(String),
}

impl Error {
    /// True for solver/arithmetic failures, false for input and data problems.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::AllColumnsEmpty
                | Error::EigenNoConvergence { .. }
                | Error::NumericOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
