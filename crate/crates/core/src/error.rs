//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The intensity histogram has a single occupied bin; Otsu's criterion
    /// cannot separate two classes.
    #[error("degenerate histogram: constant image")]
    DegenerateHistogram,
    #[error("empty mask: no foreground pixels")]
    EmptyMask,
    /// The boundary does not form a single closed loop (disjoint blobs,
    /// or merged fingers broke the traced contour).
    #[error("contour broken: boundary is not a single closed loop")]
    ContourBroken,
    #[error("degenerate shape: orientation undefined")]
    DegenerateShape,
    #[error("wrist reference row contains no foreground")]
    WristNotFound,
    #[error("landmark localization failed: {0}")]
    LandmarkFailure(String),
    #[error("feature measurement failed: {0}")]
    FeatureFailure(String),
    #[error("normalization statistics degenerate (zero variance feature)")]
    StatsDegenerate,
    /// Classifier 2 found no feature matches at the given threshold; the
    /// trial is reported as a rejection.
    #[error("no features matched below the distance threshold")]
    NoMatches,
    /// Dempster's rule conflict factor reached 1; the two sources cannot
    /// be combined and the trial is rejected.
    #[error("total conflict between evidence sources")]
    TotalConflict,
    #[error("unknown class: {0}")]
    UnknownClass(String),
    #[error("enrollment rejected: {0}")]
    EnrollmentRejected(String),
    #[error("duplicate sample: user {user} hand {hand} sample {sample}")]
    DuplicateSample {
        user: String,
        hand: char,
        sample: u32,
    },
    #[error("synthetic hand parameters conflict: {0}")]
    ParamConflict(String),
    #[error("template store parse error at line {line}: {msg}")]
    StoreParse { line: usize, msg: String },
    #[error("image decode error: {0}")]
    ImageDecode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
