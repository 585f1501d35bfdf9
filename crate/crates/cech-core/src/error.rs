use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library. Construction-time invariant violations on
/// value types (non-finite coordinates, non-positive radii) panic instead;
/// all data that enters through parsers is validated into these variants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("empty region")]
    EmptyRegion,
    #[error("empty union")]
    EmptyUnion,
    #[error("empty complex")]
    EmptyComplex,
    #[error("radius must be positive and finite")]
    InvalidRadius,
    #[error("degenerate bounding box")]
    DegenerateBox,
    #[error("grid dimensions must be at least 1x1")]
    BadGridDimensions,
    #[error("mismatched ambient boxes")]
    AmbientMismatch,
    #[error("nerve radius mismatch")]
    RadiusMismatch,
    #[error("nerve members share no common point")]
    EmptyNerveIntersection,
    #[error("nerve members outside configuration")]
    NerveOutOfRange,
    #[error("facet exceeds the dimension cap")]
    FacetTooLarge,
    #[error("descriptive ops need finite point sets")]
    PointSetsRequired,
    #[error("center point not in domain")]
    CenterNotInDomain,
    #[error("ball feature index out of range")]
    MissingBallFeature,
    #[error("regions of different kinds cannot be unioned")]
    IncompatibleUnion,
    #[error("unknown relation system `{0}`")]
    UnknownRelation(String),
    #[error("unknown feature map `{0}`")]
    UnknownFeatureMap(String),
    #[error("feature map `{map}` needs {needed} payload component(s), point has {present}")]
    MissingPayload {
        map: &'static str,
        needed: usize,
        present: usize,
    },
    #[error("union oracle unavailable for feature dimension {0}")]
    FeatureDimension(usize),
    #[error("unstable configuration - increase resolution or perturb r")]
    UnstableConfiguration,
    #[error("sampling spacing exceeds mask extent")]
    SpacingTooLarge,
    #[error("sampling produced no points")]
    NoSamples,
    #[error("empty universe")]
    EmptyUniverse,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("pgm: {0}")]
    Pgm(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
