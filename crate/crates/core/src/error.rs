use thiserror::Error;

/// Every failure the library can report.
///
/// The set is closed: the CLI maps each variant to exactly one stable
/// `error_kind` string via [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("hbar must be nonzero")]
    ZeroHbar,
    #[error("label is degenerate: hbar - theta*b_in = 0 or hbar = 0")]
    DegenerateLabel,
    #[error("commutator matrix is degenerate (zero Pfaffian)")]
    DegenerateOmega,
    #[error("parameters inadmissible: hbar - r*theta*b_in = 0")]
    InadmissibleParams,
    #[error("realizations belong to different sector labels")]
    LabelMismatch,
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("eigenvalues of Omega*M do not pair as +-i*omega within tolerance")]
    SpectrumPairing,
    #[error("label lies outside the regular stratum and the quotient sector")]
    UnsupportedStratum,
}

impl Error {
    /// Stable, human-readable identifier used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse error",
            Error::DimensionMismatch { .. } => "Dimension mismatch",
            Error::UnsupportedDimension(_) => "Unsupported dimension",
            Error::NotAntisymmetric => "Not antisymmetric",
            Error::NotSymmetric => "Not symmetric",
            Error::SingularMatrix => "Singular matrix",
            Error::ZeroHbar => "Zero hbar",
            Error::DegenerateLabel => "Degenerate label",
            Error::DegenerateOmega => "Degenerate omega",
            Error::InadmissibleParams => "Inadmissible parameters",
            Error::LabelMismatch => "Label mismatch",
            Error::NotPositiveDefinite => "Not positive definite",
            Error::LengthMismatch { .. } => "Length mismatch",
            Error::SpectrumPairing => "Spectrum pairing",
            Error::UnsupportedStratum => "Unsupported stratum",
        }
    }

    /// All error kinds, in declaration order.
    pub const KINDS: [&'static str; 15] = [
        "Parse error",
        "Dimension mismatch",
        "Unsupported dimension",
        "Not antisymmetric",
        "Not symmetric",
        "Singular matrix",
        "Zero hbar",
        "Degenerate label",
        "Degenerate omega",
        "Inadmissible parameters",
        "Label mismatch",
        "Not positive definite",
        "Length mismatch",
        "Spectrum pairing",
        "Unsupported stratum",
    ];
}

pub type Result<T> = std::result::Result<T, Error>;
