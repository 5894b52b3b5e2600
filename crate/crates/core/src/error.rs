use std::fmt;

use thiserror::Error;

/// Position of a syntax error inside a line-oriented input (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Broad category of a failure, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input (model, form, flag value) is malformed or violates a precondition.
    Validation,
    /// An internal consistency check failed; the engine produced contradictory data.
    Inconsistency,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at {location}: {message}")]
    Syntax { location: Location, message: String },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bidegree ({p},{q}) out of range for dimension {dim}")]
    OutOfRange { p: usize, q: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("form is not of top degree ({dim},{dim})")]
    NotTopDegree { dim: usize },
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("target vector is not in the column span")]
    NotInSpan,
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("binding of `{0}~` is not the conjugate of the binding of `{0}`")]
    InconsistentConjugateBinding(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("d{generator} has a (0,2) component; the complex structure is not integrable")]
    NotIntegrable { generator: String },
    #[error("d(d{generator}) = {residue} is not zero")]
    NotClosedSquare { generator: String, residue: String },
    #[error("d{generator} must be a 2-form")]
    NotTwoForm { generator: String },
    #[error("integral of d({monomial}) is {value}; the model is not unimodular")]
    StokesViolation { monomial: String, value: String },
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("volume normalization mu must be positive, got {0}")]
    NonPositiveVolume(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("form is not closed for {theory} cohomology")]
    NotClosed { theory: String },
    #[error("form does not live in degree {expected}")]
    WrongDegree { expected: String },
    #[error("closed form could not be expressed in the cohomology basis")]
    NotInCohomology,
    #[error("complex dimension {0} is odd")]
    OddDimension(usize),
    #[error("form is not of bidegree ({p},{q})")]
    WrongBidegree { p: usize, q: usize },
    #[error("representative is not d-closed")]
    NotClosedRepresentative,
    #[error("sigma is not normalized: integral of (sigma sigmabar)^n is {0}")]
    UnnormalizedSigma(String),
    #[error("sigma is not a complex symplectic form: {0}")]
    NotSymplectic(String),
    #[error("class basis is not a basis of H^2: {0}")]
    InvalidBasis(String),
    #[error("class basis is not stable under conjugation: {0}")]
    BasisNotConjugationStable(String),
    #[error("Gram entry {0} is not a real rational")]
    NonRealEntry(String),
    #[error("the operation requires the ddbar-lemma, which fails at bidegree ({p},{q})")]
    DdbarRequired { p: usize, q: usize },
    #[error("orthogonal decomposition check failed: {0}")]
    DecompositionFailure(String),
    #[error("theorem cross-check failed: {0}")]
    TheoremMismatch(String),
    #[error("tau is not d-closed")]
    NotClosedTau,
    #[error("tau is not of pure bidegree")]
    InhomogeneousTau,
    #[error("target bidegree ({p},{q}) out of range")]
    TargetOutOfRange { p: isize, q: isize },
    #[error("wedge map does not descend to cohomology: {0}")]
    NotWellDefined(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotInCohomology
            | Error::NonRealEntry(_)
            | Error::DecompositionFailure(_)
            | Error::TheoremMismatch(_)
            | Error::NotWellDefined(_) => ErrorKind::Inconsistency,
            _ => ErrorKind::Validation,
        }
    }

    /// Stable machine-readable identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotTopDegree { .. } => "NotTopDegree",
            Error::NonSymmetric => "NonSymmetric",
            Error::NotInSpan => "NotInSpan",
            Error::UnboundParameter(_) => "UnboundParameter",
            Error::InconsistentConjugateBinding(_) => "InconsistentConjugateBinding",
            Error::UnknownParameter(_) => "UnknownParameter",
            Error::NotIntegrable { .. } => "NotIntegrable",
            Error::NotClosedSquare { .. } => "NotClosedSquare",
            Error::NotTwoForm { .. } => "NotTwoForm",
            Error::StokesViolation { .. } => "StokesViolation",
            Error::SingularParameter(_) => "SingularParameter",
            Error::NonPositiveVolume(_) => "NonPositiveVolume",
            Error::UnknownModel(_) => "UnknownModel",
            Error::NotClosed { .. } => "NotClosed",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::NotInCohomology => "NotInCohomology",
            Error::OddDimension(_) => "OddDimension",
            Error::WrongBidegree { .. } => "WrongBidegree",
            Error::NotClosedRepresentative => "NotClosedRepresentative",
            Error::UnnormalizedSigma(_) => "UnnormalizedSigma",
            Error::NotSymplectic(_) => "NotSymplectic",
            Error::InvalidBasis(_) => "InvalidBasis",
            Error::BasisNotConjugationStable(_) => "BasisNotConjugationStable",
            Error::NonRealEntry(_) => "NonRealEntry",
            Error::DdbarRequired { .. } => "DdbarRequired",
            Error::DecompositionFailure(_) => "DecompositionFailure",
            Error::TheoremMismatch(_) => "TheoremMismatch",
            Error::NotClosedTau => "NotClosedTau",
            Error::InhomogeneousTau => "InhomogeneousTau",
            Error::TargetOutOfRange { .. } => "TargetOutOfRange",
            Error::NotWellDefined(_) => "NotWellDefined",
        }
    }

    pub fn location(&self) -> Option<Location> {
        match self {
            Error::Syntax { location, .. } => Some(*location),
            _ => None,
        }
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax { location: Location { line, column }, message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
