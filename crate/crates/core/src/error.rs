use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names double as the diagnostic labels printed by the command-line
/// front end, so scripts can match on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NearZeroVector: cannot normalize a vector of norm {norm:e}")]
    NearZeroVector { norm: f64 },

    #[error("NotUnitVector: norm {norm} deviates from 1 by more than {tolerance:e}")]
    NotUnitVector { norm: f64, tolerance: f64 },

    #[error("NotOrthonormal: frame orthonormality error {error:e} exceeds {tolerance:e}")]
    NotOrthonormal { error: f64, tolerance: f64 },

    #[error("NonFinite: {what} produced a non-finite value at s = {s}")]
    NonFinite { what: &'static str, s: f64 },

    #[error("DegenerateDomain: interval [{lo}, {hi}] is empty or collapsed")]
    DegenerateDomain { lo: f64, hi: f64 },

    #[error("OutOfDomain: s = {s} (stencil reach {reach:e}) leaves [{lo}, {hi}]")]
    OutOfDomain {
        s: f64,
        reach: f64,
        lo: f64,
        hi: f64,
    },

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),

    #[error("DerivativeMismatch: supplied derivative of order {order} disagrees with finite differences at s = {s} (error {error:e})")]
    DerivativeMismatch { order: usize, s: f64, error: f64 },

    #[error("MissingDerivative: an analytic derivative of order {order} is required")]
    MissingDerivative { order: usize },

    #[error("NotSpherical: |gamma(s)| = {norm} at s = {s}")]
    NotSpherical { s: f64, norm: f64 },

    #[error("NotUnitSpeed: |gamma'(s)| = {speed} at s = {s}")]
    NotUnitSpeed { s: f64, speed: f64 },

    #[error("DegenerateTangent: |c'(s)| = {speed:e} at s = {s}")]
    DegenerateTangent { s: f64, speed: f64 },

    #[error("VanishingCurvature: |c' x c''| = {norm:e} at s = {s}")]
    VanishingCurvature { s: f64, norm: f64 },

    #[error("TorsionNearZero: tau = {tau:e} at s = {s}")]
    TorsionNearZero { s: f64, tau: f64 },

    #[error("DegenerateConfiguration: {0}")]
    DegenerateConfiguration(String),

    #[error("InvalidRadius: spherical circle radius {0} must lie in (0, 1]")]
    InvalidRadius(f64),

    #[error("FrameDrift: orthonormality error {error:e} at s = {s} (reduce the step)")]
    FrameDrift { s: f64, error: f64 },

    #[error("SingularDomain: k_g (s - b1) reaches {reach} within the tan guard band at s = {s}")]
    SingularDomain { s: f64, reach: f64 },

    #[error("ProfileDomainExceeded: |m s + n| = {value} exceeds 1 - delta at s = {s}")]
    ProfileDomainExceeded { s: f64, value: f64 },

    #[error("InvalidTheta: sin(theta) = {sin:e} is too close to zero")]
    InvalidTheta { sin: f64 },

    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// The short label at the start of every message.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NearZeroVector { .. } => "NearZeroVector",
            Error::NotUnitVector { .. } => "NotUnitVector",
            Error::NotOrthonormal { .. } => "NotOrthonormal",
            Error::NonFinite { .. } => "NonFinite",
            Error::DegenerateDomain { .. } => "DegenerateDomain",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::DerivativeMismatch { .. } => "DerivativeMismatch",
            Error::MissingDerivative { .. } => "MissingDerivative",
            Error::NotSpherical { .. } => "NotSpherical",
            Error::NotUnitSpeed { .. } => "NotUnitSpeed",
            Error::DegenerateTangent { .. } => "DegenerateTangent",
            Error::VanishingCurvature { .. } => "VanishingCurvature",
            Error::TorsionNearZero { .. } => "TorsionNearZero",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::InvalidRadius(_) => "InvalidRadius",
            Error::FrameDrift { .. } => "FrameDrift",
            Error::SingularDomain { .. } => "SingularDomain",
            Error::ProfileDomainExceeded { .. } => "ProfileDomainExceeded",
            Error::InvalidTheta { .. } => "InvalidTheta",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "Io",
        }
    }

    /// Errors caused by bad user input rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDomain { .. }
                | Error::InvalidConfig(_)
                | Error::InvalidParameter(_)
                | Error::InvalidRadius(_)
                | Error::InvalidTheta { .. }
                | Error::InvalidInput(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
