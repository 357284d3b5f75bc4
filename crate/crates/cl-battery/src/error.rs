use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The subdivision budget was exhausted with the error estimate still
    /// above tolerance. Carries the location and local error of the worst
    /// remaining subinterval.
    #[error("quadrature did not converge: error estimate {error:.3e} for value {value:.3e} (worst subinterval [{worst_lo:.6e}, {worst_hi:.6e}] with local error {worst_error:.3e})")]
    NonConvergence {
        value: f64,
        error: f64,
        worst_lo: f64,
        worst_hi: f64,
        worst_error: f64,
    },

    /// The integrand returned NaN or ±∞ at a quadrature node.
    #[error("integrand returned a non-finite value at x = {at:.6e}")]
    NonFiniteIntegrand { at: f64 },

    /// Principal-value pole must lie strictly inside (0, ∞).
    #[error("principal-value pole {pole:.6e} is not strictly positive")]
    PoleAtBoundary { pole: f64 },

    /// Spectral quantities are defined for ω ≥ 0 only.
    #[error("negative frequency {omega:.6e}")]
    NegativeFrequency { omega: f64 },

    /// The cutoff integral ∫₀^∞ f(z) dz failed to converge, so the
    /// renormalization frequency is undefined.
    #[error("cutoff integral diverges; renormalization frequency is undefined")]
    DivergentRenormalization,

    /// A matrix required to be symmetric positive-definite is not.
    #[error("matrix is not symmetric positive-definite: {reason}")]
    NotPositiveDefinite { reason: String },

    /// Second moments violate the Heisenberg bound σ₁₁σ₂₂ − σ₁₂² ≥ 1/4.
    #[error("unphysical covariance: {reason}")]
    UnphysicalCovariance { reason: String },

    /// The connection-disconnection work is numerically zero, so the
    /// efficiency η = ℰ/W_c:d is undefined.
    #[error("connection-disconnection work {w_cd:.3e} is below the absolute tolerance; efficiency is undefined")]
    ZeroDenominator { w_cd: f64 },

    /// A custom cutoff function has no finite large-frequency limit of
    /// g̃(ω̄), so the ultrastrong prediction cannot be formed.
    #[error("custom cutoff has no finite ultrastrong asymptote: {reason}")]
    UnknownAsymptote { reason: String },

    /// A parameter is outside the domain of the requested operation.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },
}

impl Error {
    pub(crate) fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            reason: reason.into(),
        }
    }

    pub(crate) fn not_positive_definite(reason: impl Into<String>) -> Self {
        Error::NotPositiveDefinite {
            reason: reason.into(),
        }
    }

    pub(crate) fn unphysical(reason: impl Into<String>) -> Self {
        Error::UnphysicalCovariance {
            reason: reason.into(),
        }
    }
}
