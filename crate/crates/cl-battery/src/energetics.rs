//! Work budget of one steady charging cycle (second cycle onward): the
//! battery starts in the passive state of the previous cycle, connects,
//! thermalizes, disconnects, and the stored ergotropy is extracted. The
//! first-cycle transient vanishes identically in this regime, so it is not
//! represented.
//!
//! With `σ^∞` the stationary covariance,
//! `W_c = (ω_R²/2ω₀)·√(σ₁₁σ₂₂)`,
//! `W_d = −σ₂₂ + (ω₀² + ω_R²/2)·σ₁₁` (using `⟨q̈q⟩_∞ = −σ₂₂^∞`),
//! `ℰ = ½(√σ₂₂ − ω₀√σ₁₁)²`, `η = ℰ/W_c:d`, `TΣ = W_c:d − ℰ ≥ 0`.

use crate::quadrature::QuadratureConfig;
use crate::spectral::SpectralDensity;
use crate::steady_state::{steady_covariance, SteadyState};
use crate::symplectic::{passive_inverse_temperature, single_mode_ergotropy};
use crate::{Error, Result};
use serde::Serialize;

/// Energetics of one steady cycle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CycleEnergetics {
    /// Connection work `W_c`.
    pub w_c: f64,
    /// Disconnection work `W_d`.
    pub w_d: f64,
    /// Total invested work `W_c:d = W_c + W_d`.
    pub w_cd: f64,
    /// Extractable work `ℰ` of the disconnected steady state.
    pub ergotropy: f64,
    /// `η = ℰ / W_c:d`.
    pub efficiency: f64,
    /// Dissipated work `TΣ = W_c:d − ℰ`.
    pub t_sigma: f64,
    /// Inverse temperature of the post-extraction passive state.
    pub beta_p: f64,
    /// The stationary covariance the cycle was evaluated on.
    pub steady: SteadyState,
}

/// Full cycle energetics at coupling `γ > 0` and bath temperature `T ≥ 0`.
pub fn cycle_energetics(
    sd: &SpectralDensity,
    temp: f64,
    config: &QuadratureConfig,
) -> Result<CycleEnergetics> {
    if !(sd.gamma() > 0.0) {
        return Err(Error::invalid(
            "cycle energetics need gamma > 0: at zero coupling TΣ = ℰ = 0 and the efficiency is undefined",
        ));
    }
    let steady = steady_covariance(sd, temp, config)?;
    energetics_from_steady(sd, steady, config)
}

pub(crate) fn energetics_from_steady(
    sd: &SpectralDensity,
    steady: SteadyState,
    config: &QuadratureConfig,
) -> Result<CycleEnergetics> {
    let w0 = sd.omega0();
    let wr2 = sd.omega_r_squared();
    let (s11, s22) = (steady.sigma11, steady.sigma22);

    let sqrt_det = (s11 * s22).sqrt();
    let w_c = wr2 / (2.0 * w0) * sqrt_det;
    let w_d = -s22 + (w0 * w0 + 0.5 * wr2) * s11;
    let w_cd = w_c + w_d;

    let ergotropy = single_mode_ergotropy(s11, 0.0, s22, w0)?;
    if w_cd <= config.abs_tol {
        return Err(Error::ZeroDenominator { w_cd });
    }
    let efficiency = ergotropy / w_cd;
    let beta_p = passive_inverse_temperature(s11, 0.0, s22, w0)?;

    Ok(CycleEnergetics {
        w_c,
        w_d,
        w_cd,
        ergotropy,
        efficiency,
        t_sigma: w_cd - ergotropy,
        beta_p,
        steady,
    })
}

/// Energetics of `n` identical oscillators on a common bath. The collective
/// coordinate is a single Brownian oscillator at coupling `n·γ`; the other
/// `n − 1` normal modes decouple and contribute nothing after the first
/// cycle, so this is exactly the single-copy computation at `n·γ`.
pub fn n_copy_energetics(
    sd: &SpectralDensity,
    n: u32,
    temp: f64,
    config: &QuadratureConfig,
) -> Result<CycleEnergetics> {
    if n < 1 {
        return Err(Error::invalid("copy count must be >= 1"));
    }
    let rescaled = sd.with_gamma(n as f64 * sd.gamma())?;
    cycle_energetics(&rescaled, temp, config)
}

/// Leading high-temperature behavior: `W_c:d → (ω_R²/ω₀²)·T` while the
/// ergotropy is suppressed as `O(ω₀⁴/T³)`. Returns the `W_c:d` prediction
/// and that order estimate.
pub fn high_temperature_predictions(sd: &SpectralDensity, temp: f64) -> Result<(f64, f64)> {
    if !(temp > 0.0) {
        return Err(Error::invalid("high-temperature regime needs T > 0"));
    }
    let w0 = sd.omega0();
    let w_cd_pred = sd.omega_r_squared() / (w0 * w0) * temp;
    let ergotropy_order = w0.powi(4) / temp.powi(3);
    Ok((w_cd_pred, ergotropy_order))
}
