//! Ohmic bath description: spectral density `J(ω) = γ ω₀ ω f(ω/ω_c)`, the
//! renormalization frequency `ω_R² = (2γω₀ω_c/π) ∫₀^∞ f(z) dz`, the
//! Kramers-Kronig transform `χ(ω)`, and the response denominator `|α(ω)|²`.
//!
//! `χ` carries the whole principal-value cost, so the Lorentz-Drude closed
//! form `χ(ω) = 2γω₀ω_c / (1 + ω²/ω_c²)` is always preferred when available;
//! every other cutoff goes through the generic two-sided quadrature
//! `χ(ω) = (γω₀ω_c/π) [∫₀^∞ z f(z)/(z + ω/ω_c) dz + 𝒫∫₀^∞ z f(z)/(z − ω/ω_c) dz]`.

use crate::quadrature::{
    integrate_principal_value, integrate_semi_infinite, QuadratureConfig,
};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Internal tolerance for the χ quadratures. Tighter than the default so
/// that nesting χ inside the steady-state integrals leaves the outer error
/// estimates clean.
fn chi_config() -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-16,
        max_subdivisions: 4000,
        truncation_factor: 50.0,
    }
}

/// Dimensionless cutoff profile `f(z)` suppressing `J` above `ω_c`.
#[derive(Clone)]
pub enum CutoffKind {
    /// `f(z) = 2 / (1 + z²)`
    LorentzDrude,
    /// `f(z) = π e^{−z}`
    Exponential,
    /// User-supplied profile with a decay bound: `f(z) < 10⁻¹²` is required
    /// for every `z > decay_z`, which caps the tail truncation.
    Custom {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        decay_z: f64,
    },
}

impl fmt::Debug for CutoffKind {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutoffKind::LorentzDrude => write!(fm, "LorentzDrude"),
            CutoffKind::Exponential => write!(fm, "Exponential"),
            CutoffKind::Custom { decay_z, .. } => {
                write!(fm, "Custom {{ decay_z: {decay_z} }}")
            }
        }
    }
}

impl CutoffKind {
    pub fn evaluate(&self, z: f64) -> f64 {
        match self {
            CutoffKind::LorentzDrude => 2.0 / (1.0 + z * z),
            CutoffKind::Exponential => PI * (-z).exp(),
            CutoffKind::Custom { f, .. } => f(z),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CutoffKind::LorentzDrude => "lorentz-drude",
            CutoffKind::Exponential => "exponential",
            CutoffKind::Custom { .. } => "custom",
        }
    }
}

/// Immutable bath description. `ω_R²` and `f̂ = ∫₀^∞ f(z) dz` are computed
/// once at construction; all other operations are pure.
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    gamma: f64,
    omega0: f64,
    omegac: f64,
    cutoff: CutoffKind,
    omega_r_sq: f64,
    f_hat: f64,
}

impl SpectralDensity {
    pub fn new(gamma: f64, omega0: f64, omegac: f64, cutoff: CutoffKind) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::invalid("coupling gamma must be finite and >= 0"));
        }
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::invalid("omega0 must be finite and > 0"));
        }
        if !(omegac > 0.0) || !omegac.is_finite() {
            return Err(Error::invalid("omegac must be finite and > 0"));
        }
        if !(cutoff.evaluate(0.0) > 0.0) {
            return Err(Error::invalid("cutoff function must satisfy f(0) > 0"));
        }

        // ∫₀^∞ f(z) dz is exactly π for both registered cutoffs; custom
        // profiles are integrated numerically and must converge for ω_R to
        // exist at all.
        let f_hat = match &cutoff {
            CutoffKind::LorentzDrude | CutoffKind::Exponential => PI,
            CutoffKind::Custom { f, decay_z } => {
                if !(*decay_z > 0.0) {
                    return Err(Error::invalid("custom cutoff needs a positive decay bound"));
                }
                if f(*decay_z).abs() > 1e-10 {
                    return Err(Error::invalid(
                        "custom cutoff does not respect its declared decay bound",
                    ));
                }
                let r = integrate_semi_infinite(|z| f(z), &[1.0, *decay_z], &chi_config())
                    .map_err(|_| Error::DivergentRenormalization)?;
                if !r.value.is_finite() {
                    return Err(Error::DivergentRenormalization);
                }
                r.value
            }
        };

        let omega_r_sq = match &cutoff {
            // closed form for the two registered cutoffs
            CutoffKind::LorentzDrude | CutoffKind::Exponential => 2.0 * gamma * omega0 * omegac,
            CutoffKind::Custom { .. } => 2.0 * gamma * omega0 * omegac / PI * f_hat,
        };

        Ok(Self {
            gamma,
            omega0,
            omegac,
            cutoff,
            omega_r_sq,
            f_hat,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omegac(&self) -> f64 {
        self.omegac
    }

    pub fn cutoff(&self) -> &CutoffKind {
        &self.cutoff
    }

    /// Same bath with the coupling replaced; used by the n-copy mapping.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(gamma, self.omega0, self.omegac, self.cutoff.clone())
    }

    /// `ω̃₀ = ω₀/ω_c`.
    pub fn omega0_tilde(&self) -> f64 {
        self.omega0 / self.omegac
    }

    /// `f̂ = ∫₀^∞ f(z) dz` (π for the registered cutoffs).
    pub fn f_hat(&self) -> f64 {
        self.f_hat
    }

    /// Renormalization frequency squared, `ω_R² = (2γω₀ω_c/π) f̂`.
    pub fn omega_r_squared(&self) -> f64 {
        self.omega_r_sq
    }

    /// Spectral density `J(ω) = γ ω₀ ω f(ω/ω_c)` for `ω ≥ 0`.
    pub fn j_omega(&self, omega: f64) -> Result<f64> {
        if omega < 0.0 {
            return Err(Error::NegativeFrequency { omega });
        }
        Ok(self.j_unchecked(omega))
    }

    pub(crate) fn j_unchecked(&self, omega: f64) -> f64 {
        self.gamma * self.omega0 * omega * self.cutoff.evaluate(omega / self.omegac)
    }

    /// Kramers-Kronig transform `χ(ω) = (1/π) 𝒫 ∫ J(ω')/(ω'−ω) dω'` with `J`
    /// extended oddly to negative frequencies.
    pub fn chi(&self, omega: f64) -> Result<f64> {
        if omega < 0.0 {
            return Err(Error::NegativeFrequency { omega });
        }
        match &self.cutoff {
            CutoffKind::LorentzDrude => {
                let z = omega / self.omegac;
                Ok(2.0 * self.gamma * self.omega0 * self.omegac / (1.0 + z * z))
            }
            _ => self.chi_generic(omega),
        }
    }

    /// Principal-value evaluation of `χ`, valid for every cutoff. Exposed so
    /// the Lorentz-Drude closed form can be validated against it.
    pub fn chi_generic(&self, omega: f64) -> Result<f64> {
        if omega < 0.0 {
            return Err(Error::NegativeFrequency { omega });
        }
        if self.gamma == 0.0 {
            return Ok(0.0);
        }
        let zt = omega / self.omegac;
        if zt < 1e-12 {
            // χ(0) = ω_R² by the zero-frequency Kramers-Kronig identity
            return Ok(self.omega_r_sq);
        }
        // The two z-integrals are O(f̂) individually but can cancel almost
        // completely at ω ≫ ω_c, so the principal-value convergence check
        // needs an absolute floor in these dimensionless units.
        let cfg = QuadratureConfig {
            abs_tol: 1e-12,
            ..chi_config()
        };
        let cut = &self.cutoff;
        let plus = integrate_semi_infinite(
            |z| z * cut.evaluate(z) / (z + zt),
            &[1.0, zt],
            &cfg,
        )?;
        let pv = integrate_principal_value(|z| z * cut.evaluate(z), zt, &cfg)?;
        Ok(self.gamma * self.omega0 * self.omegac / PI * (plus.value + pv.value))
    }

    /// dχ/dω, closed form for Lorentz-Drude and a fourth-order stencil on
    /// the quadrature path otherwise.
    pub fn chi_derivative(&self, omega: f64) -> Result<f64> {
        if omega < 0.0 {
            return Err(Error::NegativeFrequency { omega });
        }
        match &self.cutoff {
            CutoffKind::LorentzDrude => {
                let wc2 = self.omegac * self.omegac;
                let d = 1.0 + omega * omega / wc2;
                Ok(-4.0 * self.gamma * self.omega0 * omega / (self.omegac * d * d))
            }
            _ => {
                let h = 1e-3 * omega.max(0.1 * self.omegac);
                let p2 = self.chi(omega + 2.0 * h)?;
                let p1 = self.chi(omega + h)?;
                let m1 = self.chi((omega - h).max(0.0))?;
                let m2 = self.chi((omega - 2.0 * h).max(0.0))?;
                Ok((-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h))
            }
        }
    }

    /// Real part of the response denominator,
    /// `Re α(ω) = ω₀² − ω² + ω_R² − χ(ω)`.
    pub fn alpha_re(&self, omega: f64) -> Result<f64> {
        Ok(self.omega0 * self.omega0 - omega * omega + self.omega_r_sq - self.chi(omega)?)
    }

    /// `|α(ω)|² = [ω₀² − ω² + ω_R² − χ(ω)]² + J(ω)²`.
    pub fn alpha_abs_squared(&self, omega: f64) -> Result<f64> {
        let re = self.alpha_re(omega)?;
        let j = self.j_omega(omega)?;
        Ok(re * re + j * j)
    }

    /// Locates the root `ω*` of `Re α(ω) = 0` by bracketed bisection. The
    /// integrands of the steady-state module peak there with a width set by
    /// `J(ω*)`, so the root seeds their breakpoint lists. Falls back to `ω₀`
    /// when no sign change can be bracketed.
    pub fn resonance_root(&self) -> f64 {
        if self.gamma == 0.0 {
            return self.omega0;
        }
        let h = |w: f64| -> Option<f64> {
            let v = self.alpha_re(w).ok()?;
            v.is_finite().then_some(v)
        };

        // Re α(0) = ω₀² > 0 and Re α ~ −ω² at large ω, so a sign change
        // exists; ω* ≤ √(ω₀² + ω_R²) whenever χ ≥ 0.
        let mut lo = 0.0;
        let mut hi = (self.omega0 * self.omega0 + self.omega_r_sq).sqrt() + self.omegac;
        let mut f_hi = match h(hi) {
            Some(v) => v,
            None => return self.omega0,
        };
        let mut expand = 0;
        while f_hi > 0.0 && expand < 60 {
            lo = hi;
            hi *= 1.6;
            f_hi = match h(hi) {
                Some(v) => v,
                None => return self.omega0,
            };
            expand += 1;
        }
        if f_hi > 0.0 {
            return self.omega0;
        }

        for _ in 0..90 {
            if hi - lo <= 1e-14 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match h(mid) {
                Some(v) if v > 0.0 => lo = mid,
                Some(_) => hi = mid,
                None => return self.omega0,
            }
        }
        0.5 * (lo + hi)
    }
}
