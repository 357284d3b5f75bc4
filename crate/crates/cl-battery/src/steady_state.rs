//! Long-time covariance of the battery oscillator,
//! `σ_ii^∞ = (1/π) ∫₀^∞ J(ω) ω^{2(i−1)} |α(ω)|^{−2} coth(ω/2T) dω`,
//! together with the two temperature-independent sum rules
//! `(2/π) ∫ J/(ω|α|²) = 1/ω₀²` and `(2/π) ∫ ωJ/|α|² = 1` used as end-to-end
//! quadrature diagnostics.
//!
//! The integrands peak at the root `ω*` of `Re α`, with a half-width
//! `J(ω*)/|∂_ω Re α(ω*)|` that shrinks without bound for steep cutoffs at
//! strong coupling. Resolvable peaks are handled by seeding breakpoints
//! around `ω*`; peaks narrower than f64 spacing are excised and replaced by
//! the exact integral of the local Lorentzian.

use crate::quadrature::{
    integrate_from, integrate_interval, integrate_semi_infinite, QuadratureConfig,
    QuadratureResult,
};
use crate::spectral::SpectralDensity;
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Stationary second moments with quadrature diagnostics. `σ₁₂^∞` is zero
/// identically and carried only for interface completeness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SteadyState {
    pub sigma11: f64,
    pub sigma22: f64,
    pub sigma12: f64,
    pub err11: f64,
    pub err22: f64,
    pub sum_rule_1_residual: f64,
    pub sum_rule_2_residual: f64,
}

/// `coth(x)` for `x > 0`, series-expanded below `x = 10⁻⁴` to avoid
/// cancellation and saturated to 1 above `x = 20`.
pub(crate) fn coth(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x >= 20.0 {
        1.0
    } else if x < 1e-4 {
        1.0 / x + x / 3.0 - x * x * x / 45.0
    } else {
        let e = (2.0 * x).exp();
        (e + 1.0) / (e - 1.0)
    }
}

/// `ω·coth(ω/2T)`, finite at ω → 0 (limit 2T); `temp = 0` means coth ≡ 1.
fn omega_coth(omega: f64, temp: f64) -> f64 {
    if temp == 0.0 {
        return omega;
    }
    let x = omega / (2.0 * temp);
    if x >= 20.0 {
        omega
    } else if x < 1e-4 {
        2.0 * temp + omega * omega / (6.0 * temp) * (1.0 - x * x / 15.0)
    } else {
        omega * coth(x)
    }
}

/// Location and local shape of the `Re α = 0` resonance.
struct Resonance {
    root: f64,
    /// `∂_ω Re α` at the root (negative).
    slope: f64,
    j_at_root: f64,
}

fn locate_resonance(sd: &SpectralDensity) -> Result<Resonance> {
    let root = sd.resonance_root();
    let slope = -2.0 * root - sd.chi_derivative(root)?;
    let j_at_root = sd.j_omega(root)?;
    Ok(Resonance {
        root,
        slope,
        j_at_root,
    })
}

/// `(1/π) ∫₀^∞ numerator(ω)/|α(ω)|² dω` where `numerator = J·g` with a
/// smooth weight `g` (`weight_at` evaluates `g` alone, used on the peak).
fn alpha_weighted_integral<N, W>(
    sd: &SpectralDensity,
    res: &Resonance,
    numerator: N,
    weight_at: W,
    extra_breakpoints: &[f64],
    config: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    N: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    let integrand = |omega: f64| -> f64 {
        let a2 = match sd.alpha_abs_squared(omega) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        numerator(omega) / a2
    };

    let omega_star = res.root;
    let half_width = res.j_at_root / res.slope.abs().max(f64::MIN_POSITIVE);

    let mut bps = vec![sd.omega0(), sd.omegac()];
    bps.extend_from_slice(extra_breakpoints);

    let raw = if half_width < 1e-7 * omega_star {
        // The peak is too narrow for subdivision (possibly below one ulp of
        // ω*). On a window |ω − ω*| ≤ δ the integrand is the Lorentzian
        // J·g/(c₁²u² + J²) up to O((δ/ω*)²), whose integral is
        // g(ω*)·(2/|c₁|)·arctan(|c₁|δ/J): exact in the J → 0 limit.
        let delta = 1e-5 * omega_star;
        let c1 = res.slope.abs();
        let window =
            weight_at(omega_star) * 2.0 / c1 * (c1 * delta / res.j_at_root.max(0.0)).atan();

        let piece_cfg = QuadratureConfig {
            rel_tol: 0.4 * config.rel_tol,
            abs_tol: 0.4 * config.abs_tol,
            ..*config
        };
        let left = integrate_interval(integrand, 0.0, omega_star - delta, &bps, &piece_cfg)?;
        bps.push(2.0 * omega_star);
        let right = integrate_from(integrand, omega_star + delta, &bps, &piece_cfg)?;

        QuadratureResult {
            value: left.value + right.value + window,
            error_estimate: left.error_estimate
                + right.error_estimate
                + window.abs() * (delta / omega_star).powi(2),
            evaluations: left.evaluations + right.evaluations,
            converged: left.converged && right.converged,
        }
    } else {
        // resolvable peak: cluster breakpoints around it
        bps.extend_from_slice(&[
            omega_star - 10.0 * half_width,
            omega_star,
            omega_star + 10.0 * half_width,
            omega_star + 100.0 * half_width,
        ]);
        integrate_semi_infinite(integrand, &bps, config)?
    };

    Ok(QuadratureResult {
        value: raw.value / PI,
        error_estimate: raw.error_estimate / PI,
        ..raw
    })
}

/// Steady covariance at bath temperature `T ≥ 0`. `T` below `10⁻⁸·ω₀` takes
/// the `coth ≡ 1` branch exactly; zero coupling returns the free thermal
/// state, which is the γ → 0 limit of the integrals.
pub fn steady_covariance(
    sd: &SpectralDensity,
    temp: f64,
    config: &QuadratureConfig,
) -> Result<SteadyState> {
    config.validate()?;
    if !(temp >= 0.0) || !temp.is_finite() {
        return Err(Error::invalid("temperature must be finite and >= 0"));
    }

    let w0 = sd.omega0();
    if sd.gamma() == 0.0 {
        let c = if temp == 0.0 {
            1.0
        } else {
            coth(w0 / (2.0 * temp))
        };
        return Ok(SteadyState {
            sigma11: c / (2.0 * w0),
            sigma22: 0.5 * w0 * c,
            sigma12: 0.0,
            err11: 0.0,
            err22: 0.0,
            sum_rule_1_residual: 0.0,
            sum_rule_2_residual: 0.0,
        });
    }

    let t_eff = if temp < 1e-8 * w0 { 0.0 } else { temp };
    let res = locate_resonance(sd)?;
    let pref = sd.gamma() * w0;
    let cut = sd.cutoff().clone();
    let wc = sd.omegac();

    let mut extra = Vec::new();
    if t_eff > 0.0 {
        extra.push(t_eff);
        extra.push(2.0 * t_eff);
    }

    let s11 = alpha_weighted_integral(
        sd,
        &res,
        |w| pref * cut.evaluate(w / wc) * omega_coth(w, t_eff),
        |w| {
            if t_eff == 0.0 {
                1.0
            } else {
                coth(w / (2.0 * t_eff))
            }
        },
        &extra,
        config,
    )?;
    let s22 = alpha_weighted_integral(
        sd,
        &res,
        |w| pref * cut.evaluate(w / wc) * w * w * omega_coth(w, t_eff),
        |w| {
            w * w
                * if t_eff == 0.0 {
                    1.0
                } else {
                    coth(w / (2.0 * t_eff))
                }
        },
        &extra,
        config,
    )?;

    let (r1, r2) = sum_rule_residuals_with(sd, &res, config)?;

    Ok(SteadyState {
        sigma11: s11.value,
        sigma22: s22.value,
        sigma12: 0.0,
        err11: s11.error_estimate,
        err22: s22.error_estimate,
        sum_rule_1_residual: r1,
        sum_rule_2_residual: r2,
    })
}

/// Residuals of the two temperature-independent identities,
/// `|(2/π)∫ J/(ω|α|²) − 1/ω₀²|·ω₀²` and `|(2/π)∫ ωJ/|α|² − 1|`.
pub fn sum_rule_residuals(sd: &SpectralDensity, config: &QuadratureConfig) -> Result<(f64, f64)> {
    config.validate()?;
    if !(sd.gamma() > 0.0) {
        return Err(Error::invalid(
            "sum rules require strictly positive coupling",
        ));
    }
    let res = locate_resonance(sd)?;
    sum_rule_residuals_with(sd, &res, config)
}

fn sum_rule_residuals_with(
    sd: &SpectralDensity,
    res: &Resonance,
    config: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let w0 = sd.omega0();
    let pref = sd.gamma() * w0;
    let cut = sd.cutoff().clone();
    let wc = sd.omegac();

    let i1 = alpha_weighted_integral(
        sd,
        res,
        |w| pref * cut.evaluate(w / wc),
        |w| 1.0 / w,
        &[],
        config,
    )?;
    let i2 = alpha_weighted_integral(
        sd,
        res,
        |w| pref * cut.evaluate(w / wc) * w * w,
        |w| w,
        &[],
        config,
    )?;

    let r1 = (2.0 * i1.value - 1.0 / (w0 * w0)).abs() * w0 * w0;
    let r2 = (2.0 * i2.value - 1.0).abs();
    Ok((r1, r2))
}
