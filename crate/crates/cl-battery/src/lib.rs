//! Numerical toolkit for a harmonic-oscillator battery that is charged by
//! letting it thermalize with a Caldeira-Leggett bath.
//!
//! The crate computes the long-time covariance of the oscillator, the work
//! budget of one connect-thermalize-disconnect-extract cycle, the Gaussian
//! ergotropy of multimode Gaussian states, and closed-form asymptotics in the
//! weak-coupling, low-temperature, high-temperature, and ultrastrong-coupling
//! regimes. Units are `ħ = k_B = 1` throughout.
//!
//! Module map:
//! - [`quadrature`]: adaptive Gauss-Kronrod integration on semi-infinite
//!   intervals and Cauchy principal values.
//! - [`spectral`]: Ohmic spectral densities `J(ω) = γ ω₀ ω f(ω/ω_c)`, the
//!   Kramers-Kronig transform `χ(ω)`, and the response denominator `|α(ω)|²`.
//! - [`symplectic`]: covariance matrices, Williamson decomposition, symplectic
//!   eigenvalues, Gaussian ergotropy, passive states, and Gaussian entropy.
//! - [`steady_state`]: the stationary second moments `σ₁₁^∞`, `σ₂₂^∞` with
//!   sum-rule diagnostics.
//! - [`energetics`]: connection/disconnection work, output ergotropy,
//!   efficiency, and entropy production per cycle.
//! - [`asymptotics`]: weak-coupling `Φ_T`/`Ψ_T` corrections, low-temperature
//!   composites, and the ultrastrong-coupling scaling law.
//! - [`sampling`]: random physical covariances and random symplectic matrices
//!   for randomized verification.

// `!(x > 0)`-style guards are deliberate: they reject NaN along with the
// out-of-domain values, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod energetics;
mod error;
pub mod quadrature;
pub mod sampling;
pub mod spectral;
pub mod steady_state;
pub mod symplectic;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
