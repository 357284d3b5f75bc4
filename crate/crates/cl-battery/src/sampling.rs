//! Random physical covariances, Hamiltonians, and symplectic matrices for
//! randomized verification. Everything is driven by a caller-supplied `Rng`
//! so seeded runs are reproducible.

use crate::symplectic::{matrix_exp, symplectic_form, CovarianceMatrix, QuadraticHamiltonian};
use nalgebra::DMatrix;
use rand::Rng;

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller on two uniforms
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random symmetric matrix with N(0, scale²) entries.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = scale * standard_normal(rng);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Random symplectic matrix `exp(J S)` with `S` symmetric of the given
/// magnitude; `magnitude` around 1 gives well-conditioned group elements.
pub fn random_symplectic<R: Rng + ?Sized>(
    modes: usize,
    magnitude: f64,
    rng: &mut R,
) -> DMatrix<f64> {
    let s = random_symmetric(2 * modes, magnitude / (2.0 * modes as f64).sqrt(), rng);
    let j = symplectic_form(modes);
    matrix_exp(&(&j * s))
}

/// Random physical covariance `Λ (⊕ s_k I₂) Λᵀ` with symplectic spectrum
/// drawn from `[0.5 + margin, 3]`.
pub fn random_covariance<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> CovarianceMatrix {
    let lambda = random_symplectic(modes, 1.0, rng);
    let mut s = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        let v = rng.gen_range(0.5 + 1e-6..3.0);
        s[(2 * k, 2 * k)] = v;
        s[(2 * k + 1, 2 * k + 1)] = v;
    }
    let m = &lambda * s * lambda.transpose();
    CovarianceMatrix::new(0.5 * (&m + m.transpose())).expect("congruence preserves symmetry")
}

/// Random positive-definite quadratic Hamiltonian `Λ (⊕ m_k I₂) Λᵀ` with
/// symplectic spectrum in `[0.3, 3]`.
pub fn random_hamiltonian<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> QuadraticHamiltonian {
    let lambda = random_symplectic(modes, 1.0, rng);
    let mut s = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        let v = rng.gen_range(0.3..3.0);
        s[(2 * k, 2 * k)] = v;
        s[(2 * k + 1, 2 * k + 1)] = v;
    }
    let m = &lambda * s * lambda.transpose();
    QuadraticHamiltonian::new(0.5 * (&m + m.transpose()))
        .expect("congruence preserves positive-definiteness")
}
