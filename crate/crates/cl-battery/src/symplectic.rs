//! Gaussian-state linear algebra in interleaved ordering
//! `x = (q₁, p₁, …, q_d, p_d)`: covariance matrices, the Williamson
//! decomposition `σ = Λ s Λᵀ` obtained through the skew-symmetric Schur form,
//! multimode Gaussian ergotropy `𝒢 = ½tr(σM) − Σ s_k↑ m_k↓`, the symplectic
//! transformation that attains it, single-mode passive states, and Gaussian
//! entropy.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Symplectic identity `J = ⊕ [[0, 1], [−1, 0]]` for `d` modes.
pub fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    j
}

/// Symmetric matrix of second moments `σ_ij = ½⟨{x_i, x_j}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Accepts a `2d×2d` matrix, symmetrizing away roundoff-level asymmetry.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || !n.is_multiple_of(2) || entries.ncols() != n {
            return Err(Error::unphysical(
                "covariance matrix must be square with even dimension",
            ));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::unphysical("covariance matrix has non-finite entries"));
        }
        let asym = (&entries - entries.transpose()).norm();
        if asym > 1e-9 * entries.norm().max(1.0) {
            return Err(Error::unphysical(
                "covariance matrix is not symmetric within tolerance",
            ));
        }
        let sym = 0.5 * (&entries + entries.transpose());
        Ok(Self {
            modes: n / 2,
            entries: sym,
        })
    }

    /// Single-mode covariance [[σ₁₁, σ₁₂], [σ₁₂, σ₂₂]].
    pub fn single_mode(s11: f64, s12: f64, s22: f64) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(2, 2, &[s11, s12, s12, s22]))
    }

    /// Thermal state of a free oscillator: `σ₁₁ = coth(ω₀/2T)/(2ω₀)`,
    /// `σ₂₂ = (ω₀/2)·coth(ω₀/2T)`, with the T = 0 limit giving the vacuum.
    pub fn thermal_free(omega0: f64, temp: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !(temp >= 0.0) {
            return Err(Error::invalid("thermal_free needs omega0 > 0 and T >= 0"));
        }
        let c = if temp == 0.0 {
            1.0
        } else {
            crate::steady_state::coth(omega0 / (2.0 * temp))
        };
        Self::single_mode(c / (2.0 * omega0), 0.0, 0.5 * omega0 * c)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Physicality `σ + (i/2)J ≥ 0`, i.e. every symplectic eigenvalue is at
    /// least 1/2 up to `tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        match symplectic_eigenvalues(self) {
            Ok(s) => s.iter().all(|&v| v >= 0.5 - tol),
            Err(_) => false,
        }
    }
}

/// Quadratic Hamiltonian `H = ½ xᵀ M x` with `M` positive-semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || !n.is_multiple_of(2) || matrix.ncols() != n {
            return Err(Error::not_positive_definite(
                "Hamiltonian matrix must be square with even dimension",
            ));
        }
        let asym = (&matrix - matrix.transpose()).norm();
        if asym > 1e-9 * matrix.norm().max(1.0) {
            return Err(Error::not_positive_definite(
                "Hamiltonian matrix is not symmetric",
            ));
        }
        let sym = 0.5 * (&matrix + matrix.transpose());
        let (_, values) = jacobi_symmetric_eigen(&sym);
        let scale = values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if values[0] < -1e-10 * scale.max(1.0) {
            return Err(Error::not_positive_definite(
                "Hamiltonian matrix has a negative eigenvalue",
            ));
        }
        Ok(Self {
            modes: n / 2,
            matrix: sym,
        })
    }

    /// `M = diag(ω₀², 1)` for one mode.
    pub fn free_oscillator(omega0: f64) -> Result<Self> {
        Self::free_oscillators(1, omega0)
    }

    /// `d` identical uncoupled modes of frequency `ω₀`.
    pub fn free_oscillators(modes: usize, omega0: f64) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::invalid("oscillator frequency must be > 0"));
        }
        let mut m = DMatrix::zeros(2 * modes, 2 * modes);
        for k in 0..modes {
            m[(2 * k, 2 * k)] = omega0 * omega0;
            m[(2 * k + 1, 2 * k + 1)] = 1.0;
        }
        Self::new(m)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Mean energy `½ tr(σM)` in the state with covariance `σ`.
    pub fn mean_energy(&self, sigma: &CovarianceMatrix) -> f64 {
        0.5 * (&self.matrix * sigma.entries()).trace()
    }
}

/// Williamson factorization `σ = Λ s Λᵀ` with `Λ` symplectic and the
/// spectrum in ascending order.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    pub lambda: DMatrix<f64>,
    pub spectrum: Vec<f64>,
}

impl WilliamsonDecomposition {
    /// `s = ⊕ s_k I₂`.
    pub fn s_matrix(&self) -> DMatrix<f64> {
        let d = self.spectrum.len();
        let mut s = DMatrix::zeros(2 * d, 2 * d);
        for (k, &v) in self.spectrum.iter().enumerate() {
            s[(2 * k, 2 * k)] = v;
            s[(2 * k + 1, 2 * k + 1)] = v;
        }
        s
    }

    /// Frobenius norm of `Λ J Λᵀ − J`.
    pub fn symplectic_residual(&self) -> f64 {
        let d = self.spectrum.len();
        let j = symplectic_form(d);
        (&self.lambda * &j * self.lambda.transpose() - &j).norm()
    }

    /// Relative Frobenius norm of `Λ s Λᵀ − σ`.
    pub fn reconstruction_residual(&self, sigma: &CovarianceMatrix) -> f64 {
        let rec = &self.lambda * self.s_matrix() * self.lambda.transpose();
        (rec - sigma.entries()).norm() / sigma.entries().norm().max(1.0)
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix: `m = V D Vᵀ`
/// with eigenvalues ascending. Machine-precision residuals; `V` orthogonal
/// by construction.
pub fn jacobi_symmetric_eigen(m: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let n = m.nrows();
    let mut a = 0.5 * (m + m.transpose());
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &k| a[(i, i)].total_cmp(&a[(k, k)]));
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    let mut values = DVector::<f64>::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
        values[dst] = a[(src, src)];
    }
    (vectors, values)
}

/// Spectral decomposition of a symmetric matrix with an eigenvalue floor.
fn symmetric_eigen_checked(
    m: &DMatrix<f64>,
    floor: f64,
    what: &str,
) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let (vectors, values) = jacobi_symmetric_eigen(m);
    if values[0] < floor {
        return Err(Error::not_positive_definite(format!(
            "{what}: smallest eigenvalue {:.3e} is below {floor:.1e}",
            values[0]
        )));
    }
    Ok((vectors, values))
}

fn spectral_power(m: &DMatrix<f64>, power: f64, floor: f64, what: &str) -> Result<DMatrix<f64>> {
    let (v, d) = symmetric_eigen_checked(m, floor, what)?;
    let dp = DMatrix::from_diagonal(&d.map(|x| x.max(0.0).powf(power)));
    Ok(&v * dp * v.transpose())
}

/// Nonnegative values `s_k` such that `±i s_k` are the eigenvalues of `σJ`,
/// ascending. Computed from the symmetric matrix `AᵀA` with
/// `A = σ^{1/2} J σ^{1/2}`, whose eigenvalues are the `s_k²` in pairs.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_spectrum_of(sigma.entries(), 1e-12, "covariance matrix")
}

/// Symplectic spectrum of a PSD matrix; `floor` guards the matrix square
/// root (pass 0 to admit singular Hamiltonians).
fn symplectic_spectrum_of(m: &DMatrix<f64>, floor: f64, what: &str) -> Result<Vec<f64>> {
    let d = m.nrows() / 2;
    if d == 1 {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if m[(0, 0)] < floor || det < floor * floor {
            return Err(Error::not_positive_definite(format!(
                "{what}: 2x2 block is not positive-definite"
            )));
        }
        return Ok(vec![det.max(0.0).sqrt()]);
    }
    let half = spectral_power(m, 0.5, floor, what)?;
    let j = symplectic_form(d);
    let a = &half * &j * &half;
    let a = 0.5 * (&a - a.transpose());
    let (_, s2) = jacobi_symmetric_eigen(&(a.transpose() * &a));
    let vals: Vec<f64> = s2.iter().map(|&v| v.max(0.0).sqrt()).collect();
    // eigenvalues come in (s², s²) pairs; keep one of each
    Ok(vals.iter().skip(1).step_by(2).copied().collect())
}

/// Williamson decomposition through the skew-symmetric Schur form of
/// `A = σ^{1/2} J σ^{1/2}`: with `A = O (s^{1/2} J s^{1/2}) Oᵀ`, the matrix
/// `Λ = −J σ^{−1/2} O s^{1/2} J` is symplectic and `σ = Λ s Λᵀ`.
pub fn williamson(sigma: &CovarianceMatrix) -> Result<WilliamsonDecomposition> {
    let d = sigma.modes();
    let m = sigma.entries();

    if d == 1 {
        // σ^{1/2}/√s is symplectic (unit determinant) and already does it
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if m[(0, 0)] < 1e-12 || det < 1e-24 {
            return Err(Error::not_positive_definite(
                "covariance matrix: 2x2 block is not positive-definite",
            ));
        }
        let s = det.sqrt();
        let half = spectral_power(m, 0.5, 1e-12, "covariance matrix")?;
        return Ok(WilliamsonDecomposition {
            lambda: half / s.sqrt(),
            spectrum: vec![s],
        });
    }

    let half = spectral_power(m, 0.5, 1e-12, "covariance matrix")?;
    let inv_half = spectral_power(m, -0.5, 1e-12, "covariance matrix")?;
    let j = symplectic_form(d);
    let a = &half * &j * &half;
    let a = 0.5 * (&a - a.transpose());

    // The Schur form is assembled from the eigenpairs of the symmetric AᵀA:
    // each eigenvalue s² carries a 2-plane spanned by (u, Au/s), on which A
    // acts as s·J₁ in the column order (Au/s, u).
    let (eigvecs, _) = jacobi_symmetric_eigen(&(a.transpose() * &a));

    let n = 2 * d;
    let mut schur_o = DMatrix::<f64>::zeros(n, n);
    let mut spectrum = Vec::with_capacity(d);
    let mut placed = 0usize;

    for idx in 0..n {
        if placed == n {
            break;
        }
        let mut u: DVector<f64> = eigvecs.column(idx).into_owned();
        for c in 0..placed {
            let col = schur_o.column(c).into_owned();
            u -= col.dot(&u) * col;
        }
        let norm = u.norm();
        if norm < 0.5 {
            continue; // direction already covered by a placed 2-plane
        }
        u /= norm;
        let au = &a * &u;
        let s = au.norm();
        if s <= 1e-12 {
            return Err(Error::not_positive_definite(
                "covariance matrix: vanishing symplectic eigenvalue",
            ));
        }
        let mut w = au / s;
        for c in 0..placed {
            let col = schur_o.column(c).into_owned();
            w -= col.dot(&w) * col;
        }
        w -= u.dot(&w) * &u;
        let wn = w.norm();
        if wn < 0.5 {
            return Err(Error::not_positive_definite(
                "covariance matrix: failed to pair a Schur 2-plane",
            ));
        }
        w /= wn;

        schur_o.set_column(placed, &w);
        schur_o.set_column(placed + 1, &u);
        placed += 2;
        spectrum.push(s);
    }

    if placed != n {
        return Err(Error::not_positive_definite(
            "covariance matrix: Schur pairing did not span the space",
        ));
    }

    let mut s_half = DMatrix::<f64>::zeros(n, n);
    for (k, &s) in spectrum.iter().enumerate() {
        s_half[(2 * k, 2 * k)] = s.sqrt();
        s_half[(2 * k + 1, 2 * k + 1)] = s.sqrt();
    }

    let lambda = -&j * inv_half * schur_o * s_half * &j;
    Ok(WilliamsonDecomposition { lambda, spectrum })
}

/// Gaussian ergotropy `𝒢 = ½ tr(σM) − Σ_k s_k↑ m_k↓`: the maximal work a
/// Gaussian unitary can extract from the Gaussian state with covariance `σ`
/// under the quadratic Hamiltonian `M`. Nonnegative; roundoff within
/// `10⁻¹²` of zero is clamped.
pub fn gaussian_ergotropy(sigma: &CovarianceMatrix, ham: &QuadraticHamiltonian) -> Result<f64> {
    if sigma.modes() != ham.modes() {
        return Err(Error::invalid("state and Hamiltonian mode counts differ"));
    }
    let s_up = symplectic_eigenvalues(sigma)?;
    let mut m_down = symplectic_spectrum_of(ham.matrix(), 0.0, "Hamiltonian matrix")?;
    m_down.reverse();
    let mean = ham.mean_energy(sigma);
    let bound: f64 = s_up.iter().zip(&m_down).map(|(s, m)| s * m).sum();
    let g = mean - bound;
    if g < 0.0 && g > -1e-12 * mean.abs().max(1.0) {
        return Ok(0.0);
    }
    Ok(g)
}

/// The symplectic transformation `Λ_U = −J Λ_M↓ (Λ_σ↑)ᵀ J` whose induced
/// Gaussian unitary realizes the ergotropy:
/// `½ tr(Λ_U σ Λ_Uᵀ M) = ½ tr(σM) − 𝒢`. Needs `M` positive-definite.
pub fn optimal_symplectic(
    sigma: &CovarianceMatrix,
    ham: &QuadraticHamiltonian,
) -> Result<DMatrix<f64>> {
    if sigma.modes() != ham.modes() {
        return Err(Error::invalid("state and Hamiltonian mode counts differ"));
    }
    let d = sigma.modes();
    let w_sigma = williamson(sigma)?;
    let m_cov = CovarianceMatrix::new(ham.matrix().clone())?;
    let w_m = williamson(&m_cov)?;

    // reverse the mode blocks of Λ_M for the descending arrangement
    let n = 2 * d;
    let mut lambda_m_down = DMatrix::<f64>::zeros(n, n);
    for k in 0..d {
        let src = d - 1 - k;
        lambda_m_down.set_column(2 * k, &w_m.lambda.column(2 * src));
        lambda_m_down.set_column(2 * k + 1, &w_m.lambda.column(2 * src + 1));
    }

    let j = symplectic_form(d);
    Ok(-&j * lambda_m_down * w_sigma.lambda.transpose() * &j)
}

/// Single-oscillator ergotropy
/// `ℰ = ½(σ₁₁ω₀² + σ₂₂) − ω₀ √(σ₁₁σ₂₂ − σ₁₂²)`;
/// for `σ₁₂ = 0` this reduces to `½(√σ₂₂ − ω₀√σ₁₁)²`.
pub fn single_mode_ergotropy(s11: f64, s12: f64, s22: f64, omega0: f64) -> Result<f64> {
    let det = check_single_mode(s11, s12, s22, omega0)?;
    let e = 0.5 * (s11 * omega0 * omega0 + s22) - omega0 * det.sqrt();
    Ok(if e < 0.0 && e > -1e-12 * (s22 + s11 * omega0 * omega0) {
        0.0
    } else {
        e
    })
}

/// Covariance of the passive (Gibbs) state left after ergotropy extraction:
/// `√(σ₁₁σ₂₂ − σ₁₂²) · diag(1/ω₀, ω₀)`.
pub fn passive_covariance(s11: f64, s12: f64, s22: f64, omega0: f64) -> Result<CovarianceMatrix> {
    let det = check_single_mode(s11, s12, s22, omega0)?;
    let nu = det.sqrt();
    CovarianceMatrix::single_mode(nu / omega0, 0.0, nu * omega0)
}

/// Inverse temperature of the passive state,
/// `β_p = (2/ω₀) arccoth(2√(σ₁₁σ₂₂ − σ₁₂²))`; `+∞` for a pure state.
pub fn passive_inverse_temperature(s11: f64, s12: f64, s22: f64, omega0: f64) -> Result<f64> {
    let det = check_single_mode(s11, s12, s22, omega0)?;
    let x = 2.0 * det.sqrt();
    if x <= 1.0 + 1e-12 {
        return Ok(f64::INFINITY);
    }
    // arccoth(x) = ½ ln((x+1)/(x−1))
    Ok(((x + 1.0) / (x - 1.0)).ln() / omega0)
}

fn check_single_mode(s11: f64, s12: f64, s22: f64, omega0: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::invalid("omega0 must be > 0"));
    }
    if !(s11 > 0.0) || !(s22 > 0.0) {
        return Err(Error::unphysical("diagonal second moments must be positive"));
    }
    let det = s11 * s22 - s12 * s12;
    if det < 0.25 * (1.0 - 1e-9) {
        return Err(Error::unphysical(format!(
            "sigma11*sigma22 - sigma12^2 = {det:.6e} violates the Heisenberg bound 1/4"
        )));
    }
    Ok(det.max(0.25))
}

/// Von Neumann entropy (nats) of the Gaussian state,
/// `S = Σ_k [(s_k+½)ln(s_k+½) − (s_k−½)ln(s_k−½)]`.
pub fn gaussian_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    entropy_from_spectrum(&symplectic_eigenvalues(sigma)?)
}

/// Entropy from a symplectic spectrum; the `s = ½` term is 0 by continuity.
pub fn entropy_from_spectrum(spectrum: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &s in spectrum {
        if s < 0.5 - 1e-9 {
            return Err(Error::unphysical(format!(
                "symplectic eigenvalue {s} is below 1/2"
            )));
        }
        let s = s.max(0.5);
        let plus = s + 0.5;
        let minus = s - 0.5;
        total += plus * plus.ln() - if minus > 0.0 { minus * minus.ln() } else { 0.0 };
    }
    Ok(total)
}

/// Energy comparison between the two-mode canonical form
/// `σ = [[aI₂, diag(c₁, c₂)], [diag(c₁, c₂), bI₂]]` and its Williamson form,
/// for two identical modes of frequency `ω₀`. Returns
/// `(E_canon, E_min) = (ω₀(a+b), ω₀(s₁+s₂))`; `E_min ≤ E_canon` with
/// equality exactly when `c₁ = c₂`.
pub fn canonical_two_mode_energy_check(
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    omega0: f64,
) -> Result<(f64, f64)> {
    if !(omega0 > 0.0) || !(a > 0.0) || !(b > 0.0) {
        return Err(Error::invalid("a, b, omega0 must all be > 0"));
    }
    let ab = a * b;
    if c1 * c1 > ab * (1.0 + 1e-12) || c2 * c2 > ab * (1.0 + 1e-12) {
        return Err(Error::unphysical(
            "canonical form requires c1^2 <= ab and c2^2 <= ab",
        ));
    }
    let kappa = ((a * a - b * b).powi(2)
        + 4.0 * (a * a + b * b) * c1 * c2
        + 4.0 * ab * (c1 * c1 + c2 * c2))
        .max(0.0)
        .sqrt();
    let base = a * a + b * b + 2.0 * c1 * c2;
    let s1 = (0.5 * (base - kappa)).max(0.0).sqrt();
    let s2 = (0.5 * (base + kappa)).max(0.0).sqrt();
    Ok((omega0 * (a + b), omega0 * (s1 + s2)))
}

/// The two-mode canonical-form covariance in interleaved ordering.
pub fn canonical_two_mode_covariance(
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
) -> Result<CovarianceMatrix> {
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            a, 0.0, c1, 0.0, //
            0.0, a, 0.0, c2, //
            c1, 0.0, b, 0.0, //
            0.0, c2, 0.0, b,
        ],
    );
    CovarianceMatrix::new(m)
}

/// Dense matrix exponential by scaling-and-squaring around a Taylor kernel.
pub fn matrix_exp(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let norm = m.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m / 2f64.powi(squarings);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = DMatrix::<f64>::identity(n, n);
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Phase-space flow `exp(t·JM)` generated by a quadratic Hamiltonian; always
/// symplectic.
pub fn symplectic_rotation(ham: &QuadraticHamiltonian, t: f64) -> DMatrix<f64> {
    let j = symplectic_form(ham.modes());
    matrix_exp(&(t * &j * ham.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_form_squares_to_minus_identity() {
        let j = symplectic_form(3);
        assert!((&j * &j + DMatrix::<f64>::identity(6, 6)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_diagonal_single_mode() {
        let s = CovarianceMatrix::single_mode(0.7, 0.0, 0.7).unwrap();
        let v = symplectic_eigenvalues(&s).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn eigenvalue_is_sqrt_det_single_mode() {
        let s = CovarianceMatrix::single_mode(2.0, 0.5, 1.0).unwrap();
        let v = symplectic_eigenvalues(&s).unwrap();
        assert!((v[0] - 1.75f64.sqrt()).abs() < 1e-12);
        assert!((v[0] - 1.3228756555322954).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_block_diagonal_two_modes() {
        let m = DMatrix::from_diagonal(&DVector::from_column_slice(&[3.0, 3.0, 1.0, 1.0]));
        let s = CovarianceMatrix::new(m).unwrap();
        let v = symplectic_eigenvalues(&s).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_reject_indefinite_matrix() {
        let m = DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, -1.0]));
        let s = CovarianceMatrix::new(m).unwrap();
        assert!(matches!(
            symplectic_eigenvalues(&s),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn williamson_of_scalar_matrix() {
        let s = CovarianceMatrix::single_mode(1.7, 0.0, 1.7).unwrap();
        let w = williamson(&s).unwrap();
        assert!((w.spectrum[0] - 1.7).abs() < 1e-14);
        assert!(w.symplectic_residual() < 1e-12);
        assert!(w.reconstruction_residual(&s) < 1e-12);
    }

    #[test]
    fn williamson_of_thermal_free_oscillator() {
        // ω₀ = 2, T = 1: the single symplectic eigenvalue is coth(1)/2
        let s = CovarianceMatrix::thermal_free(2.0, 1.0).unwrap();
        let w = williamson(&s).unwrap();
        let expected = crate::steady_state::coth(1.0) / 2.0;
        assert!((w.spectrum[0] - expected).abs() < 1e-12);
        assert!((w.spectrum[0] - 0.6565176427496657).abs() < 1e-12);
        let direct = symplectic_eigenvalues(&s).unwrap();
        assert!((w.spectrum[0] - direct[0]).abs() < 1e-13);
    }

    #[test]
    fn williamson_two_mode_residuals() {
        let sigma = canonical_two_mode_covariance(1.4, 0.9, 0.45, -0.2).unwrap();
        let w = williamson(&sigma).unwrap();
        assert!(w.symplectic_residual() < 1e-10, "{}", w.symplectic_residual());
        assert!(
            w.reconstruction_residual(&sigma) < 1e-10,
            "{}",
            w.reconstruction_residual(&sigma)
        );
    }

    #[test]
    fn williamson_handles_degenerate_spectrum() {
        // ⊕ of two identical thermal blocks: s₁ = s₂
        let m = DMatrix::from_diagonal(&DVector::from_column_slice(&[2.0, 0.5, 2.0, 0.5]));
        let s = CovarianceMatrix::new(m).unwrap();
        let w = williamson(&s).unwrap();
        assert!((w.spectrum[0] - 1.0).abs() < 1e-12);
        assert!((w.spectrum[1] - 1.0).abs() < 1e-12);
        assert!(w.symplectic_residual() < 1e-10);
        assert!(w.reconstruction_residual(&s) < 1e-10);
    }

    #[test]
    fn ergotropy_of_vacuum_is_zero() {
        let s = CovarianceMatrix::single_mode(0.5, 0.0, 0.5).unwrap();
        let h = QuadraticHamiltonian::free_oscillator(1.0).unwrap();
        assert_eq!(gaussian_ergotropy(&s, &h).unwrap(), 0.0);
    }

    #[test]
    fn ergotropy_single_mode_example() {
        let s = CovarianceMatrix::single_mode(0.5, 0.0, 2.0).unwrap();
        let h = QuadraticHamiltonian::free_oscillator(1.0).unwrap();
        let g = gaussian_ergotropy(&s, &h).unwrap();
        assert!((g - 0.25).abs() < 1e-13);
        let g1 = single_mode_ergotropy(0.5, 0.0, 2.0, 1.0).unwrap();
        assert!((g - g1).abs() < 1e-12);
    }

    #[test]
    fn ergotropy_two_mode_example() {
        let sm = DMatrix::from_diagonal(&DVector::from_column_slice(&[3.0, 3.0, 1.0, 1.0]));
        let hm = DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 1.0, 4.0, 1.0]));
        let s = CovarianceMatrix::new(sm).unwrap();
        let h = QuadraticHamiltonian::new(hm).unwrap();
        let g = gaussian_ergotropy(&s, &h).unwrap();
        assert!((g - 0.5).abs() < 1e-12, "g = {g}");
    }

    #[test]
    fn optimal_symplectic_reaches_bound() {
        let sm = DMatrix::from_diagonal(&DVector::from_column_slice(&[3.0, 3.0, 1.0, 1.0]));
        let hm = DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 1.0, 4.0, 1.0]));
        let s = CovarianceMatrix::new(sm).unwrap();
        let h = QuadraticHamiltonian::new(hm).unwrap();
        let lam = optimal_symplectic(&s, &h).unwrap();
        let j = symplectic_form(2);
        assert!((&lam * &j * lam.transpose() - &j).norm() < 1e-10);
        let moved = CovarianceMatrix::new(&lam * s.entries() * lam.transpose()).unwrap();
        let final_energy = h.mean_energy(&moved);
        assert!((final_energy - 5.0).abs() < 1e-10, "E = {final_energy}");
    }

    #[test]
    fn optimal_symplectic_single_mode() {
        let s = CovarianceMatrix::single_mode(0.5, 0.0, 2.0).unwrap();
        let h = QuadraticHamiltonian::free_oscillator(1.0).unwrap();
        let lam = optimal_symplectic(&s, &h).unwrap();
        let moved = CovarianceMatrix::new(&lam * s.entries() * lam.transpose()).unwrap();
        assert!((h.mean_energy(&moved) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn passive_state_is_fixed_point_of_extraction() {
        let s = CovarianceMatrix::single_mode(1.0, 0.0, 1.0).unwrap();
        let h = QuadraticHamiltonian::free_oscillator(1.0).unwrap();
        let lam = optimal_symplectic(&s, &h).unwrap();
        let moved = CovarianceMatrix::new(&lam * s.entries() * lam.transpose()).unwrap();
        assert!((h.mean_energy(&moved) - h.mean_energy(&s)).abs() < 1e-12);
    }

    #[test]
    fn equipartition_has_zero_ergotropy() {
        let w0 = 1.7;
        let s11 = 0.9;
        assert_eq!(
            single_mode_ergotropy(s11, 0.0, w0 * w0 * s11, w0).unwrap(),
            0.0
        );
    }

    #[test]
    fn thermal_state_is_passive() {
        let s = CovarianceMatrix::thermal_free(2.0, 0.7).unwrap();
        let e = s.entries();
        let g = single_mode_ergotropy(e[(0, 0)], e[(0, 1)], e[(1, 1)], 2.0).unwrap();
        assert!(g.abs() < 1e-12);
    }

    #[test]
    fn unphysical_covariance_is_rejected() {
        assert!(matches!(
            single_mode_ergotropy(0.3, 0.0, 0.3, 1.0),
            Err(Error::UnphysicalCovariance { .. })
        ));
    }

    #[test]
    fn passive_covariance_examples() {
        let v = passive_covariance(0.5, 0.0, 0.5, 1.0).unwrap();
        assert!((v.entries()[(0, 0)] - 0.5).abs() < 1e-14);
        assert!((v.entries()[(1, 1)] - 0.5).abs() < 1e-14);
        let p = passive_covariance(0.5, 0.0, 2.0, 1.0).unwrap();
        assert!((p.entries()[(0, 0)] - 1.0).abs() < 1e-13);
        assert!((p.entries()[(1, 1)] - 1.0).abs() < 1e-13);
        let e = p.entries();
        let g = single_mode_ergotropy(e[(0, 0)], e[(0, 1)], e[(1, 1)], 1.0).unwrap();
        assert!(g.abs() < 1e-12);
    }

    #[test]
    fn passive_temperature_values() {
        // √det = 1 at ω₀ = 1: β_p = 2 arccoth(2) = ln 3
        let b = passive_inverse_temperature(0.5, 0.0, 2.0, 1.0).unwrap();
        assert!((b - 3f64.ln()).abs() < 1e-12);
        assert!((b - 1.0986122886681098).abs() < 1e-12);
        let b0 = passive_inverse_temperature(0.5, 0.0, 0.5, 1.0).unwrap();
        assert!(b0.is_infinite());
    }

    #[test]
    fn passive_temperature_inverts_thermal_state() {
        let (w0, t) = (2.0, 0.37);
        let s = CovarianceMatrix::thermal_free(w0, t).unwrap();
        let e = s.entries();
        let b = passive_inverse_temperature(e[(0, 0)], e[(0, 1)], e[(1, 1)], w0).unwrap();
        assert!((b - 1.0 / t).abs() < 1e-10, "beta = {b}");
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_from_spectrum(&[0.5]).unwrap(), 0.0);
        let s1 = entropy_from_spectrum(&[1.0]).unwrap();
        let expected = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert!((s1 - expected).abs() < 1e-14);
        assert!((s1 - 0.9547712524422623).abs() < 1e-12);
    }

    #[test]
    fn entropy_is_preserved_by_passive_map() {
        let s = CovarianceMatrix::single_mode(1.3, 0.35, 2.2).unwrap();
        let e = s.entries();
        let p = passive_covariance(e[(0, 0)], e[(0, 1)], e[(1, 1)], 1.4).unwrap();
        let se = gaussian_entropy(&s).unwrap();
        let sp = gaussian_entropy(&p).unwrap();
        assert!((se - sp).abs() < 1e-10);
    }

    #[test]
    fn canonical_two_mode_equality_iff_equal_correlations() {
        let (ec, em) = canonical_two_mode_energy_check(1.0, 1.0, 0.3, 0.3, 1.0).unwrap();
        assert!((ec - 2.0).abs() < 1e-14);
        assert!((ec - em).abs() < 1e-10);

        let (ec2, em2) = canonical_two_mode_energy_check(1.0, 1.0, 0.3, -0.3, 1.0).unwrap();
        assert!((ec2 - 2.0).abs() < 1e-14);
        assert!(em2 < ec2 - 1e-3, "em = {em2} not strictly below {ec2}");
        // closed-form bound: s₁+s₂ = √((a+b)² − (c₁−c₂)²) at c₂ = −c₁
        let bound = (4.0f64 - 0.36).sqrt();
        assert!((em2 - bound).abs() < 1e-10);

        let (ec0, em0) = canonical_two_mode_energy_check(1.2, 0.9, 0.0, 0.0, 1.0).unwrap();
        assert!((ec0 - em0).abs() < 1e-12);
    }

    #[test]
    fn canonical_two_mode_cross_check_with_williamson() {
        let (a, b, c1, c2, w0) = (1.1, 1.4, 0.5, -0.2, 1.3);
        let (_, em) = canonical_two_mode_energy_check(a, b, c1, c2, w0).unwrap();
        let sigma = canonical_two_mode_covariance(a, b, c1, c2).unwrap();
        let s = symplectic_eigenvalues(&sigma).unwrap();
        assert!((w0 * (s[0] + s[1]) - em).abs() < 1e-10);
        // for M = ω₀·I₄ the minimal energy is exactly ω₀(s₁+s₂)
        let ham_iso = QuadraticHamiltonian::new(DMatrix::<f64>::identity(4, 4) * w0).unwrap();
        let g_iso = gaussian_ergotropy(&sigma, &ham_iso).unwrap();
        assert!((ham_iso.mean_energy(&sigma) - g_iso - em).abs() < 1e-10);
    }

    #[test]
    fn matrix_exp_of_rotation_generator() {
        // exp(θ J₁) is the rotation by θ
        let theta = 0.6f64;
        let g = DMatrix::from_row_slice(2, 2, &[0.0, theta, -theta, 0.0]);
        let r = matrix_exp(&g);
        assert!((r[(0, 0)] - theta.cos()).abs() < 1e-13);
        assert!((r[(0, 1)] - theta.sin()).abs() < 1e-13);
    }

    #[test]
    fn symplectic_rotation_is_symplectic() {
        let h = QuadraticHamiltonian::free_oscillators(2, 1.5).unwrap();
        let r = symplectic_rotation(&h, 0.83);
        let j = symplectic_form(2);
        assert!((&r * &j * r.transpose() - &j).norm() < 1e-12);
    }
}
