//! Dense Hermitian linear algebra.
//!
//! Every measure evaluation reduces to one of two trace functionals of a
//! density matrix `rho` and a diagonal state `sigma`:
//!
//! ```text
//! Q(sigma)  = tr[(rho^c sigma rho^c)^alpha]      (maximized by C_s1)
//! Q~(sigma) = tr[(sigma^c rho sigma^c)^alpha]    (optimized by C_s)
//! ```
//!
//! with `c = (1 - alpha) / (2 alpha)`. All fractional powers go through a
//! Hermitian eigendecomposition and act on the support only (`0^p := 0`).
//! Eigenvalues below `1e-12 * lambda_max` count as zero.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::entropy::Alpha;
use crate::error::{CoherenceError, Result};
use crate::states::{DensityMatrix, ProbVector};

/// Dense complex square matrix in the reference basis.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Max-abs tolerance on `M - M^dagger`.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Negative eigenvalues down to this (relative) size are clamped to zero.
pub const NEG_EIGEN_TOL: f64 = 1e-10;
/// Relative support cutoff.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Absolute cutoff below which an eigenvalue is treated as zero.
    pub fn cutoff(&self) -> f64 {
        SUPPORT_CUTOFF * self.values.last().copied().unwrap_or(0.0).max(0.0)
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        weighted_outer(&self.vectors, &weights)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }

    /// Fails with `NotPSD` when an eigenvalue is below `-1e-10 * lambda_max`;
    /// smaller negative values are clamped to zero in the returned spectrum.
    pub fn psd_spectrum(&self) -> Result<Vec<f64>> {
        let scale = self.max_abs_eigenvalue();
        let mut out = Vec::with_capacity(self.values.len());
        for &l in &self.values {
            if l < -NEG_EIGEN_TOL * scale.max(f64::MIN_POSITIVE) && l < -NEG_EIGEN_TOL {
                return Err(CoherenceError::NotPSD(l));
            }
            out.push(l.max(0.0));
        }
        Ok(out)
    }
}

/// `V diag(w) V^dagger` skipping zero weights.
fn weighted_outer(v: &ComplexMatrix, w: &[f64]) -> ComplexMatrix {
    let n = v.nrows();
    let mut scaled = v.clone();
    for (k, &wk) in w.iter().enumerate() {
        let mut col = scaled.column_mut(k);
        if wk == 0.0 {
            col.fill(Complex64::new(0.0, 0.0));
        } else {
            col *= Complex64::new(wk, 0.0);
        }
    }
    let mut out = ComplexMatrix::zeros(n, n);
    out.gemm(
        Complex64::new(1.0, 0.0),
        &scaled,
        &v.adjoint(),
        Complex64::new(0.0, 0.0),
    );
    out
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn real_diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (j, &v) in values.iter().enumerate() {
        m[(j, j)] = Complex64::new(v, 0.0);
    }
    m
}

/// Max-abs entry of `M - M^dagger`.
pub fn hermitian_residual(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(M + M^dagger) / 2`.
pub fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Frobenius norm.
pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(CoherenceError::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(M + M^dagger)/2` after the Hermiticity
/// check so accumulated rounding asymmetry does not leak into the spectrum.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEigen> {
    check_square(m)?;
    let residual = hermitian_residual(m);
    if residual > HERMITIAN_TOL {
        return Err(CoherenceError::NotHermitian(residual));
    }
    Ok(herm_eig_unchecked(hermitize(m)))
}

fn herm_eig_unchecked(sym: ComplexMatrix) -> HermEigen {
    let n = sym.nrows();
    if n == 1 {
        return HermEigen {
            values: vec![sym[(0, 0)].re],
            vectors: identity(1),
        };
    }
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    HermEigen { values, vectors }
}

/// `M^p` on the support of a PSD matrix. Zero eigenvalues map to zero for
/// every `p`, so `M^0` is the support projector.
pub fn frac_power(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    psd_power(&eig, p)
}

fn psd_power(eig: &HermEigen, p: f64) -> Result<ComplexMatrix> {
    let spectrum = eig.psd_spectrum()?;
    let tau = eig.cutoff();
    let w: Vec<f64> = spectrum
        .iter()
        .map(|&l| if l > tau { l.powf(p) } else { 0.0 })
        .collect();
    Ok(weighted_outer(&eig.vectors, &w))
}

/// Support projector of a PSD matrix.
pub fn support_projector(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    frac_power(m, 0.0)
}

/// `sum_{lambda > tau} lambda^alpha` of a PSD matrix, with the optional
/// diagonal of `M^alpha` (needed for gradients).
fn trace_power(m: &ComplexMatrix, alpha: f64) -> Result<(f64, HermEigen)> {
    let eig = herm_eig_unchecked(hermitize(m));
    let spectrum = eig.psd_spectrum()?;
    let tau = eig.cutoff();
    let value = spectrum
        .iter()
        .filter(|&&l| l > tau)
        .map(|&l| l.powf(alpha))
        .sum();
    Ok((value, eig))
}

/// `c = (1 - alpha) / (2 alpha)`.
pub fn sandwich_exponent(alpha: f64) -> f64 {
    (1.0 - alpha) / (2.0 * alpha)
}

fn check_alpha_rho_side(alpha: f64) -> Result<()> {
    if !(0.5..1.0).contains(&alpha) {
        return Err(CoherenceError::AlphaOutOfRange {
            value: alpha,
            regime: "[1/2, 1)",
        });
    }
    Ok(())
}

fn check_alpha_sigma_side(alpha: f64) -> Result<()> {
    if !(alpha >= 0.5 && alpha.is_finite() && alpha != 1.0) {
        return Err(CoherenceError::AlphaOutOfRange {
            value: alpha,
            regime: "[1/2, 1) U (1, inf)",
        });
    }
    Ok(())
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(CoherenceError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `Q(sigma) = tr[(rho^c sigma rho^c)^alpha]` with `rho^c` precomputed, so
/// repeated evaluation over many diagonal `sigma` costs one eigensolve each.
#[derive(Debug, Clone)]
pub struct RhoSandwich {
    root: ComplexMatrix,
    alpha: f64,
}

impl RhoSandwich {
    pub fn new(rho: &DensityMatrix, alpha: f64) -> Result<Self> {
        check_alpha_rho_side(alpha)?;
        let root = frac_power(rho.matrix(), sandwich_exponent(alpha))?;
        Ok(Self { root, alpha })
    }

    pub fn dim(&self) -> usize {
        self.root.nrows()
    }

    fn inner(&self, sigma: &[f64]) -> Result<ComplexMatrix> {
        check_len(self.dim(), sigma.len())?;
        let mut scaled = self.root.clone();
        for (j, &s) in sigma.iter().enumerate() {
            scaled.column_mut(j).scale_mut(s);
        }
        Ok(&scaled * &self.root)
    }

    pub fn value(&self, sigma: &[f64]) -> Result<f64> {
        let a = self.inner(sigma)?;
        Ok(trace_power(&a, self.alpha)?.0)
    }

    /// Gradient `dQ/dsigma_j = alpha <j| rho^c A^(alpha-1) rho^c |j>`, with
    /// the negative power taken on the support of `A = rho^c sigma rho^c`.
    pub fn value_and_grad(&self, sigma: &[f64]) -> Result<(f64, Vec<f64>)> {
        let a = self.inner(sigma)?;
        let (value, eig) = trace_power(&a, self.alpha)?;
        let spectrum = eig.psd_spectrum()?;
        let tau = eig.cutoff();
        let w: Vec<f64> = spectrum
            .iter()
            .map(|&l| {
                if l > tau {
                    l.powf(self.alpha - 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        let neg = weighted_outer(&eig.vectors, &w);
        let g = &self.root * neg * &self.root;
        let grad = (0..self.dim()).map(|j| self.alpha * g[(j, j)].re).collect();
        Ok((value, grad))
    }
}

/// `Q~(sigma) = tr[(sigma^c rho sigma^c)^alpha]`.
#[derive(Debug, Clone)]
pub struct SigmaSandwich {
    rho: ComplexMatrix,
    alpha: f64,
    /// Basis indices with `<j|rho|j>` above the support cutoff.
    support: Vec<bool>,
}

impl SigmaSandwich {
    pub fn new(rho: &DensityMatrix, alpha: f64) -> Result<Self> {
        check_alpha_sigma_side(alpha)?;
        let m = rho.matrix().clone();
        let diag: Vec<f64> = (0..m.nrows()).map(|j| m[(j, j)].re).collect();
        let dmax = diag.iter().cloned().fold(0.0, f64::max);
        let support = diag.iter().map(|&d| d > SUPPORT_CUTOFF * dmax).collect();
        Ok(Self {
            rho: m,
            alpha,
            support,
        })
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn scales(&self, sigma: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim(), sigma.len())?;
        let c = sandwich_exponent(self.alpha);
        let smax = sigma.iter().cloned().fold(0.0, f64::max);
        let tau = SUPPORT_CUTOFF * smax;
        let mut out = Vec::with_capacity(sigma.len());
        for (j, &s) in sigma.iter().enumerate() {
            if s > tau {
                out.push(s.powf(c));
            } else {
                if self.alpha > 1.0 && self.support[j] {
                    return Err(CoherenceError::SupportViolation(format!(
                        "sigma_{j} = {s:e} but <{j}|rho|{j}> > 0"
                    )));
                }
                out.push(0.0);
            }
        }
        Ok(out)
    }

    fn inner(&self, scales: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, k| self.rho[(i, k)] * (scales[i] * scales[k]))
    }

    pub fn value(&self, sigma: &[f64]) -> Result<f64> {
        let s = self.scales(sigma)?;
        Ok(trace_power(&self.inner(&s), self.alpha)?.0)
    }

    /// Gradient `dQ~/dsigma_j = (1 - alpha) <j|B^alpha|j> / sigma_j` with
    /// `B = sigma^c rho sigma^c`; valid for strictly positive `sigma`.
    pub fn value_and_grad(&self, sigma: &[f64]) -> Result<(f64, Vec<f64>)> {
        if let Some(&bad) = sigma.iter().find(|&&s| s <= 0.0) {
            return Err(CoherenceError::InvalidProbVector(format!(
                "gradient needs an interior point, got entry {bad}"
            )));
        }
        let s = self.scales(sigma)?;
        let (value, eig) = trace_power(&self.inner(&s), self.alpha)?;
        let spectrum = eig.psd_spectrum()?;
        let tau = eig.cutoff();
        let w: Vec<f64> = spectrum
            .iter()
            .map(|&l| if l > tau { l.powf(self.alpha) } else { 0.0 })
            .collect();
        let pow = weighted_outer(&eig.vectors, &w);
        let grad = sigma
            .iter()
            .enumerate()
            .map(|(j, &sj)| (1.0 - self.alpha) * pow[(j, j)].re / sj)
            .collect();
        Ok((value, grad))
    }
}

/// `tr[(rho^c sigma rho^c)^alpha]` for `alpha` in `[1/2, 1)`; lies in `[0, 1]`
/// with equality at 1 iff `sigma` equals `rho`.
pub fn q_rho_sandwich(rho: &DensityMatrix, sigma: &ProbVector, alpha: Alpha) -> Result<f64> {
    check_len(rho.dim(), sigma.dim())?;
    RhoSandwich::new(rho, alpha.value())?.value(sigma.as_slice())
}

/// `tr[(sigma^c rho sigma^c)^alpha]` for `alpha` in `[1/2, 1) U (1, inf)`.
/// For `alpha > 1` the support of `rho` must lie inside the support of `sigma`.
pub fn q_sigma_sandwich(sigma: &ProbVector, rho: &DensityMatrix, alpha: Alpha) -> Result<f64> {
    check_len(rho.dim(), sigma.dim())?;
    SigmaSandwich::new(rho, alpha.value())?.value(sigma.as_slice())
}

/// Uhlmann fidelity `tr[(sigma^1/2 rho sigma^1/2)^1/2]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_len(rho.dim(), sigma.dim())?;
    let root = frac_power(sigma.matrix(), 0.5)?;
    let inner = &root * rho.matrix() * &root;
    Ok(trace_power(&inner, 0.5)?.0)
}
