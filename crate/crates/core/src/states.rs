//! Density matrices, pure states and diagonal (incoherent) states in the
//! fixed reference basis, plus seeded random generators for each.
//!
//! Random generation uses `ChaCha8Rng` seeded through
//! [`SeedableRng::seed_from_u64`]; outputs are bit-identical across runs and
//! platforms for the same seed.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{CoherenceError, Result};
use crate::matcore::{self, ComplexMatrix};

const TRACE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-10;
const PROB_SUM_TOL: f64 = 1e-10;

/// Seed for the portable generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Deterministic child seed for stream `index` (SplitMix64 finalizer).
    pub fn derive(self, index: u64) -> RngSeed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }
}

impl From<u64> for RngSeed {
    fn from(v: u64) -> Self {
        RngSeed(v)
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and stores the Hermitian part of `mat`.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let eig = matcore::herm_eig(&mat)?;
        eig.psd_spectrum()?;
        let tr = matcore::trace(&mat);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(CoherenceError::InvalidTrace(tr.re));
        }
        Ok(Self {
            mat: matcore::hermitize(&mat),
        })
    }

    /// Rescales a nonzero PSD matrix to unit trace before validating.
    pub fn from_unnormalized(mat: ComplexMatrix) -> Result<Self> {
        let tr = matcore::trace(&mat).re;
        if !(tr > 0.0) {
            return Err(CoherenceError::InvalidTrace(tr));
        }
        Self::new(mat / Complex64::new(tr, 0.0))
    }

    pub fn from_diag(probs: &ProbVector) -> Self {
        Self {
            mat: matcore::real_diag(probs.as_slice()),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Sum of `|rho_jk|` over `j != k`.
    pub fn offdiag_mass(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.mat[(i, j)].norm();
                }
            }
        }
        s
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.mat[(i, j)].norm() <= tol))
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        matcore::herm_eig(&self.mat)
            .map(|e| e.values)
            .unwrap_or_default()
    }

    /// Relabels basis indices: new index `perm[j]` carries old index `j`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        if perm.len() != n {
            return Err(CoherenceError::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self.mat[(i, j)];
            }
        }
        Ok(Self { mat: out })
    }

    /// Convex combination `sum_n w_n rho_n`; weights must form a probability vector.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        ProbVector::new(weights.to_vec())?;
        let first = states.first().ok_or(CoherenceError::InvalidDimension(0))?;
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != first.dim() {
                return Err(CoherenceError::DimensionMismatch {
                    expected: first.dim(),
                    got: s.dim(),
                });
            }
            acc += s.matrix() * Complex64::new(*w, 0.0);
        }
        Self::new(acc)
    }
}

/// Unit vector of amplitudes in the reference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(CoherenceError::InvalidDimension(0));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(CoherenceError::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amps.is_empty() || !(norm > 0.0) {
            return Err(CoherenceError::NotNormalized(norm));
        }
        Self::new(amps.into_iter().map(|a| a / norm).collect())
    }

    /// Basis vector `|index>` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 || index >= dim {
            return Err(CoherenceError::InvalidDimension(dim));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|<j|psi>|^2` for every basis index.
    pub fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn to_density(&self) -> DensityMatrix {
        let v = DVector::from_vec(self.amps.clone());
        DensityMatrix {
            mat: matcore::hermitize(&(&v * v.adjoint())),
        }
    }
}

/// Probability vector; the diagonal of an incoherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(CoherenceError::InvalidDimension(0));
        }
        if let Some(&bad) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(CoherenceError::InvalidProbVector(format!(
                "entry {bad} is negative or non-finite"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(CoherenceError::InvalidProbVector(format!(
                "entries sum to {sum}"
            )));
        }
        Ok(Self { probs })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(CoherenceError::InvalidDimension(0));
        }
        Ok(Self {
            probs: vec![1.0 / dim as f64; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state drawn from `rng`.
pub fn random_pure_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return Ok(PureState {
                amps: amps.into_iter().map(|a| a / norm).collect(),
            });
        }
    }
}

/// Haar-random pure state (complex Gaussian vector, normalized).
pub fn random_pure(dim: usize, seed: RngSeed) -> Result<PureState> {
    random_pure_from(&mut seed.rng(), dim)
}

/// `G G^dagger / tr(G G^dagger)` for a `dim x rank` complex Gaussian `G`.
pub fn random_density_from<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    rank: usize,
) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    if rank == 0 || rank > dim {
        return Err(CoherenceError::InvalidRank { rank, dim });
    }
    let g = ComplexMatrix::from_fn(dim, rank, |_, _| complex_normal(rng));
    let gg = &g * g.adjoint();
    let tr = matcore::trace(&gg).re;
    let mat = matcore::hermitize(&(gg / Complex64::new(tr, 0.0)));
    Ok(DensityMatrix { mat })
}

pub fn random_density(dim: usize, rank: usize, seed: RngSeed) -> Result<DensityMatrix> {
    random_density_from(&mut seed.rng(), dim, rank)
}

/// Flat-Dirichlet probability vector.
pub fn random_probs_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<ProbVector> {
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    let draws: Vec<f64> = (0..dim)
        .map(|_| rng.sample::<f64, _>(Exp1) + 1e-300)
        .collect();
    let total: f64 = draws.iter().sum();
    Ok(ProbVector {
        probs: draws.into_iter().map(|x| x / total).collect(),
    })
}

/// Random incoherent state with flat-Dirichlet diagonal.
pub fn random_incoherent(dim: usize, seed: RngSeed) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_diag(&random_probs_from(
        &mut seed.rng(),
        dim,
    )?))
}

/// Diagonal of `rho` in the reference basis.
pub fn dephase(rho: &DensityMatrix) -> ProbVector {
    let mut probs: Vec<f64> = (0..rho.dim())
        .map(|j| rho.entry(j, j).re.max(0.0))
        .collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    ProbVector { probs }
}

/// `p1 rho1 (+) p2 rho2` with block 1 occupying the leading indices.
pub fn block_direct_sum(
    p1: f64,
    rho1: &DensityMatrix,
    p2: f64,
    rho2: &DensityMatrix,
) -> Result<DensityMatrix> {
    if !(p1 > 0.0 && p2 > 0.0 && (p1 + p2 - 1.0).abs() <= 1e-10) {
        return Err(CoherenceError::InvalidWeights(p1, p2));
    }
    let (d1, d2) = (rho1.dim(), rho2.dim());
    let mut mat = ComplexMatrix::zeros(d1 + d2, d1 + d2);
    mat.view_mut((0, 0), (d1, d1))
        .copy_from(&(rho1.matrix() * Complex64::new(p1, 0.0)));
    mat.view_mut((d1, d1), (d2, d2))
        .copy_from(&(rho2.matrix() * Complex64::new(p2, 0.0)));
    Ok(DensityMatrix { mat })
}

/// All amplitudes `1/sqrt(dim)`.
pub fn maximally_coherent(dim: usize) -> Result<PureState> {
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    Ok(PureState { amps: vec![a; dim] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn random_pure_examples() {
        let one = random_pure(1, RngSeed(3)).unwrap();
        assert_abs_diff_eq!(one.amplitudes()[0].norm(), 1.0, epsilon = 1e-14);
        assert_eq!(
            random_pure(4, RngSeed(9)).unwrap(),
            random_pure(4, RngSeed(9)).unwrap()
        );
        assert_abs_diff_eq!(
            random_pure(4, RngSeed(10)).unwrap().norm(),
            1.0,
            epsilon = 1e-10
        );
        assert!(matches!(
            random_pure(0, RngSeed(1)),
            Err(CoherenceError::InvalidDimension(0))
        ));
    }

    #[test]
    fn random_density_examples() {
        let r1 = random_density(3, 1, RngSeed(5)).unwrap();
        let ev = r1.eigenvalues();
        assert!(ev[1].abs() < 1e-10);
        assert_abs_diff_eq!(ev[2], 1.0, epsilon = 1e-10);

        let r2 = random_density(2, 2, RngSeed(6)).unwrap();
        DensityMatrix::new(r2.matrix().clone()).unwrap();
        assert_abs_diff_eq!(matcore::trace(r2.matrix()).re, 1.0, epsilon = 1e-12);

        assert!(matches!(
            random_density(2, 3, RngSeed(1)),
            Err(CoherenceError::InvalidRank { .. })
        ));
        assert!(matches!(
            random_density(2, 0, RngSeed(1)),
            Err(CoherenceError::InvalidRank { .. })
        ));
    }

    #[test]
    fn dephase_examples() {
        let plus = maximally_coherent(2).unwrap().to_density();
        let d = dephase(&plus);
        assert_abs_diff_eq!(d.as_slice()[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.as_slice()[1], 0.5, epsilon = 1e-15);

        let p = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(dephase(&DensityMatrix::from_diag(&p)), p);
    }

    #[test]
    fn direct_sum_examples() {
        let one = DensityMatrix::new(ComplexMatrix::from_element(1, 1, c(1.0))).unwrap();
        let s = block_direct_sum(0.5, &one, 0.5, &one).unwrap();
        assert_eq!(s.matrix(), &matcore::real_diag(&[0.5, 0.5]));

        let plus = maximally_coherent(2).unwrap().to_density();
        let s = block_direct_sum(0.3, &plus, 0.7, &one).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(s.entry(i, j).re, 0.15, epsilon = 1e-15);
            }
            assert_eq!(s.entry(i, 2), c(0.0));
            assert_eq!(s.entry(2, i), c(0.0));
        }
        assert_abs_diff_eq!(s.entry(2, 2).re, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(matcore::trace(s.matrix()).re, 1.0, epsilon = 1e-12);

        assert!(matches!(
            block_direct_sum(0.3, &one, 0.6, &one),
            Err(CoherenceError::InvalidWeights(..))
        ));
        assert!(block_direct_sum(0.0, &one, 1.0, &one).is_err());
    }

    #[test]
    fn maximally_coherent_examples() {
        let m2 = maximally_coherent(2).unwrap();
        assert_abs_diff_eq!(
            m2.amplitudes()[0].re,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        let m4 = maximally_coherent(4).unwrap();
        for p in m4.populations() {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(m4.norm(), 1.0, epsilon = 1e-15);
        assert!(maximally_coherent(0).is_err());
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(matches!(
            DensityMatrix::new(matcore::real_diag(&[0.5, 0.6])),
            Err(CoherenceError::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityMatrix::new(matcore::real_diag(&[1.5, -0.5])),
            Err(CoherenceError::NotPSD(_))
        ));
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.5, -0.5]).is_err());
        assert!(PureState::new(vec![c(1.0), c(1.0)]).is_err());
    }

    #[test]
    fn generators_respect_invariants_over_many_seeds() {
        for s in 0..500u64 {
            let seed = RngSeed(s);
            let d = 1 + (s as usize % 4);
            let psi = random_pure(d, seed).unwrap();
            assert!((psi.norm() - 1.0).abs() <= 1e-10);
            let rank = 1 + (s as usize / 4) % d;
            let rho = random_density(d, rank, seed).unwrap();
            DensityMatrix::new(rho.matrix().clone()).unwrap();
            ProbVector::new(dephase(&rho).into_vec()).unwrap();
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let root = RngSeed(42);
        assert_ne!(root.derive(0), root.derive(1));
        assert_eq!(root.derive(7), RngSeed(42).derive(7));
    }
}
