//! CPTP maps as Kraus sets, incoherent operations, and outcome-wise
//! (selective) application.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{CoherenceError, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::states::{random_pure_from, DensityMatrix, RngSeed};

/// Frobenius tolerance on `sum_n K_n^dagger K_n - I`.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Entries at or below this modulus count as structural zeros.
pub const STRUCTURAL_ZERO: f64 = 1e-12;
/// Outcomes with smaller probability are dropped by [`selective_outcomes`].
pub const OUTCOME_CUTOFF: f64 = 1e-12;

/// Square Kraus decomposition of a CPTP map.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    incoherent: bool,
}

impl KrausSet {
    /// Validates completeness, and the column structure when `incoherent` is set.
    pub fn new(kraus: Vec<ComplexMatrix>, incoherent: bool) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| CoherenceError::InvalidKraus("empty Kraus list".into()))?;
        let dim = first.nrows();
        if dim == 0 {
            return Err(CoherenceError::InvalidDimension(0));
        }
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(CoherenceError::InvalidKraus(format!(
                    "operator of shape {}x{} in a {dim}-dimensional set",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        let set = Self {
            dim,
            kraus,
            incoherent,
        };
        let residual = set.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(CoherenceError::InvalidKraus(format!(
                "completeness residual {residual:e}"
            )));
        }
        if incoherent && !is_incoherent_kraus(&set, STRUCTURAL_ZERO) {
            return Err(CoherenceError::InvalidKraus(
                "flagged incoherent but some column has several nonzero entries".into(),
            ));
        }
        Ok(set)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(vec![matcore::identity(dim)], true)
    }

    /// Full dephasing `{|j><j|}`.
    pub fn dephasing(dim: usize) -> Result<Self> {
        let ops = (0..dim)
            .map(|j| {
                let mut m = ComplexMatrix::zeros(dim, dim);
                m[(j, j)] = Complex64::new(1.0, 0.0);
                m
            })
            .collect();
        Self::new(ops, true)
    }

    /// Unitary relabeling `|j> -> |perm[j]>`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (j, &target) in perm.iter().enumerate() {
            if target >= n {
                return Err(CoherenceError::InvalidKraus(format!(
                    "bad permutation {perm:?}"
                )));
            }
            m[(target, j)] = Complex64::new(1.0, 0.0);
        }
        Self::new(vec![m], true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn is_flagged_incoherent(&self) -> bool {
        self.incoherent
    }

    pub fn completeness_residual(&self) -> f64 {
        let mut acc = -matcore::identity(self.dim);
        for k in &self.kraus {
            acc += k.adjoint() * k;
        }
        matcore::frobenius(&acc)
    }
}

fn check_dims(k: &KrausSet, rho: &DensityMatrix) -> Result<()> {
    if k.dim() != rho.dim() {
        return Err(CoherenceError::DimensionMismatch {
            expected: k.dim(),
            got: rho.dim(),
        });
    }
    Ok(())
}

/// `sum_n K_n rho K_n^dagger`.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_dims(k, rho)?;
    let mut out = ComplexMatrix::zeros(k.dim(), k.dim());
    for op in k.operators() {
        out += op * rho.matrix() * op.adjoint();
    }
    DensityMatrix::new(matcore::hermitize(&out))
}

/// At most one entry with modulus above `tol` in every column of every
/// Kraus operator. Equivalent to each `K_n` mapping diagonal states to
/// diagonal states.
pub fn is_incoherent_kraus(k: &KrausSet, tol: f64) -> bool {
    k.operators().iter().all(|op| {
        op.column_iter()
            .all(|col| col.iter().filter(|z| z.norm() > tol).count() <= 1)
    })
}

/// Behavioral form of [`is_incoherent_kraus`]: every `K_n |j><j| K_n^dagger`
/// is diagonal up to `tol`.
pub fn preserves_diagonals(k: &KrausSet, tol: f64) -> bool {
    let n = k.dim();
    k.operators().iter().all(|op| {
        (0..n).all(|j| {
            let col = op.column(j);
            let out = col * col.adjoint();
            (0..n).all(|a| (0..n).all(|b| a == b || out[(a, b)].norm() <= tol))
        })
    })
}

/// Random incoherent operation `K_n = sum_j c_nj |f_n(j)><j|`.
///
/// Target rows `f_n(j)` are uniform. Completeness needs
/// `sum_{n: f_n(j) = f_n(k)} conj(c_nj) c_nk = 0` for `j != k`, so each
/// coefficient column `c_k` is a Gaussian vector projected off the
/// constraints left by earlier columns. If the constraints leave no room
/// the rows of column `k` are redrawn, falling back to rows unused by
/// earlier columns.
pub fn random_incoherent_channel_from<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    n_kraus: usize,
) -> Result<KrausSet> {
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    if n_kraus == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    const ATTEMPTS: usize = 32;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(dim);
    let mut coeffs: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut placed = None;
        for attempt in 0..=ATTEMPTS {
            let f: Vec<usize> = if attempt < ATTEMPTS {
                (0..n_kraus).map(|_| rng.random_range(0..dim)).collect()
            } else {
                (0..n_kraus)
                    .map(|n| {
                        (0..dim)
                            .find(|r| rows.iter().all(|fj| fj[n] != *r))
                            .expect("fewer than dim earlier columns")
                    })
                    .collect()
            };
            let constraints: Vec<Vec<Complex64>> = (0..k)
                .map(|j| {
                    (0..n_kraus)
                        .map(|n| {
                            if rows[j][n] == f[n] {
                                coeffs[j][n]
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        })
                        .collect()
                })
                .collect();
            if let Some(c) = orthogonal_unit_vector(rng, n_kraus, &constraints) {
                placed = Some((f, c));
                break;
            }
        }
        let (f, c) = placed.expect("fallback rows leave no constraints");
        rows.push(f);
        coeffs.push(c);
    }
    let mut ops = vec![ComplexMatrix::zeros(dim, dim); n_kraus];
    for j in 0..dim {
        for (n, op) in ops.iter_mut().enumerate() {
            op[(rows[j][n], j)] = coeffs[j][n];
        }
    }
    KrausSet::new(ops, true)
}

/// Random unit vector orthogonal to every vector in `against`, or `None`
/// when they span the space.
fn orthogonal_unit_vector<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    against: &[Vec<Complex64>],
) -> Option<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for w in against {
        let mut v = w.clone();
        for _pass in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(b).for_each(|(y, x)| *y -= proj * x);
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    if basis.len() >= len {
        return None;
    }
    let mut g = random_pure_from(rng, len).ok()?.amplitudes().to_vec();
    for _pass in 0..2 {
        for b in &basis {
            let proj: Complex64 = b.iter().zip(&g).map(|(x, y)| x.conj() * y).sum();
            g.iter_mut().zip(b).for_each(|(y, x)| *y -= proj * x);
        }
    }
    let norm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (norm > 1e-6).then(|| g.into_iter().map(|z| z / norm).collect())
}

pub fn random_incoherent_channel(dim: usize, n_kraus: usize, seed: RngSeed) -> Result<KrausSet> {
    random_incoherent_channel_from(&mut seed.rng(), dim, n_kraus)
}

/// Random isometry `V: C^d -> C^(n d)` (Gram-Schmidt on a complex Gaussian
/// matrix) cut into `n_kraus` square blocks.
pub fn random_cptp_channel_from<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    n_kraus: usize,
) -> Result<KrausSet> {
    if dim == 0 || n_kraus == 0 {
        return Err(CoherenceError::InvalidDimension(dim.min(n_kraus)));
    }
    let rows = dim * n_kraus;
    let mut v = ComplexMatrix::from_fn(rows, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    for j in 0..dim {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = v.column(i).dotc(&v.column(j));
                let ci = v.column(i).clone_owned();
                let mut cj = v.column_mut(j);
                cj -= ci * proj;
            }
        }
        let norm = v.column(j).norm();
        v.column_mut(j).unscale_mut(norm);
    }
    let ops = (0..n_kraus)
        .map(|n| v.rows(n * dim, dim).clone_owned())
        .collect();
    let set = KrausSet::new(ops, false)?;
    let incoherent = is_incoherent_kraus(&set, STRUCTURAL_ZERO);
    Ok(KrausSet { incoherent, ..set })
}

pub fn random_cptp_channel(dim: usize, n_kraus: usize, seed: RngSeed) -> Result<KrausSet> {
    random_cptp_channel_from(&mut seed.rng(), dim, n_kraus)
}

/// Outcome probabilities `p_n = tr(K_n rho K_n^dagger)` and normalized
/// post-measurement states. Outcomes with `p_n < 1e-12` are omitted.
pub fn selective_outcomes(k: &KrausSet, rho: &DensityMatrix) -> Result<Vec<(f64, DensityMatrix)>> {
    check_dims(k, rho)?;
    let mut out = Vec::new();
    let mut total = 0.0;
    for op in k.operators() {
        let m = matcore::hermitize(&(op * rho.matrix() * op.adjoint()));
        let p = matcore::trace(&m).re;
        total += p;
        if p >= OUTCOME_CUTOFF {
            out.push((p, DensityMatrix::from_unnormalized(m)?));
        }
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(CoherenceError::InvalidTrace(total));
    }
    Ok(out)
}
