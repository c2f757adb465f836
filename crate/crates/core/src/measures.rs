//! The two sandwiched-Renyi coherence families and their pure-state closed
//! forms.
//!
//! * `C_s1,a(rho) = 1 - max_sigma {tr[(rho^c sigma rho^c)^a]}^(1/(1-a))`,
//!   `a in [1/2, 1)`.
//! * `C_s,a(rho) = min_sigma ({tr[(sigma^c rho sigma^c)^a]}^(1/a) - 1) / (a - 1)`,
//!   `a in [1/2, 1) U (1, inf)`.
//!
//! Both optimizations run over diagonal `sigma`, with `c = (1 - a) / (2a)`.
//! At `a = 1/2` both reduce to the geometric coherence
//! `1 - max_sigma F(rho, sigma)^2`.

use crate::entropy::{Alpha, Regime};
use crate::error::{CoherenceError, Result};
use crate::matcore::{RhoSandwich, SigmaSandwich};
use crate::simplexopt::{
    grid_search, mirror_ascend, OptimizationReport, OptimizerConfig, Sense, SimplexObjective,
};
use crate::states::{dephase, DensityMatrix, ProbVector, PureState, RngSeed};

/// How a [`MeasureResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Optimizer,
    PureClosedForm,
    GridOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Optimizer => "optimizer",
            Method::PureClosedForm => "pure-closed-form",
            Method::GridOracle => "grid-oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub value: f64,
    pub optimal_sigma: ProbVector,
    pub report: OptimizationReport,
    pub method: Method,
}

/// Inner optimizer selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Mirror {
        config: OptimizerConfig,
        seed: RngSeed,
    },
    Grid {
        resolution: usize,
    },
}

impl Default for Solver {
    fn default() -> Self {
        Solver::Mirror {
            config: OptimizerConfig::default(),
            seed: RngSeed(0),
        }
    }
}

impl Solver {
    /// Lattice oracle at `10^4` points per axis for qubits, 200 otherwise.
    pub fn grid_for_dim(dim: usize) -> Self {
        Solver::Grid {
            resolution: if dim <= 2 { 10_000 } else { 200 },
        }
    }

    fn run<O: SimplexObjective>(&self, obj: &O) -> Result<(OptimizationReport, Method)> {
        match self {
            Solver::Mirror { config, seed } => {
                Ok((mirror_ascend(obj, config, *seed)?, Method::Optimizer))
            }
            Solver::Grid { resolution } => Ok((grid_search(obj, *resolution)?, Method::GridOracle)),
        }
    }
}

/// Inner objective of `C_s1`: maximize `tr[(rho^c sigma rho^c)^a]`.
pub struct S1Objective {
    inner: RhoSandwich,
    warm: Vec<f64>,
}

impl S1Objective {
    pub fn new(rho: &DensityMatrix, alpha: Alpha) -> Result<Self> {
        let alpha = alpha.with_regime(Regime::S1)?;
        Ok(Self {
            inner: RhoSandwich::new(rho, alpha.value())?,
            warm: dephase(rho).into_vec(),
        })
    }
}

impl SimplexObjective for S1Objective {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.inner.value(x)
    }

    fn value_and_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.inner.value_and_grad(x)
    }

    fn warm_start(&self) -> Option<Vec<f64>> {
        Some(self.warm.clone())
    }
}

/// Inner objective of `C_s`: `tr[(sigma^c rho sigma^c)^a]`, maximized for
/// `a < 1` and minimized for `a > 1`.
///
/// `(Q^(1/a) - 1) / (a - 1)` is decreasing in `Q` when `a < 1` and increasing
/// when `a > 1`, so minimizing the measure expression flips to the sense
/// returned here.
pub struct SObjective {
    inner: SigmaSandwich,
    warm: Vec<f64>,
}

impl SObjective {
    pub fn new(rho: &DensityMatrix, alpha: Alpha) -> Result<Self> {
        let alpha = alpha.with_regime(Regime::S)?;
        Ok(Self {
            inner: SigmaSandwich::new(rho, alpha.value())?,
            warm: dephase(rho).into_vec(),
        })
    }
}

impl SimplexObjective for SObjective {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn sense(&self) -> Sense {
        if self.inner.alpha() < 1.0 {
            Sense::Maximize
        } else {
            Sense::Minimize
        }
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.inner.value(x)
    }

    fn value_and_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.inner.value_and_grad(x)
    }

    fn warm_start(&self) -> Option<Vec<f64>> {
        Some(self.warm.clone())
    }
}

pub fn c_s1(rho: &DensityMatrix, alpha: Alpha) -> Result<MeasureResult> {
    c_s1_with(rho, alpha, &Solver::default())
}

pub fn c_s1_with(rho: &DensityMatrix, alpha: Alpha, solver: &Solver) -> Result<MeasureResult> {
    let obj = S1Objective::new(rho, alpha)?;
    let (report, method) = solver.run(&obj)?;
    let a = alpha.value();
    Ok(MeasureResult {
        value: 1.0 - report.best_value.powf(1.0 / (1.0 - a)),
        optimal_sigma: report.best_point.clone(),
        report,
        method,
    })
}

pub fn c_s(rho: &DensityMatrix, alpha: Alpha) -> Result<MeasureResult> {
    c_s_with(rho, alpha, &Solver::default())
}

pub fn c_s_with(rho: &DensityMatrix, alpha: Alpha, solver: &Solver) -> Result<MeasureResult> {
    let obj = SObjective::new(rho, alpha)?;
    let (report, method) = solver.run(&obj)?;
    let a = alpha.value();
    Ok(MeasureResult {
        value: (report.best_value.powf(1.0 / a) - 1.0) / (a - 1.0),
        optimal_sigma: report.best_point.clone(),
        report,
        method,
    })
}

/// `1 - max_j |<j|psi>|^(2a/(1-a))`.
pub fn c_s1_pure(psi: &PureState, alpha: Alpha) -> Result<f64> {
    let a = alpha.with_regime(Regime::S1)?.value();
    let top = psi.populations().into_iter().fold(0.0, f64::max);
    Ok(1.0 - top.powf(a / (1.0 - a)))
}

/// `[(sum_j |<psi|j>|^(2a/(2a-1)))^((2a-1)/a) - 1] / (a - 1)`.
///
/// The exponent is singular at `a = 1/2`; there the limiting value, equal to
/// `c_s1_pure(psi, 1/2)`, is returned.
pub fn c_s_pure(psi: &PureState, alpha: Alpha) -> Result<f64> {
    let a = alpha.with_regime(Regime::S)?.value();
    let pops = psi.populations();
    let pmax = pops.iter().copied().fold(0.0, f64::max);
    // (sum p^k)^(1/k) = pmax (sum (p/pmax)^k)^(1/k) with k = a/(2a - 1)
    let norm = if a == 0.5 {
        pmax
    } else {
        let k = a / (2.0 * a - 1.0);
        let sum: f64 = pops.iter().map(|p| (p / pmax).powf(k)).sum();
        pmax * sum.powf(1.0 / k)
    };
    Ok((norm - 1.0) / (a - 1.0))
}

/// `1 - max_sigma F(rho, sigma)^2`, evaluated as `C_s1` at `a = 1/2`.
pub fn geometric_coherence(rho: &DensityMatrix) -> Result<MeasureResult> {
    c_s1(rho, Alpha::half())
}

pub fn geometric_coherence_with(rho: &DensityMatrix, solver: &Solver) -> Result<MeasureResult> {
    c_s1_with(rho, Alpha::half(), solver)
}

/// `2 |rho_01|` for a qubit.
pub fn l1_coherence_qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(CoherenceError::NotQubit(rho.dim()));
    }
    Ok(2.0 * rho.entry(0, 1).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ComplexMatrix;
    use crate::states::maximally_coherent;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_diag(&ProbVector::new(p.to_vec()).unwrap())
    }

    fn pure(amps: &[f64]) -> PureState {
        PureState::new(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect()).unwrap()
    }

    #[test]
    fn c_s1_examples() {
        let v = c_s1(&diag(&[0.3, 0.7]), Alpha::s1(0.6).unwrap())
            .unwrap()
            .value;
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-8);

        let plus = maximally_coherent(2).unwrap().to_density();
        let v = c_s1(&plus, Alpha::half()).unwrap().value;
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-8);

        let psi = pure(&[0.8f64.sqrt(), 0.2f64.sqrt()]);
        let r = c_s1(&psi.to_density(), Alpha::half()).unwrap();
        assert_abs_diff_eq!(r.value, 0.2, epsilon = 1e-8);
        let g = c_s1_with(&psi.to_density(), Alpha::half(), &Solver::grid_for_dim(2)).unwrap();
        assert_eq!(g.method, Method::GridOracle);
        assert_abs_diff_eq!(g.value, 0.2, epsilon = 1e-8);
    }

    #[test]
    fn c_s1_pure_examples() {
        for a in [0.5, 0.6, 0.9] {
            let v = c_s1_pure(&PureState::basis(3, 0).unwrap(), Alpha::s1(a).unwrap()).unwrap();
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        }
        let v = c_s1_pure(&maximally_coherent(2).unwrap(), Alpha::half()).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-15);
        let v = c_s1_pure(&maximally_coherent(3).unwrap(), Alpha::s1(0.75).unwrap()).unwrap();
        assert_abs_diff_eq!(v, 26.0 / 27.0, epsilon = 1e-14);
        assert!(c_s1_pure(&maximally_coherent(2).unwrap(), Alpha::s(2.0).unwrap()).is_err());
    }

    #[test]
    fn c_s_examples() {
        let v = c_s(&diag(&[0.3, 0.7]), Alpha::s(2.0).unwrap())
            .unwrap()
            .value;
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-8);

        let plus = maximally_coherent(2).unwrap().to_density();
        let v = c_s(&plus, Alpha::s(2.0).unwrap()).unwrap().value;
        assert_abs_diff_eq!(v, 2f64.sqrt() - 1.0, epsilon = 1e-8);
        let g = c_s_with(&plus, Alpha::s(2.0).unwrap(), &Solver::grid_for_dim(2)).unwrap();
        assert_abs_diff_eq!(g.value, 2f64.sqrt() - 1.0, epsilon = 1e-8);

        let v = c_s(&plus, Alpha::s(0.5).unwrap()).unwrap().value;
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn c_s_pure_examples() {
        for a in [0.6, 2.0, 3.0] {
            let v = c_s_pure(&PureState::basis(2, 1).unwrap(), Alpha::s(a).unwrap()).unwrap();
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
        let v = c_s_pure(&maximally_coherent(2).unwrap(), Alpha::s(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(v, 2f64.sqrt() - 1.0, epsilon = 1e-14);
        let psi = maximally_coherent(3).unwrap();
        let half = c_s_pure(&psi, Alpha::s(0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(
            half,
            2.0 * c_s1_pure(&psi, Alpha::half()).unwrap(),
            epsilon = 1e-14
        );
        let near = c_s_pure(&psi, Alpha::s(0.5 + 1e-9).unwrap()).unwrap();
        assert_abs_diff_eq!(near, half, epsilon = 1e-6);
    }

    #[test]
    fn non_equivalent_families() {
        let psi = pure(&[0.8f64.sqrt(), 0.2f64.sqrt()]);
        let a = Alpha::s1(0.75).unwrap();
        let gap = c_s1_pure(&psi, a).unwrap()
            - c_s_pure(&psi, a.with_regime(Regime::S).unwrap()).unwrap();
        assert!(gap.abs() > 1e-3);
    }

    #[test]
    fn geometric_examples() {
        let v = geometric_coherence(&diag(&[0.2, 0.5, 0.3])).unwrap().value;
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-8);
        let plus = maximally_coherent(2).unwrap().to_density();
        assert_abs_diff_eq!(
            geometric_coherence(&plus).unwrap().value,
            0.5,
            epsilon = 1e-8
        );
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_coherence_qubit(&diag(&[0.4, 0.6])).unwrap(), 0.0);
        let plus = maximally_coherent(2).unwrap().to_density();
        assert_abs_diff_eq!(l1_coherence_qubit(&plus).unwrap(), 1.0, epsilon = 1e-15);
        for theta in [0.0, 0.7, 2.5, -1.2] {
            let off = Complex64::from_polar(0.3, theta);
            let m = ComplexMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.5, 0.0),
                    off,
                    off.conj(),
                    Complex64::new(0.5, 0.0),
                ],
            );
            let rho = DensityMatrix::new(m).unwrap();
            assert_abs_diff_eq!(l1_coherence_qubit(&rho).unwrap(), 0.6, epsilon = 1e-15);
        }
        assert!(matches!(
            l1_coherence_qubit(&diag(&[0.2, 0.3, 0.5])),
            Err(CoherenceError::NotQubit(3))
        ));
    }

    #[test]
    fn regime_errors() {
        let plus = maximally_coherent(2).unwrap().to_density();
        assert!(matches!(
            c_s1(&plus, Alpha::s(1.5).unwrap()),
            Err(CoherenceError::AlphaOutOfRange { .. })
        ));
    }
}
