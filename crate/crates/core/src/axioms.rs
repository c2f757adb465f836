//! Randomized certification of coherence-measure axioms.
//!
//! * C1 faithfulness: `C >= 0`, and `C = 0` exactly on diagonal states.
//! * C2 monotonicity under incoherent operations.
//! * C3 strong monotonicity: `sum_n p_n C(rho_n) <= C(rho)` for the selective
//!   outcomes of an incoherent operation.
//! * C4 convexity.
//! * C5 additivity on block-diagonal states:
//!   `C(p1 rho1 (+) p2 rho2) = p1 C(rho1) + p2 C(rho2)`.
//!
//! Every check reports the signed worst-case excess over its tolerance, so a
//! passing report carries a negative `max_violation`. Trials draw from
//! per-trial seeds derived from the root seed and run in parallel; the
//! reported seed replays the worst trial exactly.

use std::fmt;
use std::sync::Arc;

use log::warn;
use rand::Rng;
use rayon::prelude::*;

use crate::channels::{
    apply_channel, random_cptp_channel_from, random_incoherent_channel_from, selective_outcomes,
};
use crate::entropy::{sandwiched_renyi, Alpha, Regime};
use crate::error::{CoherenceError, Result};
use crate::format::{state_to_string, StateFile};
use crate::measures::{c_s1_with, c_s_with, l1_coherence_qubit, Solver};
use crate::states::{
    block_direct_sum, maximally_coherent, random_density_from, random_probs_from, random_pure_from,
    DensityMatrix, PureState, RngSeed,
};

/// Slack on every inequality between two optimized measure values.
pub const TOL_AXIOM: f64 = 5e-6;
/// Slack on the data-processing inequality.
pub const TOL_DPI: f64 = 1e-8;

const C1_DIAGONAL_TOL: f64 = 1e-7;
const C1_NEGATIVE_TOL: f64 = 1e-9;
const C1_COHERENT_FLOOR: f64 = 1e-5;
const C1_COHERENT_MASS: f64 = 1e-2;
/// Largest `d1 + d2` drawn by the C5 check.
pub const C5_MAX_DIM: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    C5,
    /// Data-processing inequality of the relative entropy itself.
    DataProcessing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::C5 => "C5",
            Axiom::DataProcessing => "DPI",
        };
        f.write_str(s)
    }
}

type EvalFn = dyn Fn(&DensityMatrix) -> Result<f64> + Send + Sync;

/// A coherence quantifier under test.
#[derive(Clone)]
pub struct MeasureFn {
    name: String,
    alpha: Option<Alpha>,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for MeasureFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureFn")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl MeasureFn {
    pub fn new<F>(name: impl Into<String>, alpha: Option<Alpha>, eval: F) -> Self
    where
        F: Fn(&DensityMatrix) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            alpha,
            eval: Arc::new(eval),
        }
    }

    pub fn c_s1(alpha: Alpha, solver: Solver) -> Result<Self> {
        let alpha = alpha.with_regime(Regime::S1)?;
        Ok(Self::new("s1", Some(alpha), move |rho| {
            Ok(c_s1_with(rho, alpha, &solver)?.value)
        }))
    }

    pub fn c_s(alpha: Alpha, solver: Solver) -> Result<Self> {
        let alpha = alpha.with_regime(Regime::S)?;
        Ok(Self::new("s", Some(alpha), move |rho| {
            Ok(c_s_with(rho, alpha, &solver)?.value)
        }))
    }

    pub fn geometric(solver: Solver) -> Self {
        let alpha = Alpha::half();
        Self::new("geometric", Some(alpha), move |rho| {
            Ok(c_s1_with(rho, alpha, &solver)?.value)
        })
    }

    pub fn l1_qubit() -> Self {
        Self::new("l1-qubit", None, l1_coherence_qubit)
    }

    /// Negative control: `tr(rho^2) - lambda_min(rho)`, which is nonzero on
    /// diagonal states.
    pub fn broken() -> Self {
        Self::new("broken", None, |rho| {
            let purity = (rho.matrix() * rho.matrix()).trace().re;
            let lmin = rho.eigenvalues().first().copied().unwrap_or(0.0);
            Ok(purity - lmin)
        })
    }

    /// Measure by CLI name: `s1`, `s`, `geometric`, `l1-qubit`, `broken`.
    pub fn by_name(name: &str, alpha: Option<f64>, solver: Solver) -> Result<Self> {
        let need = |regime: Regime| -> Result<Alpha> {
            let v = alpha
                .ok_or_else(|| CoherenceError::Parse(format!("measure `{name}` needs --alpha")))?;
            Alpha::new(v, regime)
        };
        match name {
            "s1" => Self::c_s1(need(Regime::S1)?, solver),
            "s" => Self::c_s(need(Regime::S)?, solver),
            "geometric" => Ok(Self::geometric(solver)),
            "l1-qubit" => Ok(Self::l1_qubit()),
            "broken" => Ok(Self::broken()),
            other => Err(CoherenceError::Parse(format!("unknown measure `{other}`"))),
        }
    }

    /// `rho -> f(C(rho))`.
    pub fn compose(&self, f: &ScalarFn) -> Self {
        let inner = self.eval.clone();
        let outer = f.f.clone();
        Self {
            name: format!("{}({})", f.name, self.name),
            alpha: self.alpha,
            eval: Arc::new(move |rho| Ok(outer(inner(rho)?))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> Option<Alpha> {
        self.alpha
    }

    pub fn eval(&self, rho: &DensityMatrix) -> Result<f64> {
        (self.eval)(rho)
    }
}

/// A function `f: [0, inf) -> [0, inf)` with `f(0) = 0`.
#[derive(Clone)]
pub struct ScalarFn {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({})", self.name)
    }
}

/// Sample points used to check scalar-function conditions.
fn scalar_grid() -> impl Iterator<Item = f64> {
    (0..=2000).map(|k| k as f64 * 5e-3)
}

impl ScalarFn {
    /// Checks `f(0) = 0` and `f(x) >= 0` on a grid over `[0, 10]`.
    pub fn new<F>(name: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        if f(0.0) != 0.0 {
            return Err(CoherenceError::ConditionsViolated(format!(
                "{name}(0) = {}",
                f(0.0)
            )));
        }
        if let Some(x) = scalar_grid().find(|&x| !(f(x) >= 0.0)) {
            return Err(CoherenceError::ConditionsViolated(format!(
                "{name}({x}) = {} < 0",
                f(x)
            )));
        }
        Ok(Self {
            name,
            f: Arc::new(f),
        })
    }

    pub fn identity() -> Self {
        Self::new("identity", |x| x).expect("identity is admissible")
    }

    pub fn sqrt() -> Self {
        Self::new("sqrt", |x: f64| x.max(0.0).sqrt()).expect("sqrt is admissible")
    }

    pub fn square() -> Self {
        Self::new("square", |x| x * x).expect("square is admissible")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "sqrt" => Ok(Self::sqrt()),
            "square" => Ok(Self::square()),
            other => Err(CoherenceError::Parse(format!("unknown function `{other}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Conditions for `f(C)` to stay a qubit coherence measure: positive
    /// away from zero and non-decreasing, checked on the sample grid.
    pub fn check_qubit_conditions(&self) -> Result<()> {
        let mut prev = self.eval(0.0);
        for x in scalar_grid().skip(1) {
            let v = self.eval(x);
            if !(v > 0.0) {
                return Err(CoherenceError::ConditionsViolated(format!(
                    "{}({x}) = {v} is not positive",
                    self.name
                )));
            }
            if v < prev {
                return Err(CoherenceError::ConditionsViolated(format!(
                    "{} decreases near x = {x}",
                    self.name
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub trials: usize,
    /// Worst signed excess over the tolerance; positive means violated.
    pub max_violation: f64,
    pub worst_case_seed: RngSeed,
    pub passed: bool,
}

/// Reports of several axioms for one measure.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub measure: String,
    pub alpha: Option<Alpha>,
    pub reports: Vec<AxiomReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }
}

struct Trial {
    margin: f64,
    states: Vec<DensityMatrix>,
}

impl Trial {
    fn new(margin: f64, states: Vec<DensityMatrix>) -> Self {
        Self { margin, states }
    }
}

fn run_trials<F>(axiom: Axiom, label: &str, trials: usize, seed: RngSeed, body: F) -> AxiomReport
where
    F: Fn(RngSeed) -> Result<Trial> + Sync,
{
    let outcomes: Vec<(RngSeed, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.derive(i);
            match body(s) {
                Ok(t) => {
                    if t.margin > 0.0 {
                        let dump: Vec<String> = t
                            .states
                            .iter()
                            .map(|r| state_to_string(&StateFile::Mixed(r.clone())))
                            .collect();
                        warn!(
                            "{axiom} violated by {:e} for {label}, trial seed {}: {}",
                            t.margin,
                            s.0,
                            dump.join(" ")
                        );
                    }
                    (s, t.margin)
                }
                Err(e) => {
                    warn!("{axiom} trial failed for {label}, trial seed {}: {e}", s.0);
                    (s, f64::INFINITY)
                }
            }
        })
        .collect();
    let mut worst = (seed, f64::NEG_INFINITY);
    for (s, m) in outcomes {
        if m > worst.1 || m.is_nan() {
            worst = (s, if m.is_nan() { f64::INFINITY } else { m });
        }
    }
    AxiomReport {
        axiom,
        trials,
        max_violation: worst.1,
        worst_case_seed: worst.0,
        passed: trials > 0 && worst.1 <= 0.0,
    }
}

fn label(m: &MeasureFn) -> String {
    match m.alpha {
        Some(a) => format!("{} alpha={a}", m.name),
        None => m.name.clone(),
    }
}

/// Pure state or random-rank mixed state, with equal odds.
fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<DensityMatrix> {
    if rng.random_bool(0.5) {
        Ok(random_pure_from(rng, dim)?.to_density())
    } else {
        let rank = rng.random_range(1..=dim);
        random_density_from(rng, dim, rank)
    }
}

/// Diagonal states give `|C| <= 1e-7`; coherent states give `C >= -1e-9`,
/// and `C >= 1e-5` once their off-diagonal mass exceeds `1e-2`.
pub fn check_c1(m: &MeasureFn, dim: usize, trials: usize, seed: RngSeed) -> AxiomReport {
    run_trials(Axiom::C1, &label(m), trials, seed, |s| {
        let mut rng = s.rng();
        let diag = DensityMatrix::from_diag(&random_probs_from(&mut rng, dim)?);
        let v0 = m.eval(&diag)?;
        let coherent = if rng.random_bool(0.5) {
            random_pure_from(&mut rng, dim)?.to_density()
        } else {
            random_density_from(&mut rng, dim, dim)?
        };
        let v1 = m.eval(&coherent)?;
        let mut margin = (v0.abs() - C1_DIAGONAL_TOL).max(-C1_NEGATIVE_TOL - v1);
        if coherent.offdiag_mass() > C1_COHERENT_MASS {
            margin = margin.max(C1_COHERENT_FLOOR - v1);
        }
        Ok(Trial::new(margin, vec![diag, coherent]))
    })
}

/// `C(Phi(rho)) <= C(rho) + tol` for random incoherent `Phi`.
pub fn check_c2(m: &MeasureFn, dim: usize, trials: usize, seed: RngSeed) -> AxiomReport {
    run_trials(Axiom::C2, &label(m), trials, seed, |s| {
        let mut rng = s.rng();
        let rho = random_state(&mut rng, dim)?;
        let n = rng.random_range(1..=3);
        let phi = random_incoherent_channel_from(&mut rng, dim, n)?;
        let out = apply_channel(&phi, &rho)?;
        let margin = m.eval(&out)? - m.eval(&rho)? - TOL_AXIOM;
        Ok(Trial::new(margin, vec![rho, out]))
    })
}

/// `sum_n p_n C(rho_n) <= C(rho) + tol` over selective outcomes.
pub fn check_c3(m: &MeasureFn, dim: usize, trials: usize, seed: RngSeed) -> AxiomReport {
    run_trials(Axiom::C3, &label(m), trials, seed, |s| {
        let mut rng = s.rng();
        let rho = random_state(&mut rng, dim)?;
        let n = rng.random_range(1..=3);
        let phi = random_incoherent_channel_from(&mut rng, dim, n)?;
        let mut avg = 0.0;
        let mut states = vec![rho.clone()];
        for (p, r) in selective_outcomes(&phi, &rho)? {
            avg += p * m.eval(&r)?;
            states.push(r);
        }
        Ok(Trial::new(avg - m.eval(&rho)? - TOL_AXIOM, states))
    })
}

/// `C(sum p_n rho_n) <= sum p_n C(rho_n) + tol` for mixtures of 2 or 3 states.
pub fn check_c4(m: &MeasureFn, dim: usize, trials: usize, seed: RngSeed) -> AxiomReport {
    run_trials(Axiom::C4, &label(m), trials, seed, |s| {
        let mut rng = s.rng();
        let k = rng.random_range(2..=3);
        let weights = random_probs_from(&mut rng, k)?.into_vec();
        let states = (0..k)
            .map(|_| random_state(&mut rng, dim))
            .collect::<Result<Vec<_>>>()?;
        let mix = DensityMatrix::mixture(&weights, &states)?;
        let mut avg = 0.0;
        for (w, r) in weights.iter().zip(&states) {
            avg += w * m.eval(r)?;
        }
        let margin = m.eval(&mix)? - avg - TOL_AXIOM;
        let mut all = states;
        all.push(mix);
        Ok(Trial::new(margin, all))
    })
}

/// `|C(p1 rho1 (+) p2 rho2) - p1 C(rho1) - p2 C(rho2)| <= tol` with block
/// sizes `d1 + d2 <= 5`. The direct sum is evaluated by the full
/// `(d1 + d2)`-dimensional measure.
pub fn check_c5(m: &MeasureFn, trials: usize, seed: RngSeed) -> AxiomReport {
    run_trials(Axiom::C5, &label(m), trials, seed, |s| {
        let mut rng = s.rng();
        let d1 = rng.random_range(1..C5_MAX_DIM);
        let d2 = rng.random_range(1..=C5_MAX_DIM - d1);
        let p1: f64 = rng.random_range(0.05..0.95);
        let rho1 = random_state(&mut rng, d1)?;
        let rho2 = random_state(&mut rng, d2)?;
        let sum = block_direct_sum(p1, &rho1, 1.0 - p1, &rho2)?;
        let gap = m.eval(&sum)? - p1 * m.eval(&rho1)? - (1.0 - p1) * m.eval(&rho2)?;
        Ok(Trial::new(gap.abs() - TOL_AXIOM, vec![rho1, rho2, sum]))
    })
}

/// C1 to C4 at dimension `dim`, plus C5 when `dim >= 3`.
pub fn run_suite(m: &MeasureFn, dim: usize, trials: usize, seed: RngSeed) -> SuiteReport {
    let mut reports = vec![
        check_c1(m, dim, trials, seed.derive(1)),
        check_c2(m, dim, trials, seed.derive(2)),
        check_c3(m, dim, trials, seed.derive(3)),
        check_c4(m, dim, trials, seed.derive(4)),
    ];
    if dim >= 3 {
        reports.push(check_c5(m, trials, seed.derive(5)));
    }
    SuiteReport {
        measure: m.name.clone(),
        alpha: m.alpha,
        reports,
    }
}

/// `F_a(Phi(sigma) || Phi(rho)) <= F_a(sigma || rho) + 1e-8` for random CPTP
/// `Phi` and random full-rank states.
pub fn check_data_processing(
    alpha: Alpha,
    dim: usize,
    trials: usize,
    seed: RngSeed,
) -> AxiomReport {
    let label = format!("F alpha={alpha}");
    run_trials(Axiom::DataProcessing, &label, trials, seed, |s| {
        let mut rng = s.rng();
        let sigma = random_density_from(&mut rng, dim, dim)?;
        let rho = random_density_from(&mut rng, dim, dim)?;
        let n = rng.random_range(1..=4);
        let phi = random_cptp_channel_from(&mut rng, dim, n)?;
        let before = sandwiched_renyi(&sigma, &rho, alpha)?;
        let after = sandwiched_renyi(
            &apply_channel(&phi, &sigma)?,
            &apply_channel(&phi, &rho)?,
            alpha,
        )?;
        Ok(Trial::new(after - before - TOL_DPI, vec![sigma, rho]))
    })
}

/// Outcome of the constructive block-additivity test for `f(C)`.
#[derive(Debug, Clone)]
pub struct LinearizationWitness {
    /// `max_p |f(C(rho)) - p1 f(C(rho1)) - p2 f(C(rho2))|`.
    pub violation: f64,
    /// Weight `p2` attaining the maximum.
    pub p2: f64,
    /// The direct sum at the maximizing weight.
    pub witness: DensityMatrix,
    /// `(p2, violation)` for every grid weight.
    pub per_weight: Vec<(f64, f64)>,
}

/// Tests `f(C)` for block additivity on `rho = p1 rho1 (+) p2 rho2`, with
/// `rho1 = |0><0|` of dimension `dim - 2` (so `C(rho1) = 0`) and
/// `rho2 = |+><+|`, over `p2 in {0.1, ..., 0.9}`. A violation above zero
/// shows `f(C)` is not a coherence measure.
pub fn linearization_counterexample(
    f: &ScalarFn,
    m: &MeasureFn,
    dim: usize,
) -> Result<LinearizationWitness> {
    if dim < 3 {
        return Err(CoherenceError::DimensionTooSmall { dim, min: 3 });
    }
    let rho1 = PureState::basis(dim - 2, 0)?.to_density();
    let rho2 = maximally_coherent(2)?.to_density();
    let f1 = f.eval(m.eval(&rho1)?);
    let f2 = f.eval(m.eval(&rho2)?);
    let mut per_weight = Vec::with_capacity(9);
    let mut best: Option<(f64, f64, DensityMatrix)> = None;
    for k in 1..=9 {
        let p2 = k as f64 / 10.0;
        let p1 = 1.0 - p2;
        let rho = block_direct_sum(p1, &rho1, p2, &rho2)?;
        let v = (f.eval(m.eval(&rho)?) - p1 * f1 - p2 * f2).abs();
        per_weight.push((p2, v));
        if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
            best = Some((v, p2, rho));
        }
    }
    let (violation, p2, witness) = best.expect("nine weights evaluated");
    Ok(LinearizationWitness {
        violation,
        p2,
        witness,
        per_weight,
    })
}

/// C1 to C4 for `f(C)` on qubits, after checking that `f` is positive away
/// from zero and non-decreasing. C5 is omitted: it carries no content for
/// `d = 2`.
pub fn qubit_function_measure(
    f: &ScalarFn,
    m: &MeasureFn,
    trials: usize,
    seed: RngSeed,
) -> Result<SuiteReport> {
    f.check_qubit_conditions()?;
    Ok(run_suite(&m.compose(f), 2, trials, seed))
}

/// Result of probing an `f` that fails the qubit conditions.
#[derive(Debug, Clone)]
pub enum NecessitySearch {
    ViolationFound(SuiteReport),
    /// No trial violated C1 to C4. This is not a certificate that `f(C)` is
    /// a measure.
    NoViolationFound(SuiteReport),
}

/// Random search for an axiom violation of `f(C)` on qubits, without the
/// condition pre-check.
pub fn qubit_necessity_search(
    f: &ScalarFn,
    m: &MeasureFn,
    trials: usize,
    seed: RngSeed,
) -> NecessitySearch {
    let report = run_suite(&m.compose(f), 2, trials, seed);
    if report.passed() {
        NecessitySearch::NoViolationFound(report)
    } else {
        NecessitySearch::ViolationFound(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::KrausSet;
    use approx::assert_abs_diff_eq;

    fn s1(a: f64) -> MeasureFn {
        MeasureFn::c_s1(Alpha::s1(a).unwrap(), Solver::default()).unwrap()
    }

    #[test]
    fn c1_passes_for_s1_and_fails_for_broken() {
        assert!(check_c1(&s1(0.7), 3, 30, RngSeed(1)).passed);
        let r = check_c1(&MeasureFn::broken(), 2, 10, RngSeed(1));
        assert!(!r.passed && r.max_violation > 0.0);
    }

    #[test]
    fn identity_channel_has_zero_excess() {
        let m = s1(0.5);
        let rho = crate::states::random_density(3, 3, RngSeed(4)).unwrap();
        let out = apply_channel(&KrausSet::identity(3).unwrap(), &rho).unwrap();
        assert_eq!(m.eval(&out).unwrap(), m.eval(&rho).unwrap());
        let deph = apply_channel(&KrausSet::dephasing(3).unwrap(), &rho).unwrap();
        assert!(m.eval(&deph).unwrap().abs() <= 1e-7);
    }

    #[test]
    fn projective_measurement_outcomes_are_incoherent() {
        let m = MeasureFn::c_s(Alpha::s(2.0).unwrap(), Solver::default()).unwrap();
        let rho = crate::states::random_density(3, 2, RngSeed(9)).unwrap();
        let outs = selective_outcomes(&KrausSet::dephasing(3).unwrap(), &rho).unwrap();
        let avg: f64 = outs.iter().map(|(p, r)| p * m.eval(r).unwrap()).sum();
        assert!(avg.abs() <= 1e-7);
        assert!(avg <= m.eval(&rho).unwrap());
    }

    #[test]
    fn mixing_plus_and_minus() {
        let m = s1(0.5);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = maximally_coherent(2).unwrap().to_density();
        let minus = PureState::new(vec![
            num_complex::Complex64::new(h, 0.0),
            num_complex::Complex64::new(-h, 0.0),
        ])
        .unwrap()
        .to_density();
        let lhs = 0.5 * m.eval(&plus).unwrap() + 0.5 * m.eval(&minus).unwrap();
        let mix = DensityMatrix::mixture(&[0.5, 0.5], &[plus.clone(), minus]).unwrap();
        assert_abs_diff_eq!(lhs, 0.5, epsilon = 1e-8);
        assert_abs_diff_eq!(m.eval(&mix).unwrap(), 0.0, epsilon = 1e-8);
        let self_mix = DensityMatrix::mixture(&[0.3, 0.7], &[plus.clone(), plus.clone()]).unwrap();
        assert_abs_diff_eq!(
            m.eval(&self_mix).unwrap(),
            m.eval(&plus).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn linearization_examples() {
        let m = s1(0.5);
        let w = linearization_counterexample(&ScalarFn::identity(), &m, 3).unwrap();
        assert!(w.violation <= 1e-8);
        let w = linearization_counterexample(&ScalarFn::square(), &m, 3).unwrap();
        assert_abs_diff_eq!(w.violation, 0.0625, epsilon = 1e-6);
        assert_abs_diff_eq!(w.p2, 0.5, epsilon = 1e-12);
        let w = linearization_counterexample(&ScalarFn::sqrt(), &m, 3).unwrap();
        assert!(w.violation > 0.1);
        assert!(matches!(
            linearization_counterexample(&ScalarFn::square(), &m, 2),
            Err(CoherenceError::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn scalar_fn_conditions() {
        assert!(ScalarFn::new("shift", |x| x + 1.0).is_err());
        let bump = ScalarFn::new("bump", |x: f64| x * (2.0 - x).abs()).unwrap();
        assert!(bump.check_qubit_conditions().is_err());
        assert!(qubit_function_measure(&bump, &MeasureFn::l1_qubit(), 5, RngSeed(0)).is_err());
        assert!(ScalarFn::sqrt().check_qubit_conditions().is_ok());
    }

    #[test]
    fn names_resolve() {
        assert!(MeasureFn::by_name("s1", Some(0.7), Solver::default()).is_ok());
        assert!(MeasureFn::by_name("s1", Some(1.2), Solver::default()).is_err());
        assert!(MeasureFn::by_name("s", None, Solver::default()).is_err());
        assert!(MeasureFn::by_name("nope", Some(0.7), Solver::default()).is_err());
        assert_eq!(
            MeasureFn::l1_qubit().compose(&ScalarFn::sqrt()).name(),
            "sqrt(l1-qubit)"
        );
    }
}
