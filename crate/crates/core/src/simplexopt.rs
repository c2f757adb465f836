//! Optimization over the probability simplex of diagonal states.
//!
//! [`mirror_ascend`] runs exponentiated-gradient steps with a backtracking
//! line search from several starting points, finishing with damped Newton
//! steps on the face of coordinates above the interior floor; [`grid_search`] enumerates a
//! lattice on the simplex and serves as a brute-force oracle for small
//! dimensions. [`holder_two_block`] and [`holder_check`] cover the closed-form
//! aggregation used for block-diagonal additivity.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entropy::Alpha;
use crate::error::{CoherenceError, Result};
use crate::states::{random_probs_from, ProbVector, RngSeed};

/// Direction of optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    fn sign(self) -> f64 {
        match self {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        }
    }

    /// `true` if `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        self.sign() * a > self.sign() * b
    }
}

/// A smooth function on the probability simplex.
pub trait SimplexObjective: Sync {
    fn dim(&self) -> usize;

    fn sense(&self) -> Sense;

    /// May fail on boundary points (e.g. support conditions).
    fn value(&self, x: &[f64]) -> Result<f64>;

    fn value_and_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)>;

    /// Optional problem-specific starting point.
    fn warm_start(&self) -> Option<Vec<f64>> {
        None
    }
}

/// Objective assembled from a closure returning `(value, gradient)`.
pub struct FnObjective<F> {
    dim: usize,
    sense: Sense,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> (f64, Vec<f64>) + Sync,
{
    pub fn new(dim: usize, sense: Sense, f: F) -> Self {
        Self { dim, sense, f }
    }
}

impl<F> SimplexObjective for FnObjective<F>
where
    F: Fn(&[f64]) -> (f64, Vec<f64>) + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn sense(&self) -> Sense {
        self.sense
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok((self.f)(x).0)
    }

    fn value_and_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        Ok((self.f)(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// Constant step size, every step accepted.
    Fixed(f64),
    /// Armijo backtracking with step doubling after each accepted step.
    Backtracking,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub max_iters: usize,
    /// Threshold on the projected-gradient residual.
    pub tol: f64,
    pub restarts: usize,
    /// Minimum coordinate kept during iteration.
    pub interior_floor: f64,
    pub step_rule: StepRule,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol: 1e-9,
            restarts: 4,
            interior_floor: 1e-9,
            step_rule: StepRule::Backtracking,
        }
    }
}

impl OptimizerConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(CoherenceError::InvalidConfig(format!("tol = {}", self.tol)));
        }
        if !(self.interior_floor > 0.0 && self.interior_floor < 1.0 / dim as f64) {
            return Err(CoherenceError::InvalidConfig(format!(
                "interior_floor = {} for dimension {dim}",
                self.interior_floor
            )));
        }
        if self.restarts == 0 {
            return Err(CoherenceError::InvalidConfig("restarts = 0".into()));
        }
        if let StepRule::Fixed(eta) = self.step_rule {
            if !(eta > 0.0) {
                return Err(CoherenceError::InvalidConfig(format!("fixed step {eta}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    pub best_value: f64,
    pub best_point: ProbVector,
    /// Iterations of the winning restart (lattice size for the grid oracle).
    pub iterations: usize,
    pub converged: bool,
    /// Restarts whose final value is within `1e-7` of the best.
    pub restarts_agreeing: usize,
    /// Final projected-gradient residual of the winning restart.
    pub residual: f64,
    /// The best point touches the interior floor, i.e. the optimum is a
    /// boundary limit.
    pub at_boundary: bool,
}

const AGREEMENT_TOL: f64 = 1e-7;
const ARMIJO: f64 = 1e-4;

struct RunOutcome {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    residual: f64,
}

fn floor_normalize(x: &mut [f64], floor: f64) {
    for v in x.iter_mut() {
        if !(*v >= floor) {
            *v = floor;
        }
    }
    let total: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= total;
    }
}

/// Residual of the KKT conditions on `{x >= floor, sum x = 1}`: deviation of
/// the gradient from its mean over free coordinates, plus the wrong-sign part
/// on floored coordinates.
fn kkt_residual(x: &[f64], g: &[f64], sign: f64, floor: f64) -> f64 {
    let at_floor = |v: f64| v <= 1.5 * floor;
    let (mut wsum, mut gsum) = (0.0, 0.0);
    for (&xi, &gi) in x.iter().zip(g) {
        if !at_floor(xi) {
            wsum += xi;
            gsum += xi * gi;
        }
    }
    if wsum == 0.0 {
        return 0.0;
    }
    let gbar = gsum / wsum;
    x.iter().zip(g).fold(0.0_f64, |r, (&xi, &gi)| {
        let dev = gi - gbar;
        if at_floor(xi) {
            r.max(sign * dev)
        } else {
            r.max(dev.abs())
        }
    })
}

fn eval_checked<O: SimplexObjective + ?Sized>(obj: &O, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    let (f, g) = obj.value_and_grad(x)?;
    if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return Err(CoherenceError::NonFiniteObjective);
    }
    Ok((f, g))
}

fn eg_step(x: &[f64], g: &[f64], sign: f64, eta: f64, floor: f64) -> Vec<f64> {
    let top = g
        .iter()
        .map(|&v| sign * v)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = x
        .iter()
        .zip(g)
        .map(|(&xi, &gi)| xi * (eta * (sign * gi - top)).max(-700.0).exp())
        .collect();
    floor_normalize(&mut out, floor);
    out
}

/// Iterate of a single restart.
struct Iterate {
    x: Vec<f64>,
    f: f64,
    g: Vec<f64>,
    residual: f64,
    eta: f64,
}

/// Residual below which Newton steps on the free face take over.
const POLISH_START: f64 = 1e-4;
/// Exponentiated-gradient steps per phase.
const EG_PHASE: usize = 100;
/// Newton steps per phase.
const NEWTON_PHASE: usize = 40;

fn value_slack(f: f64) -> f64 {
    4.0 * f64::EPSILON * (1.0 + f.abs())
}

/// Exponentiated-gradient steps until the residual drops below `stop`, the
/// budget runs out, or the line search stalls. Returns the steps taken.
fn eg_phase<O: SimplexObjective + ?Sized>(
    obj: &O,
    cfg: &OptimizerConfig,
    it: &mut Iterate,
    budget: usize,
    stop: f64,
) -> Result<usize> {
    let sign = obj.sense().sign();
    let floor = cfg.interior_floor;
    let mut steps = 0;
    while steps < budget && it.residual >= stop {
        steps += 1;
        match cfg.step_rule {
            StepRule::Fixed(eta) => {
                let xn = eg_step(&it.x, &it.g, sign, eta, floor);
                let (fnew, gnew) = eval_checked(obj, &xn)?;
                it.x = xn;
                it.f = fnew;
                it.g = gnew;
            }
            StepRule::Backtracking => {
                let mut accepted = false;
                let mut trial_eta = it.eta;
                for _ in 0..80 {
                    let xn = eg_step(&it.x, &it.g, sign, trial_eta, floor);
                    let lin: f64 = sign
                        * xn.iter()
                            .zip(&it.x)
                            .zip(&it.g)
                            .map(|((a, b), gi)| gi * (a - b))
                            .sum::<f64>();
                    match obj.value_and_grad(&xn) {
                        Ok((fnew, gnew))
                            if fnew.is_finite()
                                && gnew.iter().all(|v| v.is_finite())
                                && sign * (fnew - it.f) >= ARMIJO * lin - value_slack(it.f) =>
                        {
                            accepted = xn != it.x;
                            it.x = xn;
                            it.f = fnew;
                            it.g = gnew;
                            break;
                        }
                        _ => trial_eta *= 0.5,
                    }
                }
                if !accepted {
                    it.residual = kkt_residual(&it.x, &it.g, sign, floor);
                    return Ok(steps);
                }
                it.eta = (trial_eta * 2.0).min(1e12);
            }
        }
        it.residual = kkt_residual(&it.x, &it.g, sign, floor);
    }
    Ok(steps)
}

/// One damped Newton step on the face of coordinates above the floor, with
/// the Hessian from central differences of the gradient. Returns `false`
/// when no step was taken.
fn newton_step<O: SimplexObjective + ?Sized>(
    obj: &O,
    floor: f64,
    it: &mut Iterate,
) -> Result<bool> {
    let sign = obj.sense().sign();
    let n = it.x.len();
    let free: Vec<usize> = (0..n).filter(|&i| it.x[i] > 1.5 * floor).collect();
    if free.len() < 2 {
        return Ok(false);
    }
    let last = *free.last().expect("two free coordinates");
    let k = free.len() - 1;
    let r = DVector::from_iterator(k, (0..k).map(|a| sign * (it.g[free[a]] - it.g[last])));
    let room = free
        .iter()
        .map(|&i| it.x[i] - floor)
        .fold(f64::INFINITY, f64::min);
    let h = 1e-5_f64.min(0.5 * room);
    if !(h > 0.0) {
        return Ok(false);
    }
    let mut hess = DMatrix::<f64>::zeros(k, k);
    for b in 0..k {
        let mut xp = it.x.clone();
        xp[free[b]] += h;
        xp[last] -= h;
        let mut xm = it.x.clone();
        xm[free[b]] -= h;
        xm[last] += h;
        let (_, gp) = eval_checked(obj, &xp)?;
        let (_, gm) = eval_checked(obj, &xm)?;
        for a in 0..k {
            let dp = gp[free[a]] - gp[last];
            let dm = gm[free[a]] - gm[last];
            hess[(a, b)] = -sign * (dp - dm) / (2.0 * h);
        }
    }
    let hess = (&hess + hess.transpose()) * 0.5;
    let scale = hess.diagonal().amax().max(1e-12);
    let mut mu = 0.0;
    let p = loop {
        let mut a = hess.clone();
        for i in 0..k {
            a[(i, i)] += mu;
        }
        if let Some(c) = a.cholesky() {
            break c.solve(&r);
        }
        mu = if mu == 0.0 { 1e-10 * scale } else { mu * 10.0 };
        if mu > 1e10 * scale {
            return Ok(false);
        }
    };
    let slope = r.dot(&p);
    if !(slope > 0.0) {
        return Ok(false);
    }
    let mut dx = vec![0.0; n];
    for a in 0..k {
        dx[free[a]] += p[a];
        dx[last] -= p[a];
    }
    let mut t: f64 = 1.0;
    for &i in &free {
        if dx[i] < 0.0 {
            t = t.min((it.x[i] - floor) / -dx[i]);
        }
    }
    for _ in 0..40 {
        let mut xn: Vec<f64> = it.x.iter().zip(&dx).map(|(a, d)| a + t * d).collect();
        floor_normalize(&mut xn, floor);
        if let Ok((fnew, gnew)) = obj.value_and_grad(&xn) {
            if fnew.is_finite() && gnew.iter().all(|v| v.is_finite()) {
                let gain = sign * (fnew - it.f);
                let res = kkt_residual(&xn, &gnew, sign, floor);
                let slack = value_slack(it.f);
                if gain >= ARMIJO * t * slope - slack || (gain >= -slack && res < it.residual) {
                    if xn == it.x {
                        return Ok(false);
                    }
                    it.x = xn;
                    it.f = fnew;
                    it.g = gnew;
                    it.residual = res;
                    return Ok(true);
                }
            }
        }
        t *= 0.5;
    }
    Ok(false)
}

/// Alternates exponentiated-gradient phases, which handle the floor and the
/// far field, with Newton phases once the residual is small.
fn run_single<O: SimplexObjective + ?Sized>(
    obj: &O,
    cfg: &OptimizerConfig,
    start: Vec<f64>,
) -> Result<RunOutcome> {
    let sign = obj.sense().sign();
    let floor = cfg.interior_floor;
    let mut x = start;
    floor_normalize(&mut x, floor);
    let (f, g) = eval_checked(obj, &x)?;
    let (lo, hi) = g
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
            (l.min(v), h.max(v))
        });
    let eta = match cfg.step_rule {
        StepRule::Fixed(eta) => eta,
        StepRule::Backtracking => 1.0 / (hi - lo).max(1e-12),
    };
    let residual = kkt_residual(&x, &g, sign, floor);
    let mut it = Iterate {
        x,
        f,
        g,
        residual,
        eta,
    };
    let newton = matches!(cfg.step_rule, StepRule::Backtracking);
    let mut iterations = 0;
    while iterations < cfg.max_iters && it.residual >= cfg.tol {
        let stop = if newton {
            cfg.tol.max(POLISH_START)
        } else {
            cfg.tol
        };
        let budget = (cfg.max_iters - iterations).min(if newton { EG_PHASE } else { usize::MAX });
        let eg_steps = eg_phase(obj, cfg, &mut it, budget, stop)?;
        iterations += eg_steps;
        let mut newton_steps = 0;
        if newton {
            while newton_steps < NEWTON_PHASE
                && iterations < cfg.max_iters
                && it.residual >= cfg.tol
                && newton_step(obj, floor, &mut it)?
            {
                newton_steps += 1;
                iterations += 1;
            }
        }
        let stalled = eg_steps + newton_steps == 0
            || (eg_steps < budget && it.residual >= stop && newton_steps == 0);
        if !newton || stalled {
            // stalled: neither phase can make progress
            break;
        }
    }
    Ok(RunOutcome {
        x: it.x,
        value: it.f,
        iterations,
        residual: it.residual,
    })
}

fn lexicographic_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Multi-start exponentiated-gradient optimization over the simplex.
///
/// Starts are the uniform point, the objective's warm start (if any), then
/// flat-Dirichlet draws from `seed`, truncated to `cfg.restarts`. The best
/// restart wins; ties go to the lexicographically smaller point.
pub fn mirror_ascend<O: SimplexObjective + ?Sized>(
    obj: &O,
    cfg: &OptimizerConfig,
    seed: RngSeed,
) -> Result<OptimizationReport> {
    let dim = obj.dim();
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    cfg.validate(dim.max(1))?;
    if dim == 1 {
        let (f, _) = eval_checked(obj, &[1.0])?;
        return Ok(OptimizationReport {
            best_value: f,
            best_point: ProbVector::new(vec![1.0])?,
            iterations: 0,
            converged: true,
            restarts_agreeing: cfg.restarts,
            residual: 0.0,
            at_boundary: false,
        });
    }

    let mut starts = vec![vec![1.0 / dim as f64; dim]];
    if let Some(w) = obj.warm_start() {
        starts.push(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    while starts.len() < cfg.restarts {
        starts.push(random_probs_from(&mut rng, dim)?.into_vec());
    }
    starts.truncate(cfg.restarts);

    let mut runs = Vec::with_capacity(starts.len());
    for s in starts {
        runs.push(run_single(obj, cfg, s)?);
    }

    let sense = obj.sense();
    let mut best = 0;
    for (k, r) in runs.iter().enumerate().skip(1) {
        let b = &runs[best];
        if sense.better(r.value, b.value) || (r.value == b.value && lexicographic_less(&r.x, &b.x))
        {
            best = k;
        }
    }
    let agreeing = runs
        .iter()
        .filter(|r| (r.value - runs[best].value).abs() <= AGREEMENT_TOL)
        .count();
    let win = runs.swap_remove(best);
    let at_boundary = win.x.iter().any(|&v| v <= 1.5 * cfg.interior_floor);
    Ok(OptimizationReport {
        best_value: win.value,
        converged: win.residual < cfg.tol,
        best_point: ProbVector::new(win.x)?,
        iterations: win.iterations,
        restarts_agreeing: agreeing,
        residual: win.residual,
        at_boundary,
    })
}

/// Largest dimension accepted by [`grid_search`].
pub const GRID_MAX_DIM: usize = 4;

/// Lattice points `k / resolution` on the simplex whose first coordinate is
/// `k0 / resolution`, visited in lexicographic order.
fn lattice_tail(dim: usize, resolution: usize, k0: usize, mut visit: impl FnMut(&[f64])) {
    let r = resolution as f64;
    let mut k = vec![0usize; dim];
    k[0] = k0;
    let mut point = vec![0.0; dim];
    fn rec(
        pos: usize,
        remaining: usize,
        k: &mut [usize],
        point: &mut [f64],
        r: f64,
        visit: &mut dyn FnMut(&[f64]),
    ) {
        let dim = k.len();
        if pos == dim - 1 {
            k[pos] = remaining;
            for (p, &ki) in point.iter_mut().zip(k.iter()) {
                *p = ki as f64 / r;
            }
            visit(point);
            return;
        }
        for v in 0..=remaining {
            k[pos] = v;
            rec(pos + 1, remaining - v, k, point, r, visit);
        }
    }
    if dim == 1 {
        visit(&[1.0]);
        return;
    }
    rec(1, resolution - k0, &mut k, &mut point, r, &mut visit);
}

/// Exhaustive lattice search over `{k / resolution}` on the simplex.
///
/// Points where the objective fails (for example a violated support
/// condition on the boundary) are skipped. The first best point in
/// lexicographic order wins.
pub fn grid_search<O: SimplexObjective + ?Sized>(
    obj: &O,
    resolution: usize,
) -> Result<OptimizationReport> {
    let dim = obj.dim();
    if dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    if dim > GRID_MAX_DIM {
        return Err(CoherenceError::DimensionTooLarge {
            dim,
            max: GRID_MAX_DIM,
        });
    }
    if resolution == 0 {
        return Err(CoherenceError::InvalidConfig("resolution = 0".into()));
    }
    let sense = obj.sense();
    let first_range = if dim == 1 { 0..1 } else { 0..resolution + 1 };
    let chunks: Vec<(Option<(f64, Vec<f64>)>, usize)> = first_range
        .into_par_iter()
        .map(|k0| {
            let mut best: Option<(f64, Vec<f64>)> = None;
            let mut count = 0;
            lattice_tail(dim, resolution, k0, |p| {
                count += 1;
                if let Ok(v) = obj.value(p) {
                    if v.is_finite() && best.as_ref().is_none_or(|(bv, _)| sense.better(v, *bv)) {
                        best = Some((v, p.to_vec()));
                    }
                }
            });
            (best, count)
        })
        .collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut total = 0;
    for (cand, count) in chunks {
        total += count;
        if let Some((v, p)) = cand {
            if best.as_ref().is_none_or(|(bv, _)| sense.better(v, *bv)) {
                best = Some((v, p));
            }
        }
    }
    let (value, point) = best.ok_or(CoherenceError::NonFiniteObjective)?;
    let at_boundary = point.contains(&0.0);
    Ok(OptimizationReport {
        best_value: value,
        best_point: ProbVector::new(point)?,
        iterations: total,
        converged: true,
        restarts_agreeing: 1,
        residual: 0.0,
        at_boundary,
    })
}

fn check_weights(p1: f64, p2: f64) -> Result<()> {
    if !(p1 > 0.0 && p2 > 0.0 && (p1 + p2 - 1.0).abs() <= 1e-10) {
        return Err(CoherenceError::InvalidWeights(p1, p2));
    }
    Ok(())
}

/// Closed-form maximum over `q1 + q2 = 1` of
/// `p1^(1-a) q1^a t1 + p2^(1-a) q2^a t2`:
///
/// ```text
/// p1^(1-a) p2^(1-a) t1 t2 (t1^(1/(a-1)) / p1 + t2^(1/(a-1)) / p2)^(1-a)
/// ```
pub fn holder_two_block(t1: f64, t2: f64, p1: f64, p2: f64, alpha: Alpha) -> Result<f64> {
    let a = alpha.value();
    if !(0.5..1.0).contains(&a) {
        return Err(CoherenceError::AlphaOutOfRange {
            value: a,
            regime: "S1 [1/2, 1)",
        });
    }
    if !(t1 > 0.0 && t2 > 0.0) {
        return Err(CoherenceError::NonPositiveT(t1, t2));
    }
    check_weights(p1, p2)?;
    let e = 1.0 / (a - 1.0);
    let inner = t1.powf(e) / p1 + t2.powf(e) / p2;
    Ok((p1 * p2).powf(1.0 - a) * t1 * t2 * inner.powf(1.0 - a))
}

/// Both sides of Holder's inequality in the form
/// `sum a_j b_j  <=  (sum a_j^(1/a))^a (sum b_j^(1/(1-a)))^(1-a)` for
/// `a in (0, 1)`, reversed for `a > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// The inequality of the applicable regime holds.
    pub regime_satisfied: bool,
    /// Both sides agree within `1e-10` and `a_j^(1/a) / b_j^(1/(1-a))` is
    /// constant in `j`.
    pub equality: bool,
}

pub fn holder_check(a: &[f64], b: &[f64], alpha: f64) -> Result<HolderCheck> {
    if !(alpha > 0.0 && alpha.is_finite() && alpha != 1.0) {
        return Err(CoherenceError::AlphaOutOfRange {
            value: alpha,
            regime: "(0, 1) U (1, inf)",
        });
    }
    if a.len() != b.len() {
        return Err(CoherenceError::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&v| !(v > 0.0)) {
        return Err(CoherenceError::NonPositiveEntry(bad));
    }
    let pa = 1.0 / alpha;
    let pb = 1.0 / (1.0 - alpha);
    let lhs: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let rhs = a.iter().map(|x| x.powf(pa)).sum::<f64>().powf(alpha)
        * b.iter().map(|y| y.powf(pb)).sum::<f64>().powf(1.0 - alpha);
    let slack = 1e-12 * lhs.abs().max(rhs.abs());
    let regime_satisfied = if alpha < 1.0 {
        lhs <= rhs + slack
    } else {
        lhs >= rhs - slack
    };
    let ratios: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| pa * x.ln() - pb * y.ln())
        .collect();
    let proportional = ratios.iter().all(|r| (r - ratios[0]).abs() <= 1e-9);
    Ok(HolderCheck {
        lhs,
        rhs,
        regime_satisfied,
        equality: (lhs - rhs).abs() <= 1e-10 && proportional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn linear(c: Vec<f64>, sense: Sense) -> FnObjective<impl Fn(&[f64]) -> (f64, Vec<f64>) + Sync> {
        let n = c.len();
        FnObjective::new(n, sense, move |x: &[f64]| {
            (x.iter().zip(&c).map(|(a, b)| a * b).sum(), c.clone())
        })
    }

    #[test]
    fn linear_maximum_at_vertex() {
        let obj = linear(vec![0.2, 0.8], Sense::Maximize);
        let cfg = OptimizerConfig::default();
        let r = mirror_ascend(&obj, &cfg, RngSeed(1)).unwrap();
        let eps = cfg.interior_floor;
        assert!((r.best_value - 0.8).abs() <= 2.0 * eps);
        assert!(r.best_point.as_slice()[0] <= 2.0 * eps);
        assert!(r.converged);
        assert!(r.at_boundary);
    }

    #[test]
    fn sum_of_squares_minimum_at_barycenter() {
        let obj = FnObjective::new(3, Sense::Minimize, |x: &[f64]| {
            (
                x.iter().map(|v| v * v).sum(),
                x.iter().map(|v| 2.0 * v).collect(),
            )
        });
        let r = mirror_ascend(&obj, &OptimizerConfig::default(), RngSeed(2)).unwrap();
        assert_abs_diff_eq!(r.best_value, 1.0 / 3.0, epsilon = 1e-12);
        for &p in r.best_point.as_slice() {
            assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-8);
        }
        assert_eq!(r.restarts_agreeing, 4);
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let obj = FnObjective::new(2, Sense::Maximize, |_x: &[f64]| (f64::NAN, vec![0.0, 0.0]));
        assert!(matches!(
            mirror_ascend(&obj, &OptimizerConfig::default(), RngSeed(0)),
            Err(CoherenceError::NonFiniteObjective)
        ));
    }

    #[test]
    fn config_validation() {
        let mut cfg = OptimizerConfig::default();
        assert!(cfg.validate(3).is_ok());
        cfg.interior_floor = 0.5;
        assert!(cfg.validate(3).is_err());
        let cfg = OptimizerConfig::default().with_restarts(0);
        assert!(cfg.validate(3).is_err());
    }

    #[test]
    fn fixed_step_rule_converges_on_linear() {
        let obj = linear(vec![0.0, 1.0, 0.5], Sense::Maximize);
        let cfg = OptimizerConfig {
            step_rule: StepRule::Fixed(5.0),
            ..OptimizerConfig::default()
        };
        let r = mirror_ascend(&obj, &cfg, RngSeed(3)).unwrap();
        assert_abs_diff_eq!(r.best_value, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn grid_examples() {
        let obj = linear(vec![0.2, 0.8], Sense::Maximize);
        let r = grid_search(&obj, 10).unwrap();
        assert_eq!(r.best_point.as_slice(), &[0.0, 1.0]);
        assert_abs_diff_eq!(r.best_value, 0.8, epsilon = 1e-15);

        let constant = FnObjective::new(3, Sense::Maximize, |_x: &[f64]| (0.25, vec![0.0; 3]));
        let r = grid_search(&constant, 7).unwrap();
        assert_eq!(r.best_value, 0.25);
        // first lattice point in lexicographic order
        assert_eq!(r.best_point.as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(r.iterations, 36);

        let big = linear(vec![0.0; 5], Sense::Maximize);
        assert!(matches!(
            grid_search(&big, 3),
            Err(CoherenceError::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn lattice_counts() {
        for (dim, res, count) in [(1, 5, 1), (2, 4, 5), (3, 4, 15), (4, 3, 20)] {
            let mut n = 0;
            let k0s = if dim == 1 { 0..1 } else { 0..res + 1 };
            for k0 in k0s {
                lattice_tail(dim, res, k0, |p| {
                    assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
                    n += 1;
                });
            }
            assert_eq!(n, count, "dim {dim} res {res}");
        }
    }

    #[test]
    fn holder_two_block_examples() {
        let half = Alpha::s1(0.5).unwrap();
        assert_abs_diff_eq!(
            holder_two_block(1.0, 1.0, 0.5, 0.5, half).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        let a = Alpha::s1(0.75).unwrap();
        for p1 in [0.1, 0.3, 0.77] {
            assert_abs_diff_eq!(
                holder_two_block(1.0, 1.0, p1, 1.0 - p1, a).unwrap(),
                1.0,
                epsilon = 1e-13
            );
        }
        assert!(matches!(
            holder_two_block(0.0, 1.0, 0.5, 0.5, half),
            Err(CoherenceError::NonPositiveT(..))
        ));
        assert!(matches!(
            holder_two_block(1.0, 1.0, 0.5, 0.6, half),
            Err(CoherenceError::InvalidWeights(..))
        ));
    }

    #[test]
    fn holder_two_block_symmetric() {
        let a = Alpha::s1(0.6).unwrap();
        let x = holder_two_block(0.7, 0.4, 0.2, 0.8, a).unwrap();
        let y = holder_two_block(0.4, 0.7, 0.8, 0.2, a).unwrap();
        assert_abs_diff_eq!(x, y, epsilon = 1e-14);
    }

    #[test]
    fn holder_check_examples() {
        let h = holder_check(&[1.0, 1.0], &[1.0, 1.0], 0.5).unwrap();
        assert_abs_diff_eq!(h.lhs, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(h.rhs, 2.0, epsilon = 1e-14);
        assert!(h.equality && h.regime_satisfied);

        let h = holder_check(&[1.0, 2.0], &[2.0, 1.0], 0.5).unwrap();
        assert_abs_diff_eq!(h.lhs, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(h.rhs, 5.0, epsilon = 1e-12);
        assert!(h.regime_satisfied && !h.equality);

        let h = holder_check(&[1.0, 2.0], &[2.0, 1.0], 2.0).unwrap();
        assert!(h.lhs >= h.rhs && h.regime_satisfied && !h.equality);

        assert!(matches!(
            holder_check(&[1.0, 0.0], &[1.0, 1.0], 0.5),
            Err(CoherenceError::NonPositiveEntry(_))
        ));
        assert!(holder_check(&[1.0], &[1.0], 1.0).is_err());
    }
}
