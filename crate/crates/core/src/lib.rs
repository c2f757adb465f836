//! Coherence measures built on the sandwiched Renyi relative entropy.
//!
//! Two families of coherence measures are provided, both defined by an
//! optimization over incoherent (diagonal) states `sigma`:
//!
//! | Function | Quantity | Range of `alpha` |
//! |----------|----------|------------------|
//! | [`c_s1`] | `1 - max_sigma {tr[(rho^c sigma rho^c)^a]}^(1/(1-a))` | `[1/2, 1)` |
//! | [`c_s`] | `min_sigma ({tr[(sigma^c rho sigma^c)^a]}^(1/a) - 1)/(a - 1)` | `[1/2, 1) U (1, inf)` |
//!
//! with `c = (1 - a)/(2a)`. Pure states have closed forms ([`c_s1_pure`],
//! [`c_s_pure`]). At `a = 1/2`, `c_s1` is the geometric coherence
//! `1 - max_sigma F(rho, sigma)^2` and `c_s` is twice that.
//!
//! The [`axioms`] module is a randomized harness that checks faithfulness,
//! monotonicity, strong monotonicity, convexity and block additivity of any
//! measure under random incoherent operations from [`channels`].
//!
//! ```
//! use sandwich_coherence::{c_s1, c_s1_pure, maximally_coherent, Alpha};
//!
//! let psi = maximally_coherent(2).unwrap();
//! let alpha = Alpha::s1(0.5).unwrap();
//! let optimized = c_s1(&psi.to_density(), alpha).unwrap();
//! let closed = c_s1_pure(&psi, alpha).unwrap();
//! assert!((optimized.value - closed).abs() < 1e-8);
//! assert!((closed - 0.5).abs() < 1e-12);
//! ```

pub mod axioms;
pub mod channels;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod format;
pub mod matcore;
pub mod measures;
pub mod simplexopt;
pub mod states;

pub use entropy::{sandwiched_renyi, Alpha, Regime};
pub use error::{CoherenceError, Result};
pub use matcore::{fidelity, q_rho_sandwich, q_sigma_sandwich, ComplexMatrix};
pub use measures::{
    c_s, c_s1, c_s1_pure, c_s_pure, geometric_coherence, l1_coherence_qubit, MeasureResult, Method,
    Solver,
};
pub use states::{
    block_direct_sum, dephase, maximally_coherent, random_density, random_pure, DensityMatrix,
    ProbVector, PureState, RngSeed,
};
