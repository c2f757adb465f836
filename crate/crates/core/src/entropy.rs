//! Sandwiched Renyi relative entropy
//! `F_alpha(sigma||rho) = ln tr[(rho^c sigma rho^c)^alpha] / (alpha - 1)`,
//! `c = (1 - alpha) / (2 alpha)`, with the argument order used throughout
//! this crate: the first argument is sandwiched by powers of the second.

use std::fmt;

use crate::error::{CoherenceError, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::states::DensityMatrix;

/// Minimum distance of `alpha` from 1. The `alpha -> 1` limit is not provided.
pub const ALPHA_GUARD: f64 = 1e-3;

/// Which family an [`Alpha`] was validated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `[1/2, 1)`: the `C_s1` family.
    S1,
    /// `[1/2, 1) U (1, inf)`: the `C_s` family.
    S,
    /// `(0, inf) \ {1}`: the relative entropy itself.
    Entropy,
}

impl Regime {
    pub fn describe(self) -> &'static str {
        match self {
            Regime::S1 => "S1 [1/2, 1)",
            Regime::S => "S [1/2, 1) U (1, inf)",
            Regime::Entropy => "entropy (0, inf) \\ {1}",
        }
    }

    fn admits(self, v: f64) -> bool {
        if !v.is_finite() || (v - 1.0).abs() < ALPHA_GUARD {
            return false;
        }
        match self {
            Regime::S1 => (0.5..1.0).contains(&v),
            Regime::S => v >= 0.5,
            Regime::Entropy => v > 0.0,
        }
    }
}

/// Renyi order tagged with the regime it was checked against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha {
    value: f64,
    regime: Regime,
}

impl Alpha {
    pub fn new(value: f64, regime: Regime) -> Result<Self> {
        if !regime.admits(value) {
            return Err(CoherenceError::AlphaOutOfRange {
                value,
                regime: regime.describe(),
            });
        }
        Ok(Self { value, regime })
    }

    pub fn s1(value: f64) -> Result<Self> {
        Self::new(value, Regime::S1)
    }

    pub fn s(value: f64) -> Result<Self> {
        Self::new(value, Regime::S)
    }

    pub fn entropy(value: f64) -> Result<Self> {
        Self::new(value, Regime::Entropy)
    }

    pub fn half() -> Self {
        Self {
            value: 0.5,
            regime: Regime::S1,
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn regime(self) -> Regime {
        self.regime
    }

    /// Re-validates the same value under another regime.
    pub fn with_regime(self, regime: Regime) -> Result<Self> {
        Self::new(self.value, regime)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `true` when the support of `sigma` lies inside the support of `rho`,
/// i.e. `tr[(1 - P_rho) sigma]` vanishes.
fn support_contained(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<bool> {
    let proj = matcore::support_projector(rho.matrix())?;
    let outside = matcore::trace(&(sigma.matrix() - &proj * sigma.matrix())).re;
    Ok(outside <= 1e-10)
}

/// `F_alpha(sigma || rho)`.
///
/// For `alpha > 1` the support of `sigma` must lie in the support of `rho`;
/// for `alpha < 1` the trace functional lives on the support of `rho`.
pub fn sandwiched_renyi(sigma: &DensityMatrix, rho: &DensityMatrix, alpha: Alpha) -> Result<f64> {
    let a = alpha.value();
    if !Regime::Entropy.admits(a) {
        return Err(CoherenceError::AlphaOutOfRange {
            value: a,
            regime: Regime::Entropy.describe(),
        });
    }
    if sigma.dim() != rho.dim() {
        return Err(CoherenceError::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    if a > 1.0 && !support_contained(sigma, rho)? {
        return Err(CoherenceError::SupportViolation(
            "supp(sigma) is not contained in supp(rho)".into(),
        ));
    }
    let q = sandwich_trace(sigma.matrix(), rho.matrix(), a)?;
    Ok(q.ln() / (a - 1.0))
}

/// `tr[(rho^c sigma rho^c)^alpha]` for general (non-diagonal) `sigma`.
fn sandwich_trace(sigma: &ComplexMatrix, rho: &ComplexMatrix, alpha: f64) -> Result<f64> {
    let root = matcore::frac_power(rho, matcore::sandwich_exponent(alpha))?;
    let inner = matcore::hermitize(&(&root * sigma * &root));
    let eig = matcore::herm_eig(&inner)?;
    let tau = eig.cutoff();
    Ok(eig
        .psd_spectrum()?
        .into_iter()
        .filter(|&l| l > tau)
        .map(|l| l.powf(alpha))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_density, ProbVector, RngSeed};
    use approx::assert_abs_diff_eq;

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_diag(&ProbVector::new(p.to_vec()).unwrap())
    }

    #[test]
    fn regimes() {
        assert!(Alpha::s1(0.5).is_ok());
        assert!(Alpha::s1(1.2).is_err());
        assert!(Alpha::s1(0.4).is_err());
        assert!(Alpha::s1(0.9995).is_err());
        assert!(Alpha::s(2.0).is_ok());
        assert!(Alpha::s(1.0005).is_err());
        assert!(Alpha::entropy(0.2).is_ok());
        assert!(Alpha::entropy(0.0).is_err());
        assert!(Alpha::entropy(f64::NAN).is_err());
    }

    #[test]
    fn self_divergence_is_zero() {
        let rho = random_density(3, 3, RngSeed(11)).unwrap();
        let f = sandwiched_renyi(&rho, &rho, Alpha::entropy(0.7).unwrap()).unwrap();
        assert_abs_diff_eq!(f, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn commuting_examples() {
        let f = sandwiched_renyi(
            &diag(&[0.5, 0.5]),
            &diag(&[0.9, 0.1]),
            Alpha::entropy(0.5).unwrap(),
        )
        .unwrap();
        let expected = 2.0 * (1.0 / (0.45f64.sqrt() + 0.05f64.sqrt())).ln();
        assert_abs_diff_eq!(f, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(f, 0.22314, epsilon = 1e-5);

        let f = sandwiched_renyi(
            &diag(&[1.0, 0.0]),
            &diag(&[0.5, 0.5]),
            Alpha::entropy(2.0).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(f, 2f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn support_violation_above_one() {
        let r = sandwiched_renyi(
            &diag(&[0.5, 0.5]),
            &diag(&[1.0, 0.0]),
            Alpha::entropy(2.0).unwrap(),
        );
        assert!(matches!(r, Err(CoherenceError::SupportViolation(_))));
        // below one the same pair is finite
        let f = sandwiched_renyi(
            &diag(&[0.5, 0.5]),
            &diag(&[1.0, 0.0]),
            Alpha::entropy(0.7).unwrap(),
        )
        .unwrap();
        assert!(f.is_finite() && f > 0.0);
    }
}
