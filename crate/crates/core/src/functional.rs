//! Logarithmic coefficients and the functional `Δ = |γ₂| − |γ₁|`.
//!
//! `log(f(z)/z) = 2 Σ γ_n z^n`. The coefficients are always taken from the
//! series logarithm; [`gamma_from_a`] is the direct formula in `a₂, a₃` and
//! serves as the independent cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::AnalyticFunction;
use crate::error::{Error, Result};

/// `γ₁`, `γ₂` and `Δ = |γ₂| − |γ₁|` for one function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogPair {
    pub gamma1: Complex64,
    pub gamma2: Complex64,
    pub delta: f64,
}

impl LogPair {
    pub fn new(gamma1: Complex64, gamma2: Complex64) -> Self {
        Self {
            gamma1,
            gamma2,
            delta: gamma2.norm() - gamma1.norm(),
        }
    }
}

/// `γ₁, …, γ_n` from the series logarithm of `f(z)/z`.
pub fn log_coefficients(f: &AnalyticFunction, n: usize) -> Result<Vec<Complex64>> {
    let available = f.order() - 1;
    if n > available {
        return Err(Error::TooManyCoefficients {
            requested: n,
            available,
        });
    }
    let log = f.series().over_z().log_unit()?;
    Ok((1..=n).map(|k| log.coeff(k) * 0.5).collect())
}

/// `γ₁ = a₂/2`, `γ₂ = (a₃ − a₂²/2)/2`.
pub fn gamma_from_a(a2: Complex64, a3: Complex64) -> LogPair {
    LogPair::new(a2 * 0.5, (a3 - a2 * a2 * 0.5) * 0.5)
}

/// The pair `(γ₁, γ₂)` of `f`, through the series logarithm.
pub fn log_pair(f: &AnalyticFunction) -> Result<LogPair> {
    let g = log_coefficients(f, 2)?;
    Ok(LogPair::new(g[0], g[1]))
}

/// `|γ₂| − |γ₁|`.
pub fn delta(f: &AnalyticFunction) -> Result<f64> {
    log_pair(f).map(|p| p.delta)
}
