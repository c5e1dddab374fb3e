//! Closed-form bounds for `Δ = |γ₂| − |γ₁|`.
//!
//! | class | lower | upper |
//! |-------|-------|-------|
//! | `S` | `−√2/2` (sharp) | `1/2` (sharp) |
//! | `U(λ)`, `λ ≤ 1/2` | `−(2λ+1)/4` (sharp) | `λ/2` (sharp) |
//! | `U(λ)`, `λ ≥ 1/2` | `−√(2λ)/2` (sharp) | `λ/2` (sharp) |
//! | `M(α)`, `α ≤ (1+√3)/2` | `−1/√(2(α²+3α+1))` | `1/(2(1+2α))` (sharp) |
//! | `M(α)`, `α ≥ (1+√3)/2` | `−(6α²+10α+3)/(4(2α+1)(α²+3α+1))` | `1/(2(1+2α))` (sharp) |
//! | `G(α)` | `−α(17−α)/(12(8−α))` | `α/12` (sharp) |
//!
//! At a breakpoint both branches are evaluated and must agree.

use serde::{Deserialize, Serialize};

use crate::catalog::{self, AnalyticFunction, SERIES_MIN_ORDER};
use crate::classes::ClassSpec;
use crate::error::{check_range, Result};

/// Where the two `U(λ)` lower-bound formulas meet.
pub const U_BREAKPOINT: f64 = 0.5;

/// `(1 + √3)/2`, where the two `M(α)` lower-bound formulas meet.
pub const M_BREAKPOINT: f64 = 1.366_025_403_784_438_6;

/// Two branch formulas at a shared breakpoint must agree to this.
pub const BRANCH_TOLERANCE: f64 = 1e-12;

/// Bounds on `Δ` for one class, with sharpness and witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub lower_sharp: bool,
    pub upper_sharp: bool,
    pub lower_witness: Option<String>,
    pub upper_witness: Option<String>,
    pub note: Option<String>,
}

/// Which side of a [`BoundPair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

pub fn u_lower_small(lambda: f64) -> f64 {
    -(2.0 * lambda + 1.0) / 4.0
}

pub fn u_lower_large(lambda: f64) -> f64 {
    -(2.0 * lambda).sqrt() / 2.0
}

pub fn m_lower_small(alpha: f64) -> f64 {
    -1.0 / (2.0 * (alpha * alpha + 3.0 * alpha + 1.0)).sqrt()
}

pub fn m_lower_large(alpha: f64) -> f64 {
    let q = alpha * alpha + 3.0 * alpha + 1.0;
    -(6.0 * alpha * alpha + 10.0 * alpha + 3.0) / (4.0 * (2.0 * alpha + 1.0) * q)
}

fn branch(param: f64, breakpoint: f64, small: fn(f64) -> f64, large: fn(f64) -> f64) -> f64 {
    if (param - breakpoint).abs() <= BRANCH_TOLERANCE {
        let (a, b) = (small(param), large(param));
        assert!(
            (a - b).abs() <= BRANCH_TOLERANCE,
            "branch formulas disagree at {param}: {a} vs {b}"
        );
        a
    } else if param < breakpoint {
        small(param)
    } else {
        large(param)
    }
}

/// Bounds on `Δ` for `spec`.
pub fn bound_delta(spec: &ClassSpec) -> Result<BoundPair> {
    let spec = spec.validate()?;
    let pair = match spec {
        ClassSpec::S => BoundPair {
            lower: -std::f64::consts::FRAC_1_SQRT_2,
            upper: 0.5,
            lower_sharp: true,
            upper_sharp: true,
            lower_witness: Some("f1".into()),
            upper_witness: Some("f2".into()),
            note: None,
        },
        ClassSpec::U { lambda } => BoundPair {
            lower: branch(lambda, U_BREAKPOINT, u_lower_small, u_lower_large),
            upper: lambda / 2.0,
            lower_sharp: true,
            upper_sharp: true,
            lower_witness: Some(if lambda <= U_BREAKPOINT { "f5" } else { "f4" }.into()),
            upper_witness: Some("f3".into()),
            note: None,
        },
        ClassSpec::M { alpha } => BoundPair {
            lower: branch(alpha, M_BREAKPOINT, m_lower_small, m_lower_large),
            upper: 1.0 / (2.0 * (1.0 + 2.0 * alpha)),
            lower_sharp: false,
            upper_sharp: true,
            lower_witness: None,
            upper_witness: Some("m_alpha_upper".into()),
            note: Some("lower bound is not claimed sharp".into()),
        },
        ClassSpec::G { alpha } => BoundPair {
            lower: -alpha * (17.0 - alpha) / (12.0 * (8.0 - alpha)),
            upper: alpha / 12.0,
            lower_sharp: false,
            upper_sharp: true,
            lower_witness: None,
            upper_witness: Some("g_alpha_upper".into()),
            note: Some(
                "lower bound is not claimed sharp; at α = 1, z − z²/2 gives −3/16 against −4/21"
                    .into(),
            ),
        },
    };
    Ok(pair)
}

/// The extremal function behind a sharp side of the bound, if there is one.
pub fn witness(spec: &ClassSpec, side: Side, order: usize) -> Result<Option<AnalyticFunction>> {
    let spec = spec.validate()?;
    let series_order = order.max(SERIES_MIN_ORDER);
    let f = match (spec, side) {
        (ClassSpec::S, Side::Lower) => Some(catalog::f1(0.0, order)?),
        (ClassSpec::S, Side::Upper) => Some(catalog::f2(0.0, order)?),
        (ClassSpec::U { lambda }, Side::Lower) if lambda <= U_BREAKPOINT => {
            Some(catalog::f5(lambda, order)?)
        }
        (ClassSpec::U { lambda }, Side::Lower) => Some(catalog::f4(lambda, order)?),
        (ClassSpec::U { lambda }, Side::Upper) => Some(catalog::f3(lambda, 0.0, order)?),
        (ClassSpec::M { alpha }, Side::Upper) => Some(catalog::m_alpha_upper(alpha, series_order)?),
        (ClassSpec::G { alpha }, Side::Upper) => Some(catalog::g_alpha_upper(alpha, series_order)?),
        (ClassSpec::M { .. } | ClassSpec::G { .. }, Side::Lower) => None,
    };
    Ok(f)
}

/// `|a₂|₀ = (1+2α)/(α²+3α+1)`, where the `M(α)` lower estimate bottoms out
/// for `α ≥ (1+√3)/2`.
pub fn m_lower_minimizer(alpha: f64) -> Result<f64> {
    check_range(
        "alpha",
        alpha,
        "[(1+√3)/2, ∞)",
        alpha >= M_BREAKPOINT - BRANCH_TOLERANCE,
    )?;
    Ok((1.0 + 2.0 * alpha) / (alpha * alpha + 3.0 * alpha + 1.0))
}

/// `t₀ = 3α/(8−α)`, the minimizer of the `G(α)` lower estimate on `[0, α/2]`.
pub fn g_lower_minimizer(alpha: f64) -> Result<f64> {
    check_range("alpha", alpha, "(0, 1]", alpha > 0.0 && alpha <= 1.0)?;
    let t0 = 3.0 * alpha / (8.0 - alpha);
    assert!(t0 < alpha / 2.0, "t0 = {t0} not below α/2 at α = {alpha}");
    Ok(t0)
}

/// One row of an exported bound table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub class: String,
    pub param: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    pub lower_sharp: bool,
    pub upper_sharp: bool,
}

impl BoundRow {
    pub fn new(spec: &ClassSpec) -> Result<Self> {
        let b = bound_delta(spec)?;
        Ok(Self {
            class: spec.kind().to_string(),
            param: spec.param(),
            lower: b.lower,
            upper: b.upper,
            lower_sharp: b.lower_sharp,
            upper_sharp: b.upper_sharp,
        })
    }
}
