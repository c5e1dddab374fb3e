//! The classes `S`, `U(λ)`, `M(α)`, `G(α)`.
//!
//! Membership is an open-disk strict inequality, so it is checked by
//! sampling a polar grid and reporting the smallest margin. The module also
//! carries the second-order Schwarz-coefficient maps behind the `M(α)` and
//! `G(α)` estimates and the auxiliary coefficient inequalities they imply.
//!
//! Points produced by the Schwarz maps are points of a coefficient
//! *relaxation*: necessary conditions only. They are never reported as
//! certified class members.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{AnalyticFunction, Family, SERIES_MAX_RADIUS, SERIES_MIN_ORDER};
use crate::error::{check_range, Error, Result};
use crate::Execution;

/// Slack allowed when checking `|c₂| ≤ 1 − |c₁|²` on constructed points.
pub const SCHWARZ_TOLERANCE: f64 = 1e-12;

/// Default sampling radii for membership tests.
pub const DEFAULT_RADII: [f64; 3] = [0.5, 0.9, 0.99];
/// Default angular samples per radius.
pub const DEFAULT_ANGULAR: usize = 256;

/// One of the four classes, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClassSpec {
    S,
    U { lambda: f64 },
    M { alpha: f64 },
    G { alpha: f64 },
}

impl ClassSpec {
    /// `U(λ)`, `0 < λ ≤ 1`.
    pub fn u(lambda: f64) -> Result<Self> {
        check_range("lambda", lambda, "(0, 1]", lambda > 0.0 && lambda <= 1.0)?;
        Ok(ClassSpec::U { lambda })
    }

    /// `M(α)`, `α ≥ 0`.
    pub fn m(alpha: f64) -> Result<Self> {
        check_range("alpha", alpha, "[0, ∞)", alpha >= 0.0)?;
        Ok(ClassSpec::M { alpha })
    }

    /// `G(α)`, `0 < α ≤ 1`.
    pub fn g(alpha: f64) -> Result<Self> {
        check_range("alpha", alpha, "(0, 1]", alpha > 0.0 && alpha <= 1.0)?;
        Ok(ClassSpec::G { alpha })
    }

    /// Re-checks the parameter range (useful after deserializing).
    pub fn validate(&self) -> Result<Self> {
        match *self {
            ClassSpec::S => Ok(ClassSpec::S),
            ClassSpec::U { lambda } => Self::u(lambda),
            ClassSpec::M { alpha } => Self::m(alpha),
            ClassSpec::G { alpha } => Self::g(alpha),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ClassSpec::S => "S",
            ClassSpec::U { .. } => "U",
            ClassSpec::M { .. } => "M",
            ClassSpec::G { .. } => "G",
        }
    }

    /// The class parameter, `None` for `S`.
    pub fn param(&self) -> Option<f64> {
        match *self {
            ClassSpec::S => None,
            ClassSpec::U { lambda } => Some(lambda),
            ClassSpec::M { alpha } | ClassSpec::G { alpha } => Some(alpha),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            None => write!(f, "{}", self.kind()),
            Some(p) => write!(f, "{}({})", self.kind(), p),
        }
    }
}

/// The class a catalog entry is known to belong to, if any.
pub fn asserted_class(f: &AnalyticFunction) -> Option<ClassSpec> {
    match f.family() {
        Family::Koebe { .. } => Some(ClassSpec::M { alpha: 0.0 }),
        Family::F1 { .. } | Family::F2 { .. } => Some(ClassSpec::U { lambda: 1.0 }),
        Family::F3 { lambda, .. } | Family::F4 { lambda } | Family::F5 { lambda } => {
            Some(ClassSpec::U { lambda })
        }
        Family::KThetaAlpha { alpha, .. } | Family::MAlphaUpper { alpha } => {
            Some(ClassSpec::M { alpha })
        }
        Family::GAlphaUpper { alpha } => Some(ClassSpec::G { alpha }),
        Family::GQuadratic => Some(ClassSpec::G { alpha: 1.0 }),
        Family::Identity | Family::Custom => None,
    }
}

/// Margin of the defining strict inequality at `z`; positive iff it holds.
///
/// * `U(λ)`: `λ − |(z/f)² f′ − 1|`
/// * `M(α)`: `Re[(1−α) z f′/f + α(1 + z f″/f′)]`
/// * `G(α)`: `(1 + α/2) − Re[1 + z f″/f′]`
///
/// At `z = 0` the limit value is returned.
pub fn membership_margin(f: &AnalyticFunction, spec: &ClassSpec, z: Complex64) -> Result<f64> {
    if let ClassSpec::S = spec {
        return Err(Error::UnsupportedClass);
    }
    if z == Complex64::new(0.0, 0.0) {
        // z f′/f → 1, z f″/f′ → 0, (z/f)² f′ → 1
        return Ok(match *spec {
            ClassSpec::U { lambda } => lambda,
            ClassSpec::M { .. } => 1.0,
            ClassSpec::G { alpha } => alpha / 2.0,
            ClassSpec::S => unreachable!(),
        });
    }
    let v = f.point_values(z)?;
    let singular = || Error::SingularSample { re: z.re, im: z.im };
    if v.df == Complex64::new(0.0, 0.0) || !v.df.is_finite() || !v.f.is_finite() {
        return Err(singular());
    }
    let margin = match *spec {
        ClassSpec::U { lambda } => {
            if v.f == Complex64::new(0.0, 0.0) {
                return Err(singular());
            }
            let q = z / v.f;
            lambda - (q * q * v.df - 1.0).norm()
        }
        ClassSpec::M { alpha } => {
            if v.f == Complex64::new(0.0, 0.0) {
                return Err(singular());
            }
            let j = (1.0 - alpha) * z * v.df / v.f + alpha * (1.0 + z * v.d2f / v.df);
            j.re
        }
        ClassSpec::G { alpha } => (1.0 + alpha / 2.0) - (1.0 + z * v.d2f / v.df).re,
        ClassSpec::S => unreachable!(),
    };
    if margin.is_finite() {
        Ok(margin)
    } else {
        Err(singular())
    }
}

/// Worst margin on one sampling circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusMargin {
    pub radius: f64,
    pub min_margin: f64,
}

/// Outcome of sampling a membership condition on a polar grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub spec: ClassSpec,
    pub radii: Vec<f64>,
    pub angular: usize,
    pub per_radius: Vec<RadiusMargin>,
    pub worst_margin: f64,
    pub witness: Complex64,
    /// Grid points where `f` or `f′` vanished; any skip fails the test.
    pub skipped: usize,
    pub pass: bool,
}

/// Samples [`membership_margin`] at `radius·e^{2πik/angular}` for every
/// radius and `k`. Ties for the worst point go to the first radius, then the
/// first angle.
pub fn membership_test(
    f: &AnalyticFunction,
    spec: &ClassSpec,
    radii: &[f64],
    angular: usize,
    exec: Execution,
) -> Result<MembershipReport> {
    if let ClassSpec::S = spec {
        return Err(Error::UnsupportedClass);
    }
    if radii.is_empty() || angular == 0 {
        return Err(Error::InvalidGrid(
            "need at least one radius and one angle".into(),
        ));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::InvalidGrid(format!("radius {r} not in (0, 1)")));
    }
    if f.evaluator().is_none() {
        let max_r = radii.iter().cloned().fold(0.0, f64::max);
        if max_r > SERIES_MAX_RADIUS || f.order() < SERIES_MIN_ORDER {
            return Err(Error::SeriesEvaluationRefused {
                radius: max_r,
                order: f.order(),
                max_radius: SERIES_MAX_RADIUS,
                min_order: SERIES_MIN_ORDER,
            });
        }
    }

    let points: Vec<Complex64> = radii
        .iter()
        .flat_map(|&r| {
            (0..angular).map(move |k| {
                Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / angular as f64)
            })
        })
        .collect();
    let eval = |z: &Complex64| membership_margin(f, spec, *z);
    let margins: Vec<Result<f64>> = match exec {
        Execution::Sequential => points.iter().map(eval).collect(),
        Execution::Parallel => points.par_iter().map(eval).collect(),
    };

    let mut per_radius = Vec::with_capacity(radii.len());
    let mut worst_margin = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    let mut skipped = 0;
    for (i, &radius) in radii.iter().enumerate() {
        let mut min_margin = f64::INFINITY;
        for k in 0..angular {
            let idx = i * angular + k;
            match &margins[idx] {
                Ok(m) => {
                    if *m < min_margin {
                        min_margin = *m;
                    }
                    if *m < worst_margin {
                        worst_margin = *m;
                        witness = points[idx];
                    }
                }
                Err(Error::SingularSample { .. }) => skipped += 1,
                Err(e) => return Err(e.clone()),
            }
        }
        per_radius.push(RadiusMargin { radius, min_margin });
    }
    Ok(MembershipReport {
        spec: *spec,
        radii: radii.to_vec(),
        angular,
        per_radius,
        worst_margin,
        witness,
        skipped,
        pass: skipped == 0 && worst_margin > 0.0,
    })
}

/// Slacks of `|a₃ − a₂²| ≤ λ` and `|a₂| ≤ 1 + λ`, both `≥ 0` on `U(λ)`.
pub fn u_aux_check(f: &AnalyticFunction, lambda: f64) -> (f64, f64) {
    let (a2, a3) = (f.a(2), f.a(3));
    (lambda - (a3 - a2 * a2).norm(), (1.0 + lambda) - a2.norm())
}

/// First two coefficients of a Schwarz function `ω = c₁z + c₂z² + …`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzPoint {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl SchwarzPoint {
    /// Requires `|c₁| ≤ 1` and `|c₂| ≤ 1 − |c₁|²`.
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        let r = c1.norm();
        check_range("|c1|", r, "[0, 1]", r <= 1.0 + SCHWARZ_TOLERANCE)?;
        let s = c2.norm();
        check_range(
            "|c2|",
            s,
            "[0, 1 − |c1|²]",
            s <= 1.0 - r * r + SCHWARZ_TOLERANCE,
        )?;
        Ok(Self { c1, c2 })
    }

    /// Body coordinates: `c₁ = r`, `c₂ = u(1 − r²)e^{iφ}` with `r, u ∈ [0, 1]`.
    pub fn from_body(r: f64, u: f64, phi: f64) -> Result<Self> {
        check_range("r", r, "[0, 1]", (0.0..=1.0).contains(&r))?;
        check_range("u", u, "[0, 1]", (0.0..=1.0).contains(&u))?;
        Ok(Self {
            c1: Complex64::new(r, 0.0),
            c2: Complex64::from_polar(u * (1.0 - r * r), phi),
        })
    }

    /// `(e^{iθ}c₁, e^{2iθ}c₂)`.
    pub fn rotate(&self, theta: f64) -> Self {
        Self {
            c1: self.c1 * Complex64::from_polar(1.0, theta),
            c2: self.c2 * Complex64::from_polar(1.0, 2.0 * theta),
        }
    }
}

#[inline]
pub(crate) fn m_map(c1: Complex64, c2: Complex64, alpha: f64) -> (Complex64, Complex64) {
    let a2 = -2.0 * c1 / (1.0 + alpha);
    let k = (alpha * alpha + 8.0 * alpha + 3.0) / 4.0;
    let a3 = (k * a2 * a2 - c2) / (1.0 + 2.0 * alpha);
    (a2, a3)
}

#[inline]
pub(crate) fn g_map(c1: Complex64, c2: Complex64, alpha: f64) -> (Complex64, Complex64) {
    let a2 = 0.5 * alpha * c1;
    let a3 = alpha / 6.0 * c2 - 2.0 * (1.0 - alpha) / (3.0 * alpha) * a2 * a2;
    (a2, a3)
}

/// `(a₂, a₃)` of the `M(α)` function whose
/// `(1 − J)/(1 + J) = c₁z + c₂z² + …`, `J = (1−α)zf′/f + α(1 + zf″/f′)`:
/// `c₁ = −(1+α)a₂/2`, `c₂ = −[(1+2α)a₃ − ((α²+8α+3)/4)a₂²]`.
pub fn m_schwarz_map(p: &SchwarzPoint, alpha: f64) -> Result<(Complex64, Complex64)> {
    check_range("alpha", alpha, "[0, ∞)", alpha >= 0.0)?;
    Ok(m_map(p.c1, p.c2, alpha))
}

/// `(a₂, a₃)` of the `G(α)` function whose
/// `z f″/(α f′ − z f″) = c₁z + c₂z² + …`: `a₂ = (α/2)c₁`,
/// `a₃ = (α/6)c₂ − (2(1−α)/(3α))a₂²`.
pub fn g_schwarz_map(p: &SchwarzPoint, alpha: f64) -> Result<(Complex64, Complex64)> {
    check_range("alpha", alpha, "(0, 1]", alpha > 0.0 && alpha <= 1.0)?;
    Ok(g_map(p.c1, p.c2, alpha))
}

/// Slack of
/// `|a₃ − (α²+8α+3)/(4(1+2α)) a₂²| ≤ 1/(1+2α) − (1+α)²/(4(1+2α)) |a₂|²`.
pub fn eq10_slack(a2: Complex64, a3: Complex64, alpha: f64) -> f64 {
    let d = 1.0 + 2.0 * alpha;
    let k = (alpha * alpha + 8.0 * alpha + 3.0) / (4.0 * d);
    let rhs = 1.0 / d - (1.0 + alpha).powi(2) / (4.0 * d) * a2.norm_sqr();
    rhs - (a3 - k * a2 * a2).norm()
}

/// Slack of `|a₃ + (2(1−α)/(3α)) a₂²| ≤ (α² − 4|a₂|²)/(6α)`.
pub fn e11_slack(a2: Complex64, a3: Complex64, alpha: f64) -> f64 {
    let rhs = (alpha * alpha - 4.0 * a2.norm_sqr()) / (6.0 * alpha);
    rhs - (a3 + 2.0 * (1.0 - alpha) / (3.0 * alpha) * a2 * a2).norm()
}

/// Slack of `|a_n| ≤ α/(n(n−1))` on `G(α)`.
pub fn coeff_bound_a_check(f: &AnalyticFunction, alpha: f64, n: usize) -> Result<f64> {
    if n < 2 || n > f.order() {
        return Err(Error::ParameterRange {
            name: "n",
            value: n as f64,
            range: "[2, order]",
        });
    }
    Ok(alpha / (n * (n - 1)) as f64 - f.a(n).norm())
}
