//! Named functions: the Koebe function, the extremals of the `U(λ)`
//! estimates, the α-convex Koebe analogues and the Ozaki-class witnesses.
//!
//! Every entry carries its truncated series. Most also carry a
//! [`ClosedForm`] that evaluates `f`, `f′`, `f″` at a point without
//! truncation error, which is what membership sampling near the unit circle
//! relies on.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::quad;
use crate::series::{NormalizedSeries, TruncatedSeries, DEFAULT_ORDER};

/// Series-only evaluation is trusted up to this radius…
pub const SERIES_MAX_RADIUS: f64 = 0.95;
/// …and only with at least this many terms.
pub const SERIES_MIN_ORDER: usize = 64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Which named function an entry is, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Identity,
    Koebe { theta: f64 },
    F1 { theta: f64 },
    F2 { theta: f64 },
    F3 { lambda: f64, theta: f64 },
    F4 { lambda: f64 },
    F5 { lambda: f64 },
    KThetaAlpha { theta: f64, alpha: f64 },
    MAlphaUpper { alpha: f64 },
    GAlphaUpper { alpha: f64 },
    GQuadratic,
    Custom,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Koebe { .. } => "koebe",
            Family::F1 { .. } => "f1",
            Family::F2 { .. } => "f2",
            Family::F3 { .. } => "f3",
            Family::F4 { .. } => "f4",
            Family::F5 { .. } => "f5",
            Family::KThetaAlpha { .. } => "k_theta_alpha",
            Family::MAlphaUpper { .. } => "m_alpha_upper",
            Family::GAlphaUpper { .. } => "g_alpha_upper",
            Family::GQuadratic => "g_quadratic",
            Family::Custom => "custom",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Family::Identity | Family::GQuadratic | Family::Custom => vec![],
            Family::Koebe { theta } | Family::F1 { theta } | Family::F2 { theta } => {
                vec![("theta", theta)]
            }
            Family::F3 { lambda, theta } => vec![("lambda", lambda), ("theta", theta)],
            Family::F4 { lambda } | Family::F5 { lambda } => vec![("lambda", lambda)],
            Family::KThetaAlpha { theta, alpha } => vec![("theta", theta), ("alpha", alpha)],
            Family::MAlphaUpper { alpha } | Family::GAlphaUpper { alpha } => {
                vec![("alpha", alpha)]
            }
        }
    }
}

/// Integrand family for the α-convex representation
/// `f(z) = z · (∫₀¹ g(z u^α) du)^α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `g(w) = (1 − w)^{−2/α}`, from the Koebe function.
    Koebe,
    /// `g(w) = (1 − w²)^{−1/α}`, from `z/(1 − z²)`.
    Odd,
}

impl Kernel {
    fn exponent(self, alpha: f64) -> f64 {
        match self {
            Kernel::Koebe => 2.0 / alpha,
            Kernel::Odd => 1.0 / alpha,
        }
    }

    fn base(self, w: Complex64) -> Complex64 {
        match self {
            Kernel::Koebe => ONE - w,
            Kernel::Odd => ONE - w * w,
        }
    }

    fn base_derivative(self, w: Complex64) -> Complex64 {
        match self {
            Kernel::Koebe => -ONE,
            Kernel::Odd => -2.0 * w,
        }
    }
}

/// `f`, `f′` and `f″` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub f: Complex64,
    pub df: Complex64,
    pub d2f: Complex64,
}

/// Point evaluators that do not go through the truncated series.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// `f = z / q(z)` with `q = q₀ + q₁z + q₂z²`.
    ReciprocalQuadratic([Complex64; 3]),
    /// `f = Σ c_k z^k`.
    Polynomial(Vec<Complex64>),
    /// `f′ = (1 − z²)^{α/2}`; `f` by quadrature of `f′` along the segment.
    OzakiPower { alpha: f64 },
    /// `f = z · S(z)^α` with `S(z) = ∫₀¹ g(z u^α) du`, `α > 0`.
    AlphaConvex { kernel: Kernel, alpha: f64 },
    /// `e^{−iθ} f(e^{iθ} z)`.
    Rotated { inner: Box<ClosedForm>, theta: f64 },
}

impl ClosedForm {
    pub fn eval(&self, z: Complex64) -> PointValues {
        match self {
            ClosedForm::ReciprocalQuadratic(q) => {
                let qz = q[0] + z * (q[1] + z * q[2]);
                let dq = q[1] + 2.0 * q[2] * z;
                let d2q = 2.0 * q[2];
                let u = qz.inv();
                let du = -dq * u * u;
                let d2u = (2.0 * dq * dq - qz * d2q) * u * u * u;
                PointValues {
                    f: z * u,
                    df: u + z * du,
                    d2f: 2.0 * du + z * d2u,
                }
            }
            ClosedForm::Polynomial(c) => {
                let mut f = ZERO;
                let mut df = ZERO;
                let mut d2f = ZERO;
                for ck in c.iter().rev() {
                    d2f = d2f * z + 2.0 * df;
                    df = df * z + f;
                    f = f * z + ck;
                }
                PointValues { f, df, d2f }
            }
            ClosedForm::OzakiPower { alpha } => {
                let half = alpha / 2.0;
                let w = ONE - z * z;
                let df = w.powf(half);
                let d2f = -alpha * z * w.powf(half - 1.0);
                let f = z * quad::integrate_unit(|u| (ONE - z * z * u * u).powf(half));
                PointValues { f, df, d2f }
            }
            ClosedForm::AlphaConvex { kernel, alpha } => alpha_convex_values(*kernel, *alpha, z),
            ClosedForm::Rotated { inner, theta } => {
                let rot = Complex64::from_polar(1.0, *theta);
                let v = inner.eval(rot * z);
                PointValues {
                    f: v.f / rot,
                    df: v.df,
                    d2f: v.d2f * rot,
                }
            }
        }
    }
}

fn kernel_g(kernel: Kernel, p: f64, w: Complex64) -> Complex64 {
    (-p * kernel.base(w).ln()).exp()
}

fn alpha_convex_s(kernel: Kernel, alpha: f64, z: Complex64) -> Complex64 {
    let p = kernel.exponent(alpha);
    quad::integrate_unit(|u| kernel_g(kernel, p, z * u.powf(alpha)))
}

/// `log S(z)` continued from `log S(0) = 0` along the segment `[0, z]`.
fn alpha_convex_log_s(kernel: Kernel, alpha: f64, z: Complex64, s_at_z: Complex64) -> Complex64 {
    let p = kernel.exponent(alpha);
    // The continuous argument of g along [0, z] runs monotonically from 0 to
    // −p·Arg(base(z)). When that sweep is under π, S stays in the same cone
    // and the principal logarithm is the continued one.
    if p * kernel.base(z).arg().abs() < PI {
        return s_at_z.ln();
    }
    let mut t = 0.0_f64;
    let mut h = 0.25_f64;
    let mut log_s = ZERO;
    while t < 1.0 {
        let next = (t + h).min(1.0);
        let s = if next == 1.0 {
            s_at_z
        } else {
            alpha_convex_s(kernel, alpha, z * next)
        };
        let mut cand = s.ln();
        let turns = ((log_s.im - cand.im) / (2.0 * PI)).round();
        cand.im += 2.0 * PI * turns;
        if (cand.im - log_s.im).abs() < 0.5 * PI || h < 1e-9 {
            log_s = cand;
            t = next;
            h *= 2.0;
        } else {
            h *= 0.5;
        }
    }
    log_s
}

fn alpha_convex_values(kernel: Kernel, alpha: f64, z: Complex64) -> PointValues {
    let p = kernel.exponent(alpha);
    if z == ZERO {
        // S′(0) = g′(0)/(1+α), so f″(0) = 2α g′(0)/(1+α).
        let dg0 = -p * kernel.base_derivative(ZERO);
        return PointValues {
            f: ZERO,
            df: ONE,
            d2f: 2.0 * alpha * dg0 / (1.0 + alpha),
        };
    }
    let s = alpha_convex_s(kernel, alpha, z);
    let log_s = alpha_convex_log_s(kernel, alpha, z, s);
    let g = kernel_g(kernel, p, z);
    // g′/g = −p·base′/base; z S′ = (g − S)/α
    let dlog_g = -p * kernel.base_derivative(z) / kernel.base(z);
    let f = z * (alpha * log_s).exp();
    let df = g * ((alpha - 1.0) * log_s).exp();
    let d2f = df * (dlog_g + (alpha - 1.0) * (g - s) / (alpha * z * s));
    PointValues { f, df, d2f }
}

/// A catalog entry: truncated series plus an optional point evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction {
    family: Family,
    rotation: f64,
    series: NormalizedSeries,
    evaluator: Option<ClosedForm>,
}

impl AnalyticFunction {
    /// Wraps a user series; evaluation then goes through the series only.
    pub fn from_series(series: NormalizedSeries) -> Self {
        Self {
            family: Family::Custom,
            rotation: 0.0,
            series,
            evaluator: None,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn label(&self) -> &'static str {
        self.family.label()
    }

    /// Family parameters, plus `rotation` when the entry has been rotated.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        let mut p = self.family.params();
        if self.rotation != 0.0 {
            p.push(("rotation", self.rotation));
        }
        p
    }

    /// `label(name=value, …)`.
    pub fn describe(&self) -> String {
        let params: Vec<String> = self
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}({})", self.label(), params.join(", "))
    }

    pub fn series(&self) -> &NormalizedSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficient `a_n`.
    pub fn a(&self, n: usize) -> Complex64 {
        self.series.a(n)
    }

    pub fn evaluator(&self) -> Option<&ClosedForm> {
        self.evaluator.as_ref()
    }

    /// `e^{−iθ} f(e^{iθ} z)`; stays in every class considered here and
    /// leaves each `|γ_n|` unchanged.
    pub fn rotate(&self, theta: f64) -> Self {
        Self {
            family: self.family,
            rotation: self.rotation + theta,
            series: self.series.rotate(theta),
            evaluator: self.evaluator.as_ref().map(|inner| ClosedForm::Rotated {
                inner: Box::new(inner.clone()),
                theta,
            }),
        }
    }

    /// `f`, `f′`, `f″` at `z`, through the closed form when there is one.
    ///
    /// Series-only entries are evaluated only for `|z| ≤ 0.95` and order at
    /// least 64.
    pub fn point_values(&self, z: Complex64) -> Result<PointValues> {
        if let Some(cf) = &self.evaluator {
            return Ok(cf.eval(z));
        }
        let radius = z.norm();
        let order = self.order();
        if radius > SERIES_MAX_RADIUS || order < SERIES_MIN_ORDER {
            return Err(Error::SeriesEvaluationRefused {
                radius,
                order,
                max_radius: SERIES_MAX_RADIUS,
                min_order: SERIES_MIN_ORDER,
            });
        }
        let s = self.series.series();
        let d1 = s.differentiate();
        let d2 = d1.differentiate();
        Ok(PointValues {
            f: s.evaluate(z),
            df: d1.evaluate(z),
            d2f: d2.evaluate(z),
        })
    }
}

fn theta_ok(theta: f64) -> Result<()> {
    check_range("theta", theta, "finite reals", theta.is_finite())
}

fn reciprocal_quadratic(
    family: Family,
    q: [Complex64; 3],
    order: usize,
) -> Result<AnalyticFunction> {
    let num = TruncatedSeries::identity(order.max(2));
    let den = TruncatedSeries::new(&q, order)?;
    let series = NormalizedSeries::new(num.div(&den)?)?;
    Ok(AnalyticFunction {
        family,
        rotation: 0.0,
        series,
        evaluator: Some(ClosedForm::ReciprocalQuadratic(q)),
    })
}

fn polar(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// The identity `f(z) = z`.
pub fn identity(order: usize) -> Result<AnalyticFunction> {
    Ok(AnalyticFunction {
        family: Family::Identity,
        rotation: 0.0,
        series: NormalizedSeries::identity(order)?,
        evaluator: Some(ClosedForm::Polynomial(vec![ZERO, ONE])),
    })
}

/// `z / (1 − e^{iθ}z)²`.
pub fn koebe(theta: f64, order: usize) -> Result<AnalyticFunction> {
    theta_ok(theta)?;
    let e = polar(theta);
    reciprocal_quadratic(Family::Koebe { theta }, [ONE, -2.0 * e, e * e], order)
}

/// `z / (1 − √2 e^{iθ}z + e^{2iθ}z²)`.
pub fn f1(theta: f64, order: usize) -> Result<AnalyticFunction> {
    theta_ok(theta)?;
    let e = polar(theta);
    reciprocal_quadratic(
        Family::F1 { theta },
        [ONE, -std::f64::consts::SQRT_2 * e, e * e],
        order,
    )
}

/// `z / (1 + e^{iθ}z²)`.
pub fn f2(theta: f64, order: usize) -> Result<AnalyticFunction> {
    theta_ok(theta)?;
    reciprocal_quadratic(Family::F2 { theta }, [ONE, ZERO, polar(theta)], order)
}

/// `z / (1 − λe^{iθ}z²)`, `0 < λ ≤ 1`.
pub fn f3(lambda: f64, theta: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("lambda", lambda, "(0, 1]", lambda > 0.0 && lambda <= 1.0)?;
    theta_ok(theta)?;
    reciprocal_quadratic(
        Family::F3 { lambda, theta },
        [ONE, ZERO, -lambda * polar(theta)],
        order,
    )
}

/// `z / (1 − √(2λ)z + λz²)`, `1/2 ≤ λ ≤ 1`.
pub fn f4(lambda: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("lambda", lambda, "[1/2, 1]", (0.5..=1.0).contains(&lambda))?;
    let q = [
        ONE,
        Complex64::new(-(2.0 * lambda).sqrt(), 0.0),
        Complex64::new(lambda, 0.0),
    ];
    reciprocal_quadratic(Family::F4 { lambda }, q, order)
}

/// `z / (1 − z + λz²)`, `0 < λ ≤ 1/2`.
pub fn f5(lambda: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("lambda", lambda, "(0, 1/2]", lambda > 0.0 && lambda <= 0.5)?;
    let q = [ONE, -ONE, Complex64::new(lambda, 0.0)];
    reciprocal_quadratic(Family::F5 { lambda }, q, order)
}

/// `z · (Σ b_k z^k / (1 + αk))^α` where `Σ b_k t^k` is the expansion of the
/// kernel `g(t)`: the series form of `(1/α ∫₀^z t^{1/α−1} g(t) dt)^α`.
fn alpha_convex_series(
    kernel_base: &TruncatedSeries,
    exponent: f64,
    alpha: f64,
) -> Result<NormalizedSeries> {
    let b = kernel_base.pow_real(-exponent)?;
    let divided: Vec<Complex64> = b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, bk)| bk / (1.0 + alpha * k as f64))
        .collect();
    let s = TruncatedSeries::new(&divided, b.order())?;
    NormalizedSeries::new(s.pow_real(alpha)?.shift_up(1))
}

/// The α-convex Koebe analogue `k_θ(z, α)`; `α = 0` gives the Koebe function.
pub fn k_theta_alpha(theta: f64, alpha: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("alpha", alpha, "[0, ∞)", alpha >= 0.0)?;
    theta_ok(theta)?;
    let family = Family::KThetaAlpha { theta, alpha };
    if alpha == 0.0 {
        let k = koebe(theta, order)?;
        return Ok(AnalyticFunction { family, ..k });
    }
    let e = polar(theta);
    let base = TruncatedSeries::new(&[ONE, -e], order)?;
    let series = alpha_convex_series(&base, 2.0 / alpha, alpha)?;
    let inner = ClosedForm::AlphaConvex {
        kernel: Kernel::Koebe,
        alpha,
    };
    let evaluator = if theta == 0.0 {
        inner
    } else {
        ClosedForm::Rotated {
            inner: Box::new(inner),
            theta,
        }
    };
    Ok(AnalyticFunction {
        family,
        rotation: 0.0,
        series,
        evaluator: Some(evaluator),
    })
}

/// Witness for the upper bound on `M(α)`: `z + z³/(1+2α) + …`;
/// `α = 0` gives `z/(1 − z²)`.
pub fn m_alpha_upper(alpha: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("alpha", alpha, "[0, ∞)", alpha >= 0.0)?;
    let family = Family::MAlphaUpper { alpha };
    if alpha == 0.0 {
        return reciprocal_quadratic(family, [ONE, ZERO, -ONE], order);
    }
    let base = TruncatedSeries::new(&[ONE, ZERO, -ONE], order)?;
    let series = alpha_convex_series(&base, 1.0 / alpha, alpha)?;
    Ok(AnalyticFunction {
        family,
        rotation: 0.0,
        series,
        evaluator: Some(ClosedForm::AlphaConvex {
            kernel: Kernel::Odd,
            alpha,
        }),
    })
}

/// Witness for the upper bound on `G(α)`: `f′ = (1 − z²)^{α/2}`.
pub fn g_alpha_upper(alpha: f64, order: usize) -> Result<AnalyticFunction> {
    check_range("alpha", alpha, "(0, 1]", alpha > 0.0 && alpha <= 1.0)?;
    let df = TruncatedSeries::new(&[ONE, ZERO, -ONE], order)?.pow_real(alpha / 2.0)?;
    Ok(AnalyticFunction {
        family: Family::GAlphaUpper { alpha },
        rotation: 0.0,
        series: NormalizedSeries::new(df.integrate_termwise())?,
        evaluator: Some(ClosedForm::OzakiPower { alpha }),
    })
}

/// `z − z²/2`.
pub fn g_quadratic(order: usize) -> Result<AnalyticFunction> {
    let c = vec![ZERO, ONE, Complex64::new(-0.5, 0.0)];
    Ok(AnalyticFunction {
        family: Family::GQuadratic,
        rotation: 0.0,
        series: NormalizedSeries::new(TruncatedSeries::new(&c, order)?)?,
        evaluator: Some(ClosedForm::Polynomial(c)),
    })
}

/// Parameters accepted by [`by_label`]; unused ones are ignored.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LabelParams {
    pub lambda: Option<f64>,
    pub alpha: Option<f64>,
    pub theta: f64,
}

/// Every label [`by_label`] understands.
pub const LABELS: &[&str] = &[
    "identity",
    "koebe",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5",
    "k_theta_alpha",
    "m_alpha_upper",
    "g_alpha_upper",
    "g_quadratic",
];

/// Looks a family up by label. `kθα` and `ktheta_alpha` are accepted as
/// aliases of `k_theta_alpha`.
pub fn by_label(label: &str, params: &LabelParams, order: usize) -> Result<AnalyticFunction> {
    let lambda = || params.lambda.ok_or(Error::MissingParameter("lambda"));
    let alpha = || params.alpha.ok_or(Error::MissingParameter("alpha"));
    let theta = params.theta;
    match label {
        "identity" | "z" => identity(order),
        "koebe" => koebe(theta, order),
        "f1" => f1(theta, order),
        "f2" => f2(theta, order),
        "f3" => f3(lambda()?, theta, order),
        "f4" => f4(lambda()?, order),
        "f5" => f5(lambda()?, order),
        "k_theta_alpha" | "kθα" | "ktheta_alpha" => k_theta_alpha(theta, alpha()?, order),
        "m_alpha_upper" => m_alpha_upper(alpha()?, order),
        "g_alpha_upper" => g_alpha_upper(alpha()?, order),
        "g_quadratic" => g_quadratic(order),
        other => Err(Error::UnknownLabel(other.to_string())),
    }
}

/// The fixed verification roster: each named function at the parameter
/// values the bound tables are checked against.
pub fn roster(order: usize) -> Result<Vec<AnalyticFunction>> {
    let series_order = order.max(SERIES_MIN_ORDER);
    let mut out = vec![koebe(0.0, order)?, f1(0.0, order)?, f2(0.0, order)?];
    for lambda in [0.1, 0.5, 1.0] {
        out.push(f3(lambda, 0.0, order)?);
    }
    for lambda in [0.5, 0.75, 1.0] {
        out.push(f4(lambda, order)?);
    }
    for lambda in [0.1, 0.25, 0.5] {
        out.push(f5(lambda, order)?);
    }
    for alpha in [0.5, 1.0, 2.0, 5.0] {
        out.push(k_theta_alpha(0.0, alpha, series_order)?);
    }
    for alpha in [0.0, 0.5, 1.0, 2.0] {
        out.push(m_alpha_upper(alpha, series_order)?);
    }
    for alpha in [0.25, 0.5, 1.0] {
        out.push(g_alpha_upper(alpha, series_order)?);
    }
    out.push(g_quadratic(order)?);
    Ok(out)
}

/// Default-order convenience for [`roster`].
pub fn default_roster() -> Vec<AnalyticFunction> {
    roster(DEFAULT_ORDER).expect("roster parameters are in range")
}

/// Root location for the quadratic denominators of the rational entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootReport {
    /// Every root has modulus strictly greater than 1.
    pub outside: bool,
    /// Smallest root modulus (`+∞` for a nonzero constant).
    pub min_modulus: f64,
}

/// Whether all roots of `p₀ + p₁z + p₂z²` lie outside the closed unit disk.
pub fn poles_outside_disk(p: &[Complex64]) -> Result<RootReport> {
    let degree = match p.iter().rposition(|c| *c != ZERO) {
        None => return Err(Error::ZeroPolynomial),
        Some(d) => d,
    };
    if degree > 2 {
        return Err(Error::DegreeTooHigh(degree));
    }
    let min_modulus = match degree {
        0 => f64::INFINITY,
        1 => (p[0] / p[1]).norm(),
        _ => quadratic_min_root_modulus(p[0], p[1], p[2]),
    };
    Ok(RootReport {
        outside: min_modulus > 1.0,
        min_modulus,
    })
}

fn quadratic_min_root_modulus(c: Complex64, b: Complex64, a: Complex64) -> f64 {
    let real = a.im == 0.0 && b.im == 0.0 && c.im == 0.0;
    if real {
        let (a, b, c) = (a.re, b.re, c.re);
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            // conjugate pair: |z|² = z·z̄ = c/a
            return (c / a).abs().sqrt();
        }
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            return 0.0;
        }
        return (q / a).abs().min((c / q).abs());
    }
    let s = (b * b - 4.0 * a * c).sqrt();
    let s = if (b.conj() * s).re >= 0.0 { s } else { -s };
    let q = -0.5 * (b + s);
    if q == ZERO {
        return 0.0;
    }
    (q / a).norm().min((c / q).norm())
}
