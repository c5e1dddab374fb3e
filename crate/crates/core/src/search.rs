//! Brute-force extremes of `Δ` over coefficient relaxations.
//!
//! Each class comes with a body of admissible `(a₂, a₃)` built from the
//! necessary conditions used to derive its bound:
//!
//! * `U(λ)`: `a₂ = x ∈ [0, 1+λ]`, `a₃ = a₂² + λ t e^{iφ}`, `t ∈ [0, 1]`;
//! * `M(α)` and `G(α)`: Schwarz coefficients `c₁ = r ∈ [0, 1]`,
//!   `c₂ = u (1 − r²) e^{iφ}`, `u ∈ [0, 1]`, pushed through the class map;
//! * `S` uses the `U(1)` body, whose extremes coincide with the `S` bounds.
//!
//! Rotating `f` rotates `(a₂, a₃)` by `(e^{iθ}, e^{2iθ})` without changing
//! `Δ`, so the first coordinate is taken real and nonnegative. Every body is
//! then a box `[0, first_max] × [0, 1] × [0, 2π)`.
//!
//! These are relaxation extremes. They bracket the class but are not
//! claimed to be attained by class members.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::bound_delta;
use crate::catalog::{self, LabelParams, SERIES_MIN_ORDER};
use crate::classes::{g_map, m_map, ClassSpec};
use crate::error::{Error, Result};
use crate::functional::{delta, gamma_from_a};
use crate::Execution;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Smallest grid resolution [`body_search`] accepts.
pub const MIN_RESOLUTION: usize = 16;
/// Halvings of the step during local refinement.
pub const REFINE_PASSES: usize = 3;
/// Points within this of an extreme count as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;
/// Slack on the bound interval before a scan sample counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// A coefficient relaxation for one class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Body {
    U { lambda: f64 },
    M { alpha: f64 },
    G { alpha: f64 },
}

impl Body {
    pub fn for_class(spec: &ClassSpec) -> Result<Self> {
        Ok(match spec.validate()? {
            ClassSpec::S => Body::U { lambda: 1.0 },
            ClassSpec::U { lambda } => Body::U { lambda },
            ClassSpec::M { alpha } => Body::M { alpha },
            ClassSpec::G { alpha } => Body::G { alpha },
        })
    }

    /// Upper end of the first coordinate (`|a₂|` for `U`, `|c₁|` otherwise).
    pub fn first_max(&self) -> f64 {
        match *self {
            Body::U { lambda } => 1.0 + lambda,
            Body::M { .. } | Body::G { .. } => 1.0,
        }
    }

    /// `(a₂, a₃)` at body coordinates.
    #[inline]
    pub fn coefficients(&self, first: f64, fraction: f64, phase: f64) -> (Complex64, Complex64) {
        let (s, c) = phase.sin_cos();
        self.coefficients_cs(first, fraction, c, s)
    }

    #[inline]
    fn coefficients_cs(
        &self,
        first: f64,
        fraction: f64,
        cos: f64,
        sin: f64,
    ) -> (Complex64, Complex64) {
        match *self {
            Body::U { lambda } => {
                let a2 = Complex64::new(first, 0.0);
                let m = lambda * fraction;
                (a2, Complex64::new(first * first + m * cos, m * sin))
            }
            Body::M { alpha } => {
                let m = fraction * (1.0 - first * first);
                m_map(
                    Complex64::new(first, 0.0),
                    Complex64::new(m * cos, m * sin),
                    alpha,
                )
            }
            Body::G { alpha } => {
                let m = fraction * (1.0 - first * first);
                g_map(
                    Complex64::new(first, 0.0),
                    Complex64::new(m * cos, m * sin),
                    alpha,
                )
            }
        }
    }

    /// `Δ` at body coordinates.
    #[inline]
    pub fn delta(&self, first: f64, fraction: f64, phase: f64) -> f64 {
        let (a2, a3) = self.coefficients(first, fraction, phase);
        gamma_from_a(a2, a3).delta
    }

    #[inline]
    fn delta_cs(&self, first: f64, fraction: f64, cos: f64, sin: f64) -> f64 {
        let (a2, a3) = self.coefficients_cs(first, fraction, cos, sin);
        gamma_from_a(a2, a3).delta
    }
}

/// A point of a body, with its coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BodyPoint {
    /// `|a₂|` on the `U` body, `|c₁|` on the Schwarz bodies.
    pub first: f64,
    /// `t` on the `U` body (`|a₃ − a₂²| = λt`), `u` on the Schwarz bodies
    /// (`|c₂| = u(1 − |c₁|²)`).
    pub fraction: f64,
    pub phase: f64,
    pub a2: Complex64,
    pub a3: Complex64,
    pub delta: f64,
}

impl BodyPoint {
    fn at(body: &Body, first: f64, fraction: f64, phase: f64) -> Self {
        let (a2, a3) = body.coefficients(first, fraction, phase);
        Self {
            first,
            fraction,
            phase,
            a2,
            a3,
            delta: gamma_from_a(a2, a3).delta,
        }
    }
}

/// Extremes of `Δ` over a relaxation body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub spec: ClassSpec,
    pub min_delta: f64,
    pub max_delta: f64,
    pub argmin: BodyPoint,
    pub argmax: BodyPoint,
    /// Grid points per axis: first coordinate, fraction, phase.
    pub resolution: [usize; 3],
    pub refined: bool,
}

#[derive(Clone, Copy)]
struct SliceExtremes {
    min: f64,
    max: f64,
}

/// Grid search over the body of `spec`, then local refinement of both
/// extremes.
///
/// The grid has `resolution + 1` points on each of the two bounded axes and
/// `resolution` phases. Ties go to the smallest lexicographic grid index.
pub fn body_search(spec: &ClassSpec, resolution: usize, exec: Execution) -> Result<SearchResult> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidGrid(format!(
            "resolution {resolution} below {MIN_RESOLUTION}"
        )));
    }
    let body = Body::for_class(spec)?;
    let n_first = resolution + 1;
    let n_frac = resolution + 1;
    let n_phase = resolution;
    let first_step = body.first_max() / resolution as f64;
    let frac_step = 1.0 / resolution as f64;
    let phase_step = TWO_PI / n_phase as f64;
    let trig: Vec<(f64, f64)> = (0..n_phase)
        .map(|k| {
            let (s, c) = (k as f64 * phase_step).sin_cos();
            (c, s)
        })
        .collect();

    let first_at = |i: usize| (i as f64 * first_step).min(body.first_max());
    let frac_at = |j: usize| (j as f64 * frac_step).min(1.0);

    let slice = |i: usize| -> SliceExtremes {
        let x = first_at(i);
        let mut ext = SliceExtremes {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        };
        for j in 0..n_frac {
            let t = frac_at(j);
            for &(c, s) in &trig {
                let d = body.delta_cs(x, t, c, s);
                ext.min = ext.min.min(d);
                ext.max = ext.max.max(d);
            }
        }
        ext
    };
    let slices: Vec<SliceExtremes> = match exec {
        Execution::Sequential => (0..n_first).map(slice).collect(),
        Execution::Parallel => (0..n_first).into_par_iter().map(slice).collect(),
    };
    let grid_min = slices.iter().map(|s| s.min).fold(f64::INFINITY, f64::min);
    let grid_max = slices
        .iter()
        .map(|s| s.max)
        .fold(f64::NEG_INFINITY, f64::max);

    // first grid index (lexicographic) within the tie tolerance of an extreme
    let first_index = |pred: &dyn Fn(f64) -> bool, slice_ok: &dyn Fn(&SliceExtremes) -> bool| {
        for (i, ext) in slices.iter().enumerate() {
            if !slice_ok(ext) {
                continue;
            }
            let x = first_at(i);
            for j in 0..n_frac {
                let t = frac_at(j);
                for (k, &(c, s)) in trig.iter().enumerate() {
                    if pred(body.delta_cs(x, t, c, s)) {
                        return (i, j, k);
                    }
                }
            }
        }
        unreachable!("extreme value not found on its own grid")
    };
    let imin = first_index(&|d| d <= grid_min + TIE_TOLERANCE, &|e| {
        e.min <= grid_min + TIE_TOLERANCE
    });
    let imax = first_index(&|d| d >= grid_max - TIE_TOLERANCE, &|e| {
        e.max >= grid_max - TIE_TOLERANCE
    });

    let steps = [first_step, frac_step, phase_step];
    let start = |(i, j, k): (usize, usize, usize)| [first_at(i), frac_at(j), k as f64 * phase_step];
    let argmin = refine(&body, start(imin), steps, -1.0);
    let argmax = refine(&body, start(imax), steps, 1.0);

    Ok(SearchResult {
        spec: *spec,
        min_delta: argmin.delta,
        max_delta: argmax.delta,
        argmin,
        argmax,
        resolution: [n_first, n_frac, n_phase],
        refined: true,
    })
}

/// Pattern search around `start`; `sign = 1` maximizes, `−1` minimizes.
fn refine(body: &Body, start: [f64; 3], steps: [f64; 3], sign: f64) -> BodyPoint {
    let clamp = |p: [f64; 3]| {
        [
            p[0].clamp(0.0, body.first_max()),
            p[1].clamp(0.0, 1.0),
            p[2].rem_euclid(TWO_PI),
        ]
    };
    let score = |p: &[f64; 3]| sign * body.delta(p[0], p[1], p[2]);
    let mut best = start;
    let mut best_score = score(&best);
    let mut h = steps;
    for _ in 0..REFINE_PASSES {
        for v in h.iter_mut() {
            *v *= 0.5;
        }
        // walk while some neighbour improves; bounded so a flat ridge
        // cannot spin forever
        for _ in 0..64 {
            let mut moved = false;
            let centre = best;
            for di in -2i32..=2 {
                for dj in -2i32..=2 {
                    for dk in -2i32..=2 {
                        if di == 0 && dj == 0 && dk == 0 {
                            continue;
                        }
                        let cand = clamp([
                            centre[0] + di as f64 * h[0],
                            centre[1] + dj as f64 * h[1],
                            centre[2] + dk as f64 * h[2],
                        ]);
                        let s = score(&cand);
                        if s > best_score + TIE_TOLERANCE {
                            best = cand;
                            best_score = s;
                            moved = true;
                        }
                    }
                }
            }
            if !moved {
                break;
            }
        }
    }
    BodyPoint::at(body, best[0], best[1], best[2])
}

/// One row of a family sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub max_delta: f64,
    pub min_delta: f64,
}

/// Families that take a sweepable parameter, and which one.
pub fn sweep_parameter(label: &str) -> Option<&'static str> {
    match label {
        "f3" | "f4" | "f5" => Some("lambda"),
        "k_theta_alpha" | "kθα" | "ktheta_alpha" | "m_alpha_upper" | "g_alpha_upper" => {
            Some("alpha")
        }
        _ => None,
    }
}

/// `Δ` of a catalog family over a parameter grid, extremes taken over the
/// rotation grid. Families whose constructor takes `θ` get it directly; the
/// others are rotated by `θ`.
pub fn family_sweep(label: &str, param_grid: &[f64], theta_grid: &[f64]) -> Result<Vec<SweepRow>> {
    let which = sweep_parameter(label).ok_or_else(|| {
        if catalog::LABELS.contains(&label) {
            Error::InvalidGrid(format!("family `{label}` has no sweep parameter"))
        } else {
            Error::UnknownLabel(label.to_string())
        }
    })?;
    if theta_grid.is_empty() {
        return Err(Error::InvalidGrid("empty theta grid".into()));
    }
    let takes_theta = matches!(label, "f3" | "k_theta_alpha" | "kθα" | "ktheta_alpha");
    param_grid
        .iter()
        .map(|&param| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &theta in theta_grid {
                let params = LabelParams {
                    lambda: (which == "lambda").then_some(param),
                    alpha: (which == "alpha").then_some(param),
                    theta: if takes_theta { theta } else { 0.0 },
                };
                let mut f = catalog::by_label(label, &params, SERIES_MIN_ORDER)?;
                if !takes_theta && theta != 0.0 {
                    f = f.rotate(theta);
                }
                let d = delta(&f)?;
                lo = lo.min(d);
                hi = hi.max(d);
            }
            Ok(SweepRow {
                param,
                max_delta: hi,
                min_delta: lo,
            })
        })
        .collect()
}

/// Outcome of a randomized scan of a body against the class bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: ClassSpec,
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
    pub lower: f64,
    pub upper: f64,
    pub min_delta: f64,
    pub max_delta: f64,
}

/// Seeded uniform body coordinates `(first, fraction, phase)`.
///
/// The generator is ChaCha8 seeded from `seed`, so the stream is identical
/// across platforms and runs.
pub fn body_samples(body: &Body, samples: usize, seed: u64) -> impl Iterator<Item = [f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first_max = body.first_max();
    (0..samples).map(move |_| {
        [
            rng.gen::<f64>() * first_max,
            rng.gen::<f64>(),
            rng.gen::<f64>() * TWO_PI,
        ]
    })
}

/// Draws `samples` body points and counts those with `Δ` outside
/// `[lower − 1e−9, upper + 1e−9]`.
pub fn bound_violation_scan(spec: &ClassSpec, samples: usize, seed: u64) -> Result<ScanReport> {
    let body = Body::for_class(spec)?;
    let bounds = bound_delta(spec)?;
    let mut violations = 0;
    let mut min_delta = f64::INFINITY;
    let mut max_delta = f64::NEG_INFINITY;
    for [x, t, phi] in body_samples(&body, samples, seed) {
        let d = body.delta(x, t, phi);
        if d < bounds.lower - VIOLATION_SLACK || d > bounds.upper + VIOLATION_SLACK {
            violations += 1;
        }
        min_delta = min_delta.min(d);
        max_delta = max_delta.max(d);
    }
    Ok(ScanReport {
        spec: *spec,
        samples,
        seed,
        violations,
        lower: bounds.lower,
        upper: bounds.upper,
        min_delta,
        max_delta,
    })
}
