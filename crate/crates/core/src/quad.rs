//! Tanh-sinh quadrature on `[0, 1]` for complex integrands.
//!
//! Used by the point evaluators of the integral-defined catalog entries,
//! where the integrand is smooth inside the interval but may have an
//! algebraic endpoint singularity at 0 and a sharp peak at 1 when `z`
//! approaches the unit circle.

use num_complex::Complex64;

const T_MAX: f64 = 4.0;
const MAX_LEVEL: u32 = 12;
const REL_TOL: f64 = 1e-14;

/// `∫₀¹ f(x) dx`, refined level by level until two successive estimates agree.
pub fn integrate_unit<F>(f: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| -> (f64, f64) {
        let u = half_pi * t.sinh();
        // x = 1/(1 + e^{-2u}) written to stay accurate on both ends
        let x = if u >= 0.0 {
            1.0 / (1.0 + (-2.0 * u).exp())
        } else {
            let e = (2.0 * u).exp();
            e / (1.0 + e)
        };
        let ch = u.cosh();
        let w = 0.5 * half_pi * t.cosh() / (ch * ch);
        (x, w)
    };
    let sample = |t: f64| -> Complex64 {
        let (x, w) = node(t);
        if w == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            f(x) * w
        }
    };

    let mut h = 1.0;
    let mut sum = sample(0.0);
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        let t = k as f64 * h;
        sum += sample(t) + sample(-t);
        k += 1;
    }
    let mut estimate = sum * h;

    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        // only the odd multiples of the new step are new nodes
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            let t = k as f64 * h;
            sum += sample(t) + sample(-t);
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= REL_TOL * estimate.norm().max(1e-300) {
            break;
        }
    }
    estimate
}
