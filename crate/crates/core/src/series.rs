//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` stores `a₀, a₁, …, a_N`. Every
//! operation is exact up to order `N`; products and quotients simply drop
//! the terms beyond `N`. Logarithms and real powers are only defined for
//! series whose constant term is 1, with `log 1 = 0` fixing the branch.
//!
//! ```
//! use logcoef::series::TruncatedSeries;
//!
//! // z / (1 - z) = z + z² + z³ + …
//! let num = TruncatedSeries::identity(8);
//! let den = TruncatedSeries::from_real(&[1.0, -1.0], 8).unwrap();
//! let q = num.div(&den).unwrap();
//! assert!(q.coeffs()[1..].iter().all(|c| (c.re - 1.0).abs() < 1e-15));
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 32;

/// Smallest order a series may have; the functional needs `a₂` and `a₃`.
pub const MIN_ORDER: usize = 2;

/// How far a constant term may drift from 1 and still count as 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Power series `a₀ + a₁z + … + a_N z^N` with complex coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, zero-padding or truncating `coeffs`.
    pub fn new(coeffs: &[Complex64], order: usize) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(Error::OrderTooSmall(order));
        }
        let mut c = vec![ZERO; order + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Ok(Self { coeffs: c })
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(&c, order)
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::new(&[], order)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::new(&[ONE], order)
    }

    /// The series `z`.
    ///
    /// # Panics
    ///
    /// If `order < 2`.
    pub fn identity(order: usize) -> Self {
        Self::new(&[ZERO, ONE], order).expect("order below minimum")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    fn require_unit_constant(&self) -> Result<()> {
        let c = self.coeffs[0];
        if (c - ONE).norm() <= UNIT_TOLERANCE {
            Ok(())
        } else {
            Err(Error::Normalization { re: c.re, im: c.im })
        }
    }

    /// Same coefficients at a different order (padded or truncated).
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(&self.coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    ///
    /// Terms are paired symmetrically so that `a.mul(b)` and `b.mul(a)` are
    /// bit-identical.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            let mut lo = 0;
            let mut hi = k;
            while lo < hi {
                acc += a[lo] * b[hi] + a[hi] * b[lo];
                lo += 1;
                hi -= 1;
            }
            if lo == hi {
                acc += a[lo] * b[lo];
            }
            *slot = acc;
        }
        Ok(Self { coeffs: out })
    }

    /// Quotient `self / divisor`, solved triangularly.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.same_order(divisor)?;
        let b = &divisor.coeffs;
        if b[0] == ZERO {
            return Err(Error::ZeroConstant);
        }
        let inv_b0 = b[0].inv();
        let mut q = vec![ZERO; self.coeffs.len()];
        for k in 0..q.len() {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= b[j] * q[k - j];
            }
            q[k] = acc * inv_b0;
        }
        Ok(Self { coeffs: q })
    }

    /// `log(self)` for a series with constant term 1.
    ///
    /// Solves `L′·a = a′` coefficient by coefficient:
    /// `k L_k = k a_k − Σ_{j=1}^{k−1} j L_j a_{k−j}`.
    pub fn log_unit(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let a = &self.coeffs;
        let mut l = vec![ZERO; a.len()];
        for k in 1..a.len() {
            let mut acc = a[k] * k as f64;
            for j in 1..k {
                acc -= l[j] * a[k - j] * j as f64;
            }
            l[k] = acc / k as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// `exp(self)` for a series with zero constant term.
    ///
    /// Solves `E′ = L′·E`: `k E_k = Σ_{j=1}^{k} j L_j E_{k−j}`.
    pub fn exp(&self) -> Result<Self> {
        let c = self.coeffs[0];
        if c.norm() > UNIT_TOLERANCE {
            return Err(Error::Normalization { re: c.re, im: c.im });
        }
        let l = &self.coeffs;
        let mut e = vec![ZERO; l.len()];
        e[0] = ONE;
        for k in 1..l.len() {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += l[j] * e[k - j] * j as f64;
            }
            e[k] = acc / k as f64;
        }
        Ok(Self { coeffs: e })
    }

    /// `self^beta` on the branch with `1^beta = 1`.
    ///
    /// Uses `a·P′ = β·a′·P`, i.e. `k P_k = Σ_{j=1}^{k} (βj − (k−j)) a_j P_{k−j}`.
    pub fn pow_real(&self, beta: f64) -> Result<Self> {
        self.require_unit_constant()?;
        let a = &self.coeffs;
        let mut p = vec![ZERO; a.len()];
        p[0] = ONE;
        for k in 1..a.len() {
            let mut acc = ZERO;
            for j in 1..=k {
                let w = beta * j as f64 - (k - j) as f64;
                acc += a[j] * p[k - j] * w;
            }
            p[k] = acc / k as f64;
        }
        Ok(Self { coeffs: p })
    }

    /// Antiderivative with zero constant term: `r_k = a_{k−1} / k`.
    pub fn integrate_termwise(&self) -> Self {
        let n = self.order();
        let mut r = vec![ZERO; n + 1];
        for (k, c) in self.coeffs[..n].iter().enumerate() {
            r[k + 1] = c / (k + 1) as f64;
        }
        Self { coeffs: r }
    }

    /// Termwise derivative; the top coefficient becomes zero.
    pub fn differentiate(&self) -> Self {
        let n = self.order();
        let mut r = vec![ZERO; n + 1];
        for k in 1..=n {
            r[k - 1] = self.coeffs[k] * k as f64;
        }
        Self { coeffs: r }
    }

    /// Horner evaluation of the truncated polynomial. No tail estimate.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// `Σ a_k z^{k−s}` for `k ≥ s`: drops the first `s` coefficients and
    /// pads at the top so the order is unchanged.
    pub fn shift_down(&self, s: usize) -> Self {
        let n = self.order();
        let mut r = vec![ZERO; n + 1];
        if s <= n {
            r[..=n - s].copy_from_slice(&self.coeffs[s..]);
        }
        Self { coeffs: r }
    }

    /// Multiplication by `z^s`, truncated.
    pub fn shift_up(&self, s: usize) -> Self {
        let n = self.order();
        let mut r = vec![ZERO; n + 1];
        if s <= n {
            r[s..].copy_from_slice(&self.coeffs[..=n - s]);
        }
        Self { coeffs: r }
    }

    /// Largest coefficientwise distance to `other`, over the common range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// A series of the form `z + a₂z² + a₃z³ + …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TruncatedSeries", into = "TruncatedSeries")]
pub struct NormalizedSeries {
    inner: TruncatedSeries,
}

impl NormalizedSeries {
    /// Requires `a₀ = 0` and `a₁ = 1` exactly.
    pub fn new(inner: TruncatedSeries) -> Result<Self> {
        if inner.coeffs[0] != ZERO || inner.coeffs[1] != ONE {
            return Err(Error::NotNormalized);
        }
        Ok(Self { inner })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::new(TruncatedSeries::new(&[ZERO, ONE], order)?)
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.inner
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn a(&self, n: usize) -> Complex64 {
        self.inner.coeff(n)
    }

    /// `f(z)/z`, a series with constant term 1 and order `N − 1`.
    pub fn over_z(&self) -> TruncatedSeries {
        let n = self.order();
        TruncatedSeries {
            coeffs: self.inner.coeffs[1..=n].to_vec(),
        }
    }

    /// Coefficients of `e^{−iθ} f(e^{iθ} z)`: `a_n ↦ e^{i(n−1)θ} a_n`.
    pub fn rotate(&self, theta: f64) -> Self {
        let coeffs = self
            .inner
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n <= 1 {
                    *c
                } else {
                    c * Complex64::from_polar(1.0, (n as f64 - 1.0) * theta)
                }
            })
            .collect();
        Self {
            inner: TruncatedSeries { coeffs },
        }
    }

    pub fn into_inner(self) -> TruncatedSeries {
        self.inner
    }
}

impl TryFrom<TruncatedSeries> for NormalizedSeries {
    type Error = Error;

    fn try_from(value: TruncatedSeries) -> Result<Self> {
        Self::new(value)
    }
}

impl From<NormalizedSeries> for TruncatedSeries {
    fn from(value: NormalizedSeries) -> Self {
        value.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(coeffs: &[f64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs, n).unwrap()
    }

    fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) {
        let d = a.max_abs_diff(b);
        assert!(d <= tol, "series differ by {d:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn construction() {
        assert_eq!(TruncatedSeries::zero(1), Err(Error::OrderTooSmall(1)));
        let s = real(&[1.0, 2.0, 3.0, 4.0], 2);
        assert_eq!(s.coeffs().len(), 3);
        assert_eq!(s.coeff(7), c(0.0));
    }

    #[test]
    fn difference_of_squares() {
        let p = real(&[1.0, 1.0], 6).mul(&real(&[1.0, -1.0], 6)).unwrap();
        assert_eq!(p, real(&[1.0, 0.0, -1.0], 6));
    }

    #[test]
    fn multiplicative_identity() {
        let a = real(&[1.0, 1.0, 1.0], 5);
        assert_eq!(a.mul(&TruncatedSeries::one(5).unwrap()).unwrap(), a);
    }

    #[test]
    fn mul_rejects_mismatched_orders() {
        let err = real(&[1.0], 4).mul(&real(&[1.0], 5)).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 4, right: 5 });
    }

    #[test]
    fn inverse_times_self_is_one() {
        let b = real(&[1.0, -std::f64::consts::SQRT_2, 1.0], 32);
        let one = TruncatedSeries::one(32).unwrap();
        let inv = one.div(&b).unwrap();
        close(&inv.mul(&b).unwrap(), &one, 1e-13);
    }

    #[test]
    fn geometric_series() {
        let q = TruncatedSeries::identity(10)
            .div(&real(&[1.0, -1.0], 10))
            .unwrap();
        let mut expect = vec![1.0; 11];
        expect[0] = 0.0;
        assert_eq!(q, real(&expect, 10));
    }

    #[test]
    fn f4_denominator_expansion_at_half() {
        let lambda = 0.5_f64;
        let den = real(&[1.0, -(2.0 * lambda).sqrt(), lambda], 8);
        let q = TruncatedSeries::identity(8).div(&den).unwrap();
        assert!((q.coeff(1) - c(1.0)).norm() < 1e-15);
        assert!((q.coeff(2) - c(1.0)).norm() < 1e-15);
        assert!((q.coeff(3) - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn f5_denominator_expansion() {
        let q = TruncatedSeries::identity(8)
            .div(&real(&[1.0, -1.0, 0.3], 8))
            .unwrap();
        assert!((q.coeff(2) - c(1.0)).norm() < 1e-15);
        assert!((q.coeff(3) - c(0.7)).norm() < 1e-15);
    }

    #[test]
    fn div_by_zero_constant() {
        let err = real(&[1.0], 4).div(&real(&[0.0, 1.0], 4)).unwrap_err();
        assert_eq!(err, Error::ZeroConstant);
    }

    #[test]
    fn log_of_one_is_zero() {
        let l = TruncatedSeries::one(12).unwrap().log_unit().unwrap();
        assert_eq!(l, TruncatedSeries::zero(12).unwrap());
    }

    #[test]
    fn log_of_koebe_quotient() {
        // 1/(1-z)^2 has logarithm 2 Σ z^n / n.
        let n = 16;
        let den = real(&[1.0, -2.0, 1.0], n);
        let base = TruncatedSeries::one(n).unwrap().div(&den).unwrap();
        let l = base.log_unit().unwrap();
        for k in 1..=n {
            assert!((l.coeff(k) - c(2.0 / k as f64)).norm() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn log_one_minus_z_squared_matches_mercator() {
        let n = 20;
        let l = real(&[1.0, 0.0, -1.0], n).log_unit().unwrap();
        // Mercator: log(1 - w) = -Σ w^m / m with w = z².
        let mut oracle = vec![0.0; n + 1];
        let mut m = 1;
        while 2 * m <= n {
            oracle[2 * m] = -1.0 / m as f64;
            m += 1;
        }
        close(&l, &real(&oracle, n), 1e-15);
    }

    #[test]
    fn log_requires_unit_constant() {
        let err = real(&[2.0, 1.0], 4).log_unit().unwrap_err();
        assert!(matches!(err, Error::Normalization { .. }));
        assert!(real(&[0.0, 1.0], 4).pow_real(0.5).is_err());
        assert!(real(&[1.0, 1.0], 4).exp().is_err());
    }

    #[test]
    fn sqrt_binomial() {
        let p = real(&[1.0, 0.0, -1.0], 8).pow_real(0.5).unwrap();
        assert!((p.coeff(2) - c(-0.5)).norm() < 1e-15);
        assert!((p.coeff(4) - c(-0.125)).norm() < 1e-15);
        assert!((p.coeff(6) - c(-0.0625)).norm() < 1e-15);
        assert_eq!(p.coeff(1), c(0.0));
    }

    #[test]
    fn ozaki_extremal_pipeline() {
        // f' = (1 - z²)^{1/2}, f = z - z³/6 - …
        let f = real(&[1.0, 0.0, -1.0], 10)
            .pow_real(0.5)
            .unwrap()
            .integrate_termwise();
        assert!((f.coeff(1) - c(1.0)).norm() < 1e-15);
        assert!((f.coeff(3) - c(-1.0 / 6.0)).norm() < 1e-15);
    }

    #[test]
    fn odd_alpha_convex_pipeline_at_one() {
        // ((1 - t²)^{-1}) divided termwise by 1 + k, then ^1 and times z.
        let n = 10;
        let b = real(&[1.0, 0.0, -1.0], n).pow_real(-1.0).unwrap();
        let s: Vec<Complex64> = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, v)| v / (1.0 + k as f64))
            .collect();
        let s = TruncatedSeries::new(&s, n).unwrap().pow_real(1.0).unwrap();
        let f = s.shift_up(1);
        assert!((f.coeff(3) - c(1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn integrate_and_differentiate() {
        assert_eq!(
            TruncatedSeries::one(4).unwrap().integrate_termwise(),
            TruncatedSeries::identity(4)
        );
        let f = real(&[1.0, 0.0, -0.5], 6).integrate_termwise();
        assert!((f.coeff(3) - c(-1.0 / 6.0)).norm() < 1e-16);
        assert_eq!(
            TruncatedSeries::identity(4).differentiate(),
            TruncatedSeries::one(4).unwrap()
        );
        assert_eq!(
            real(&[0.0, 1.0, 0.0, 1.0 / 3.0], 5).differentiate(),
            real(&[1.0, 0.0, 1.0], 5)
        );
        assert_eq!(
            real(&[0.0, 1.0, -0.5], 5).differentiate(),
            real(&[1.0, -1.0], 5)
        );
    }

    #[test]
    fn evaluation() {
        let geo = TruncatedSeries::one(40)
            .unwrap()
            .div(&real(&[1.0, -1.0], 40))
            .unwrap();
        assert!((geo.evaluate(c(0.5)) - c(2.0)).norm() < 1e-6);
        let koebe = TruncatedSeries::identity(60)
            .div(&real(&[1.0, -2.0, 1.0], 60))
            .unwrap();
        assert!((koebe.evaluate(c(0.5)) - c(2.0)).norm() < 1e-4);
        let s = real(&[3.0, 1.0, 4.0], 5);
        assert_eq!(s.evaluate(c(0.0)), c(3.0));
    }

    #[test]
    fn normalized_series_invariants() {
        assert!(NormalizedSeries::new(real(&[0.0, 1.0, 2.0], 4)).is_ok());
        assert_eq!(
            NormalizedSeries::new(real(&[0.0, 2.0], 4)),
            Err(Error::NotNormalized)
        );
        assert_eq!(
            NormalizedSeries::new(real(&[1.0, 1.0], 4)),
            Err(Error::NotNormalized)
        );
        let f = NormalizedSeries::new(real(&[0.0, 1.0, 2.0, 3.0], 4)).unwrap();
        assert_eq!(f.over_z(), real(&[1.0, 2.0, 3.0], 3));
    }

    #[test]
    fn rotation_multiplies_by_phase() {
        let f = NormalizedSeries::new(real(&[0.0, 1.0, 2.0, 3.0], 4)).unwrap();
        let g = f.rotate(std::f64::consts::PI);
        assert!((g.a(2) - c(-2.0)).norm() < 1e-15);
        assert!((g.a(3) - c(3.0)).norm() < 1e-14);
    }
}
