//! Logarithmic coefficients of normalized analytic functions.
//!
//! For `f(z) = z + a₂z² + a₃z³ + …` the logarithmic coefficients are
//! defined by `log(f(z)/z) = 2 Σ γ_n z^n`, so that `γ₁ = a₂/2` and
//! `γ₂ = (a₃ − a₂²/2)/2`. This crate studies the functional
//! `Δ = |γ₂| − |γ₁|` on four classes of univalent functions:
//!
//! * `S`, all univalent functions, where `−√2/2 ≤ Δ ≤ 1/2`;
//! * `U(λ)`, `|(z/f)² f′ − 1| < λ`;
//! * `M(α)`, the α-convex (Mocanu) functions;
//! * `G(α)`, the Ozaki class `Re[1 + z f″/f′] < 1 + α/2`.
//!
//! Modules, bottom-up:
//!
//! * [`series`]: truncated complex power series (product, quotient,
//!   logarithm, real powers, termwise calculus);
//! * [`catalog`]: every named extremal function with series and point
//!   evaluators;
//! * [`functional`]: `γ₁`, `γ₂` and `Δ`;
//! * [`classes`]: class descriptors, membership sampling on disk grids,
//!   the Schwarz-coefficient maps and the auxiliary coefficient inequalities;
//! * [`bounds`]: the closed-form bounds on `Δ` per class;
//! * [`search`]: brute-force extremes of `Δ` over the coefficient
//!   relaxations, family sweeps and randomized violation scans.
//!
//! ```
//! use logcoef::{bounds, catalog, classes::ClassSpec, functional};
//!
//! let f = catalog::f4(0.5, 32).unwrap();
//! let d = functional::delta(&f).unwrap();
//! let b = bounds::bound_delta(&ClassSpec::u(0.5).unwrap()).unwrap();
//! assert!((d - b.lower).abs() < 1e-12);
//! ```
//!
//! The accompanying guide under `book/` walks through each piece; its code
//! listings are compiled as doctests of this crate.

pub mod bounds;
pub mod catalog;
pub mod classes;
pub mod error;
pub mod functional;
pub mod quad;
pub mod search;
pub mod series;

pub use error::{Error, Result};

/// Sequential or rayon-parallel evaluation. Results never depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/series.md")]
    pub struct Series;
    #[doc = include_str!("../../../book/src/catalog.md")]
    pub struct Catalog;
    #[doc = include_str!("../../../book/src/logarithmic-coefficients.md")]
    pub struct LogarithmicCoefficients;
    #[doc = include_str!("../../../book/src/classes.md")]
    pub struct Classes;
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub struct Bounds;
    #[doc = include_str!("../../../book/src/search.md")]
    pub struct Search;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
