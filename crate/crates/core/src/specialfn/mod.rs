//! Scalar special functions and numerical utilities underpinning the
//! outage computations.
//!
//! * [`gamma`] — `ln Γ`, regularized incomplete Gamma P/Q, Beta,
//!   digamma, log-factorials;
//! * [`hyp2f1`] — Gauss hypergeometric ₂F₁ for real z < 1;
//! * [`ggdist`] — the three-parameter generalized Gamma distribution;
//! * [`quad`] — adaptive Gauss–Kronrod quadrature on finite and
//!   semi-infinite intervals;
//! * [`logsum`] — signed log-sum-exp accumulation for alternating
//!   sums whose terms overflow `f64`.
//!
//! Everything here is deterministic scalar math with no dependence on
//! the system model; the distribution modules build on these
//! primitives.

pub mod gamma;
pub mod ggdist;
pub mod hyp2f1;
pub mod logsum;
pub mod quad;

pub use gamma::{
    beta, digamma, ln_beta, ln_binomial, ln_factorial, ln_gamma,
    lower_incomplete_gamma_regularized, upper_incomplete_gamma_regularized,
};
pub use ggdist::GGDist;
pub use hyp2f1::{hyp2f1, hyp2f1_signed_ln};
pub use logsum::SignedLogSum;
pub use quad::{
    integrate_finite, integrate_semi_infinite, integrate_semi_infinite_scaled, QuadEstimate,
    QuadratureSpec,
};
