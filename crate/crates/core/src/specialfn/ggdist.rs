//! Generalized-Gamma distribution (Stacy form).
//!
//! Density on x > 0 with scale a and shapes d, p:
//!
//! ```text
//! f(x) = p x^{d−1} exp(−(x/a)^p) / (a^d Γ(d/p))
//! ```
//!
//! Special cases: p = 1 is Gamma(shape d, scale a); d = p is Weibull;
//! d = p = 1 is exponential. The c-th raw moment is
//! a^c Γ((d+c)/p) / Γ(d/p).
//!
//! This is the law used to approximate aggregate interference power by
//! matching its first three moments (see the `gga` module), and it is
//! also the exact law of a single fixed generalized-Gamma interferer.
//!
//! # References
//!
//! * Stacy, *A generalization of the Gamma distribution*, Ann. Math.
//!   Statist. 33 (1962).

use crate::error::{Error, Result};
use crate::specialfn::gamma::{ln_gamma_unchecked, lower_incomplete_gamma_regularized};

/// Generalized-Gamma parameter triple (a: scale, d, p: shapes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GGDist {
    a: f64,
    d: f64,
    p: f64,
}

impl GGDist {
    /// Construct with validation: all three parameters must be
    /// positive and finite.
    ///
    /// # Errors
    ///
    /// [`Error::Config`] naming the offending parameter.
    pub fn new(a: f64, d: f64, p: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("d", d), ("p", p)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Config(format!(
                    "generalized-Gamma parameter {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { a, d, p })
    }

    /// Scale parameter a.
    #[must_use]
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Shape parameter d.
    #[must_use]
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Shape parameter p.
    #[must_use]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Natural log of the density at x > 0.
    #[must_use]
    pub fn ln_pdf(&self, x: f64) -> f64 {
        debug_assert!(x > 0.0);
        self.p.ln() - self.d * self.a.ln() - ln_gamma_unchecked(self.d / self.p)
            + (self.d - 1.0) * x.ln()
            - (x / self.a).powf(self.p)
    }

    /// Density at x ≥ 0 (zero for x < 0 by convention).
    #[must_use]
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            // x^{d−1} endpoint: finite only for d ≥ 1.
            return if self.d > 1.0 {
                0.0
            } else if self.d == 1.0 {
                (self.p.ln() - self.a.ln() - ln_gamma_unchecked(1.0 / self.p)).exp()
            } else {
                f64::INFINITY
            };
        }
        self.ln_pdf(x).exp()
    }

    /// Distribution function P(X ≤ x) = P(d/p, (x/a)^p) via the
    /// regularized lower incomplete Gamma function.
    #[must_use]
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        lower_incomplete_gamma_regularized(self.d / self.p, (x / self.a).powf(self.p))
            .expect("arguments are positive by construction")
    }

    /// Raw moment E\[X^c\] = a^c Γ((d+c)/p) / Γ(d/p) for c ≥ 0.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for negative order.
    pub fn moment(&self, c: f64) -> Result<f64> {
        if !(c >= 0.0) {
            return Err(Error::Domain(format!("moment order must be >= 0, got {c}")));
        }
        Ok((c * self.a.ln() + ln_gamma_unchecked((self.d + c) / self.p)
            - ln_gamma_unchecked(self.d / self.p))
        .exp())
    }
}
