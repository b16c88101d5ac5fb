//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by configuration validation and numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A mathematical function was called outside its domain
    /// (e.g. `ln_gamma` of a non-positive argument).
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario or parameter struct failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// An iterative routine stopped before reaching its tolerance.
    /// Carries the best estimate so callers can decide whether the
    /// achieved accuracy is still useful.
    #[error("{what} did not converge: best {best:e}, achieved error {achieved:e} > requested {requested:e}")]
    Nonconvergence {
        what: &'static str,
        best: f64,
        achieved: f64,
        requested: f64,
    },

    /// Moment triple cannot correspond to a nondegenerate positive
    /// random variable (e.g. zero variance).
    #[error("degenerate moments: {0}")]
    DegenerateMoments(String),

    /// The generalized-Gamma moment fit stopped before its tolerance.
    /// Carries the best iterate and its relative moment mismatches so
    /// callers can decide whether the partial fit is still usable.
    #[error(
        "generalized-Gamma fit did not converge after {iterations} iterations: \
         max relative moment mismatch {max_residual:e} > {requested:e}; \
         best (a, d, p) = ({a:e}, {d:e}, {p:e})"
    )]
    GgaFitNonconvergence {
        a: f64,
        d: f64,
        p: f64,
        residuals: [f64; 3],
        max_residual: f64,
        requested: f64,
        iterations: u32,
    },

    /// Partial fractions of a Gamma sum need pairwise distinct rates.
    /// Equal-rate components must be merged (shapes added) or routed
    /// through the i.i.d. path.
    #[error("coincident Gamma rates near {0:e}: merge equal-rate components (add their shapes) or use the i.i.d. form")]
    CoincidentRates(f64),
}
