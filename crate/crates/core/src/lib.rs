//! Outage probability of a dual-hop amplify-and-forward relay-selection
//! link under co-channel interference.
//!
//! The system model: a source communicates with a destination through
//! one of J candidate amplify-and-forward relays (the selected relay
//! maximizes the end-to-end SINR). Every hop experiences Nakagami-m
//! fading, thermal noise, and co-channel interference — either a
//! Poisson field of interferers scattered over a disc (the *random*
//! track) or a finite set of interferers at known positions (the
//! *fixed* track). An outage occurs when the best relay's end-to-end
//! SINR falls below a threshold γ_th = 2^{2R} − 1 set by the target
//! rate R.
//!
//! The crate computes the outage probability along two independent
//! routes so each can validate the other:
//!
//! * **Analytic** — per-hop SINR distributions (quadrature over the
//!   aggregate-interference law on the random track; exact
//!   sum-of-Gamma mixture algebra on the fixed track), combined
//!   through the exact dual-hop AF integral, plus closed forms,
//!   asymptotic expansions, and bounds where they exist.
//! * **Monte Carlo** — a vectorized, reproducible sampler of the full
//!   physical model, used as the oracle.
//!
//! Module map:
//!
//! * [`specialfn`] — Gamma-family functions, ₂F₁, generalized Gamma,
//!   Gauss–Kronrod quadrature, signed log-sum accumulation;
//! * [`interference`] — aggregate co-channel interference: path-loss
//!   moments, Poisson field moments, fixed-set interferer power;
//! * [`gga`] — moment-matched generalized-Gamma approximation of the
//!   aggregate interference law;
//! * [`hopdist`] — per-hop SINR distributions for both tracks;
//! * [`endtoend`] — dual-hop combination, relay selection, bounds and
//!   asymptotics;
//! * [`montecarlo`] — the simulation oracle;
//! * [`scenario`] — calibrated scenario presets and sweep drivers used
//!   by the CLI;
//! * [`error`] — the crate-wide error type.

pub mod error;
pub mod gga;
pub mod interference;
pub mod specialfn;

pub use error::{Error, Result};
