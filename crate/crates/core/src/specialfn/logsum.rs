//! Signed log-sum-exp accumulation.
//!
//! Long alternating sums of products of Gamma functions overflow `f64`
//! term-by-term long before the *sum* does (individual coefficient
//! magnitudes in the closed-form outage expressions exceed 1e300 while
//! the assembled probability sits in \[0, 1\]). The fix is the standard
//! one: carry every term as `(sign, ln|term|)` and fold terms together
//! with the log-sum-exp trick, keeping only the running total in that
//! same representation.
//!
//! [`SignedLogSum`] is that accumulator. Adding a term never leaves log
//! space, so intermediate magnitudes up to `exp(±~7e2)` per *term* pose
//! no problem; only the final [`SignedLogSum::value`] conversion can
//! underflow, and then harmlessly to ±0.

/// Running total of `Σ sᵢ · exp(lᵢ)`, stored as `(sign, ln|total|)`.
///
/// An empty (or exactly cancelled) sum has `sign == 0.0` and
/// `ln_abs == -∞`, i.e. the value 0.
#[derive(Debug, Clone, Copy)]
pub struct SignedLogSum {
    sign: f64,
    ln_abs: f64,
}

impl Default for SignedLogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl SignedLogSum {
    /// Empty sum (value 0).
    #[must_use]
    pub fn new() -> Self {
        Self {
            sign: 0.0,
            ln_abs: f64::NEG_INFINITY,
        }
    }

    /// Adds the term `sign · exp(ln_abs)`.
    ///
    /// A term with `sign == 0` or `ln_abs == -∞` is a no-op. Exact
    /// cancellation resets the accumulator to the empty state.
    pub fn add(&mut self, sign: f64, ln_abs: f64) {
        if sign == 0.0 || ln_abs == f64::NEG_INFINITY {
            return;
        }
        if self.sign == 0.0 {
            self.sign = sign.signum();
            self.ln_abs = ln_abs;
            return;
        }
        // Order so `hi` is the larger magnitude; the correction factor
        // exp(lo − hi) then lies in (0, 1] and ln_1p keeps precision.
        let (hi_sign, hi, lo_sign, lo) = if ln_abs > self.ln_abs {
            (sign.signum(), ln_abs, self.sign, self.ln_abs)
        } else {
            (self.sign, self.ln_abs, sign.signum(), ln_abs)
        };
        let ratio = (lo - hi).exp();
        if hi_sign == lo_sign {
            self.sign = hi_sign;
            self.ln_abs = hi + ratio.ln_1p();
        } else if ratio == 1.0 {
            // Equal magnitude, opposite sign: exact cancellation.
            self.sign = 0.0;
            self.ln_abs = f64::NEG_INFINITY;
        } else {
            self.sign = hi_sign;
            self.ln_abs = hi + (-ratio).ln_1p();
        }
    }

    /// The total as `(sign, ln|total|)`.
    #[must_use]
    pub fn signed_ln(&self) -> (f64, f64) {
        (self.sign, self.ln_abs)
    }

    /// The total as a plain `f64` (may under/overflow where the signed
    /// log form would not).
    #[must_use]
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}
