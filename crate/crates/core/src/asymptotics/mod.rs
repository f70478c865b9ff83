//! Asymptotic estimate of `f_k(n)` and the integrals it rests on.
//!
//! The main term is `f_k(n) ~ k^{2n + k/2} (4 pi n)^{(1-k)/2}` for `k >= 2`,
//! so the chance that a uniform string of length `2n` is an abelian square
//! behaves like `k^{k/2} (4 pi n)^{(1-k)/2}`. Both are carried as natural
//! logarithms; exponentiating overflows `f64` once the log passes roughly 709.

mod gaussian;
mod quadrature;

use std::f64::consts::PI;

pub use gaussian::{
    gaussian_1d, gaussian_multi, nested_gaussian_integral, s_ml, s_ml_reduction_check,
    s_ml_reduction_values, scaled_gaussian_multi, telescoping_product, QuadraticForm,
    MAX_NESTED_DIMS,
};
pub use quadrature::{nested_quadrature, quadrature_1d, Envelope, EVALUATION_BUDGET};

use crate::counting::{BigCount, Counter, Method};
use crate::error::{Error, Result};

/// A positive real stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue(f64);

impl LogValue {
    pub fn from_ln(ln: f64) -> Self {
        LogValue(ln)
    }

    pub fn of_count(count: &BigCount) -> Self {
        LogValue(count.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn log10(self) -> f64 {
        self.0 / std::f64::consts::LN_10
    }

    /// The value itself; infinite past about `exp(709)`.
    pub fn exp(self) -> f64 {
        self.0.exp()
    }

    /// Whether [`LogValue::exp`] is finite.
    pub fn is_representable(self) -> bool {
        self.0.exp().is_finite()
    }
}

/// `n ln n - n + ln(2 pi n) / 2`, the log of Stirling's main term for `n!`.
pub fn log_stirling(n: f64) -> Result<f64> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::invalid(
            "Stirling's formula needs a positive argument",
        ));
    }
    Ok(n * n.ln() - n + 0.5 * (2.0 * PI * n).ln())
}

fn check_estimate_args(k: usize, n: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid("the asymptotic estimate needs k >= 2"));
    }
    if n == 0 {
        return Err(Error::invalid("the asymptotic estimate needs n >= 1"));
    }
    Ok(())
}

/// `ln(k^{2n + k/2} (4 pi n)^{(1-k)/2})`.
pub fn log_asymptotic(k: usize, n: u64) -> Result<LogValue> {
    check_estimate_args(k, n)?;
    let (kf, nf) = (k as f64, n as f64);
    Ok(LogValue(
        (2.0 * nf + kf / 2.0) * kf.ln() + (1.0 - kf) / 2.0 * (4.0 * PI * nf).ln(),
    ))
}

/// `ln(k^{k/2} (4 pi n)^{(1-k)/2})`, the estimated probability that a uniform
/// string of length `2n` is an abelian square.
pub fn log_probability(k: usize, n: u64) -> Result<LogValue> {
    check_estimate_args(k, n)?;
    let (kf, nf) = (k as f64, n as f64);
    Ok(LogValue(
        kf / 2.0 * kf.ln() + (1.0 - kf) / 2.0 * (4.0 * PI * nf).ln(),
    ))
}

/// One row of [`ratio_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: u64,
    pub exact: BigCount,
    pub estimate: LogValue,
    /// `exact / estimate`, formed in log-space.
    pub ratio: f64,
}

/// Exact `f_k(n)` against the asymptotic estimate for each `n` in `ns`.
///
/// Exact values come from the recurrence through `counter`'s table, so a
/// list of increasing `n` costs little more than its largest entry.
pub fn ratio_report(counter: &Counter, k: usize, ns: &[u64]) -> Result<Vec<RatioRow>> {
    ns.iter()
        .map(|&n| {
            let estimate = log_asymptotic(k, n)?;
            let size = usize::try_from(n).map_err(|_| Error::invalid("n too large"))?;
            let exact = counter.count(k, size, Method::Recurrence)?;
            let ratio = (exact.ln() - estimate.ln()).exp();
            Ok(RatioRow {
                n,
                exact,
                estimate,
                ratio,
            })
        })
        .collect()
}
