//! The Gaussian integrals behind the asymptotic estimate.
//!
//! Integrating `exp(-S_{m,0})`, with `S_{m,0} = sum x_i^2 + (sum x_i)^2`, one
//! variable at a time produces the family `S_{m,l}`; each step contributes a
//! factor `sqrt(pi l / (l + 1))` and the product telescopes to
//! `pi^{m/2} / sqrt(m + 1)`.

use std::f64::consts::PI;

use super::quadrature::{self, Envelope};
use crate::error::{Error, Result};

/// `int exp(-(a x^2 + b x + c)) dx = exp(b^2 / 4a - c) sqrt(pi / a)`.
pub fn gaussian_1d(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::invalid("quadratic coefficient must be positive"));
    }
    Ok((b * b / (4.0 * a) - c).exp() * (PI / a).sqrt())
}

/// `S_{m,l}`, a quadratic form in `x_{l+1}, ..., x_m`:
/// `(l+2)/(l+1) * sum x_j^2 + 2/(l+1) * sum_{i<j} x_i x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    m: usize,
    l: usize,
}

impl QuadraticForm {
    pub fn new(m: usize, l: usize) -> Result<Self> {
        if l > m {
            return Err(Error::invalid(format!(
                "reduction level {l} exceeds the number of variables {m}"
            )));
        }
        Ok(QuadraticForm { m, l })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of free variables, `m - l`.
    pub fn arity(&self) -> usize {
        self.m - self.l
    }

    fn square_coefficient(&self) -> f64 {
        (self.l + 2) as f64 / (self.l + 1) as f64
    }

    fn cross_coefficient(&self) -> f64 {
        2.0 / (self.l + 1) as f64
    }

    /// Value at `(x_{l+1}, ..., x_m)`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.arity() {
            return Err(Error::LengthMismatch {
                expected: self.arity(),
                actual: x.len(),
            });
        }
        let squares: f64 = x.iter().map(|v| v * v).sum();
        let sum: f64 = x.iter().sum();
        if self.l == 0 {
            return Ok(squares + sum * sum);
        }
        // sum_{i<j} x_i x_j = ((sum x)^2 - sum x^2) / 2
        let cross = (sum * sum - squares) / 2.0;
        Ok(self.square_coefficient() * squares + self.cross_coefficient() * cross)
    }

    /// Coefficients `(a, b, c)` of `S_{m,l}` as a quadratic in `x_{l+1}`, with
    /// `x_rest = (x_{l+2}, ..., x_m)` held fixed.
    pub fn coefficients_in_first(&self, x_rest: &[f64]) -> Result<(f64, f64, f64)> {
        if self.arity() == 0 {
            return Err(Error::invalid("form has no free variable"));
        }
        if x_rest.len() != self.arity() - 1 {
            return Err(Error::LengthMismatch {
                expected: self.arity() - 1,
                actual: x_rest.len(),
            });
        }
        let squares: f64 = x_rest.iter().map(|v| v * v).sum();
        let sum: f64 = x_rest.iter().sum();
        let a = self.square_coefficient();
        let b = self.cross_coefficient() * sum;
        let c = a * squares + self.cross_coefficient() * (sum * sum - squares) / 2.0;
        Ok((a, b, c))
    }
}

/// `S_{m,l}(x)` with `x = (x_{l+1}, ..., x_m)`.
pub fn s_ml(m: usize, l: usize, x: &[f64]) -> Result<f64> {
    QuadraticForm::new(m, l)?.evaluate(x)
}

/// Numeric and closed-form sides of one reduction step: the quadrature of
/// `exp(-S_{m,l-1})` over `x_l`, and `sqrt(pi l / (l+1)) exp(-S_{m,l})`.
pub fn s_ml_reduction_values(m: usize, l: usize, x_rest: &[f64], tol: f64) -> Result<(f64, f64)> {
    if l == 0 || l > m {
        return Err(Error::invalid(format!(
            "reduction level must lie in 1..={m}"
        )));
    }
    let outer = QuadraticForm::new(m, l - 1)?;
    let inner = QuadraticForm::new(m, l)?;
    let closed = (PI * l as f64 / (l + 1) as f64).sqrt() * (-inner.evaluate(x_rest)?).exp();

    let mut point = Vec::with_capacity(x_rest.len() + 1);
    point.push(0.0);
    point.extend_from_slice(x_rest);
    let exponent = |t: f64| {
        let mut p = point.clone();
        p[0] = t;
        outer.evaluate(&p).expect("length checked above")
    };
    let envelope = Envelope::of_quadratic_exponent(exponent)?;
    let numeric = quadrature::quadrature_1d(|t| (-exponent(t)).exp(), envelope, tol / 10.0)?;
    Ok((numeric, closed))
}

/// True iff integrating `x_l` out of `exp(-S_{m,l-1})` numerically gives
/// `sqrt(pi l / (l+1)) exp(-S_{m,l})` to within `tol`.
pub fn s_ml_reduction_check(m: usize, l: usize, x_rest: &[f64], tol: f64) -> Result<bool> {
    let (numeric, closed) = s_ml_reduction_values(m, l, x_rest, tol)?;
    Ok((numeric - closed).abs() <= tol)
}

/// `int_{R^m} exp(-S_{m,0}) = pi^{m/2} / sqrt(m + 1)`.
pub fn gaussian_multi(m: usize) -> f64 {
    PI.powf(m as f64 / 2.0) / ((m + 1) as f64).sqrt()
}

/// `prod_{l=1..m} sqrt(pi l / (l+1))`, factor by factor.
pub fn telescoping_product(m: usize) -> f64 {
    (1..=m)
        .map(|l| (PI * l as f64 / (l + 1) as f64).sqrt())
        .product()
}

/// `int_{R^{k-1}} exp(-k S_{k-1,0}) = pi^{(k-1)/2} k^{-k/2}`.
pub fn scaled_gaussian_multi(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid("alphabet size must be at least 2"));
    }
    let k = k as f64;
    Ok(PI.powf((k - 1.0) / 2.0) * k.powf(-k / 2.0))
}

/// Highest dimension for which [`nested_gaussian_integral`] runs.
pub const MAX_NESTED_DIMS: usize = 3;

/// Numeric `int_{R^m} exp(-scale * S_{m,0})` by nested quadrature, `m <= 3`.
pub fn nested_gaussian_integral(m: usize, scale: f64, tol: f64) -> Result<f64> {
    if m > MAX_NESTED_DIMS {
        return Err(Error::invalid(format!(
            "nested quadrature supports at most {MAX_NESTED_DIMS} dimensions"
        )));
    }
    if !(scale > 0.0) {
        return Err(Error::invalid("scale must be positive"));
    }
    let form = QuadraticForm::new(m, 0)?;
    let f = |x: &[f64]| (-scale * form.evaluate(x).expect("dimension fixed")).exp();
    // S_{m,0} >= x_i^2 in every coordinate.
    quadrature::nested_quadrature(m, &f, Envelope::centered(scale), tol)
}
