//! Adaptive Simpson quadrature over the whole real line for integrands with
//! Gaussian decay.
//!
//! The caller supplies an [`Envelope`] `peak * exp(-rate * (x - center)^2)`
//! bounding `|f|`. The line is truncated to `center ± R` with `R` chosen so
//! the envelope's tail mass is below `tol / 10`; the remaining interval is
//! integrated adaptively.

use crate::error::{Error, Result};

/// Evaluation budget for a single one-dimensional integral.
pub const EVALUATION_BUDGET: usize = 1_000_000;

const INITIAL_PANELS: usize = 8;
const MAX_DEPTH: u32 = 50;

/// Gaussian upper bound `peak * exp(-rate * (x - center)^2)` on `|f(x)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub rate: f64,
    pub center: f64,
    pub peak: f64,
}

impl Envelope {
    /// `exp(-rate * x^2)`.
    pub fn centered(rate: f64) -> Self {
        Envelope {
            rate,
            center: 0.0,
            peak: 1.0,
        }
    }

    /// Exact envelope of `exp(-q(t))` for a quadratic `q` with positive
    /// leading coefficient, recovered by evaluating `q` at -1, 0 and 1.
    pub fn of_quadratic_exponent(q: impl Fn(f64) -> f64) -> Result<Self> {
        let (minus, zero, plus) = (q(-1.0), q(0.0), q(1.0));
        let rate = (plus + minus) / 2.0 - zero;
        if !(rate > 0.0) {
            return Err(Error::invalid("exponent is not a convex quadratic"));
        }
        let slope = (plus - minus) / 2.0;
        let center = -slope / (2.0 * rate);
        Ok(Envelope {
            rate,
            center,
            peak: (-q(center)).exp(),
        })
    }

    /// Half-width `R` with envelope mass outside `center ± R` below `budget`.
    ///
    /// Uses `int_R^inf exp(-a t^2) dt <= exp(-a R^2) / (2 a R)`.
    fn half_width(&self, budget: f64) -> f64 {
        let tail = |r: f64| self.peak * (-self.rate * r * r).exp() / (self.rate * r);
        let mut r = ((self.peak / budget).ln().max(1.0) / self.rate).sqrt();
        while tail(r) > budget {
            r *= 1.1;
        }
        r
    }

    fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(Error::invalid("envelope rate must be positive and finite"));
        }
        if !(self.peak >= 0.0 && self.peak.is_finite() && self.center.is_finite()) {
            return Err(Error::invalid("envelope peak and center must be finite"));
        }
        Ok(())
    }
}

/// `int_{-inf}^{inf} f(x) dx` to absolute accuracy `tol`, for `|f|` bounded by
/// `envelope`.
pub fn quadrature_1d(f: impl Fn(f64) -> f64, envelope: Envelope, tol: f64) -> Result<f64> {
    integrate(&mut |x| Ok(f(x)), envelope, tol)
}

/// Fallible-integrand form, used for nesting.
pub(crate) fn integrate(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    envelope: Envelope,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    envelope.validate()?;
    if envelope.peak == 0.0 {
        return Ok(0.0);
    }
    let r = envelope.half_width(tol / 10.0);
    let (lo, hi) = (envelope.center - r, envelope.center + r);

    let mut simpson = Simpson { f, evaluations: 0 };
    let eps = tol / 2.0;
    let width = (hi - lo) / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for p in 0..INITIAL_PANELS {
        let a = lo + p as f64 * width;
        let b = a + width;
        total += simpson.panel(a, b, eps / INITIAL_PANELS as f64)?;
    }
    Ok(total)
}

struct Simpson<'a> {
    f: &'a mut dyn FnMut(f64) -> Result<f64>,
    evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
}

impl Simpson<'_> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        if self.evaluations > EVALUATION_BUDGET {
            return Err(Error::QuadratureBudget {
                budget: EVALUATION_BUDGET,
            });
        }
        (self.f)(x)
    }

    fn panel(&mut self, a: f64, b: f64, eps: f64) -> Result<f64> {
        let fa = self.eval(a)?;
        let fb = self.eval(b)?;
        let m = 0.5 * (a + b);
        let fm = self.eval(m)?;
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

        let mut stack = vec![Segment {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            eps,
            depth: 0,
        }];
        let mut total = 0.0;
        while let Some(s) = stack.pop() {
            let m = 0.5 * (s.a + s.b);
            let lm = 0.5 * (s.a + m);
            let rm = 0.5 * (m + s.b);
            let flm = self.eval(lm)?;
            let frm = self.eval(rm)?;
            let left = (m - s.a) / 6.0 * (s.fa + 4.0 * flm + s.fm);
            let right = (s.b - m) / 6.0 * (s.fm + 4.0 * frm + s.fb);
            let delta = left + right - s.whole;
            if delta.abs() <= 15.0 * s.eps || s.depth >= MAX_DEPTH {
                total += left + right + delta / 15.0;
            } else {
                stack.push(Segment {
                    a: s.a,
                    b: m,
                    fa: s.fa,
                    fm: flm,
                    fb: s.fm,
                    whole: left,
                    eps: s.eps / 2.0,
                    depth: s.depth + 1,
                });
                stack.push(Segment {
                    a: m,
                    b: s.b,
                    fa: s.fm,
                    fm: frm,
                    fb: s.fb,
                    whole: right,
                    eps: s.eps / 2.0,
                    depth: s.depth + 1,
                });
            }
        }
        Ok(total)
    }
}

/// Integral of `f` over `R^dims`, one variable at a time from the outside in.
///
/// `envelope` must bound the integrand in each variable with the others held
/// fixed. Level `i` (1 = outermost) runs at tolerance `tol / (3 i)`.
pub fn nested_quadrature(
    dims: usize,
    f: &dyn Fn(&[f64]) -> f64,
    envelope: Envelope,
    tol: f64,
) -> Result<f64> {
    let mut point = Vec::with_capacity(dims);
    nested_level(dims, f, envelope, tol, &mut point)
}

fn nested_level(
    dims: usize,
    f: &dyn Fn(&[f64]) -> f64,
    envelope: Envelope,
    tol: f64,
    point: &mut Vec<f64>,
) -> Result<f64> {
    if point.len() == dims {
        return Ok(f(point));
    }
    let level = point.len() + 1;
    let level_tol = tol / (3.0 * level as f64);
    integrate(
        &mut |x| {
            point.push(x);
            let inner = nested_level(dims, f, envelope, tol, point);
            point.pop();
            inner
        },
        envelope,
        level_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn standard_gaussians() {
        let v = quadrature_1d(|x| (-x * x).exp(), Envelope::centered(1.0), 1e-10).unwrap();
        assert!((v - PI.sqrt()).abs() <= 1e-10);
        let v = quadrature_1d(|x| (-2.0 * x * x).exp(), Envelope::centered(2.0), 1e-10).unwrap();
        assert!((v - (PI / 2.0).sqrt()).abs() <= 1e-10);
    }

    #[test]
    fn shifted_gaussian() {
        // x^2 + 2x + 1 = (x + 1)^2
        let q = |x: f64| x * x + 2.0 * x + 1.0;
        let env = Envelope::of_quadratic_exponent(q).unwrap();
        assert!((env.center + 1.0).abs() < 1e-15);
        assert!((env.peak - 1.0).abs() < 1e-15);
        let v = quadrature_1d(|x| (-q(x)).exp(), env, 1e-10).unwrap();
        assert!((v - PI.sqrt()).abs() <= 1e-10);
    }

    #[test]
    fn polynomial_moment() {
        // int x^2 exp(-x^2) = sqrt(pi)/2, bounded by exp(-x^2/2) * (2/e).
        let env = Envelope {
            rate: 0.5,
            center: 0.0,
            peak: 2.0 / std::f64::consts::E,
        };
        let v = quadrature_1d(|x| x * x * (-x * x).exp(), env, 1e-9).unwrap();
        assert!((v - PI.sqrt() / 2.0).abs() <= 1e-9);
    }

    #[test]
    fn zero_peak_short_circuits() {
        let env = Envelope {
            peak: 0.0,
            ..Envelope::centered(1.0)
        };
        assert_eq!(quadrature_1d(|_| 1.0, env, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn argument_errors() {
        let f = |x: f64| (-x * x).exp();
        assert!(quadrature_1d(f, Envelope::centered(1.0), 0.0).is_err());
        assert!(quadrature_1d(f, Envelope::centered(-1.0), 1e-6).is_err());
        assert!(Envelope::of_quadratic_exponent(|x| -x * x).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // A wildly oscillating integrand under a loose envelope never settles.
        let f = |x: f64| (1e7 * x).sin() * (-x * x).exp();
        assert_eq!(
            quadrature_1d(f, Envelope::centered(1.0), 1e-14),
            Err(Error::QuadratureBudget {
                budget: EVALUATION_BUDGET
            })
        );
    }

    #[test]
    fn nested_product_gaussian() {
        let f = |p: &[f64]| (-p.iter().map(|x| x * x).sum::<f64>()).exp();
        let v = nested_quadrature(2, &f, Envelope::centered(1.0), 1e-8).unwrap();
        assert!((v - PI).abs() < 1e-8);
        assert_eq!(
            nested_quadrature(0, &f, Envelope::centered(1.0), 1e-8).unwrap(),
            1.0
        );
    }
}
