//! Central finite differences with Richardson extrapolation.

use crate::error::{Error, Result};
use crate::geom::Linear;

use super::Interval;

/// How the base finite-difference step is chosen.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum StepSize {
    /// Fraction of the domain length.
    Relative(f64),
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DiffConfig {
    pub base_step: StepSize,
    /// Number of step sizes `h, h/2, ...` combined by extrapolation. One level
    /// is the plain second-order stencil; each extra level gains two orders.
    pub richardson_levels: usize,
}

impl Default for DiffConfig {
    fn default() -> Self {
        Self {
            base_step: StepSize::Relative(1e-3),
            richardson_levels: 2,
        }
    }
}

impl DiffConfig {
    pub fn absolute(step: f64) -> Self {
        Self {
            base_step: StepSize::Absolute(step),
            ..Self::default()
        }
    }

    /// Base step for a curve living on `domain`.
    pub fn step_for(&self, domain: Interval) -> Result<f64> {
        if self.richardson_levels == 0 || self.richardson_levels > 6 {
            return Err(Error::InvalidConfig(format!(
                "richardson_levels must be in 1..=6, got {}",
                self.richardson_levels
            )));
        }
        let h = match self.base_step {
            StepSize::Relative(f) => f * domain.length(),
            StepSize::Absolute(h) => h,
        };
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "base step {h} must be positive"
            )));
        }
        if h >= domain.length() / 10.0 {
            return Err(Error::InvalidConfig(format!(
                "base step {h} must be smaller than a tenth of the domain length {}",
                domain.length()
            )));
        }
        Ok(h)
    }
}

/// Half-width of the stencil for a derivative of `order`, in units of the step.
pub fn stencil_reach(order: usize) -> f64 {
    match order {
        1 | 2 => 1.0,
        _ => 2.0,
    }
}

/// Second-order central stencil for derivatives of order 1, 2 or 3.
fn central<T, F>(f: &F, order: usize, x: f64, h: f64) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    Ok(match order {
        1 => (f(x + h)? - f(x - h)?) * (0.5 / h),
        2 => (f(x + h)? - f(x)? * 2.0 + f(x - h)?) * (1.0 / (h * h)),
        3 => {
            (f(x + 2.0 * h)? - f(x + h)? * 2.0 + f(x - h)? * 2.0 - f(x - 2.0 * h)?)
                * (0.5 / (h * h * h))
        }
        _ => {
            return Err(Error::InvalidConfig(format!(
                "derivative order {order} not in 1..=3"
            )))
        }
    })
}

/// Derivative of `f` at `x` by central differences from step `h` with
/// `levels` Richardson levels. The caller is responsible for keeping
/// `x ± stencil_reach(order)·h` inside the function's domain.
pub fn richardson<T, F>(f: F, order: usize, x: f64, h: f64, levels: usize) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let levels = levels.max(1);
    let mut row: Vec<T> = Vec::with_capacity(levels);
    let mut step = h;
    for j in 0..levels {
        let mut prev = central(&f, order, x, step)?;
        // Neville-style update of the tableau row in place.
        let mut factor = 1.0;
        for item in row.iter_mut().take(j) {
            factor *= 4.0;
            let improved = prev + (prev - *item) * (1.0 / (factor - 1.0));
            *item = prev;
            prev = improved;
        }
        row.push(prev);
        step *= 0.5;
    }
    Ok(*row.last().expect("levels >= 1"))
}

/// Fails with `OutOfDomain` unless the stencil around `x` fits in `domain`.
pub fn check_stencil(domain: Interval, x: f64, reach: f64) -> Result<()> {
    if x - reach < domain.lo || x + reach > domain.hi || !x.is_finite() {
        return Err(Error::OutOfDomain {
            s: x,
            reach,
            lo: domain.lo,
            hi: domain.hi,
        });
    }
    Ok(())
}

/// Derivative of a scalar field known only pointwise, with the domain check.
pub fn derivative_of<F>(f: F, domain: Interval, x: f64, cfg: &DiffConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = cfg.step_for(domain)?;
    check_stencil(domain, x, h)?;
    richardson(f, 1, x, h, cfg.richardson_levels)
}
