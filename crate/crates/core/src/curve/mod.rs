//! Parameterized curves, scalar profiles and the calculus on them.
//!
//! A [`ParamCurve`] is a position map on a closed interval with up to three
//! optional analytic derivative maps. [`ParamCurve::derive`] returns the
//! analytic derivative when one is attached and otherwise differentiates the
//! highest available lower-order map by Richardson-extrapolated central
//! differences. [`ScalarProfile`] is the one-dimensional analogue used for
//! `k(s)`, `k_g(s)` and exponential weights.
//!
//! Antiderivatives ([`cumulative`], [`cumulative_curve`], [`exp_weight`]) are
//! tabulated once on a Gauss–Legendre panel grid and completed per query by a
//! single short panel from the nearest grid point.

pub mod diff;
pub mod quad;
pub mod sampled;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{Linear, Vec3};

pub use diff::{DiffConfig, StepSize};
pub use quad::{integrate, integrate_on, CumulativeTable, GaussLegendre, QuadratureConfig};
pub use sampled::interpolate_samples;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type VecFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// Number of points used to probe finiteness and curve invariants.
pub const PROBE_POINTS: usize = 64;

/// Relative agreement required between a supplied analytic derivative and
/// finite differences at construction time.
pub const DERIVATIVE_CHECK_TOLERANCE: f64 = 1e-4;

/// Non-degenerate closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::DegenerateDomain { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn contains(&self, s: f64) -> bool {
        s >= self.lo && s <= self.hi
    }

    pub fn check(&self, s: f64) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                s,
                reach: 0.0,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Shrinks both ends by `margin`.
    pub fn shrink(&self, margin: f64) -> Result<Interval> {
        Interval::new(self.lo + margin, self.hi - margin)
    }

    /// `n` evenly spaced points including both endpoints (`n >= 2`), or the
    /// midpoint when `n == 1`.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![0.5 * (self.lo + self.hi)],
            _ => {
                let step = self.length() / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            self.hi
                        } else {
                            self.lo + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Real-valued C¹ map on an interval.
#[derive(Clone)]
pub struct ScalarProfile {
    domain: Interval,
    value: ScalarFn,
    derivative: Option<ScalarFn>,
}

impl fmt::Debug for ScalarProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarProfile")
            .field("domain", &self.domain)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ScalarProfile {
    pub fn new(
        domain: Interval,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let value: ScalarFn = Arc::new(value);
        probe_finite(domain, "profile", |s| value(s))?;
        Ok(Self {
            domain,
            value,
            derivative: None,
        })
    }

    pub fn constant(domain: Interval, c: f64) -> Result<Self> {
        Ok(Self::new(domain, move |_| c)?.with_derivative_unchecked(Arc::new(|_| 0.0)))
    }

    /// Attaches an analytic derivative, spot-checked against differences.
    pub fn with_derivative(self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let d: ScalarFn = Arc::new(d);
        let cfg = DiffConfig::default();
        let h = cfg.step_for(self.domain)?;
        for s in spot_points(self.domain) {
            let fd = diff::richardson(|x| Ok((self.value)(x)), 1, s, h, cfg.richardson_levels)?;
            let an = d(s);
            let err = (fd - an).abs();
            if !an.is_finite() || err > DERIVATIVE_CHECK_TOLERANCE * (1.0 + an.abs()) {
                return Err(Error::DerivativeMismatch {
                    order: 1,
                    s,
                    error: err,
                });
            }
        }
        Ok(self.with_derivative_unchecked(d))
    }

    fn with_derivative_unchecked(mut self, d: ScalarFn) -> Self {
        self.derivative = Some(d);
        self
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Value at `s`; `s` should lie in the domain.
    #[inline]
    pub fn at(&self, s: f64) -> f64 {
        (self.value)(s)
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        self.domain.check(s)?;
        Ok(self.at(s))
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn analytic_derivative(&self) -> Option<&ScalarFn> {
        self.derivative.as_ref()
    }

    pub fn derivative(&self, s: f64, cfg: &DiffConfig) -> Result<f64> {
        match &self.derivative {
            Some(d) => {
                self.domain.check(s)?;
                Ok(d(s))
            }
            None => diff::derivative_of(|x| Ok(self.at(x)), self.domain, s, cfg),
        }
    }

    /// Same maps on a sub-interval.
    pub fn restrict(&self, domain: Interval) -> Result<Self> {
        sub_interval(self.domain, domain)?;
        Ok(Self {
            domain,
            ..self.clone()
        })
    }

    pub fn value_fn(&self) -> ScalarFn {
        self.value.clone()
    }
}

/// C³ map from an interval into R³.
#[derive(Clone)]
pub struct ParamCurve {
    domain: Interval,
    position: VecFn,
    derivatives: [Option<VecFn>; 3],
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("domain", &self.domain)
            .field(
                "analytic_orders",
                &(1..=3)
                    .filter(|&o| self.has_analytic(o))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl ParamCurve {
    pub fn new(
        domain: Interval,
        position: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::from_arc(domain, Arc::new(position))
    }

    pub fn from_arc(domain: Interval, position: VecFn) -> Result<Self> {
        probe_finite(domain, "curve position", |s| position(s))?;
        Ok(Self {
            domain,
            position,
            derivatives: [None, None, None],
        })
    }

    /// Attaches the analytic derivative of `order` (1..=3) after checking it
    /// against finite differences of the next lower map at five interior
    /// points.
    pub fn with_derivative(
        self,
        order: usize,
        d: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
    ) -> Result<Self> {
        self.with_derivative_arc(order, Arc::new(d))
    }

    pub fn with_derivative_arc(mut self, order: usize, d: VecFn) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(Error::InvalidConfig(format!(
                "derivative order {order} not in 1..=3"
            )));
        }
        let cfg = DiffConfig::default();
        for s in spot_points(self.domain) {
            let an = d(s);
            // differentiate the highest map the curve already has below `order`
            let fd = self.derive(order, s, &cfg)?;
            let err = (an - fd).norm();
            if !an.is_finite() || err > DERIVATIVE_CHECK_TOLERANCE * (1.0 + an.norm()) {
                return Err(Error::DerivativeMismatch {
                    order,
                    s,
                    error: err,
                });
            }
        }
        self.derivatives[order - 1] = Some(d);
        Ok(self)
    }

    /// Attaches several derivative maps in increasing order.
    pub fn with_derivatives(mut self, maps: Vec<(usize, VecFn)>) -> Result<Self> {
        for (order, d) in maps {
            self = self.with_derivative_arc(order, d)?;
        }
        Ok(self)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Position at `s`; `s` should lie in the domain.
    #[inline]
    pub fn at(&self, s: f64) -> Vec3 {
        (self.position)(s)
    }

    pub fn eval(&self, s: f64) -> Result<Vec3> {
        self.domain.check(s)?;
        Ok(self.at(s))
    }

    pub fn position_fn(&self) -> VecFn {
        self.position.clone()
    }

    pub fn has_analytic(&self, order: usize) -> bool {
        (1..=3).contains(&order) && self.derivatives[order - 1].is_some()
    }

    pub fn analytic(&self, order: usize) -> Option<&VecFn> {
        self.derivatives.get(order.wrapping_sub(1))?.as_ref()
    }

    /// Derivative of `order` (1..=3) at `s`.
    pub fn derive(&self, order: usize, s: f64, cfg: &DiffConfig) -> Result<Vec3> {
        if !(1..=3).contains(&order) {
            return Err(Error::InvalidConfig(format!(
                "derivative order {order} not in 1..=3"
            )));
        }
        if let Some(d) = &self.derivatives[order - 1] {
            self.domain.check(s)?;
            return Ok(d(s));
        }
        let base = (1..order).rev().find(|&j| self.has_analytic(j));
        let remaining = order - base.unwrap_or(0);
        let h = cfg.step_for(self.domain)?;
        diff::check_stencil(self.domain, s, diff::stencil_reach(remaining) * h)?;
        let map: &VecFn = match base {
            Some(j) => self.derivatives[j - 1].as_ref().expect("checked"),
            None => &self.position,
        };
        diff::richardson(|x| Ok(map(x)), remaining, s, h, cfg.richardson_levels)
    }

    /// The same curve with every analytic derivative removed, so that all
    /// derivatives come from finite differences of the position.
    pub fn position_only(&self) -> ParamCurve {
        ParamCurve {
            domain: self.domain,
            position: self.position.clone(),
            derivatives: [None, None, None],
        }
    }

    pub fn restrict(&self, domain: Interval) -> Result<ParamCurve> {
        sub_interval(self.domain, domain)?;
        Ok(ParamCurve {
            domain,
            ..self.clone()
        })
    }

    /// Reparameterizes as `t ↦ c(scale·t)` on the preimage of the domain.
    pub fn rescaled(&self, scale: f64) -> Result<ParamCurve> {
        if !(scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale {scale} must be positive"
            )));
        }
        let domain = Interval::new(self.domain.lo / scale, self.domain.hi / scale)?;
        let pos = self.position.clone();
        let mut out = ParamCurve::from_arc(domain, Arc::new(move |t| pos(scale * t)))?;
        for order in 1..=3 {
            if let Some(d) = self.derivatives[order - 1].clone() {
                let k = scale.powi(order as i32);
                out.derivatives[order - 1] = Some(Arc::new(move |t| d(scale * t) * k));
            }
        }
        Ok(out)
    }

    /// `n` uniform samples `(s, c(s))` over the domain, endpoints included.
    pub fn sample(&self, n: usize) -> Vec<(f64, Vec3)> {
        self.domain
            .linspace(n)
            .into_iter()
            .map(|s| (s, self.at(s)))
            .collect()
    }
}

/// Tolerance on `| |γ| − 1 |` for spherical curves.
pub const SPHERE_NORM_TOLERANCE: f64 = 1e-8;
/// Tolerance on `| |γ'| − 1 |` for spherical curves.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-6;

/// Unit-speed curve on the unit sphere S².
#[derive(Debug, Clone)]
pub struct SphericalCurve(ParamCurve);

impl SphericalCurve {
    /// Probes 64 uniform points for unit norm and unit speed.
    pub fn new(curve: ParamCurve) -> Result<Self> {
        let cfg = DiffConfig::default();
        let dom = curve.domain();
        let probe = if curve.has_analytic(1) {
            dom
        } else {
            dom.shrink(cfg.step_for(dom)? * 1.000_001)?
        };
        for s in probe.linspace(PROBE_POINTS) {
            let norm = curve.at(s).norm();
            if (norm - 1.0).abs() > SPHERE_NORM_TOLERANCE {
                return Err(Error::NotSpherical { s, norm });
            }
            let speed = curve.derive(1, s, &cfg)?.norm();
            if (speed - 1.0).abs() > UNIT_SPEED_TOLERANCE {
                return Err(Error::NotUnitSpeed { s, speed });
            }
        }
        Ok(Self(curve))
    }

    pub fn curve(&self) -> &ParamCurve {
        &self.0
    }

    pub fn into_curve(self) -> ParamCurve {
        self.0
    }

    pub fn restrict(&self, domain: Interval) -> Result<SphericalCurve> {
        Ok(SphericalCurve(self.0.restrict(domain)?))
    }
}

impl std::ops::Deref for SphericalCurve {
    type Target = ParamCurve;
    fn deref(&self) -> &ParamCurve {
        &self.0
    }
}

/// `s ↦ ∫_{s0}^{s} f` as a profile whose analytic derivative is `f` itself.
pub fn cumulative(f: &ScalarProfile, s0: f64, cfg: &QuadratureConfig) -> Result<ScalarProfile> {
    let value = f.value_fn();
    let table = Arc::new(CumulativeTable::build(&|s| value(s), f.domain(), s0, cfg)?);
    let integrand = value.clone();
    let antiderivative: ScalarFn = Arc::new(move |s| table.eval(&|x| integrand(x), s));
    Ok(ScalarProfile {
        domain: f.domain(),
        value: antiderivative,
        derivative: Some(value),
    })
}

/// Vector analogue of [`cumulative`]: `s ↦ ∫_{s0}^{s} f`, with `f` attached
/// as the analytic first derivative.
pub fn cumulative_curve(
    domain: Interval,
    f: VecFn,
    s0: f64,
    cfg: &QuadratureConfig,
) -> Result<ParamCurve> {
    let table = Arc::new(CumulativeTable::build(&|s| f(s), domain, s0, cfg)?);
    let integrand = f.clone();
    let position: VecFn = Arc::new(move |s| table.eval(&|x| integrand(x), s));
    Ok(ParamCurve {
        domain,
        position,
        derivatives: [Some(f), None, None],
    })
}

/// `s ↦ exp(∫_{s0}^{s} k)`, exactly 1 at `s0`, with derivative `k·exp(∫k)`.
pub fn exp_weight(k: &ScalarProfile, s0: f64, cfg: &QuadratureConfig) -> Result<ScalarProfile> {
    let integral = cumulative(k, s0, cfg)?;
    let inner = integral.value_fn();
    let weight: ScalarFn = Arc::new(move |s| inner(s).exp());
    let kv = k.value_fn();
    let w2 = weight.clone();
    let derivative: ScalarFn = Arc::new(move |s| kv(s) * w2(s));
    probe_finite(k.domain(), "exponential weight", |s| weight(s))?;
    Ok(ScalarProfile {
        domain: k.domain(),
        value: weight,
        derivative: Some(derivative),
    })
}

fn probe_finite<T: Linear>(
    domain: Interval,
    what: &'static str,
    f: impl Fn(f64) -> T,
) -> Result<()> {
    for s in domain.linspace(PROBE_POINTS) {
        if !f(s).all_finite() {
            return Err(Error::NonFinite { what, s });
        }
    }
    Ok(())
}

fn spot_points(domain: Interval) -> impl Iterator<Item = f64> {
    (1..=5).map(move |i| domain.lo + domain.length() * i as f64 / 6.0)
}

fn sub_interval(outer: Interval, inner: Interval) -> Result<()> {
    if inner.lo < outer.lo || inner.hi > outer.hi {
        return Err(Error::OutOfDomain {
            s: if inner.lo < outer.lo {
                inner.lo
            } else {
                inner.hi
            },
            reach: 0.0,
            lo: outer.lo,
            hi: outer.hi,
        });
    }
    Ok(())
}
