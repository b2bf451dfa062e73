//! Space curves built from a unit-speed spherical curve `γ`.
//!
//! Two integral constructions are provided:
//!
//! * [`construct_frenet`]: `c(s) = a + b ∫ e^{∫k} γ`, whose tangent indicatrix
//!   is `γ` itself, with `κ = 1/(b e^{∫k})`, `τ = k_g/(b e^{∫k})` and speed
//!   `b e^{∫k}`.
//! * [`construct_bertrand`]: `c(s) = a + b ∫ (γ + cot θ · p)` with `p = γ × γ'`,
//!   a Bertrand curve of constant speed `|b| csc θ`.
//!
//! All antiderivatives vanish at the base point `s0`, so `c(s0) = a`.
//! Both constructions attach their derivatives in closed form from the
//! integrand, so no derivative of `c` passes through the quadrature.
//!
//! The profile helpers produce the weights and curvatures for which these
//! curves become spherical helices ([`theorem1_k`]) or slant helices
//! ([`slant_kg_profile`]).

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::curve::{
    cumulative_curve, exp_weight, Interval, ParamCurve, QuadratureConfig, ScalarProfile,
    SphericalCurve, VecFn,
};
use crate::error::{Error, Result};
use crate::frenet::Sample;
use crate::geom::{cross, Vec3};
use crate::sabban::spherical_circle_on;

/// Distance kept from the poles of `tan` in [`theorem1_k`].
pub const TAN_GUARD: f64 = 1e-3;

/// `sin θ` at or below this is rejected by [`construct_bertrand`].
pub const MIN_SIN_THETA: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct FrenetConstructionParams {
    pub b: f64,
    pub a: Vec3,
    pub s0: f64,
    pub k: ScalarProfile,
}

impl FrenetConstructionParams {
    /// `b`, `a = 0`, `s0 = 0` and the given weight exponent.
    pub fn new(b: f64, k: ScalarProfile) -> Self {
        Self {
            b,
            a: Vec3::ZERO,
            s0: 0.0,
            k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BertrandConstructionParams {
    pub b: f64,
    pub theta: f64,
    pub a: Vec3,
    pub s0: f64,
}

impl BertrandConstructionParams {
    pub fn new(b: f64, theta: f64) -> Self {
        Self {
            b,
            theta,
            a: Vec3::ZERO,
            s0: 0.0,
        }
    }

    /// `|b| csc θ`, the speed of the constructed curve.
    pub fn speed(&self) -> f64 {
        self.b.abs() / self.theta.sin().abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Theorem1Params {
    pub k_g: f64,
    pub b1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SlantProfileParams {
    pub m: f64,
    pub n: f64,
    /// Branch sign, `+1` or `−1`.
    pub epsilon: f64,
    pub delta: f64,
}

impl SlantProfileParams {
    pub fn new(m: f64, n: f64) -> Self {
        Self {
            m,
            n,
            epsilon: 1.0,
            delta: 1e-3,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.m != 0.0 && self.m.is_finite() && self.n.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "slant profile needs finite m != 0 and finite n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if self.epsilon != 1.0 && self.epsilon != -1.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be +1 or -1, got {}",
                self.epsilon
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "guard delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

fn check_b(b: f64) -> Result<()> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "b must be finite and nonzero, got {b}"
        )));
    }
    Ok(())
}

/// Largest interval symmetric about `b1` on which [`theorem1_k`] is defined.
pub fn theorem1_domain(params: &Theorem1Params) -> Result<Interval> {
    if params.k_g == 0.0 || !params.k_g.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "k_g must be finite and nonzero, got {}",
            params.k_g
        )));
    }
    // the band itself is excluded, so stay a hair inside it
    let half = (FRAC_PI_2 - TAN_GUARD) / params.k_g.abs() * (1.0 - 1e-12);
    Interval::new(params.b1 - half, params.b1 + half)
}

/// `k(s) = −k_g tan(k_g (s − b1))` on `domain`, with `k' = −k_g² sec²(·)`.
/// The weight `e^{∫k}` it produces is `cos(k_g (s − b1))` when `s0 = b1`.
pub fn theorem1_k(params: &Theorem1Params, domain: Interval) -> Result<ScalarProfile> {
    theorem1_domain(params)?;
    let Theorem1Params { k_g, b1 } = *params;
    for s in [domain.lo, domain.hi] {
        let reach = (k_g * (s - b1)).abs();
        if reach >= FRAC_PI_2 - TAN_GUARD {
            return Err(Error::SingularDomain { s, reach });
        }
    }
    ScalarProfile::new(domain, move |s| -k_g * (k_g * (s - b1)).tan())?.with_derivative(move |s| {
        let c = (k_g * (s - b1)).cos();
        -k_g * k_g / (c * c)
    })
}

/// Signed geodesic curvature `k_g = ε u / √(1 − u²)`, `u = m s + n`, whose
/// square is `u² / (1 − u²)`. Its derivative `ε m / (1 − u²)^{3/2}` is attached.
pub fn slant_kg_profile(params: &SlantProfileParams, domain: Interval) -> Result<ScalarProfile> {
    params.validate()?;
    let SlantProfileParams {
        m,
        n,
        epsilon,
        delta,
    } = *params;
    for s in [domain.lo, domain.hi] {
        let value = (m * s + n).abs();
        if value > 1.0 - delta {
            return Err(Error::ProfileDomainExceeded { s, value });
        }
    }
    ScalarProfile::new(domain, move |s| {
        let u = m * s + n;
        epsilon * u / (1.0 - u * u).sqrt()
    })?
    .with_derivative(move |s| {
        let u = m * s + n;
        epsilon * m / (1.0 - u * u).powf(1.5)
    })
}

/// Part of `domain` on which `|m s + n| ≤ 1 − δ`; `DegenerateDomain` when
/// nothing is left.
pub fn slant_domain(params: &SlantProfileParams, domain: Interval) -> Result<Interval> {
    params.validate()?;
    let bound = 1.0 - params.delta;
    let (a, b) = (
        (-bound - params.n) / params.m,
        (bound - params.n) / params.m,
    );
    let allowed = Interval::new(a.min(b), a.max(b))?;
    // an empty overlap is reported as a collapsed domain
    domain.intersect(&allowed)
}

/// [`slant_kg_profile`] on `domain` clipped to the guard band.
pub fn slant_kg_profile_clipped(
    params: &SlantProfileParams,
    domain: Interval,
) -> Result<ScalarProfile> {
    slant_kg_profile(params, slant_domain(params, domain)?)
}

/// `c(s) = a + b ∫_{s0}^{s} e^{∫_{s0} k} γ` on the common domain of `γ` and `k`.
pub fn construct_frenet(
    gamma: &SphericalCurve,
    params: &FrenetConstructionParams,
    cfg: &QuadratureConfig,
) -> Result<ParamCurve> {
    check_b(params.b)?;
    cfg.validate()?;
    let domain = gamma.domain().intersect(&params.k.domain())?;
    domain.check(params.s0)?;
    let k = params.k.restrict(domain)?;
    let weight = exp_weight(&k, params.s0, cfg)?;

    let b = params.b;
    let a = params.a;
    let g = gamma.position_fn();
    let e = weight.value_fn();
    let (g1, e1) = (g.clone(), e.clone());
    let d1: VecFn = Arc::new(move |s| g1(s) * (b * e1(s)));
    let integral = cumulative_curve(domain, d1.clone(), params.s0, cfg)?;
    let shifted = integral.position_fn();
    let position: VecFn = Arc::new(move |s| a + shifted(s));

    let mut maps = vec![(1, d1)];
    if let Some(gd1) = gamma.analytic(1).cloned() {
        let kv = k.value_fn();
        let (g2, e2, gd) = (g.clone(), e.clone(), gd1.clone());
        maps.push((
            2,
            Arc::new(move |s| (g2(s) * kv(s) + gd(s)) * (b * e2(s))) as VecFn,
        ));
        if let (Some(gd2), Some(dk)) =
            (gamma.analytic(2).cloned(), k.analytic_derivative().cloned())
        {
            let kv = k.value_fn();
            let (g3, e3) = (g.clone(), e.clone());
            maps.push((
                3,
                Arc::new(move |s| {
                    let kk = kv(s);
                    (g3(s) * (kk * kk + dk(s)) + gd1(s) * (2.0 * kk) + gd2(s)) * (b * e3(s))
                }) as VecFn,
            ));
        }
    }
    ParamCurve::from_arc(domain, position)?.with_derivatives(maps)
}

/// `c(s) = a + b ∫_{s0}^{s} (γ + cot θ · γ × γ')`. Needs the analytic `γ'`;
/// `c''` and `c'''` are attached when `γ''` and `γ'''` are analytic too.
pub fn construct_bertrand(
    gamma: &SphericalCurve,
    params: &BertrandConstructionParams,
    cfg: &QuadratureConfig,
) -> Result<ParamCurve> {
    check_b(params.b)?;
    cfg.validate()?;
    let sin = params.theta.sin();
    if !(sin.abs() > MIN_SIN_THETA) {
        return Err(Error::InvalidTheta { sin });
    }
    let cot = params.theta.cos() / sin;
    let domain = gamma.domain();
    domain.check(params.s0)?;
    let g = gamma.position_fn();
    let gd1 = gamma
        .analytic(1)
        .cloned()
        .ok_or(Error::MissingDerivative { order: 1 })?;

    let b = params.b;
    let a = params.a;
    let (g1, t1) = (g.clone(), gd1.clone());
    let d1: VecFn = Arc::new(move |s| {
        let gs = g1(s);
        (gs + cross(gs, t1(s)) * cot) * b
    });
    let integral = cumulative_curve(domain, d1.clone(), params.s0, cfg)?;
    let shifted = integral.position_fn();
    let position: VecFn = Arc::new(move |s| a + shifted(s));

    let mut maps = vec![(1, d1)];
    if let Some(gd2) = gamma.analytic(2).cloned() {
        let (g2, t2, tt2) = (g.clone(), gd1.clone(), gd2.clone());
        maps.push((
            2,
            Arc::new(move |s| (t2(s) + cross(g2(s), tt2(s)) * cot) * b) as VecFn,
        ));
        if let Some(gd3) = gamma.analytic(3).cloned() {
            let g3 = g.clone();
            maps.push((
                3,
                Arc::new(move |s| {
                    let (ts, tts) = (gd1(s), gd2(s));
                    (tts + (cross(ts, tts) + cross(g3(s), gd3(s))) * cot) * b
                }) as VecFn,
            ));
        }
    }
    ParamCurve::from_arc(domain, position)?.with_derivatives(maps)
}

/// The closed-form spherical helix over the latitude circle with
/// `k_g = √2`, `b = 2`.
pub fn example1_alpha(s: f64) -> Vec3 {
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let (s2, c2) = (r2 * s).sin_cos();
    let (s3, c3) = (r3 * s).sin_cos();
    Vec3::new(
        -2.0 * (2.0f64 / 3.0).sqrt() * c3 * s2 + 2.0 * c2 * s3,
        -(2.0 / 3.0) * (3.0 * c2 * c3 + r6 * s2 * s3),
        2.0 * s2 / r3,
    )
}

/// `α'(s) = 2 cos(√2 s) γ(s)` with `γ` the latitude circle of radius `1/√3`.
pub fn example1_alpha_prime(s: f64) -> Vec3 {
    let r3 = 3f64.sqrt();
    let (sn, cs) = (r3 * s).sin_cos();
    Vec3::new(cs / r3, sn / r3, (2.0f64 / 3.0).sqrt()) * (2.0 * (2f64.sqrt() * s).cos())
}

/// Inputs reproducing [`example1_alpha`] through [`construct_frenet`] on
/// `domain`: the circle of radius `1/√3`, `k = theorem1_k(√2, 0)`, `b = 2`,
/// `s0 = 0`, and `a = α(0)` so that the anchored antiderivative matches the
/// printed one.
pub fn example1_inputs(domain: Interval) -> Result<(SphericalCurve, FrenetConstructionParams)> {
    let gamma = spherical_circle_on(1.0 / 3f64.sqrt(), domain)?;
    let k = theorem1_k(
        &Theorem1Params {
            k_g: 2f64.sqrt(),
            b1: 0.0,
        },
        domain,
    )?;
    Ok((
        gamma,
        FrenetConstructionParams {
            b: 2.0,
            a: example1_alpha(0.0),
            s0: 0.0,
            k,
        },
    ))
}

/// Integrates `k_g' = σ (1 + k_g²)^{3/2}` through the samples of `σ` (linear
/// in between) from `k_g = k0` at the first sample. Returns `k_g` at every
/// sample point.
pub fn recover_kg_from_sigma(sigma: &[Sample], k0: f64, substeps: usize) -> Result<Vec<Sample>> {
    if sigma.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two sigma samples".into(),
        ));
    }
    if substeps == 0 {
        return Err(Error::InvalidConfig("substeps must be >= 1".into()));
    }
    let rhs = |sg: f64, k: f64| sg * (1.0 + k * k).powf(1.5);
    let mut out = Vec::with_capacity(sigma.len());
    let mut k = k0;
    out.push(Sample {
        s: sigma[0].s,
        value: k,
    });
    for pair in sigma.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let h = (b.s - a.s) / substeps as f64;
        let lerp = |s: f64| a.value + (b.value - a.value) * (s - a.s) / (b.s - a.s);
        for i in 0..substeps {
            let s = a.s + h * i as f64;
            let k1 = rhs(lerp(s), k);
            let k2 = rhs(lerp(s + 0.5 * h), k + 0.5 * h * k1);
            let k3 = rhs(lerp(s + 0.5 * h), k + 0.5 * h * k2);
            let k4 = rhs(lerp(s + h), k + h * k3);
            k += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if !k.is_finite() {
            return Err(Error::NonFinite {
                what: "recovered geodesic curvature",
                s: b.s,
            });
        }
        out.push(Sample { s: b.s, value: k });
    }
    Ok(out)
}

/// Fits `k_g / √(k_g² + 1) = m s + n` with the slope fixed to `m`. Returns the
/// offset `n` and the largest absolute residual.
pub fn fit_slant_offset(kg: &[Sample], m: f64) -> Result<(f64, f64)> {
    if kg.is_empty() {
        return Err(Error::InvalidParameter("no samples to fit".into()));
    }
    let u = |p: &Sample| p.value / (p.value * p.value + 1.0).sqrt();
    let n = kg.iter().map(|p| u(p) - m * p.s).sum::<f64>() / kg.len() as f64;
    let residual = kg
        .iter()
        .map(|p| (u(p) - m * p.s - n).abs())
        .fold(0.0, f64::max);
    Ok((n, residual))
}
