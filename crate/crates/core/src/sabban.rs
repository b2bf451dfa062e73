//! The Sabban frame `{γ, t, p = γ × t}` along unit-speed curves on S².
//!
//! Besides measuring geodesic curvature, this module synthesizes spherical
//! curves with a prescribed `k_g(s)` by integrating the frame equations
//!
//! ```text
//! γ' = t,   t' = −γ + k_g p,   p' = −k_g t
//! ```
//!
//! with classical RK4, re-orthonormalizing the frame by Gram–Schmidt as it
//! goes. The result is sampled between steps by cubic Hermite interpolation
//! whose derivative data come from the same right-hand side.

use std::sync::Arc;

use serde::Serialize;

use crate::curve::{DiffConfig, Interval, ParamCurve, ScalarProfile, SphericalCurve, VecFn};
use crate::error::{Error, Result};
use crate::geom::{cross, det3, gram_error, normalize, UnitVec3, Vec3};

/// `||γ'| − 1|` above this is rejected by [`sabban_frame`].
pub const SABBAN_SPEED_TOLERANCE: f64 = 1e-5;

/// Orthonormality error tolerated between two re-orthonormalizations.
pub const FRAME_DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SabbanFrame {
    pub gamma: UnitVec3,
    pub t: UnitVec3,
    pub p: UnitVec3,
    pub k_g: f64,
}

impl SabbanFrame {
    /// `γ = (1,0,0)`, `t = (0,1,0)`, `p = (0,0,1)`.
    pub fn standard() -> Self {
        Self {
            gamma: UnitVec3::X,
            t: UnitVec3::Y,
            p: UnitVec3::Z,
            k_g: 0.0,
        }
    }

    /// Frame at `gamma` with tangent `t`; `p` completes it. `t` is projected
    /// onto the tangent plane of `gamma` first.
    pub fn from_point_and_tangent(gamma: Vec3, t: Vec3) -> Result<Self> {
        let g = normalize(gamma)?;
        let t = normalize(t - *g * t.dot(*g))?;
        let p = normalize(cross(*g, *t))?;
        Ok(Self {
            gamma: g,
            t,
            p,
            k_g: 0.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeConfig {
    pub step: f64,
    pub renormalize_every: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            renormalize_every: 1,
        }
    }
}

impl OdeConfig {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }

    fn validate(&self, domain: Interval) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "ODE step {} must be positive",
                self.step
            )));
        }
        if self.step > domain.length() / 100.0 {
            return Err(Error::InvalidConfig(format!(
                "ODE step {} exceeds a hundredth of the domain length {}",
                self.step,
                domain.length()
            )));
        }
        if self.renormalize_every == 0 {
            return Err(Error::InvalidConfig(
                "renormalize_every must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Sabban frame and geodesic curvature `det(γ, t, t')` of `gamma` at `s`.
pub fn sabban_frame(gamma: &SphericalCurve, s: f64, cfg: &DiffConfig) -> Result<SabbanFrame> {
    gamma.domain().check(s)?;
    let g = gamma.at(s);
    let t = gamma.derive(1, s, cfg)?;
    let speed = t.norm();
    if (speed - 1.0).abs() > SABBAN_SPEED_TOLERANCE {
        return Err(Error::NotUnitSpeed { s, speed });
    }
    let t_prime = gamma.derive(2, s, cfg)?;
    let k_g = det3(g, t, t_prime);
    Ok(SabbanFrame {
        gamma: normalize(g)?,
        t: normalize(t)?,
        p: normalize(cross(g, t))?,
        k_g,
    })
}

/// Unit-speed latitude circle of Euclidean radius `r`, counterclockwise about
/// +z at height `√(1 − r²)`. Its geodesic curvature is `√(1 − r²)/r`.
/// The domain is one full period `[0, 2πr]`.
pub fn spherical_circle(r: f64) -> Result<SphericalCurve> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidRadius(r));
    }
    spherical_circle_on(r, Interval::new(0.0, std::f64::consts::TAU * r)?)
}

/// [`spherical_circle`] on an arbitrary parameter interval.
pub fn spherical_circle_on(r: f64, domain: Interval) -> Result<SphericalCurve> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidRadius(r));
    }
    let h = (1.0 - r * r).sqrt();
    let w = 1.0 / r;
    let curve = ParamCurve::new(domain, move |s: f64| {
        let (sn, cs) = (s * w).sin_cos();
        Vec3::new(r * cs, r * sn, h)
    })?
    .with_derivative(1, move |s: f64| {
        let (sn, cs) = (s * w).sin_cos();
        Vec3::new(-sn, cs, 0.0)
    })?
    .with_derivative(2, move |s: f64| {
        let (sn, cs) = (s * w).sin_cos();
        Vec3::new(-cs * w, -sn * w, 0.0)
    })?
    .with_derivative(3, move |s: f64| {
        let (sn, cs) = (s * w).sin_cos();
        Vec3::new(sn * w * w, -cs * w * w, 0.0)
    })?;
    SphericalCurve::new(curve)
}

/// Geodesic curvature of [`spherical_circle`]`(r)`.
pub fn latitude_circle_kg(r: f64) -> f64 {
    (1.0 - r * r).sqrt() / r
}

/// Euclidean radius of the latitude circle with geodesic curvature `k_g ≥ 0`.
pub fn latitude_circle_radius(k_g: f64) -> f64 {
    1.0 / (1.0 + k_g * k_g).sqrt()
}

#[derive(Clone, Copy)]
struct State {
    gamma: Vec3,
    t: Vec3,
    p: Vec3,
}

impl State {
    fn rhs(&self, k: f64) -> State {
        State {
            gamma: self.t,
            t: self.p * k - self.gamma,
            p: self.t * -k,
        }
    }

    fn axpy(&self, a: f64, d: &State) -> State {
        State {
            gamma: self.gamma + d.gamma * a,
            t: self.t + d.t * a,
            p: self.p + d.p * a,
        }
    }

    fn gram_error(&self) -> f64 {
        gram_error(&[self.gamma, self.t, self.p])
    }

    /// Gram–Schmidt on `{γ, t}`, then `p := γ × t`.
    fn reorthonormalize(&mut self) -> Result<()> {
        let g = *normalize(self.gamma)?;
        let t = *normalize(self.t - g * self.t.dot(g))?;
        self.gamma = g;
        self.t = t;
        self.p = cross(g, t);
        Ok(())
    }
}

/// Frame trajectory on the step nodes, with Hermite dense output.
struct Trajectory {
    s: Vec<f64>,
    states: Vec<State>,
    kg: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Trajectory {
    fn locate(&self, s: f64) -> usize {
        let i = self.s.partition_point(|&x| x <= s);
        i.saturating_sub(1).min(self.s.len() - 2)
    }

    /// Hermite interpolation of the full state on the step containing `s`.
    fn state_at(&self, s: f64) -> State {
        let i = self.locate(s);
        let (s0, s1) = (self.s[i], self.s[i + 1]);
        let (a, b) = (&self.states[i], &self.states[i + 1]);
        if s == s0 {
            return *a;
        }
        if s == s1 {
            return *b;
        }
        let h = s1 - s0;
        let u = (s - s0) / h;
        let (da, db) = (a.rhs((self.kg)(s0)), b.rhs((self.kg)(s1)));
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        let mix = |p0: Vec3, m0: Vec3, p1: Vec3, m1: Vec3| {
            p0 * h00 + m0 * (h10 * h) + p1 * h01 + m1 * (h11 * h)
        };
        State {
            gamma: mix(a.gamma, da.gamma, b.gamma, db.gamma),
            t: mix(a.t, da.t, b.t, db.t),
            p: mix(a.p, da.p, b.p, db.p),
        }
    }

    fn max_gram_error(&self) -> f64 {
        self.states
            .iter()
            .map(State::gram_error)
            .fold(0.0, f64::max)
    }
}

/// Spherical curve synthesized from a geodesic-curvature profile, with the
/// transported frame available alongside the position.
#[derive(Clone)]
pub struct SynthesizedCurve {
    curve: SphericalCurve,
    trajectory: Arc<Trajectory>,
}

impl std::fmt::Debug for SynthesizedCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SynthesizedCurve")
            .field("domain", &self.curve.domain())
            .field("steps", &(self.trajectory.s.len() - 1))
            .finish()
    }
}

impl SynthesizedCurve {
    pub fn spherical(&self) -> &SphericalCurve {
        &self.curve
    }

    pub fn into_spherical(self) -> SphericalCurve {
        self.curve
    }

    /// Interpolated `(γ, t, p)` at `s`.
    pub fn frame_at(&self, s: f64) -> (Vec3, Vec3, Vec3) {
        let st = self.trajectory.state_at(s);
        (st.gamma, st.t, st.p)
    }

    /// Step nodes of the integration.
    pub fn nodes(&self) -> &[f64] {
        &self.trajectory.s
    }

    /// Largest Gram-matrix error of the stored frames.
    pub fn max_gram_error(&self) -> f64 {
        self.trajectory.max_gram_error()
    }
}

impl std::ops::Deref for SynthesizedCurve {
    type Target = SphericalCurve;
    fn deref(&self) -> &SphericalCurve {
        &self.curve
    }
}

/// Integrates the frame equations from `initial` placed at the start of the
/// profile's domain.
pub fn curve_from_kg(
    kg: &ScalarProfile,
    initial: &SabbanFrame,
    cfg: &OdeConfig,
) -> Result<SynthesizedCurve> {
    curve_from_kg_anchored(kg, initial, kg.domain().lo, cfg)
}

/// Same as [`curve_from_kg`] with the initial frame placed at `anchor`; the
/// integration runs both ways from there.
pub fn curve_from_kg_anchored(
    kg: &ScalarProfile,
    initial: &SabbanFrame,
    anchor: f64,
    cfg: &OdeConfig,
) -> Result<SynthesizedCurve> {
    let domain = kg.domain();
    cfg.validate(domain)?;
    domain.check(anchor)?;
    let start = State {
        gamma: *initial.gamma,
        t: *initial.t,
        p: *initial.p,
    };
    let err0 = start.gram_error();
    if err0 > 1e-10 {
        return Err(Error::NotOrthonormal {
            error: err0,
            tolerance: 1e-10,
        });
    }
    let below = ((anchor - domain.lo) / cfg.step).ceil() as usize;
    let above = ((domain.hi - anchor) / cfg.step).ceil() as usize;
    let h_below = if below > 0 {
        (anchor - domain.lo) / below as f64
    } else {
        0.0
    };
    let h_above = if above > 0 {
        (domain.hi - anchor) / above as f64
    } else {
        0.0
    };
    integrate_two_sided(kg, start, anchor, (below, h_below), (above, h_above), cfg)
}

fn integrate_two_sided(
    kg: &ScalarProfile,
    start: State,
    anchor: f64,
    (below, h_below): (usize, f64),
    (above, h_above): (usize, f64),
    cfg: &OdeConfig,
) -> Result<SynthesizedCurve> {
    let kf = kg.value_fn();
    let march = |steps: usize, h: f64| -> Result<Vec<(f64, State)>> {
        let mut out = Vec::with_capacity(steps);
        let mut st = start;
        for i in 0..steps {
            let s = anchor + h * i as f64;
            let k1 = st.rhs(kf(s));
            let k2 = st.axpy(0.5 * h, &k1).rhs(kf(s + 0.5 * h));
            let k3 = st.axpy(0.5 * h, &k2).rhs(kf(s + 0.5 * h));
            let k4 = st.axpy(h, &k3).rhs(kf(s + h));
            st = State {
                gamma: st.gamma
                    + (k1.gamma + k2.gamma * 2.0 + k3.gamma * 2.0 + k4.gamma) * (h / 6.0),
                t: st.t + (k1.t + k2.t * 2.0 + k3.t * 2.0 + k4.t) * (h / 6.0),
                p: st.p + (k1.p + k2.p * 2.0 + k3.p * 2.0 + k4.p) * (h / 6.0),
            };
            let s_next = if i + 1 == steps {
                anchor + h * steps as f64
            } else {
                s + h
            };
            if (i + 1) % cfg.renormalize_every == 0 || i + 1 == steps {
                let drift = st.gram_error();
                if drift > FRAME_DRIFT_LIMIT || !drift.is_finite() {
                    return Err(Error::FrameDrift {
                        s: s_next,
                        error: drift,
                    });
                }
                st.reorthonormalize()?;
            }
            out.push((s_next, st));
        }
        Ok(out)
    };
    let back = march(below, -h_below)?;
    let fwd = march(above, h_above)?;

    let mut s_nodes = Vec::with_capacity(below + above + 1);
    let mut states = Vec::with_capacity(below + above + 1);
    for (s, st) in back.into_iter().rev() {
        s_nodes.push(s);
        states.push(st);
    }
    s_nodes.push(anchor);
    states.push(start);
    for (s, st) in fwd {
        s_nodes.push(s);
        states.push(st);
    }
    let domain = kg.domain();
    // pin the end nodes to the domain ends exactly
    if let Some(first) = s_nodes.first_mut() {
        *first = domain.lo;
    }
    if let Some(last) = s_nodes.last_mut() {
        *last = domain.hi;
    }
    let trajectory = Arc::new(Trajectory {
        s: s_nodes,
        states,
        kg: kf.clone(),
    });
    build_curve(kg, trajectory)
}

fn build_curve(kg: &ScalarProfile, trajectory: Arc<Trajectory>) -> Result<SynthesizedCurve> {
    let domain = kg.domain();
    let kf = kg.value_fn();
    let tr = trajectory.clone();
    let position: VecFn = Arc::new(move |s| {
        let g = tr.state_at(s).gamma;
        g / g.norm()
    });
    let tr = trajectory.clone();
    let d1: VecFn = Arc::new(move |s| tr.state_at(s).t);
    let tr = trajectory.clone();
    let k2 = kf.clone();
    let d2: VecFn = Arc::new(move |s| {
        let st = tr.state_at(s);
        st.p * k2(s) - st.gamma
    });
    let mut maps = vec![(1, d1), (2, d2)];
    if let Some(dk) = kg.analytic_derivative().cloned() {
        let tr = trajectory.clone();
        let k3 = kf.clone();
        let d3: VecFn = Arc::new(move |s| {
            let st = tr.state_at(s);
            let k = k3(s);
            st.p * dk(s) - st.t * (1.0 + k * k)
        });
        maps.push((3, d3));
    }
    let curve = ParamCurve::from_arc(domain, position)?.with_derivatives(maps)?;
    Ok(SynthesizedCurve {
        curve: SphericalCurve::new(curve)?,
        trajectory,
    })
}
