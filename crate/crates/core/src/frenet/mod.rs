//! Frenet apparatus of a regular space curve and the certification
//! functionals built on it: the cylindrical-helix ratio `τ/κ`, the slant-helix
//! function `σ`, and the sphere radius / sphere residual pair.
//!
//! Scalar derivatives such as `(τ/κ)'` and `(1/κ)'` are taken by central
//! differences of the scalar fields themselves, so nothing here needs more
//! than three derivatives of the curve.

mod classify;
mod sphere_fit;

use serde::Serialize;

use crate::curve::diff::derivative_of;
use crate::curve::{DiffConfig, Interval, ParamCurve};
use crate::error::{Error, Result};
use crate::geom::{cross, normalize, Frame, UnitVec3};

pub use classify::{
    classification_margin, classify, constancy, max_abs, mean, ClassificationReport, Sample,
};
pub use sphere_fit::{fit_sphere, SphereFit, MIN_FIT_SAMPLES};

/// `|c'|` at or below this counts as a stationary point.
pub const DEGENERATE_SPEED: f64 = 1e-14;
/// `|c' × c''| ≤ VANISHING_CURVATURE·|c'|³` counts as zero curvature.
pub const VANISHING_CURVATURE: f64 = 1e-12;
/// `|τ|` at or below this makes the sphere formulas undefined.
pub const TORSION_THRESHOLD: f64 = 1e-10;

/// `(T, N, B, κ, τ, ν)` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetApparatus {
    pub tangent: UnitVec3,
    pub normal: UnitVec3,
    pub binormal: UnitVec3,
    pub kappa: f64,
    pub tau: f64,
    /// Speed `|c'|`.
    pub nu: f64,
}

impl FrenetApparatus {
    pub fn frame(&self) -> Frame {
        Frame {
            e1: self.tangent,
            e2: self.normal,
            e3: self.binormal,
        }
    }
}

pub fn frenet_apparatus(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<FrenetApparatus> {
    let d1 = curve.derive(1, s, cfg)?;
    let nu = d1.norm();
    if !(nu > DEGENERATE_SPEED) {
        return Err(Error::DegenerateTangent { s, speed: nu });
    }
    let d2 = curve.derive(2, s, cfg)?;
    let w = cross(d1, d2);
    let wn = w.norm();
    if !(wn > VANISHING_CURVATURE * nu * nu * nu) {
        return Err(Error::VanishingCurvature { s, norm: wn });
    }
    let d3 = curve.derive(3, s, cfg)?;
    let tangent = normalize(d1)?;
    let binormal = normalize(w)?;
    let normal = normalize(cross(*binormal, *tangent))?;
    Ok(FrenetApparatus {
        tangent,
        normal,
        binormal,
        kappa: wn / (nu * nu * nu),
        tau: w.dot(d3) / (wn * wn),
        nu,
    })
}

/// `τ/κ`, constant exactly for cylindrical helices.
pub fn helix_ratio(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<f64> {
    let a = frenet_apparatus(curve, s, cfg)?;
    Ok(a.tau / a.kappa)
}

/// Geodesic curvature of the principal-normal indicatrix,
/// `κ² (τ/κ)' / (ν (κ² + τ²)^{3/2})`; constant exactly for slant helices.
pub fn sigma(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<f64> {
    let a = frenet_apparatus(curve, s, cfg)?;
    let ratio_prime = derivative_of(|x| helix_ratio(curve, x, cfg), curve.domain(), s, cfg)?;
    let k2 = a.kappa * a.kappa;
    Ok(k2 * ratio_prime / (a.nu * (k2 + a.tau * a.tau).powf(1.5)))
}

fn torsion_checked(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<FrenetApparatus> {
    let a = frenet_apparatus(curve, s, cfg)?;
    if !(a.tau.abs() > TORSION_THRESHOLD) {
        return Err(Error::TorsionNearZero { s, tau: a.tau });
    }
    Ok(a)
}

fn inverse_kappa_prime(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<f64> {
    derivative_of(
        |x| frenet_apparatus(curve, x, cfg).map(|a| 1.0 / a.kappa),
        curve.domain(),
        s,
        cfg,
    )
}

/// `r = sqrt(1/κ² + ((1/κ)' / (ντ))²)`.
pub fn sphere_radius(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<f64> {
    let a = torsion_checked(curve, s, cfg)?;
    let q = inverse_kappa_prime(curve, s, cfg)? / (a.nu * a.tau);
    Ok((1.0 / (a.kappa * a.kappa) + q * q).sqrt())
}

/// `(1/ν) [(1/(ντ)) (1/κ)']' + τ/κ`, identically zero on spherical curves.
pub fn sphere_residual(curve: &ParamCurve, s: f64, cfg: &DiffConfig) -> Result<f64> {
    let a = torsion_checked(curve, s, cfg)?;
    let inner = |x: f64| -> Result<f64> {
        let b = torsion_checked(curve, x, cfg)?;
        Ok(inverse_kappa_prime(curve, x, cfg)? / (b.nu * b.tau))
    };
    let outer = derivative_of(inner, curve.domain(), s, cfg)?;
    Ok(outer / a.nu + a.tau / a.kappa)
}

/// Splits the interior of the domain into arcs on which the apparatus is
/// defined and the binormal does not flip. `n` grid points locate the breaks;
/// each arc stops `guard` short of a break on either side.
pub fn regular_arcs(
    curve: &ParamCurve,
    n: usize,
    guard: f64,
    cfg: &DiffConfig,
) -> Result<Vec<Interval>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 grid points, got {n}"
        )));
    }
    let margin = classification_margin(curve.domain(), cfg)?;
    let grid = curve.domain().shrink(margin)?.linspace(n);
    let mut arcs = Vec::new();
    let mut start: Option<f64> = None;
    let mut last: Option<(f64, UnitVec3)> = None;
    let mut resume = f64::NEG_INFINITY;
    for &s in &grid {
        match frenet_apparatus(curve, s, cfg) {
            Ok(a) => {
                if let Some((prev_s, prev_b)) = last {
                    if prev_b.dot(*a.binormal) < 0.0 {
                        let mid = 0.5 * (prev_s + s);
                        push_arc(&mut arcs, start.take(), mid - guard);
                        start = Some(mid + guard);
                    }
                }
                if s < resume {
                    continue;
                }
                start.get_or_insert(s);
                last = Some((s, a.binormal));
            }
            Err(Error::VanishingCurvature { .. }) | Err(Error::DegenerateTangent { .. }) => {
                if let Some((prev_s, _)) = last.take() {
                    push_arc(&mut arcs, start.take(), prev_s.min(s - guard));
                }
                start = None;
                resume = s + guard;
            }
            Err(e) => return Err(e),
        }
    }
    if let Some((prev_s, _)) = last {
        push_arc(&mut arcs, start, prev_s);
    }
    Ok(arcs)
}

fn push_arc(arcs: &mut Vec<Interval>, start: Option<f64>, end: f64) {
    if let Some(lo) = start {
        if let Ok(arc) = Interval::new(lo, end) {
            arcs.push(arc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{det3, Vec3};
    use proptest::prelude::*;

    fn dom(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn circle() -> ParamCurve {
        ParamCurve::new(dom(-1.0, 2.0), |t: f64| Vec3::new(t.cos(), t.sin(), 0.0)).unwrap()
    }

    fn helix() -> ParamCurve {
        ParamCurve::new(dom(0.0, 6.0), |t: f64| Vec3::new(t.cos(), t.sin(), t)).unwrap()
    }

    fn analytic_helix() -> ParamCurve {
        helix()
            .with_derivative(1, |t: f64| Vec3::new(-t.sin(), t.cos(), 1.0))
            .unwrap()
            .with_derivative(2, |t: f64| Vec3::new(-t.cos(), -t.sin(), 0.0))
            .unwrap()
            .with_derivative(3, |t: f64| Vec3::new(t.sin(), -t.cos(), 0.0))
            .unwrap()
    }

    #[test]
    fn circle_apparatus() {
        let a = frenet_apparatus(&circle(), 0.3, &DiffConfig::default()).unwrap();
        assert!((a.kappa - 1.0).abs() < 1e-8);
        assert!(a.tau.abs() < 1e-8);
        assert!((a.nu - 1.0).abs() < 1e-8);
    }

    #[test]
    fn helix_apparatus() {
        let cfg = DiffConfig::default();
        for t in [0.5, 2.0, 3.3, 5.1] {
            let a = frenet_apparatus(&helix(), t, &cfg).unwrap();
            assert!((a.kappa - 0.5).abs() < 1e-8, "{}", a.kappa);
            assert!((a.tau - 0.5).abs() < 1e-8, "{}", a.tau);
            assert!((a.nu - 2f64.sqrt()).abs() < 1e-8);
            assert!((det3(*a.tangent, *a.normal, *a.binormal) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn straight_line_has_no_apparatus() {
        let line = ParamCurve::new(dom(0.0, 1.0), |t: f64| Vec3::new(t, 0.0, 0.0)).unwrap();
        let err = frenet_apparatus(&line, 0.5, &DiffConfig::default()).unwrap_err();
        assert!(matches!(err, Error::VanishingCurvature { .. }));
    }

    #[test]
    fn stationary_point_is_degenerate() {
        let c = ParamCurve::new(dom(-1.0, 1.0), |t: f64| {
            Vec3::new(t * t * t, t * t * t * t, 0.0)
        })
        .unwrap()
        .with_derivative(1, |t: f64| Vec3::new(3.0 * t * t, 4.0 * t * t * t, 0.0))
        .unwrap();
        let err = frenet_apparatus(&c, 0.0, &DiffConfig::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateTangent { .. }));
    }

    #[test]
    fn ratio_examples() {
        let cfg = DiffConfig::default();
        assert!(helix_ratio(&circle(), 0.5, &cfg).unwrap().abs() < 1e-8);
        assert!((helix_ratio(&helix(), 1.0, &cfg).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn sigma_vanishes_on_circular_helix() {
        let cfg = DiffConfig::default();
        for t in [1.0, 3.0, 4.5] {
            assert!(sigma(&analytic_helix(), t, &cfg).unwrap().abs() < 1e-7);
            // nested differencing of a position-only curve is noisier
            assert!(sigma(&helix(), t, &cfg).unwrap().abs() < 1e-5);
        }
    }

    #[test]
    fn helix_sphere_formulas() {
        // κ is constant, so (1/κ)' = 0: r = 1/κ = 2 while the residual is τ/κ = 1.
        let cfg = DiffConfig::default();
        let r = sphere_radius(&analytic_helix(), 3.0, &cfg).unwrap();
        assert!((r - 2.0).abs() < 1e-6, "{r}");
        let res = sphere_residual(&analytic_helix(), 3.0, &cfg).unwrap();
        assert!((res - 1.0).abs() < 1e-6, "{res}");
    }

    #[test]
    fn planar_circle_has_no_sphere_formula() {
        let cfg = DiffConfig::default();
        assert!(matches!(
            sphere_radius(&circle(), 0.5, &cfg),
            Err(Error::TorsionNearZero { .. })
        ));
        assert!(matches!(
            sphere_residual(&circle(), 0.5, &cfg),
            Err(Error::TorsionNearZero { .. })
        ));
    }

    #[test]
    fn viviani_curve_is_spherical() {
        // Viviani's curve lies on the sphere of radius 2 centred at the origin.
        let c = ParamCurve::new(dom(-1.0, 1.0), |t: f64| {
            Vec3::new(1.0 + t.cos(), t.sin(), 2.0 * (t / 2.0).sin())
        })
        .unwrap()
        .with_derivative(1, |t: f64| Vec3::new(-t.sin(), t.cos(), (t / 2.0).cos()))
        .unwrap()
        .with_derivative(2, |t: f64| {
            Vec3::new(-t.cos(), -t.sin(), -0.5 * (t / 2.0).sin())
        })
        .unwrap()
        .with_derivative(3, |t: f64| {
            Vec3::new(t.sin(), -t.cos(), -0.25 * (t / 2.0).cos())
        })
        .unwrap();
        let cfg = DiffConfig::default();
        for t in [-0.6, 0.1, 0.5] {
            let r = sphere_radius(&c, t, &cfg).unwrap();
            assert!((r - 2.0).abs() < 1e-6, "r = {r}");
            assert!(sphere_residual(&c, t, &cfg).unwrap().abs() < 1e-5);
        }
    }

    #[test]
    fn arcs_split_at_an_inflection() {
        // (t, t³, t⁴ + t) has κ = 0 only at t = 0, where the binormal flips
        let c = ParamCurve::new(dom(-1.0, 1.0), |t: f64| {
            Vec3::new(t, t * t * t, t * t * t * t + t)
        })
        .unwrap();
        let cfg = DiffConfig::default();
        let arcs = regular_arcs(&c, 101, 0.05, &cfg).unwrap();
        assert_eq!(arcs.len(), 2, "{arcs:?}");
        assert!(arcs[0].hi < -0.04 && arcs[1].lo > 0.04);
        let whole = regular_arcs(&helix(), 50, 0.05, &cfg).unwrap();
        assert_eq!(whole.len(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn frame_is_right_handed(t in 0.5..5.5f64, a in 0.5..2.0f64, b in -1.5..1.5f64) {
            let c = ParamCurve::new(dom(0.0, 6.0), move |t: f64| {
                Vec3::new(a * t.cos(), a * t.sin(), b * t + 0.1 * t * t)
            }).unwrap();
            let app = frenet_apparatus(&c, t, &DiffConfig::default()).unwrap();
            prop_assert!((det3(*app.tangent, *app.normal, *app.binormal) - 1.0).abs() < 1e-8);
        }

        #[test]
        fn curvature_and_torsion_survive_reparameterization(t in 0.5..2.5f64) {
            // c(t) against c(2t): κ, τ agree at matching points, ν doubles.
            let c = ParamCurve::new(dom(0.0, 6.0), |t: f64| {
                Vec3::new(t.cos(), (1.0 + 0.2 * t) * t.sin(), 0.5 * t)
            }).unwrap();
            let fast = c.rescaled(2.0).unwrap();
            let cfg = DiffConfig::default();
            let slow = frenet_apparatus(&c, 2.0 * t, &cfg).unwrap();
            let quick = frenet_apparatus(&fast, t, &cfg).unwrap();
            prop_assert!((slow.kappa - quick.kappa).abs() < 1e-6);
            prop_assert!((slow.tau - quick.tau).abs() < 1e-6);
            prop_assert!((quick.nu - 2.0 * slow.nu).abs() < 1e-6);
        }
    }
}
