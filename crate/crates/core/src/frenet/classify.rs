use serde::Serialize;

use crate::curve::{DiffConfig, Interval, ParamCurve};
use crate::error::{Error, Result};
use crate::geom::Vec3;

use super::{fit_sphere, helix_ratio, sigma, sphere_radius, sphere_residual, SphereFit};

/// `(s, value)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub s: f64,
    pub value: f64,
}

/// Verdicts plus every sampled functional they were derived from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub is_cylindrical_helix: bool,
    pub is_slant_helix: bool,
    pub is_spherical: bool,
    pub ratio_samples: Vec<Sample>,
    pub sigma_samples: Vec<Sample>,
    /// Empty when the torsion vanished somewhere on the grid.
    pub radius_samples: Vec<Sample>,
    pub residual_samples: Vec<Sample>,
    pub sphere_fit: Option<SphereFit>,
    pub sphere_center: Option<Vec3>,
    pub sphere_radius: Option<f64>,
    /// The sphere verdict rests on the point fit alone.
    pub torsion_fallback: bool,
    pub tolerance_used: f64,
    pub sampled_domain: Interval,
    pub notes: Vec<String>,
}

/// `max |v − mean| / max(1, |mean|) ≤ tol`; an empty set is not constant.
pub fn constancy(samples: &[Sample], tol: f64) -> bool {
    if samples.is_empty() {
        return false;
    }
    let mean = mean(samples);
    let dev = samples
        .iter()
        .map(|p| (p.value - mean).abs())
        .fold(0.0, f64::max);
    dev / mean.abs().max(1.0) <= tol
}

pub fn mean(samples: &[Sample]) -> f64 {
    samples.iter().map(|p| p.value).sum::<f64>() / samples.len() as f64
}

pub fn max_abs(samples: &[Sample]) -> f64 {
    samples.iter().map(|p| p.value.abs()).fold(0.0, f64::max)
}

impl ClassificationReport {
    pub fn ratio_mean(&self) -> f64 {
        mean(&self.ratio_samples)
    }

    pub fn sigma_mean(&self) -> f64 {
        mean(&self.sigma_samples)
    }

    /// Recomputes the three verdicts from the recorded samples only.
    pub fn rederive(&self) -> (bool, bool, bool) {
        let tol = self.tolerance_used;
        let fit_ok = self
            .sphere_fit
            .map(|f| f.rms_residual <= tol * f.radius)
            .unwrap_or(false);
        let spherical = if self.torsion_fallback {
            fit_ok
        } else {
            fit_ok
                && constancy(&self.radius_samples, tol)
                && !self.residual_samples.is_empty()
                && max_abs(&self.residual_samples) <= tol
        };
        (
            constancy(&self.ratio_samples, tol),
            constancy(&self.sigma_samples, tol),
            spherical,
        )
    }
}

/// Distance kept from each end of the domain: five widths of the widest
/// differentiation stencil (a nested first difference over a third derivative).
pub fn classification_margin(domain: Interval, cfg: &DiffConfig) -> Result<f64> {
    Ok(5.0 * 4.0 * cfg.step_for(domain)?)
}

/// Samples `τ/κ`, `σ`, the sphere radius and the sphere residual on
/// `n_samples` uniform interior points and applies the constancy test to each.
pub fn classify(
    curve: &ParamCurve,
    n_samples: usize,
    tol: f64,
    cfg: &DiffConfig,
) -> Result<ClassificationReport> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "classification needs at least 2 samples, got {n_samples}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let margin = classification_margin(curve.domain(), cfg)?;
    let grid_domain = curve.domain().shrink(margin)?;
    let grid = grid_domain.linspace(n_samples);

    let sample = |f: &dyn Fn(f64) -> Result<f64>| -> Result<Vec<Sample>> {
        grid.iter()
            .map(|&s| Ok(Sample { s, value: f(s)? }))
            .collect()
    };
    let ratio_samples = sample(&|s| helix_ratio(curve, s, cfg))?;
    let sigma_samples = sample(&|s| sigma(curve, s, cfg))?;

    let mut notes = Vec::new();
    let mut torsion_fallback = false;
    let (radius_samples, residual_samples) = match sample(&|s| sphere_radius(curve, s, cfg))
        .and_then(|r| Ok((r, sample(&|s| sphere_residual(curve, s, cfg))?)))
    {
        Ok(pair) => pair,
        Err(e @ Error::TorsionNearZero { .. }) => {
            torsion_fallback = true;
            notes.push(format!("{e}; sphere verdict uses the point fit alone"));
            (Vec::new(), Vec::new())
        }
        Err(e) => return Err(e),
    };

    let points: Vec<Vec3> = grid.iter().map(|&s| curve.at(s)).collect();
    let sphere_fit = match fit_sphere(&points) {
        Ok(fit) => Some(fit),
        Err(e @ Error::DegenerateConfiguration(_)) => {
            notes.push(e.to_string());
            None
        }
        Err(e) => return Err(e),
    };

    let mut report = ClassificationReport {
        is_cylindrical_helix: false,
        is_slant_helix: false,
        is_spherical: false,
        ratio_samples,
        sigma_samples,
        radius_samples,
        residual_samples,
        sphere_center: sphere_fit.map(|f| f.center),
        sphere_radius: sphere_fit.map(|f| f.radius),
        sphere_fit,
        torsion_fallback,
        tolerance_used: tol,
        sampled_domain: grid_domain,
        notes,
    };
    let (cyl, slant, sph) = report.rederive();
    report.is_cylindrical_helix = cyl;
    report.is_slant_helix = slant;
    report.is_spherical = sph;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(values: &[f64]) -> Vec<Sample> {
        values
            .iter()
            .enumerate()
            .map(|(i, &value)| Sample { s: i as f64, value })
            .collect()
    }

    #[test]
    fn constancy_uses_unit_floor() {
        assert!(constancy(&samples(&[1e-7, -1e-7, 0.0]), 1e-6));
        assert!(!constancy(&samples(&[1e-5, -1e-5]), 1e-6));
        // relative for large means
        assert!(constancy(&samples(&[1000.0, 1000.0005]), 1e-6));
        assert!(!constancy(&[], 1.0));
    }

    #[test]
    fn helix_classification() {
        let c = ParamCurve::new(Interval::new(0.0, 6.0).unwrap(), |t: f64| {
            Vec3::new(t.cos(), t.sin(), t)
        })
        .unwrap();
        let r = classify(&c, 40, 1e-6, &DiffConfig::default()).unwrap();
        assert!(r.is_cylindrical_helix);
        assert!(r.is_slant_helix);
        assert!(!r.is_spherical);
        assert_eq!(r.rederive(), (true, true, false));
    }

    #[test]
    fn planar_circle_uses_torsion_fallback() {
        let c = ParamCurve::new(Interval::new(0.0, 3.0).unwrap(), |t: f64| {
            Vec3::new(t.sin(), 1.0 - t.cos(), 0.0)
        })
        .unwrap();
        let r = classify(&c, 30, 1e-6, &DiffConfig::default()).unwrap();
        assert!(r.torsion_fallback);
        assert!(r.sphere_fit.is_none());
        assert!(!r.is_spherical);
        assert!(r.is_cylindrical_helix);
        assert_eq!(r.notes.len(), 2);
    }
}
