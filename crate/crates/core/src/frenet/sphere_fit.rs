use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec3;

/// Minimum sample count accepted by [`fit_sphere`].
pub const MIN_FIT_SAMPLES: usize = 10;

/// Smallest/largest singular value ratio below which the normal equations are
/// treated as singular.
const SINGULAR_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereFit {
    pub center: Vec3,
    pub radius: f64,
    /// RMS of `| |x − c| − r |` over the samples.
    pub rms_residual: f64,
}

/// Algebraic least-squares sphere through `samples`.
///
/// Solves the linear system `2⟨x, c⟩ + d = |x|²` with `d = r² − |c|²` by its
/// normal equations. Points are centered on their centroid first.
pub fn fit_sphere(samples: &[Vec3]) -> Result<SphereFit> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::DegenerateConfiguration(format!(
            "sphere fit needs at least {MIN_FIT_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let n = samples.len() as f64;
    let centroid = samples.iter().fold(Vec3::ZERO, |acc, p| acc + *p) / n;

    let mut normal = Matrix4::<f64>::zeros();
    let mut rhs = Vector4::<f64>::zeros();
    for p in samples {
        let q = *p - centroid;
        let row = Vector4::new(2.0 * q.x, 2.0 * q.y, 2.0 * q.z, 1.0);
        normal += row * row.transpose();
        rhs += row * q.norm_squared();
    }

    let svd = normal.svd(true, true);
    let max_sv = svd.singular_values.max();
    let min_sv = svd.singular_values.min();
    if !(max_sv > 0.0) || min_sv <= SINGULAR_RATIO * max_sv {
        return Err(Error::DegenerateConfiguration(
            "normal equations are singular (samples are coplanar or collinear)".into(),
        ));
    }
    let sol = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::DegenerateConfiguration(e.to_string()))?;
    let offset = Vec3::new(sol[0], sol[1], sol[2]);
    let r2 = sol[3] + offset.norm_squared();
    if !(r2 > 0.0) {
        return Err(Error::DegenerateConfiguration(format!(
            "fitted squared radius {r2} is not positive"
        )));
    }
    let center = centroid + offset;
    let radius = r2.sqrt();
    let ss: f64 = samples
        .iter()
        .map(|p| ((*p - center).norm() - radius).powi(2))
        .sum();
    Ok(SphereFit {
        center,
        radius,
        rms_residual: (ss / n).sqrt(),
    })
}
