//! Smooth curves through tabulated points.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::Vec3;

use super::{Interval, ParamCurve};

/// Blending degree of [`interpolate_samples`].
pub const DEFAULT_BLEND_DEGREE: usize = 7;

/// Floater–Hormann barycentric rational interpolant of the points `(s_i, p_i)`.
///
/// The interpolant has no real poles and is infinitely smooth, so it can be
/// differentiated like any closed-form curve. For smooth data on a uniform
/// grid of spacing `h` it is accurate to `O(h^{d+1})`.
pub fn interpolate_samples(s: &[f64], points: &[Vec3], degree: usize) -> Result<ParamCurve> {
    if s.len() != points.len() {
        return Err(Error::InvalidInput(format!(
            "{} parameter values for {} points",
            s.len(),
            points.len()
        )));
    }
    if s.len() < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    if let Some(i) = (1..s.len()).find(|&i| !(s[i] > s[i - 1])) {
        return Err(Error::InvalidInput(format!(
            "parameter values must increase strictly (row {} has s = {})",
            i + 1,
            s[i]
        )));
    }
    if let Some(i) = (0..s.len()).find(|&i| !s[i].is_finite() || !points[i].is_finite()) {
        return Err(Error::InvalidInput(format!("row {} is not finite", i + 1)));
    }
    let domain = Interval::new(s[0], s[s.len() - 1])?;
    let weights = blend_weights(s, degree.min(s.len() - 1));
    let nodes = s.to_vec();
    let values = points.to_vec();
    ParamCurve::from_arc(
        domain,
        Arc::new(move |x| {
            let mut num = Vec3::ZERO;
            let mut den = 0.0;
            for ((&xk, &wk), &fk) in nodes.iter().zip(&weights).zip(&values) {
                let d = x - xk;
                if d == 0.0 {
                    return fk;
                }
                let c = wk / d;
                num += fk * c;
                den += c;
            }
            num / den
        }),
    )
}

fn blend_weights(x: &[f64], d: usize) -> Vec<f64> {
    let n = x.len() - 1;
    (0..=n)
        .map(|k| {
            let lo = k.saturating_sub(d);
            let hi = k.min(n - d);
            let mut sum = 0.0;
            for i in lo..=hi {
                let mut prod = 1.0;
                for j in i..=i + d {
                    if j != k {
                        prod /= (x[k] - x[j]).abs();
                    }
                }
                sum += prod;
            }
            if (k + d) % 2 == 1 {
                -sum
            } else {
                sum
            }
        })
        .collect()
}
