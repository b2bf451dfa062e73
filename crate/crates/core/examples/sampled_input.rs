//! Certifying a curve known only through samples.
//!
//! The samples are blended into a smooth interpolant before differentiation;
//! the step must stay well above the sample noise.
//!
//!     cargo run --example sampled_input

use sabban_helix::construct::example1_alpha;
use sabban_helix::curve::sampled::DEFAULT_BLEND_DEGREE;
use sabban_helix::curve::{interpolate_samples, DiffConfig, Interval, StepSize};
use sabban_helix::frenet::classify;

fn main() -> sabban_helix::Result<()> {
    let domain = Interval::new(-0.9, 0.9)?;
    let s = domain.linspace(400);
    let points: Vec<_> = s.iter().map(|&s| example1_alpha(s)).collect();
    let curve = interpolate_samples(&s, &points, DEFAULT_BLEND_DEGREE)?;

    for h in [1e-3, 4e-3, 1e-2] {
        let cfg = DiffConfig {
            base_step: StepSize::Relative(h),
            ..DiffConfig::default()
        };
        let report = classify(&curve, 80, 1e-3, &cfg)?;
        println!(
            "step {h:<6}: spherical = {:<5} radius = {:.9}, cylindrical = {:<5} tau/kappa = {:.6}",
            report.is_spherical,
            report.sphere_fit.map_or(f64::NAN, |f| f.radius),
            report.is_cylindrical_helix,
            report.ratio_mean()
        );
    }
    Ok(())
}
