//! Classifying curves by their Frenet apparatus and a sphere fit.
//!
//!     cargo run --example classify_curve

use std::f64::consts::TAU;

use sabban_helix::curve::{DiffConfig, Interval, ParamCurve};
use sabban_helix::frenet::{classify, fit_sphere, max_abs, ClassificationReport};
use sabban_helix::geom::Vec3;

fn show(name: &str, report: &ClassificationReport) {
    println!(
        "{name:<16} cylindrical = {:<5} slant = {:<5} spherical = {:<5} radius = {}",
        report.is_cylindrical_helix,
        report.is_slant_helix,
        report.is_spherical,
        report
            .sphere_radius
            .map_or("-".into(), |r| format!("{r:.9}")),
    );
    for note in &report.notes {
        println!("{:16} note: {note}", "");
    }
}

fn main() -> sabban_helix::Result<()> {
    let cfg = DiffConfig::default();

    let helix = ParamCurve::new(Interval::new(0.0, TAU)?, |t| Vec3::new(t.cos(), t.sin(), t))?;
    show("circular helix", &classify(&helix, 80, 1e-6, &cfg)?);

    // Viviani's curve lies on the sphere of radius 2 centered at the origin
    let viviani = ParamCurve::new(Interval::new(-1.0, 1.0)?, |t| {
        Vec3::new(1.0 + t.cos(), t.sin(), 2.0 * (t / 2.0).sin())
    })?
    .with_derivative(1, |t| Vec3::new(-t.sin(), t.cos(), (t / 2.0).cos()))?
    .with_derivative(2, |t| Vec3::new(-t.cos(), -t.sin(), -0.5 * (t / 2.0).sin()))?
    .with_derivative(3, |t| Vec3::new(t.sin(), -t.cos(), -0.25 * (t / 2.0).cos()))?;
    let report = classify(&viviani, 80, 1e-4, &cfg)?;
    show("viviani", &report);
    println!(
        "{:16} max sphere residual {:.1e}",
        "",
        max_abs(&report.residual_samples)
    );

    let circle = ParamCurve::new(Interval::new(0.0, 3.0)?, |t| {
        Vec3::new(t.cos(), t.sin(), 0.0)
    })?;
    show("planar circle", &classify(&circle, 80, 1e-6, &cfg)?);

    let cloud: Vec<Vec3> = (0..50)
        .map(|i| {
            let (u, v) = (i as f64 * 0.7, (i as f64 * 0.3).sin());
            Vec3::new(1.0, -2.0, 0.5)
                + Vec3::new(v.cos() * u.cos(), v.cos() * u.sin(), v.sin()) * 3.0
        })
        .collect();
    let fit = fit_sphere(&cloud)?;
    println!(
        "point cloud fit: center = ({:.6}, {:.6}, {:.6}), radius = {:.6}, rms = {:.1e}",
        fit.center.x, fit.center.y, fit.center.z, fit.radius, fit.rms_residual
    );
    Ok(())
}
