//! The spherical helix over the latitude circle of radius 1/√3.
//!
//! Builds it through the exponential construction with the tangent weight,
//! compares to the closed form and certifies it lies on a sphere of radius 2.
//!
//!     cargo run --example spherical_helix

use sabban_helix::construct::{construct_frenet, example1_alpha, example1_inputs};
use sabban_helix::curve::{DiffConfig, Interval};
use sabban_helix::frenet::{classify, frenet_apparatus};

fn main() -> sabban_helix::Result<()> {
    let domain = Interval::new(-0.9, 0.9)?;
    let (gamma, params) = example1_inputs(domain)?;
    let c = construct_frenet(&gamma, &params, &Default::default())?;

    let worst = domain
        .linspace(200)
        .into_iter()
        .map(|s| (c.at(s) - example1_alpha(s)).max_abs())
        .fold(0.0, f64::max);
    println!("max |c - alpha| over 200 samples: {worst:.3e}");

    let cfg = DiffConfig::default();
    for s in [-0.6, 0.0, 0.6] {
        let a = frenet_apparatus(&c, s, &cfg)?;
        println!(
            "s = {s:+.1}: kappa = {:.6}, tau = {:.6}, tau/kappa = {:.6}",
            a.kappa,
            a.tau,
            a.tau / a.kappa
        );
    }

    let report = classify(&c, 100, 1e-6, &cfg)?;
    let fit = report.sphere_fit.expect("torsion is nonzero here");
    println!(
        "spherical: {}, center = ({:.2e}, {:.2e}, {:.2e}), radius = {:.12}",
        report.is_spherical, fit.center.x, fit.center.y, fit.center.z, fit.radius
    );
    println!(
        "cylindrical: {} (tau/kappa = {:.12})",
        report.is_cylindrical_helix,
        report.ratio_mean()
    );
    Ok(())
}
