//! Slant helix from the exponential construction: the generating curve has
//! `k_g = u/√(1−u²)` with `u = m s + n`, so `σ = m` whatever weight is chosen.
//!
//!     cargo run --example slant_helix_exponential

use sabban_helix::construct::{
    construct_frenet, slant_kg_profile, FrenetConstructionParams, SlantProfileParams,
};
use sabban_helix::curve::{DiffConfig, Interval, ScalarProfile};
use sabban_helix::frenet::{classify, max_abs};
use sabban_helix::sabban::{curve_from_kg, OdeConfig, SabbanFrame};

fn main() -> sabban_helix::Result<()> {
    let domain = Interval::new(-3.0, 3.0)?;
    let profile = SlantProfileParams::new(0.2, 0.0);
    let kg = slant_kg_profile(&profile, domain)?;
    let gamma =
        curve_from_kg(&kg, &SabbanFrame::standard(), &OdeConfig::default())?.into_spherical();

    let cfg = DiffConfig::default();
    for (name, k) in [
        ("k = 0", ScalarProfile::constant(domain, 0.0)?),
        (
            "k = 0.3 s",
            ScalarProfile::new(domain, |s| 0.3 * s)?.with_derivative(|_| 0.3)?,
        ),
    ] {
        let c = construct_frenet(
            &gamma,
            &FrenetConstructionParams::new(1.0, k),
            &Default::default(),
        )?;
        let report = classify(&c, 80, 1e-6, &cfg)?;
        let dev = report
            .sigma_samples
            .iter()
            .map(|p| (p.value - profile.m).abs())
            .fold(0.0, f64::max);
        println!(
            "{name:>9}: slant = {}, sigma mean = {:.9}, max dev = {dev:.2e}, cylindrical = {}, |tau/kappa| up to {:.3}",
            report.is_slant_helix,
            report.sigma_mean(),
            report.is_cylindrical_helix,
            max_abs(&report.ratio_samples)
        );
    }
    Ok(())
}
