//! Recovering the generating profile from a measured slant helix.
//!
//! Samples `σ` on a constructed curve, integrates `k_g' = σ (1 + k_g²)^{3/2}`
//! back and fits `k_g/√(1+k_g²) = m s + n`.
//!
//!     cargo run --example converse_recovery

use sabban_helix::construct::{
    construct_frenet, fit_slant_offset, recover_kg_from_sigma, slant_kg_profile,
    FrenetConstructionParams, SlantProfileParams,
};
use sabban_helix::curve::{DiffConfig, Interval, ScalarProfile};
use sabban_helix::frenet::{mean, sigma, Sample};
use sabban_helix::sabban::{curve_from_kg, OdeConfig, SabbanFrame};

fn main() -> sabban_helix::Result<()> {
    let domain = Interval::new(-2.0, 2.0)?;
    let truth = SlantProfileParams::new(0.15, 0.2);
    let kg = slant_kg_profile(&truth, domain)?;
    let gamma =
        curve_from_kg(&kg, &SabbanFrame::standard(), &OdeConfig::default())?.into_spherical();
    let c = construct_frenet(
        &gamma,
        &FrenetConstructionParams::new(1.5, ScalarProfile::constant(domain, 0.1)?),
        &Default::default(),
    )?;

    let cfg = DiffConfig::default();
    let sampled = Interval::new(-1.8, 1.8)?;
    let samples = sampled
        .linspace(181)
        .into_iter()
        .map(|s| {
            Ok(Sample {
                s,
                value: sigma(&c, s, &cfg)?,
            })
        })
        .collect::<sabban_helix::Result<Vec<_>>>()?;
    let m = mean(&samples);

    let recovered = recover_kg_from_sigma(&samples, kg.at(sampled.lo), 8)?;
    let (n, residual) = fit_slant_offset(&recovered, m)?;
    println!(
        "measured m = {m:.9} (true {}), fitted n = {n:.9} (true {}), residual {residual:.1e}",
        truth.m, truth.n
    );
    Ok(())
}
