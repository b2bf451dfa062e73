//! Slant helices from the Bertrand construction `c' = b(γ + cot θ p)`.
//!
//! Where `1 − k_g cot θ` vanishes the curve has an inflection and `σ` changes
//! sign, so the certificate is taken arc by arc.
//!
//!     cargo run --example bertrand_slant_helix

use std::f64::consts::PI;

use sabban_helix::construct::{
    construct_bertrand, slant_kg_profile, BertrandConstructionParams, SlantProfileParams,
};
use sabban_helix::curve::{DiffConfig, Interval};
use sabban_helix::frenet::{classify, mean, regular_arcs};
use sabban_helix::sabban::{curve_from_kg, OdeConfig, SabbanFrame};

fn main() -> sabban_helix::Result<()> {
    let domain = Interval::new(-4.0, 4.0)?;
    let kg = slant_kg_profile(&SlantProfileParams::new(0.2, 0.0), domain)?;
    let gamma =
        curve_from_kg(&kg, &SabbanFrame::standard(), &OdeConfig::default())?.into_spherical();
    let cfg = DiffConfig::default();

    for (label, theta) in [("pi/6", PI / 6.0), ("pi/4", PI / 4.0), ("pi/3", PI / 3.0)] {
        let params = BertrandConstructionParams::new(1.0, theta);
        let c = construct_bertrand(&gamma, &params, &Default::default())?;
        println!("theta = {label}, speed = {:.6}", params.speed());
        for arc in regular_arcs(&c, 800, 0.1, &cfg)? {
            let report = classify(&c.restrict(arc)?, 60, 1e-6, &cfg)?;
            println!(
                "  arc {arc}: slant = {}, sigma = {:+.8}",
                report.is_slant_helix,
                mean(&report.sigma_samples)
            );
        }
    }
    Ok(())
}
