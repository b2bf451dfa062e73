//! Synthesizing a spherical curve from its geodesic curvature.
//!
//! Integrates the Sabban frame equations for a constant `k_g` and compares
//! against the closed-form latitude circle, then shows the frame staying
//! orthonormal for a nonconstant profile.
//!
//!     cargo run --example sabban_synthesis

use std::f64::consts::TAU;

use sabban_helix::construct::{slant_kg_profile, SlantProfileParams};
use sabban_helix::curve::{DiffConfig, Interval, ScalarProfile};
use sabban_helix::geom::det3;
use sabban_helix::sabban::{
    curve_from_kg, latitude_circle_radius, sabban_frame, spherical_circle, OdeConfig, SabbanFrame,
};

fn main() -> sabban_helix::Result<()> {
    let k_g = 2f64.sqrt();
    let r = latitude_circle_radius(k_g);
    let circle = spherical_circle(r)?;
    let start = sabban_frame(&circle, 0.0, &DiffConfig::default())?;
    // four turns, so even the coarsest step fits the L/100 bound
    let kg = ScalarProfile::constant(Interval::new(0.0, 4.0 * TAU * r)?, k_g)?;

    for step in [0.08, 0.04, 0.02, 1e-3] {
        let synth = curve_from_kg(&kg, &start, &OdeConfig::with_step(step))?;
        let err = kg
            .domain()
            .linspace(101)
            .into_iter()
            .map(|s| (synth.at(s) - circle.at(s)).max_abs())
            .fold(0.0, f64::max);
        println!(
            "step {step:<6}: max |gamma - circle| = {err:.3e}, gram err = {:.1e}",
            synth.max_gram_error()
        );
    }

    let slant = slant_kg_profile(
        &SlantProfileParams::new(0.2, 0.1),
        Interval::new(-4.0, 4.0)?,
    )?;
    let synth = curve_from_kg(&slant, &SabbanFrame::standard(), &OdeConfig::default())?;
    println!(
        "slant profile: {} nodes, gram err {:.1e}",
        synth.nodes().len(),
        synth.max_gram_error()
    );
    let cfg = DiffConfig::default();
    for s in [-3.0, 0.0, 3.0] {
        let (g, t, p) = synth.frame_at(s);
        let measured = det3(g, synth.derive(1, s, &cfg)?, synth.derive(2, s, &cfg)?);
        println!(
            "  s = {s:+.1}: |gamma| = {:.15}, <t,p> = {:+.1e}, k_g = {:.10} (requested {:.10})",
            g.norm(),
            t.dot(p),
            measured,
            slant.at(s)
        );
    }
    Ok(())
}
