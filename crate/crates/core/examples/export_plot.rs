//! Writing samples as CSV and JSON and plotting three projections as SVG.
//!
//!     cargo run --example export_plot -- [output-dir]

use std::path::PathBuf;

use sabban_helix::cli::export::{to_csv, to_json, to_svg, Record};
use sabban_helix::construct::{construct_frenet, example1_inputs};
use sabban_helix::curve::{DiffConfig, Interval};
use sabban_helix::frenet::{classify, frenet_apparatus, sigma};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/export_plot".into()),
    );
    std::fs::create_dir_all(&dir)?;

    let domain = Interval::new(-0.9, 0.9)?;
    let (gamma, params) = example1_inputs(domain)?;
    let c = construct_frenet(&gamma, &params, &Default::default())?;
    let cfg = DiffConfig::default();

    let inner = domain.shrink(0.05)?;
    let records = inner
        .linspace(60)
        .into_iter()
        .map(|s| {
            let a = frenet_apparatus(&c, s, &cfg)?;
            let p = c.at(s);
            Ok(Record {
                s,
                x: p.x,
                y: p.y,
                z: p.z,
                kappa: Some(a.kappa),
                tau: Some(a.tau),
                sigma: Some(sigma(&c, s, &cfg)?),
            })
        })
        .collect::<sabban_helix::Result<Vec<_>>>()?;

    std::fs::write(dir.join("helix.csv"), to_csv(&records, true))?;
    std::fs::write(dir.join("helix.json"), to_json(&records)?)?;

    let report = classify(&c, 100, 1e-6, &cfg)?;
    let points: Vec<_> = c.sample(400).into_iter().map(|(_, p)| p).collect();
    let svg = to_svg(&points, report.sphere_fit.as_ref(), "spherical helix");
    std::fs::write(dir.join("helix.svg"), svg)?;

    println!(
        "wrote helix.csv, helix.json and helix.svg to {}",
        dir.display()
    );
    Ok(())
}
