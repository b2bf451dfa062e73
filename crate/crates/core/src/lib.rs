//! Space curves built from unit-speed spherical curves, and numerical
//! certificates for what they are.
//!
//! A spherical curve `γ` with Sabban frame `(γ, t, p)` and geodesic
//! curvature `k_g` generates two families:
//!
//! * [`construct::construct_frenet`]: `c = a + b ∫ e^{∫k} γ`. Its tangent
//!   indicatrix is `γ` itself, so `τ/κ = k_g` and `σ` only depends on `γ`.
//! * [`construct::construct_bertrand`]: `c = a + b ∫ (γ + cot θ p)`, a
//!   constant-speed curve.
//!
//! [`frenet`] computes `κ`, `τ`, `σ` and the sphere functionals by finite
//! differences (or exact derivatives when a curve carries them) and
//! [`frenet::classify`] turns them into cylindrical, slant and spherical
//! verdicts. [`sabban`] goes the other way, from `k_g(s)` to `γ`.
//!
//! ```
//! use sabban_helix::construct::{construct_frenet, example1_inputs};
//! use sabban_helix::curve::{DiffConfig, Interval};
//! use sabban_helix::frenet::classify;
//!
//! let (gamma, params) = example1_inputs(Interval::new(-0.9, 0.9)?)?;
//! let c = construct_frenet(&gamma, &params, &Default::default())?;
//! let report = classify(&c, 50, 1e-6, &DiffConfig::default())?;
//! assert!(report.is_spherical && report.is_cylindrical_helix);
//! assert!((report.sphere_radius.unwrap() - 2.0).abs() < 1e-9);
//! # Ok::<(), sabban_helix::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod construct;
pub mod curve;
pub mod error;
pub mod frenet;
pub mod geom;
pub mod sabban;

pub use error::{Error, Result};
