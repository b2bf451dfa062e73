//! Named recipes: a [`JobSpec`] resolved into a concrete curve.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::construct::{
    construct_bertrand, construct_frenet, example1_inputs, slant_domain, slant_kg_profile,
    theorem1_domain, theorem1_k, BertrandConstructionParams, FrenetConstructionParams,
    SlantProfileParams, Theorem1Params,
};
use crate::curve::{
    DiffConfig, Interval, ParamCurve, QuadratureConfig, ScalarProfile, SphericalCurve, StepSize,
};
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::sabban::{
    curve_from_kg, latitude_circle_radius, spherical_circle_on, OdeConfig, SabbanFrame,
};

use super::{JobSpec, KSpec, KgKind, Recipe};

/// Numerical settings after applying the command-line overrides.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Settings {
    pub quadrature: QuadratureConfig,
    pub diff: DiffConfig,
    pub ode: OdeConfig,
}

impl Settings {
    pub fn from_job(job: &JobSpec) -> Result<Self> {
        let mut quadrature = QuadratureConfig::default();
        if let Some(p) = job.panels {
            quadrature.panels_per_unit = p;
        }
        if let Some(n) = job.nodes {
            quadrature.nodes_per_panel = n;
        }
        quadrature.validate()?;
        let mut diff = DiffConfig::default();
        if let Some(h) = job.diff_step {
            diff.base_step = StepSize::Relative(h);
        }
        if let Some(l) = job.levels {
            diff.richardson_levels = l;
        }
        let mut ode = OdeConfig::default();
        if let Some(h) = job.ode_step {
            ode.step = h;
        }
        Ok(Self {
            quadrature,
            diff,
            ode,
        })
    }
}

/// Everything a recipe decided, echoed into the outputs.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedParams {
    pub recipe: &'static str,
    pub domain: Interval,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slant: Option<SlantProfileParams>,
    pub settings: Settings,
}

pub struct Built {
    pub curve: ParamCurve,
    pub params: ResolvedParams,
}

fn check_finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "--{name} must be finite, got {v}"
        )))
    }
}

/// The generating spherical curve for the recipes that take one.
struct Generator {
    gamma: SphericalCurve,
    description: String,
    constant_kg: Option<f64>,
    slant: Option<SlantProfileParams>,
}

fn generator(job: &JobSpec, settings: &Settings, k_domain: Option<Interval>) -> Result<Generator> {
    match (job.kg_const, job.kg) {
        (Some(_), Some(_)) => Err(Error::InvalidParameter(
            "give either --kg-const or --kg, not both".into(),
        )),
        (None, None) => Err(Error::InvalidParameter(
            "this recipe needs --kg-const <value> or --kg slant".into(),
        )),
        (Some(v), None) => {
            let v = check_finite("kg-const", v)?;
            let r = latitude_circle_radius(v.abs());
            let domain = match (job.domain, k_domain) {
                (Some(d), _) => d,
                (None, Some(d)) => d,
                (None, None) => Interval::new(0.0, TAU * r)?,
            };
            if v >= 0.0 {
                Ok(Generator {
                    gamma: spherical_circle_on(r, domain)?,
                    description: format!("latitude circle of radius {r} (k_g = {v})"),
                    constant_kg: Some(v),
                    slant: None,
                })
            } else {
                let kg = ScalarProfile::constant(domain, v)?;
                let c = curve_from_kg(&kg, &SabbanFrame::standard(), &settings.ode)?;
                Ok(Generator {
                    gamma: c.into_spherical(),
                    description: format!("frame ODE with constant k_g = {v}"),
                    constant_kg: Some(v),
                    slant: None,
                })
            }
        }
        (None, Some(KgKind::Slant)) => {
            let params = SlantProfileParams {
                m: check_finite("m", job.m)?,
                n: check_finite("n", job.n)?,
                epsilon: job.epsilon,
                delta: SlantProfileParams::new(job.m, job.n).delta,
            };
            let requested = job.domain.unwrap_or(Interval::new(-4.0, 4.0)?);
            let domain = slant_domain(&params, requested)?;
            let kg = slant_kg_profile(&params, domain)?;
            let c = curve_from_kg(&kg, &SabbanFrame::standard(), &settings.ode)?;
            Ok(Generator {
                gamma: c.into_spherical(),
                description: format!(
                    "frame ODE with k_g = {}(m s + n)/sqrt(1 - (m s + n)^2), m = {}, n = {}",
                    if params.epsilon < 0.0 { "-" } else { "" },
                    params.m,
                    params.n
                ),
                constant_kg: None,
                slant: Some(params),
            })
        }
    }
}

fn default_s0(job: &JobSpec, domain: Interval, preferred: f64) -> Result<f64> {
    match job.s0 {
        Some(s0) => {
            domain.check(check_finite("s0", s0)?)?;
            Ok(s0)
        }
        None if domain.contains(preferred) => Ok(preferred),
        None => Ok(domain.lo),
    }
}

fn weight_profile(
    job: &JobSpec,
    domain: Interval,
    kg: Option<f64>,
) -> Result<(ScalarProfile, String)> {
    Ok(match job.k {
        KSpec::Zero => (ScalarProfile::constant(domain, 0.0)?, "0".into()),
        KSpec::Const(v) => (
            ScalarProfile::constant(domain, check_finite("k", v)?)?,
            format!("{v}"),
        ),
        KSpec::Linear(v) => {
            let v = check_finite("k", v)?;
            (
                ScalarProfile::new(domain, move |s| v * s)?.with_derivative(move |_| v)?,
                format!("{v} s"),
            )
        }
        KSpec::Theorem1 => {
            let k_g = kg.ok_or_else(|| {
                Error::InvalidParameter("--k theorem1 needs a constant --kg-const".into())
            })?;
            let p = Theorem1Params {
                k_g,
                b1: check_finite("b1", job.b1)?,
            };
            (
                theorem1_k(&p, domain)?,
                format!("-{k_g} tan({k_g} (s - {}))", job.b1),
            )
        }
    })
}

pub fn build(job: &JobSpec, settings: &Settings) -> Result<Built> {
    let recipe = job
        .recipe
        .ok_or_else(|| Error::InvalidParameter("--recipe is required".into()))?;
    let base = |domain| ResolvedParams {
        recipe: recipe.name(),
        domain,
        gamma: None,
        k: None,
        b: None,
        a: None,
        s0: None,
        theta: None,
        r: None,
        slant: None,
        settings: *settings,
    };
    match recipe {
        Recipe::Example1 => {
            let domain = job.domain.unwrap_or(Interval::new(-0.9, 0.9)?);
            let (gamma, params) = example1_inputs(domain)?;
            let curve = construct_frenet(&gamma, &params, &settings.quadrature)?;
            Ok(Built {
                curve,
                params: ResolvedParams {
                    gamma: Some("latitude circle of radius 1/sqrt(3) (k_g = sqrt(2))".into()),
                    k: Some("-sqrt(2) tan(sqrt(2) s)".into()),
                    b: Some(params.b),
                    a: Some(params.a),
                    s0: Some(params.s0),
                    ..base(domain)
                },
            })
        }
        Recipe::SphereCircle => {
            let r = job.r.unwrap_or(1.0);
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::InvalidRadius(r));
            }
            let domain = match job.domain {
                Some(d) => d,
                None => Interval::new(0.0, TAU * r)?,
            };
            let gamma = spherical_circle_on(r, domain)?;
            Ok(Built {
                curve: gamma.into_curve(),
                params: ResolvedParams {
                    r: Some(r),
                    ..base(domain)
                },
            })
        }
        Recipe::KgOde => {
            let g = generator(job, settings, None)?;
            let domain = g.gamma.domain();
            let gamma = if g.slant.is_none() && job.kg_const.is_some_and(|v| v >= 0.0) {
                // integrate the frame equations even when a closed form exists
                let kg = ScalarProfile::constant(domain, g.constant_kg.unwrap_or(0.0))?;
                curve_from_kg(&kg, &SabbanFrame::standard(), &settings.ode)?.into_spherical()
            } else {
                g.gamma
            };
            let description = match g.slant {
                Some(_) => g.description,
                None => format!(
                    "frame ODE with constant k_g = {}",
                    g.constant_kg.unwrap_or(0.0)
                ),
            };
            Ok(Built {
                curve: gamma.into_curve(),
                params: ResolvedParams {
                    gamma: Some(description),
                    slant: g.slant,
                    ..base(domain)
                },
            })
        }
        Recipe::Frenet => {
            // the tangent weight caps the default domain to its guard band
            let cap = match (job.k, job.kg_const) {
                (KSpec::Theorem1, Some(k_g)) if job.domain.is_none() && k_g != 0.0 => {
                    Some(theorem1_domain(&Theorem1Params { k_g, b1: job.b1 })?)
                }
                _ => None,
            };
            let g = generator(job, settings, cap)?;
            let domain = g.gamma.domain();
            let (k, k_desc) = weight_profile(job, domain, g.constant_kg)?;
            let preferred = if matches!(job.k, KSpec::Theorem1) {
                job.b1
            } else {
                0.0
            };
            let s0 = default_s0(job, domain, preferred)?;
            let params = FrenetConstructionParams {
                b: check_finite("b", job.b)?,
                a: job.a.unwrap_or(Vec3::ZERO),
                s0,
                k,
            };
            let curve = construct_frenet(&g.gamma, &params, &settings.quadrature)?;
            Ok(Built {
                curve,
                params: ResolvedParams {
                    gamma: Some(g.description),
                    k: Some(k_desc),
                    b: Some(params.b),
                    a: Some(params.a),
                    s0: Some(s0),
                    slant: g.slant,
                    ..base(domain)
                },
            })
        }
        Recipe::Bertrand => {
            let g = generator(job, settings, None)?;
            let domain = g.gamma.domain();
            let s0 = default_s0(job, domain, 0.0)?;
            let params = BertrandConstructionParams {
                b: check_finite("b", job.b)?,
                theta: check_finite("theta", job.theta)?,
                a: job.a.unwrap_or(Vec3::ZERO),
                s0,
            };
            let curve = construct_bertrand(&g.gamma, &params, &settings.quadrature)?;
            Ok(Built {
                curve,
                params: ResolvedParams {
                    gamma: Some(g.description),
                    b: Some(params.b),
                    a: Some(params.a),
                    s0: Some(s0),
                    theta: Some(params.theta),
                    slant: g.slant,
                    ..base(domain)
                },
            })
        }
    }
}
