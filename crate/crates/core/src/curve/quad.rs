//! Composite Gauss–Legendre quadrature and cumulative integrals.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom::Linear;

use super::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct QuadratureConfig {
    pub panels_per_unit: usize,
    pub nodes_per_panel: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            panels_per_unit: 64,
            nodes_per_panel: 5,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.panels_per_unit == 0 {
            return Err(Error::InvalidConfig("panels_per_unit must be >= 1".into()));
        }
        if !matches!(self.nodes_per_panel, 3 | 5 | 7) {
            return Err(Error::InvalidConfig(format!(
                "nodes_per_panel must be 3, 5 or 7, got {}",
                self.nodes_per_panel
            )));
        }
        Ok(())
    }

    pub fn panel_width(&self) -> f64 {
        1.0 / self.panels_per_unit as f64
    }

    fn rule(&self) -> &'static GaussLegendre {
        GaussLegendre::cached(self.nodes_per_panel)
    }
}

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of P_n by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    fn cached(n: usize) -> &'static GaussLegendre {
        static RULES: [OnceLock<GaussLegendre>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let slot = match n {
            3 => &RULES[0],
            5 => &RULES[1],
            7 => &RULES[2],
            _ => panic!("unsupported Gauss-Legendre order {n}"),
        };
        slot.get_or_init(|| GaussLegendre::new(n))
    }

    /// One panel over [a, b].
    #[inline]
    pub fn panel<T: Linear>(&self, f: &impl Fn(f64) -> T, a: f64, b: f64) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::ZERO;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// `∫_{s0}^{s1} f`, sign-flipped when `s1 < s0`. The integrand must be
/// evaluable on the whole interval.
pub fn integrate<T, F>(f: F, s0: f64, s1: f64, cfg: &QuadratureConfig) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> T,
{
    cfg.validate()?;
    Ok(integrate_unchecked(&f, s0, s1, cfg))
}

/// Same as [`integrate`] with the interval checked against `domain`.
pub fn integrate_on<T, F>(
    f: F,
    domain: Interval,
    s0: f64,
    s1: f64,
    cfg: &QuadratureConfig,
) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> T,
{
    domain.check(s0)?;
    domain.check(s1)?;
    integrate(f, s0, s1, cfg)
}

fn integrate_unchecked<T: Linear>(
    f: &impl Fn(f64) -> T,
    s0: f64,
    s1: f64,
    cfg: &QuadratureConfig,
) -> T {
    if s0 == s1 {
        return T::ZERO;
    }
    let rule = cfg.rule();
    let span = s1 - s0;
    let panels = ((span.abs() * cfg.panels_per_unit as f64).ceil() as usize).max(1);
    let width = span / panels as f64;
    let mut acc = T::ZERO;
    for i in 0..panels {
        let a = s0 + width * i as f64;
        let b = if i + 1 == panels { s1 } else { a + width };
        acc = acc + rule.panel(f, a, b);
    }
    acc
}

/// Antiderivative `s ↦ ∫_{s0}^{s} f` over `domain` with node values tabulated
/// on a panel grid anchored at `s0`.
#[derive(Clone)]
pub struct CumulativeTable<T> {
    domain: Interval,
    s0: f64,
    width: f64,
    /// Grid points in increasing order; `s0` is `grid[anchor]`.
    grid: Vec<f64>,
    values: Vec<T>,
    anchor: usize,
    cfg: QuadratureConfig,
}

impl<T: Linear> CumulativeTable<T> {
    pub fn build<F>(f: &F, domain: Interval, s0: f64, cfg: &QuadratureConfig) -> Result<Self>
    where
        F: Fn(f64) -> T,
    {
        cfg.validate()?;
        domain.check(s0)?;
        let width = cfg.panel_width();
        let rule = cfg.rule();

        let mut below = Vec::new();
        let mut s = s0;
        while s > domain.lo {
            below.push((s - width).max(domain.lo));
            s -= width;
        }
        let mut above = Vec::new();
        let mut s = s0;
        while s < domain.hi {
            above.push((s + width).min(domain.hi));
            s += width;
        }

        // Each grid point is stepped from its neighbor toward s0 by one panel.
        let mut grid = Vec::with_capacity(below.len() + above.len() + 1);
        let mut values = Vec::with_capacity(grid.capacity());
        let mut lower_vals = Vec::with_capacity(below.len());
        let (mut prev_s, mut acc) = (s0, T::ZERO);
        for &b in &below {
            acc = acc - rule.panel(f, b, prev_s);
            lower_vals.push(acc);
            prev_s = b;
        }
        for (b, v) in below.iter().zip(&lower_vals).rev() {
            grid.push(*b);
            values.push(*v);
        }
        let anchor = grid.len();
        grid.push(s0);
        values.push(T::ZERO);
        let (mut prev_s, mut acc) = (s0, T::ZERO);
        for &a in &above {
            acc = acc + rule.panel(f, prev_s, a);
            grid.push(a);
            values.push(acc);
            prev_s = a;
        }
        if values.iter().any(|v| !v.all_finite()) {
            return Err(Error::NonFinite {
                what: "cumulative integrand",
                s: s0,
            });
        }
        Ok(Self {
            domain,
            s0,
            width,
            grid,
            values,
            anchor,
            cfg: *cfg,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn base_point(&self) -> f64 {
        self.s0
    }

    /// Index of the grid point nearest to `s`.
    fn nearest(&self, s: f64) -> usize {
        let offset = ((s - self.s0) / self.width).round();
        let idx = self.anchor as f64 + offset;
        (idx.max(0.0) as usize).min(self.grid.len() - 1)
    }

    /// Evaluates the antiderivative; `f` must be the integrand used to build.
    pub fn eval(&self, f: &impl Fn(f64) -> T, s: f64) -> T {
        let i = self.nearest(s);
        let node = self.grid[i];
        if node == s {
            return self.values[i];
        }
        self.values[i] + self.cfg.rule().panel(f, node, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;

    #[test]
    fn gauss_legendre_nodes_match_tables() {
        let r3 = GaussLegendre::new(3);
        assert!((r3.nodes[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert!((r3.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        let r5 = GaussLegendre::new(5);
        let x = (5.0 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        assert!((r5.nodes[3] - x).abs() < 1e-15);
        let r7 = GaussLegendre::new(7);
        assert!((r7.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!((r7.weights[3] - 512.0 / 1225.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_low_degree_per_panel() {
        for n in [3usize, 5, 7] {
            let cfg = QuadratureConfig {
                panels_per_unit: 1,
                nodes_per_panel: n,
            };
            let deg = 2 * n - 1;
            let got: f64 = integrate(|s: f64| s.powi(deg as i32), 0.0, 1.0, &cfg).unwrap();
            assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn integrate_examples() {
        let cfg = QuadratureConfig::default();
        let sq: f64 = integrate(|s: f64| s * s, 0.0, 1.0, &cfg).unwrap();
        assert!((sq - 1.0 / 3.0).abs() < 1e-14);
        let v: Vec3 = integrate(
            |s: f64| Vec3::new(s.cos(), s.sin(), 0.0),
            0.0,
            std::f64::consts::PI,
            &cfg,
        )
        .unwrap();
        assert!((v - Vec3::new(0.0, 2.0, 0.0)).norm() < 1e-10);
        let r2 = 2f64.sqrt();
        let c: f64 = integrate(|s: f64| (r2 * s).cos(), 0.0, 0.5, &cfg).unwrap();
        assert!((c - (r2 / 2.0).sin() / r2).abs() < 1e-12);
        let back: f64 = integrate(|s: f64| s * s, 1.0, 0.0, &cfg).unwrap();
        assert!((back + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn additivity() {
        let cfg = QuadratureConfig::default();
        let f = |s: f64| (3.0 * s).sin() * (-s * s).exp();
        let ab: f64 = integrate(f, -0.3, 0.77, &cfg).unwrap();
        let bc: f64 = integrate(f, 0.77, 2.1, &cfg).unwrap();
        let ac: f64 = integrate(f, -0.3, 2.1, &cfg).unwrap();
        assert!(((ab + bc) - ac).abs() <= 1e-12 * ac.abs().max(1.0));
    }

    #[test]
    fn rejects_bad_config() {
        let bad = QuadratureConfig {
            panels_per_unit: 8,
            nodes_per_panel: 4,
        };
        assert!(integrate(|s: f64| s, 0.0, 1.0, &bad).is_err());
        let dom = Interval::new(0.0, 1.0).unwrap();
        assert!(integrate_on(|s: f64| s, dom, 0.0, 2.0, &QuadratureConfig::default()).is_err());
    }
}
