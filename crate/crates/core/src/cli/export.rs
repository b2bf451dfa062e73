//! CSV, JSON and SVG writers. Numbers are always printed with 17 significant
//! digits in scientific notation, so identical inputs give identical bytes.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frenet::SphereFit;
use crate::geom::Vec3;

/// `{:.16e}`: 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON formatter that prints every float as [`num`] does (non-finite values
/// become `null`).
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            w.write_all(num(v).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// Compact JSON with fixed float formatting and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloats);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Io(format!("JSON serialization failed: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Io(e.to_string()))
}

/// One exported sample.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Record {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
}

impl Record {
    pub fn point(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

pub fn to_csv(records: &[Record], with_apparatus: bool) -> String {
    let mut out = String::from(if with_apparatus {
        "s,x,y,z,kappa,tau,sigma\n"
    } else {
        "s,x,y,z\n"
    });
    for r in records {
        let _ = write!(out, "{},{},{},{}", num(r.s), num(r.x), num(r.y), num(r.z));
        if with_apparatus {
            for v in [r.kappa, r.tau, r.sigma] {
                let _ = write!(out, ",{}", num(v.unwrap_or(f64::NAN)));
            }
        }
        out.push('\n');
    }
    out
}

/// Reads `s,x,y,z` rows (extra columns are ignored).
pub fn parse_csv(text: &str) -> Result<(Vec<f64>, Vec<Vec3>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty sample file".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 4 || cols[..4] != ["s", "x", "y", "z"] {
        return Err(Error::InvalidInput(format!(
            "header must start with s,x,y,z, got `{header}`"
        )));
    }
    let mut s = Vec::new();
    let mut pts = Vec::new();
    for (i, line) in lines {
        let vals: Vec<f64> = line
            .split(',')
            .take(4)
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInput(format!("line {}: {e}", i + 1)))?;
        if vals.len() != 4 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected 4 columns",
                i + 1
            )));
        }
        s.push(vals[0]);
        pts.push(Vec3::new(vals[1], vals[2], vals[3]));
    }
    Ok((s, pts))
}

type Projection = fn(Vec3) -> (f64, f64);

const PANEL: f64 = 320.0;
const PAD: f64 = 20.0;

/// Three orthographic projections (xy, xz, yz) side by side. Polylines keep
/// curve coordinates inside a transformed group; the fitted sphere, when
/// given, is drawn as its silhouette circle in each panel.
pub fn to_svg(points: &[Vec3], sphere: Option<&SphereFit>, title: &str) -> String {
    let projections: [(&str, Projection); 3] = [
        ("xy", |p| (p.x, p.y)),
        ("xz", |p| (p.x, p.z)),
        ("yz", |p| (p.y, p.z)),
    ];
    let width = 3.0 * PANEL;
    let height = PANEL + 30.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        width, height, width, height
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, (name, proj)) in projections.iter().enumerate() {
        let xy: Vec<(f64, f64)> = points.iter().map(|&p| proj(p)).collect();
        let mut bounds = Bounds::of(&xy);
        if let Some(f) = sphere {
            let (cx, cy) = proj(f.center);
            bounds.include(cx - f.radius, cy - f.radius);
            bounds.include(cx + f.radius, cy + f.radius);
        }
        let span = bounds.span().max(f64::MIN_POSITIVE);
        let scale = (PANEL - 2.0 * PAD) / span;
        let (mx, my) = bounds.mid();
        let ox = i as f64 * PANEL + PANEL / 2.0;
        let oy = 30.0 + PANEL / 2.0 - PAD / 2.0;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            num_short(ox),
            name
        );
        let _ = writeln!(
            out,
            r#"<g id="panel-{name}" transform="translate({} {}) scale({} {}) translate({} {})">"#,
            num(ox),
            num(oy),
            num(scale),
            num(-scale),
            num(-mx),
            num(-my)
        );
        if let Some(f) = sphere {
            let (cx, cy) = proj(f.center);
            let _ = writeln!(
                out,
                r##"<circle class="sphere" cx="{}" cy="{}" r="{}" fill="none" stroke="#999999" stroke-dasharray="4 3" vector-effect="non-scaling-stroke"/>"##,
                num(cx),
                num(cy),
                num(f.radius)
            );
        }
        out.push_str(r##"<polyline class="curve" fill="none" stroke="#1f5fa8" stroke-width="1.5" vector-effect="non-scaling-stroke" points=""##);
        for (j, (x, y)) in xy.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", num(*x), num(*y));
        }
        out.push_str("\"/>\n</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn num_short(v: f64) -> String {
    format!("{v:.1}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Bounds {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Bounds {
    fn of(pts: &[(f64, f64)]) -> Self {
        let mut b = Bounds {
            lo: (f64::INFINITY, f64::INFINITY),
            hi: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for &(x, y) in pts {
            b.include(x, y);
        }
        b
    }

    fn include(&mut self, x: f64, y: f64) {
        self.lo = (self.lo.0.min(x), self.lo.1.min(y));
        self.hi = (self.hi.0.max(x), self.hi.1.max(y));
    }

    fn span(&self) -> f64 {
        (self.hi.0 - self.lo.0).max(self.hi.1 - self.lo.1)
    }

    fn mid(&self) -> (f64, f64) {
        (0.5 * (self.lo.0 + self.hi.0), 0.5 * (self.lo.1 + self.hi.1))
    }
}
