//! SVG rendering of an inclusion region over the Cauchy disk.

use std::fmt::Write;

use num_complex::Complex64;

use crate::regions::InclusionRegion;

/// Side length of the square canvas in pixels.
pub const CANVAS: f64 = 600.0;

/// Half-width of the viewport relative to the Cauchy radius.
pub const VIEW_FACTOR: f64 = 1.1;

const DISK_FILL: &str = "#4a7ab5";
const DISK_OPACITY: f64 = 0.35;
const DOT_RADIUS: f64 = 1.0;

pub struct Figure<'a> {
    /// Radius of the power-basis Cauchy disk, centred at the origin.
    pub cauchy_radius: f64,
    pub region: &'a InclusionRegion,
    pub eigenvalues: Option<&'a [Complex64]>,
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

impl Figure<'_> {
    fn half_width(&self) -> f64 {
        let r = self.cauchy_radius * VIEW_FACTOR;
        if r > 0.0 && r.is_finite() {
            r
        } else {
            1.0
        }
    }

    /// Maps a point of the complex plane to canvas coordinates; the
    /// imaginary axis points up.
    pub fn to_canvas(&self, z: Complex64) -> (f64, f64) {
        let s = CANVAS / (2.0 * self.half_width());
        (CANVAS / 2.0 + z.re * s, CANVAS / 2.0 - z.im * s)
    }

    fn pixels(&self, r: f64) -> f64 {
        r * CANVAS / (2.0 * self.half_width())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
            CANVAS
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let (ox, oy) = self.to_canvas(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            r##"<g stroke="#999" stroke-width="0.5"><line x1="0" y1="{0}" x2="{2}" y2="{0}"/><line x1="{1}" y1="0" x2="{1}" y2="{2}"/></g>"##,
            fmt(oy),
            fmt(ox),
            CANVAS
        );
        let _ = writeln!(
            out,
            r#"<g fill="{DISK_FILL}" fill-opacity="{DISK_OPACITY}" stroke="none">"#
        );
        for d in &self.region.disks {
            let (x, y) = self.to_canvas(d.center);
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                fmt(x),
                fmt(y),
                fmt(self.pixels(d.radius))
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="1"/>"#,
            fmt(ox),
            fmt(oy),
            fmt(self.pixels(self.cauchy_radius))
        );
        if let Some(eigs) = self.eigenvalues {
            let _ = writeln!(out, r#"<g fill="black">"#);
            for &z in eigs {
                let (x, y) = self.to_canvas(z);
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{DOT_RADIUS}"/>"#, fmt(x), fmt(y));
            }
            let _ = writeln!(out, "</g>");
        }
        out.push_str("</svg>\n");
        out
    }
}
