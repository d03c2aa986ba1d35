//! Minimal SVG writers: log-log convergence plots and mesh drawings.

use std::fmt::Write;

use scfem_core::mesh::Triangulation;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
    pub markers: bool,
}

impl Series {
    pub fn data(label: &str, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.to_string(),
            points,
            dashed: false,
            markers: true,
        }
    }

    /// Line `c·x^slope` across the x range of `data`, through its first point.
    pub fn reference_slope(data: &[(f64, f64)], slope: f64) -> Option<Self> {
        let &(x0, y0) = data.iter().find(|(x, y)| *x > 0.0 && *y > 0.0)?;
        let x1 = data.iter().map(|p| p.0).fold(x0, f64::max);
        let points = if x1 > x0 {
            vec![(x0, y0), (x1, y0 * (x1 / x0).powf(slope))]
        } else {
            vec![(x0, y0)]
        };
        Some(Series {
            label: format!("O(dof^{slope})"),
            points,
            dashed: true,
            markers: false,
        })
    }
}

pub fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn decade_range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| *v > 0.0 && v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
    if lo > hi {
        return None;
    }
    let (a, b) = (lo.log10().floor(), hi.log10().ceil());
    Some(if a == b { (a, a + 1.0) } else { (a, b) })
}

/// Log-log plot with decade ticks and a legend. Non-positive values are dropped.
pub fn loglog_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h) = (720.0, 500.0);
    let (left, right, top, bottom) = (90.0, 30.0, 45.0, 65.0);
    let all = || series.iter().flat_map(|s| s.points.iter().copied());
    let (xa, xb) = decade_range(all().map(|p| p.0)).unwrap_or((0.0, 1.0));
    let (ya, yb) = decade_range(all().map(|p| p.1)).unwrap_or((0.0, 1.0));
    let px = |x: f64| left + (x.log10() - xa) / (xb - xa) * (w - left - right);
    let py = |y: f64| h - bottom - (y.log10() - ya) / (yb - ya) * (h - top - bottom);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="25" text-anchor="middle" font-size="16">{}</text>"#,
        w / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (left, w - right, top, h - bottom);
    let _ = writeln!(
        s,
        r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y1 - y0
    );
    let step = |a: f64, b: f64| ((b - a) / 8.0).ceil().max(1.0);
    let sx = step(xa, xb);
    let mut e = xa;
    while e <= xb {
        let x = px(10f64.powf(e));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{y1}" stroke="#ddd"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle">1e{e}</text>"#,
            y1 + 18.0
        );
        e += sx;
    }
    let sy = step(ya, yb);
    let mut e = ya;
    while e <= yb {
        let y = py(10f64.powf(e));
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#ddd"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">1e{e}</text>"#,
            x0 - 6.0,
            y + 4.0
        );
        e += sy;
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        h - 20.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="22" y="{0}" text-anchor="middle" transform="rotate(-90 22 {0})">{1}</text>"#,
        (y0 + y1) / 2.0,
        escape(y_label)
    );

    for (k, ser) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<(f64, f64)> = ser
            .points
            .iter()
            .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
            .map(|&(x, y)| (px(x), py(y)))
            .collect();
        let dash = if ser.dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"#,
            path.join(" ")
        );
        if ser.markers {
            for (x, y) in &pts {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{color}"/>"#
                );
            }
        }
        let ly = y0 + 18.0 + 18.0 * k as f64;
        let lx = x1 - 190.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.6"{dash}/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Draws every edge of `mesh`, scaled to fit a 600 px square.
pub fn mesh_svg(mesh: &Triangulation, title: &str) -> String {
    let v = mesh.vertices();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in v {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let size = 600.0;
    let pad = 20.0;
    let scale = (size - 2.0 * pad) / (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let map = |p: [f64; 2]| {
        (
            pad + (p[0] - lo[0]) * scale,
            size - pad - (p[1] - lo[1]) * scale,
        )
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{0}" viewBox="0 0 {size} {0}" font-family="sans-serif" font-size="12">"#,
        size + 20.0
    );
    let _ = writeln!(
        s,
        r#"<rect width="{size}" height="{}" fill="white"/>"#,
        size + 20.0
    );
    s.push_str(r#"<path fill="none" stroke="black" stroke-width="0.4" d=""#);
    for e in mesh.edges() {
        let (ax, ay) = map(v[e[0] as usize]);
        let (bx, by) = map(v[e[1] as usize]);
        let _ = write!(s, "M{ax:.2} {ay:.2}L{bx:.2} {by:.2}");
    }
    s.push_str("\"/>\n");
    let _ = writeln!(
        s,
        r#"<text x="{pad}" y="{}">{}</text>"#,
        size + 12.0,
        escape(title)
    );
    s.push_str("</svg>\n");
    s
}
