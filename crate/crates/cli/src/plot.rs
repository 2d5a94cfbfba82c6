//! Static SVG rendering of a sweep: the phase against the area and the
//! curves `A -> theta_A` and `A -> y_A`.

use std::fmt::Write as _;

use lattice_lab::minimizer::{PhaseKind, Shape, SweepRow};

use crate::output::sig12;

const WIDTH: f64 = 720.0;
const PANEL: f64 = 220.0;
const MARGIN: f64 = 60.0;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Self { lo: 0.0, hi: 1.0 };
        }
        if hi - lo < 1e-12 {
            hi = lo + 1.0;
        }
        Self { lo, hi }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

fn level(kind: PhaseKind) -> f64 {
    match kind {
        PhaseKind::Triangular => 0.0,
        PhaseKind::Rhombic => 1.0,
        PhaseKind::Square => 2.0,
        PhaseKind::Rectangular => 3.0,
        PhaseKind::Generic => 4.0,
    }
}

fn panel(
    svg: &mut String,
    top: f64,
    title: &str,
    xs: &Axis,
    points: &[(f64, f64)],
    ys: &Axis,
    labels: &[(f64, &str)],
) {
    let (left, right) = (MARGIN, WIDTH - 20.0);
    let (y0, y1) = (top + PANEL, top + 20.0);
    let _ = writeln!(
        svg,
        r#"<rect x="{left}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        right - left,
        y0 - y1
    );
    let _ = writeln!(
        svg,
        r#"<text x="{left}" y="{}" font-size="13">{title}</text>"#,
        top + 14.0
    );
    for &(v, label) in labels {
        let y = ys.map(v, y0, y1);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y:.2}" font-size="10" text-anchor="end">{label}</text>"#,
            left - 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{left}" y="{}" font-size="10">{}</text><text x="{right}" y="{}" font-size="10" text-anchor="end">{}</text>"#,
        y0 + 14.0,
        sig12(xs.lo),
        y0 + 14.0,
        sig12(xs.hi)
    );
    if points.is_empty() {
        return;
    }
    let path: Vec<String> = points
        .iter()
        .map(|&(a, v)| format!("{:.2},{:.2}", xs.map(a, left, right), ys.map(v, y0, y1)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        path.join(" ")
    );
}

pub fn render(rows: &[SweepRow]) -> String {
    let pts: Vec<_> = rows.iter().filter_map(|r| r.point.as_ref()).collect();
    let xs = Axis::new(pts.iter().map(|p| p.area));
    let phases: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| (p.area, level(p.shape.kind())))
        .collect();
    let thetas: Vec<(f64, f64)> = pts
        .iter()
        .filter_map(|p| match p.shape {
            Shape::Rhombic { theta_deg } => Some((p.area, theta_deg)),
            Shape::Triangular => Some((p.area, 60.0)),
            Shape::Square => Some((p.area, 90.0)),
            _ => None,
        })
        .collect();
    let ys: Vec<(f64, f64)> = pts
        .iter()
        .filter_map(|p| match p.shape {
            Shape::Rectangular { y } => Some((p.area, y)),
            Shape::Square => Some((p.area, 1.0)),
            _ => None,
        })
        .collect();
    let height = 3.0 * (PANEL + 40.0) + 20.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let phase_axis = Axis { lo: -0.5, hi: 4.5 };
    let labels = [
        (0.0, "Tri"),
        (1.0, "Rh"),
        (2.0, "Sq"),
        (3.0, "Rect"),
        (4.0, "Gen"),
    ];
    panel(
        &mut svg,
        0.0,
        "phase against A",
        &xs,
        &phases,
        &phase_axis,
        &labels,
    );
    let t_axis = Axis { lo: 58.0, hi: 92.0 };
    let t_labels = [(60.0, "60"), (75.0, "75"), (90.0, "90")];
    panel(
        &mut svg,
        PANEL + 40.0,
        "theta_A (degrees)",
        &xs,
        &thetas,
        &t_axis,
        &t_labels,
    );
    let y_axis = Axis::new(ys.iter().map(|p| p.1).chain([1.0]));
    let lo_label = sig12(y_axis.lo);
    let hi_label = sig12(y_axis.hi);
    let y_labels = [
        (y_axis.lo, lo_label.as_str()),
        (y_axis.hi, hi_label.as_str()),
    ];
    panel(
        &mut svg,
        2.0 * (PANEL + 40.0),
        "y_A",
        &xs,
        &ys,
        &y_axis,
        &y_labels,
    );
    svg.push_str("</svg>\n");
    svg
}
