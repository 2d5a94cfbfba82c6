use std::fmt::Write as _;

use lattice_lab::minimizer::{PhasePoint, Shape, SweepRow};
use serde_json::{json, Value};

pub const CSV_HEADER: &str = "A,phase,x,y,theta_deg,energy,certainty";

/// `v` with 12 significant digits in plain decimal notation, trailing zeros
/// removed.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() {
            "0".into()
        } else {
            v.to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).clamp(0, 30) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn phase_name(p: &PhasePoint) -> &'static str {
    p.shape.kind().name()
}

fn theta(p: &PhasePoint) -> Option<f64> {
    match p.shape {
        Shape::Rhombic { theta_deg } => Some(theta_deg),
        _ => None,
    }
}

pub fn csv_row(row: &SweepRow) -> String {
    match &row.point {
        Some(p) => format!(
            "{},{},{},{},{},{},{}",
            sig12(row.area),
            phase_name(p),
            sig12(p.minimizer.x()),
            sig12(p.minimizer.y()),
            theta(p).map(sig12).unwrap_or_default(),
            sig12(p.energy),
            p.certainty.name(),
        ),
        None => format!("{},ERROR,,,,,", sig12(row.area)),
    }
}

pub fn csv_table(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", csv_row(r));
    }
    out
}

pub fn json_row(row: &SweepRow) -> Value {
    match &row.point {
        Some(p) => json!({
            "A": row.area,
            "phase": phase_name(p),
            "x": p.minimizer.x(),
            "y": p.minimizer.y(),
            "theta_deg": theta(p),
            "energy": p.energy,
            "certainty": p.certainty.name(),
        }),
        None => json!({
            "A": row.area,
            "phase": "ERROR",
            "x": null,
            "y": null,
            "theta_deg": null,
            "energy": null,
            "certainty": null,
            "error": row.error,
        }),
    }
}
