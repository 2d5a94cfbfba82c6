//! Small derivative-free search routines: Brent's root finder and the
//! Nelder-Mead simplex method in two dimensions.

use crate::error::{Error, Result};

/// Root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite signs (or zero).
pub fn brent_root(
    mut f: impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Search(format!("no sign change on [{a}, {b}]")));
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::Search(format!(
        "root finder did not converge in {max_iter} iterations"
    )))
}

/// Result of a simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexMin {
    pub point: [f64; 2],
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `start` with initial simplex edges `step`, stopping
/// when the simplex diameter drops below `xtol`. Infinite values act as walls.
pub fn nelder_mead(
    mut f: impl FnMut([f64; 2]) -> Result<f64>,
    start: [f64; 2],
    step: [f64; 2],
    xtol: f64,
    max_iter: usize,
) -> Result<SimplexMin> {
    let mut pts = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut vals = [f(pts[0])?, f(pts[1])?, f(pts[2])?];
    let lerp =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for it in 0..max_iter {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        let diam = pts[1..]
            .iter()
            .map(|p| (p[0] - pts[0][0]).hypot(p[1] - pts[0][1]))
            .fold(0.0f64, f64::max);
        if diam < xtol {
            return Ok(SimplexMin {
                point: pts[0],
                value: vals[0],
                iterations: it,
                converged: true,
            });
        }
        let centroid = [0.5 * (pts[0][0] + pts[1][0]), 0.5 * (pts[0][1] + pts[1][1])];
        let refl = lerp(centroid, pts[2], -1.0);
        let fr = f(refl)?;
        if fr < vals[0] {
            let exp = lerp(centroid, pts[2], -2.0);
            let fe = f(exp)?;
            if fe < fr {
                pts[2] = exp;
                vals[2] = fe;
            } else {
                pts[2] = refl;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = refl;
            vals[2] = fr;
            continue;
        }
        let (contr, fc) = if fr < vals[2] {
            let c = lerp(centroid, refl, 0.5);
            let v = f(c)?;
            (c, v)
        } else {
            let c = lerp(centroid, pts[2], 0.5);
            let v = f(c)?;
            (c, v)
        };
        if fc < vals[2].min(fr) {
            pts[2] = contr;
            vals[2] = fc;
            continue;
        }
        for i in 1..3 {
            pts[i] = lerp(pts[0], pts[i], 0.5);
            vals[i] = f(pts[i])?;
        }
    }
    let best = (0..3)
        .min_by(|&i, &j| vals[i].total_cmp(&vals[j]))
        .unwrap_or(0);
    Ok(SimplexMin {
        point: pts[best],
        value: vals[best],
        iterations: max_iter,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let r = brent_root(f, 0.0, 2.0, -2.0, 6.0, 1e-14, 100).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn brent_rejects_same_signs() {
        assert!(brent_root(|x| Ok(x * x + 1.0), -1.0, 1.0, 2.0, 2.0, 1e-10, 10).is_err());
    }

    #[test]
    fn simplex_minimizes_rosenbrock() {
        let f = |p: [f64; 2]| Ok((1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2));
        let r = nelder_mead(f, [-1.2, 1.0], [0.1, 0.1], 1e-10, 5000).unwrap();
        assert!(r.converged);
        assert!((r.point[0] - 1.0).abs() < 1e-6 && (r.point[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn simplex_respects_walls() {
        let f = |p: [f64; 2]| {
            Ok(if p[0] < 0.5 {
                f64::INFINITY
            } else {
                p[0] * p[0] + p[1] * p[1]
            })
        };
        let r = nelder_mead(f, [1.0, 1.0], [0.1, 0.1], 1e-9, 2000).unwrap();
        assert!(r.point[0] >= 0.5 && (r.point[0] - 0.5).abs() < 1e-6);
    }
}
