//! Energy, gradient and Hessian of `(x, y) -> E_f(x, y, A)` from a single
//! certified enumeration, for one or several potentials at once.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::potential::Potential;
use crate::summation::{accumulate, certify, Form, TailTerm};

/// How many derivatives to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Value,
    Gradient,
    Hessian,
}

impl Order {
    pub(crate) fn width(self) -> usize {
        match self {
            Order::Value => 1,
            Order::Gradient => 3,
            Order::Hessian => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Gradient2 {
    pub dx: f64,
    pub dy: f64,
}

impl Gradient2 {
    pub fn norm(&self) -> f64 {
        self.dx.hypot(self.dy)
    }
}

/// Symmetric 2x2 Hessian stored by its three distinct entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Hessian2 {
    pub dxx: f64,
    pub dyy: f64,
    pub dxy: f64,
}

impl Hessian2 {
    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.dxx + self.dyy);
        let rad = (0.5 * (self.dxx - self.dyy)).hypot(self.dxy);
        (mean - rad, mean + rad)
    }

    pub fn determinant(&self) -> f64 {
        self.dxx * self.dyy - self.dxy * self.dxy
    }

    pub fn scale(&self) -> f64 {
        self.dxx.abs() + self.dyy.abs() + self.dxy.abs()
    }
}

/// Value and derivatives with certified truncation bounds, in the order
/// `[value, dx, dy, dxx, dyy, dxy]`; entries beyond the requested order are zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub value: f64,
    pub gradient: Gradient2,
    pub hessian: Hessian2,
    pub tails: [f64; 6],
    pub radius: f64,
}

impl Jet {
    fn from_parts(v: &[f64], tails: &[f64], radius: f64) -> Self {
        let get = |s: &[f64], i: usize| s.get(i).copied().unwrap_or(0.0);
        let mut t = [0.0; 6];
        t[..tails.len()].copy_from_slice(tails);
        Jet {
            value: get(v, 0),
            gradient: Gradient2 {
                dx: get(v, 1),
                dy: get(v, 2),
            },
            hessian: Hessian2 {
                dxx: get(v, 3),
                dyy: get(v, 4),
                dxy: get(v, 5),
            },
            tails: t,
            radius,
        }
    }

    /// `a * self + b * other`, with tails combined accordingly.
    pub fn combine(&self, a: f64, other: &Jet, b: f64) -> Jet {
        let mut tails = [0.0; 6];
        for (i, t) in tails.iter_mut().enumerate() {
            *t = a.abs() * self.tails[i] + b.abs() * other.tails[i];
        }
        Jet {
            value: a * self.value + b * other.value,
            gradient: Gradient2 {
                dx: a * self.gradient.dx + b * other.gradient.dx,
                dy: a * self.gradient.dy + b * other.gradient.dy,
            },
            hessian: Hessian2 {
                dxx: a * self.hessian.dxx + b * other.hessian.dxx,
                dyy: a * self.hessian.dyy + b * other.hessian.dyy,
                dxy: a * self.hessian.dxy + b * other.hessian.dxy,
            },
            tails,
            radius: self.radius.max(other.radius),
        }
    }

    pub fn value_tail(&self) -> f64 {
        self.tails[0]
    }

    pub fn gradient_tail(&self) -> f64 {
        self.tails[1].max(self.tails[2])
    }

    pub fn hessian_tail(&self) -> f64 {
        self.tails[3].max(self.tails[4]).max(self.tails[5])
    }
}

fn tail_terms<P: Potential + ?Sized>(f: &P, form: &Form, order: Order) -> Vec<Vec<TailTerm>> {
    let y = form.y;
    let (d0, d1, d2) = (f.decay(0), f.decay(1), f.decay(2));
    let mut comps = vec![vec![TailTerm::new(1.0, 0, d0)]];
    if order >= Order::Gradient {
        comps.push(vec![TailTerm::new(2.0 / y, 2, d1)]);
        comps.push(vec![TailTerm::new(1.0 / y, 2, d1)]);
    }
    if order >= Order::Hessian {
        let y2 = y * y;
        comps.push(vec![
            TailTerm::new(2.0 / y2, 2, d1),
            TailTerm::new(4.0 / y2, 4, d2),
        ]);
        comps.push(vec![
            TailTerm::new(2.0 / y2, 2, d1),
            TailTerm::new(1.0 / y2, 4, d2),
        ]);
        comps.push(vec![
            TailTerm::new(2.0 / y2, 2, d1),
            TailTerm::new(2.0 / y2, 4, d2),
        ]);
    }
    comps
}

/// Jets of every potential in `fs` on the same form, sharing one enumeration.
pub(crate) fn jet_bank<P: Potential>(
    fs: &[P],
    form: &Form,
    order: Order,
    tol: f64,
) -> Result<Vec<Jet>> {
    let per: Vec<Vec<Vec<TailTerm>>> = fs.iter().map(|f| tail_terms(f, form, order)).collect();
    let all: Vec<Vec<TailTerm>> = per.iter().flatten().cloned().collect();
    let trunc = certify(form, &all, tol)?;
    let w = order.width();
    let Form { x, y, area } = *form;
    let sums = accumulate(form, trunc.radius, w * fs.len(), |m, n, q, out| {
        let t = m + x * n;
        match order {
            Order::Value => {
                for (o, f) in out.iter_mut().zip(fs) {
                    *o = f.value(q);
                }
            }
            _ => {
                let qx = 2.0 * area / y * n * t;
                let qy = area * (n * n - t * t / (y * y));
                let (qxx, qyy, qxy) = if order == Order::Hessian {
                    (
                        2.0 * area * n * n / y,
                        2.0 * area * t * t / (y * y * y),
                        -2.0 * area / (y * y) * n * t,
                    )
                } else {
                    (0.0, 0.0, 0.0)
                };
                for (chunk, f) in out.chunks_mut(w).zip(fs) {
                    let [v, d1, d2] = f.jet(q);
                    chunk[0] = v;
                    chunk[1] = d1 * qx;
                    chunk[2] = d1 * qy;
                    if order == Order::Hessian {
                        chunk[3] = d1 * qxx + d2 * qx * qx;
                        chunk[4] = d1 * qyy + d2 * qy * qy;
                        chunk[5] = d1 * qxy + d2 * qx * qy;
                    }
                }
            }
        }
    });
    let tails: Vec<Vec<f64>> = per
        .iter()
        .map(|comps| {
            comps
                .iter()
                .map(|c| crate::summation::tail_bound(form, trunc.radius, c))
                .collect()
        })
        .collect();
    Ok(sums
        .chunks(w)
        .zip(&tails)
        .map(|(v, t)| Jet::from_parts(v, t, trunc.radius))
        .collect())
}

/// Jet of `E_f` at arbitrary `(x, y)` with `y > 0`, not necessarily in the
/// half modular domain.
pub fn energy_jet<P: Potential + ?Sized>(
    f: &P,
    x: f64,
    y: f64,
    area: f64,
    order: Order,
    tol: f64,
) -> Result<Jet> {
    let form = Form::new(x, y, area)?;
    let mut jets = jet_bank(&[f], &form, order, tol)?;
    Ok(jets.remove(0))
}
