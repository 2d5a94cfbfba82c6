//! Python bindings: lattice sums, stability verdicts, thresholds and the
//! minimizer of the Lennard-Jones energy.

use ::lattice_lab as core;
use core::minimizer::{self, PhasePoint, SearchOptions};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::InvalidPoint { .. }
        | core::Error::InvalidArea(_)
        | core::Error::InvalidTolerance(_)
        | core::Error::InvalidParams(_)
        | core::Error::Divergent { .. }
        | core::Error::NonDecaying(_)
        | core::Error::ZeroIndex => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Parameters of `a2 r^-t2 - a1 r^-t1`, with `r` the squared distance.
#[pyclass(name = "LjParams", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyLjParams(core::LjParams);

#[pymethods]
impl PyLjParams {
    #[new]
    #[pyo3(signature = (a1 = 2.0, a2 = 1.0, t1 = 3.0, t2 = 6.0))]
    fn new(a1: f64, a2: f64, t1: f64, t2: f64) -> PyResult<Self> {
        core::LjParams::new(a1, a2, t1, t2).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn classical() -> Self {
        Self(core::LjParams::classical())
    }

    #[getter]
    fn a1(&self) -> f64 {
        self.0.a1
    }
    #[getter]
    fn a2(&self) -> f64 {
        self.0.a2
    }
    #[getter]
    fn t1(&self) -> f64 {
        self.0.t1
    }
    #[getter]
    fn t2(&self) -> f64 {
        self.0.t2
    }

    fn __repr__(&self) -> String {
        format!("LjParams({})", self.0)
    }
}

/// A point `(x, y)` of the half modular domain with its area.
#[pyclass(name = "LatticePoint", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyLatticePoint(core::LatticePoint);

#[pymethods]
impl PyLatticePoint {
    #[new]
    fn new(x: f64, y: f64, area: f64) -> PyResult<Self> {
        core::LatticePoint::new(x, y, area).map(Self).map_err(to_py)
    }

    /// Reduces arbitrary `(x, y)`, `y > 0`, to the domain.
    #[staticmethod]
    fn reduced(x: f64, y: f64, area: f64) -> PyResult<Self> {
        core::LatticePoint::reduced(x, y, area)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn square(area: f64) -> PyResult<Self> {
        core::LatticePoint::square(area).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn triangular(area: f64) -> PyResult<Self> {
        core::LatticePoint::triangular(area)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x()
    }
    #[getter]
    fn y(&self) -> f64 {
        self.0.y()
    }
    #[getter]
    fn area(&self) -> f64 {
        self.0.area()
    }

    fn __repr__(&self) -> String {
        format!(
            "LatticePoint(x={}, y={}, area={})",
            self.0.x(),
            self.0.y(),
            self.0.area()
        )
    }
}

/// `(value, tail_bound)` of the Epstein zeta function `sum' |p|^-s`.
#[pyfunction]
#[pyo3(signature = (point, s, tol = 1e-10))]
fn epstein_zeta(point: &PyLatticePoint, s: f64, tol: f64) -> PyResult<(f64, f64)> {
    let r = core::epstein_zeta(&point.0, s, tol).map_err(to_py)?;
    Ok((r.value, r.tail_bound))
}

/// `(value, tail_bound)` of `sum exp(-pi alpha |p|^2)` including the origin.
#[pyfunction]
#[pyo3(signature = (point, alpha, tol = 1e-10))]
fn theta_function(point: &PyLatticePoint, alpha: f64, tol: f64) -> PyResult<(f64, f64)> {
    let r = core::theta_function(&point.0, alpha, tol).map_err(to_py)?;
    Ok((r.value, r.tail_bound))
}

#[pyfunction]
#[pyo3(signature = (params, point, tol = 1e-10))]
fn lj_energy(params: &PyLjParams, point: &PyLatticePoint, tol: f64) -> PyResult<(f64, f64)> {
    let r = core::lj_energy(&params.0, &point.0, tol).map_err(to_py)?;
    Ok((r.value, r.tail_bound))
}

/// `(dE/dx, dE/dy)` of the Lennard-Jones energy.
#[pyfunction]
#[pyo3(signature = (params, point, tol = 1e-10))]
fn lj_gradient(params: &PyLjParams, point: &PyLatticePoint, tol: f64) -> PyResult<(f64, f64)> {
    let f = core::LennardJones::new(params.0).map_err(to_py)?;
    let g = core::grad_energy(&f, &point.0, tol).map_err(to_py)?;
    Ok((g.dx, g.dy))
}

/// `(dxx, dyy, dxy)` of the Lennard-Jones energy.
#[pyfunction]
#[pyo3(signature = (params, point, tol = 1e-10))]
fn lj_hessian(params: &PyLjParams, point: &PyLatticePoint, tol: f64) -> PyResult<(f64, f64, f64)> {
    let f = core::LennardJones::new(params.0).map_err(to_py)?;
    let h = core::hessian_energy(&f, &point.0, tol).map_err(to_py)?;
    Ok((h.dxx, h.dyy, h.dxy))
}

/// Verdicts `{"Square": ..., "Triangular": ...}` at one area.
#[pyfunction]
#[pyo3(signature = (params, area, tol = 1e-10))]
fn classify<'py>(
    py: Python<'py>,
    params: &PyLjParams,
    area: f64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let f = core::LennardJones::new(params.0).map_err(to_py)?;
    let d = PyDict::new(py);
    for (name, site) in [
        ("Square", core::Site::Square),
        ("Triangular", core::Site::Triangular),
    ] {
        let r = core::classify_point(&f, site, area, tol).map_err(to_py)?;
        d.set_item(name, format!("{:?}", r.verdict))?;
    }
    Ok(d)
}

/// `{"A0": (value, error), "A1": ..., "A2": ..., "A_BZ": ...}`.
#[pyfunction]
#[pyo3(signature = (params, tol = 1e-10, with_a_bz = true))]
fn thresholds<'py>(
    py: Python<'py>,
    params: &PyLjParams,
    tol: f64,
    with_a_bz: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let set = py
        .detach(|| core::compute_thresholds(&params.0, tol, with_a_bz))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("A0", (set.a0.value, set.a0.error))?;
    d.set_item("A1", (set.a1.value, set.a1.error))?;
    d.set_item("A2", (set.a2.value, set.a2.error))?;
    if let Some(b) = set.a_bz {
        d.set_item("A_BZ", (b.value, b.error))?;
        d.set_item("A_BZ_point", (b.x, b.y))?;
    }
    Ok(d)
}

fn phase_dict<'py>(py: Python<'py>, p: &PhasePoint) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("A", p.area)?;
    d.set_item("phase", p.shape.kind().name())?;
    d.set_item("x", p.minimizer.x())?;
    d.set_item("y", p.minimizer.y())?;
    d.set_item("theta_deg", p.shape.theta_deg())?;
    d.set_item("energy", p.energy)?;
    d.set_item("certainty", p.certainty.name())?;
    Ok(d)
}

/// Global minimizer of the Lennard-Jones energy at one area.
#[pyfunction]
#[pyo3(signature = (params, area, tol = 1e-10))]
fn minimize<'py>(
    py: Python<'py>,
    params: &PyLjParams,
    area: f64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = py
        .detach(|| minimizer::minimize_full(&params.0, area, tol))
        .map_err(to_py)?;
    phase_dict(py, &p)
}

/// `(theta_deg, energy)` of the minimizer along the rhombic arc.
#[pyfunction]
#[pyo3(signature = (params, area, tol = 1e-10))]
fn minimize_rhombic(
    py: Python<'_>,
    params: &PyLjParams,
    area: f64,
    tol: f64,
) -> PyResult<(f64, f64)> {
    let r = py
        .detach(|| minimizer::minimize_rhombic(&params.0, area, tol))
        .map_err(to_py)?;
    Ok((r.theta_deg, r.energy))
}

/// `(y, energy, capped)` of the minimizer along the rectangular line.
#[pyfunction]
#[pyo3(signature = (params, area, tol = 1e-10))]
fn minimize_rectangular(
    py: Python<'_>,
    params: &PyLjParams,
    area: f64,
    tol: f64,
) -> PyResult<(f64, f64, bool)> {
    let r = py
        .detach(|| minimizer::minimize_rectangular(&params.0, area, tol))
        .map_err(to_py)?;
    Ok((r.y, r.energy, r.capped))
}

/// One dict per area; failed areas carry `phase = "ERROR"` and an `error` message.
#[pyfunction]
#[pyo3(signature = (params, areas, tol = 1e-10))]
fn phase_sweep<'py>(
    py: Python<'py>,
    params: &PyLjParams,
    areas: Vec<f64>,
    tol: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let model = core::LjModel::new(params.0).map_err(to_py)?;
    let options = SearchOptions::new(tol).map_err(to_py)?;
    let rows = py.detach(|| minimizer::phase_sweep(&model, &areas, options));
    rows.iter()
        .map(|r| match &r.point {
            Some(p) => phase_dict(py, p),
            None => {
                let d = PyDict::new(py);
                d.set_item("A", r.area)?;
                d.set_item("phase", "ERROR")?;
                d.set_item("error", r.error.clone())?;
                Ok(d)
            }
        })
        .collect()
}

/// Whether the triangular lattice is the global minimizer at `area`.
#[pyfunction]
#[pyo3(signature = (params, area = 1.0, tol = 1e-10))]
fn triangular_is_global(
    py: Python<'_>,
    params: &PyLjParams,
    area: f64,
    tol: f64,
) -> PyResult<bool> {
    py.detach(|| minimizer::verify_global_min_at_area(&params.0, area, tol))
        .map_err(to_py)
}

/// `(x, y)` reduced to the half modular domain.
#[pyfunction]
fn reduce_to_domain(x: f64, y: f64) -> PyResult<(f64, f64)> {
    core::reduce_to_domain(x, y).map_err(to_py)
}

/// `(X1^(1/3), X2^(1/3), valid)` bounding the rectangular minimizer at large area.
#[pyfunction]
fn degeneracy_bounds(area: f64) -> PyResult<(f64, f64, bool)> {
    let b = minimizer::degeneracy_bounds(area, 1e-13).map_err(to_py)?;
    let (lo, hi) = b.y_range();
    Ok((lo, hi, b.valid))
}

/// `(name, passed, detail)` for every check of the identity battery.
#[pyfunction]
fn selftest(py: Python<'_>) -> PyResult<Vec<(String, bool, String)>> {
    let out = py.detach(core::checks::run_selftest).map_err(to_py)?;
    Ok(out
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect())
}

#[pymodule]
fn lattice_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLjParams>()?;
    m.add_class::<PyLatticePoint>()?;
    m.add_function(wrap_pyfunction!(epstein_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(theta_function, m)?)?;
    m.add_function(wrap_pyfunction!(lj_energy, m)?)?;
    m.add_function(wrap_pyfunction!(lj_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(lj_hessian, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_rhombic, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_rectangular, m)?)?;
    m.add_function(wrap_pyfunction!(phase_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(triangular_is_global, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_domain, m)?)?;
    m.add_function(wrap_pyfunction!(degeneracy_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
