//! Python bindings: `import spectral_bounds_py`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spectral_bounds::euclidean as eu;
use spectral_bounds::graph as gr;
use spectral_bounds::{special, sphere as sp, torus, BoundError};

create_exception!(
    spectral_bounds_py,
    BoundsError,
    PyValueError,
    "Invalid input or failed computation."
);
create_exception!(
    spectral_bounds_py,
    VacuousBound,
    BoundsError,
    "The requested bound is vacuous."
);

fn err(e: BoundError) -> PyErr {
    if e.is_vacuous() {
        VacuousBound::new_err(e.to_string())
    } else {
        BoundsError::new_err(e.to_string())
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for spectral_bounds::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(err)
    }
}

#[pyclass(name = "BoundReport", frozen, module = "spectral_bounds_py")]
pub struct PyBoundReport(spectral_bounds::BoundReport);

#[pymethods]
impl PyBoundReport {
    /// "chi_lb", "alpha_ratio_ub" or "chi_frac_lb".
    #[getter]
    fn kind(&self) -> String {
        serde_json::to_value(self.0.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn m(&self) -> f64 {
        self.0.m
    }

    #[getter(M)]
    fn big_m(&self) -> f64 {
        self.0.big_m
    }

    #[getter(R)]
    fn r(&self) -> Option<f64> {
        self.0.r
    }

    #[getter]
    fn epsilon(&self) -> Option<f64> {
        self.0.epsilon
    }

    #[getter]
    fn certified(&self) -> Option<bool> {
        self.0.provenance.certified
    }

    /// Recomputes the value from the stored spectral data.
    fn reproduce(&self) -> f64 {
        self.0.reproduce()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundReport(kind={:?}, value={}, m={}, M={})",
            self.kind(),
            self.0.value,
            self.0.m,
            self.0.big_m
        )
    }
}

fn report(r: spectral_bounds::BoundReport) -> PyBoundReport {
    PyBoundReport(r)
}

#[pyclass(name = "Graph", frozen, module = "spectral_bounds_py")]
pub struct PyGraph(gr::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        gr::Graph::new(n, edges).or_raise().map(Self)
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Self(gr::Graph::cycle(n))
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Self(gr::Graph::complete(n))
    }

    #[staticmethod]
    fn petersen() -> Self {
        Self(gr::Graph::petersen())
    }

    /// Plain `u v` lines (0-based) or DIMACS `p edge` / `e u v`.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        gr::Graph::parse_edge_list(text).or_raise().map(Self)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn hoffman_chi_bound(&self) -> PyResult<PyBoundReport> {
        gr::hoffman_chi_bound(&gr::adjacency_matrix(&self.0))
            .or_raise()
            .map(report)
    }

    #[pyo3(signature = (r=None))]
    fn ratio_bound(&self, r: Option<f64>) -> PyResult<PyBoundReport> {
        gr::ratio_bound(&gr::adjacency_matrix(&self.0), r)
            .or_raise()
            .map(report)
    }

    fn fractional_chi_bound(&self) -> PyResult<PyBoundReport> {
        gr::fractional_chi_bound(&gr::adjacency_matrix(&self.0))
            .or_raise()
            .map(report)
    }

    /// Best Hoffman bound found by edge-weight optimization.
    #[pyo3(signature = (iters=100, nonneg=true))]
    fn optimize_weights(&self, iters: usize, nonneg: bool) -> PyResult<PyBoundReport> {
        gr::optimize_weights(&self.0, nonneg, iters)
            .or_raise()
            .map(|o| report(o.report))
    }

    fn independence_number(&self) -> PyResult<usize> {
        gr::brute_force_alpha(&self.0).or_raise()
    }

    fn chromatic_number(&self) -> PyResult<usize> {
        gr::brute_force_chi(&self.0).or_raise()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.0.n(), self.0.edges().len())
    }
}

#[pyclass(name = "RadialMeasure", frozen, module = "spectral_bounds_py")]
pub struct PyRadialMeasure(eu::RadialMeasure);

#[pymethods]
impl PyRadialMeasure {
    /// `atoms` is a list of (radius, weight) with increasing radii.
    #[new]
    fn new(dim: usize, atoms: Vec<(f64, f64)>) -> PyResult<Self> {
        eu::RadialMeasure::new(dim, atoms).or_raise().map(Self)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| BoundsError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("measure serializes")
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn atoms(&self) -> Vec<(f64, f64)> {
        self.0.atoms().to_vec()
    }

    fn total_mass(&self) -> f64 {
        self.0.total_mass()
    }

    /// Fourier transform at frequency radius r.
    fn fourier(&self, r: f64) -> f64 {
        eu::fourier_radial(&self.0, r)
    }

    #[pyo3(signature = (tol=eu::DEFAULT_TOL))]
    fn extrema<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let e = eu::global_extrema(&self.0, tol).or_raise()?;
        let d = PyDict::new(py);
        d.set_item("inf_value", e.inf_value)?;
        d.set_item("sup_value", e.sup_value)?;
        d.set_item("inf_arg", e.inf_arg)?;
        d.set_item("sup_arg", e.sup_arg)?;
        d.set_item("cutoff", e.cutoff)?;
        d.set_item("grid_points", e.grid_points)?;
        d.set_item("certified", e.certified)?;
        Ok(d)
    }

    #[pyo3(signature = (tol=eu::DEFAULT_TOL))]
    fn chromatic_bound(&self, py: Python<'_>, tol: f64) -> PyResult<PyBoundReport> {
        let mu = &self.0;
        py.detach(|| eu::chromatic_bound_euclidean_tol(mu, tol))
            .or_raise()
            .map(report)
    }

    #[pyo3(signature = (tol=eu::DEFAULT_TOL))]
    fn density_bound(&self, py: Python<'_>, tol: f64) -> PyResult<PyBoundReport> {
        let mu = &self.0;
        py.detach(|| eu::density_bound_tol(mu, tol)).or_raise().map(report)
    }

    fn __repr__(&self) -> String {
        format!("RadialMeasure(dim={}, atoms={:?})", self.0.dim(), self.0.atoms())
    }
}

#[pyclass(name = "SphereMeasure", frozen, module = "spectral_bounds_py")]
pub struct PySphereMeasure(sp::SphereMeasure);

#[pymethods]
impl PySphereMeasure {
    /// `atoms` is a list of (inner product, weight) with increasing inner products in [-1, 1).
    #[new]
    fn new(dim: usize, atoms: Vec<(f64, f64)>) -> PyResult<Self> {
        sp::SphereMeasure::new(dim, atoms).or_raise().map(Self)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| BoundsError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("measure serializes")
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn atoms(&self) -> Vec<(f64, f64)> {
        self.0.atoms().to_vec()
    }

    /// Normalized eigenvalues for degrees 0..=k.
    fn eigenvalues(&self, k: usize) -> PyResult<Vec<f64>> {
        sp::eigenvalue_sequence(&self.0, k).or_raise().map(|s| s.values)
    }

    /// (m, M, certified) for the operator attached to the measure.
    #[pyo3(signature = (k=sp::DEFAULT_DEGREE, tol=sp::DEFAULT_TOL))]
    fn operator_range(&self, k: usize, tol: f64) -> PyResult<(f64, f64, bool)> {
        let r = sp::operator_range(&self.0, k, tol).or_raise()?;
        Ok((r.m, r.big_m, r.certified))
    }

    fn __repr__(&self) -> String {
        format!("SphereMeasure(dim={}, atoms={:?})", self.0.dim(), self.0.atoms())
    }
}

/// (chi_lb, alpha_ub) for the unit-distance graph of R^n.
#[pyfunction]
fn unit_distance_bound(n: usize) -> PyResult<(PyBoundReport, PyBoundReport)> {
    let b = eu::unit_distance_bound(n).or_raise()?;
    Ok((report(b.chi_lb), report(b.alpha_ub)))
}

#[pyfunction]
fn steinhardt_measure(beta: f64, terms: usize) -> PyResult<PyRadialMeasure> {
    eu::steinhardt_measure(beta, terms).or_raise().map(PyRadialMeasure)
}

/// (optimal measure, certified chi lower bound).
#[pyfunction]
#[pyo3(signature = (n, radii, max_rounds=100, tol=eu::DEFAULT_TOL))]
fn optimize_radial_measure(
    py: Python<'_>,
    n: usize,
    radii: Vec<f64>,
    max_rounds: usize,
    tol: f64,
) -> PyResult<(PyRadialMeasure, PyBoundReport)> {
    let opt = py
        .detach(|| eu::optimize_radial_measure(n, &radii, max_rounds, tol))
        .or_raise()?;
    Ok((PyRadialMeasure(opt.measure), report(opt.report)))
}

/// (chi_lb, alpha_ub) for the graph on S^{n-1} joining points with inner product t.
#[pyfunction]
fn single_t_bounds(n: usize, t: f64) -> PyResult<(PyBoundReport, PyBoundReport)> {
    let b = sp::single_t_bounds(n, t).or_raise()?;
    Ok((report(b.chi_lb), report(b.alpha_ub)))
}

#[pyfunction]
#[pyo3(signature = (n, support, k=sp::DEFAULT_DEGREE, tol=sp::DEFAULT_TOL))]
fn optimize_sphere_measure(
    py: Python<'_>,
    n: usize,
    support: Vec<f64>,
    k: usize,
    tol: f64,
) -> PyResult<(PySphereMeasure, PyBoundReport)> {
    let opt = py
        .detach(|| sp::optimize_sphere_measure(n, &support, k, tol))
        .or_raise()?;
    Ok((PySphereMeasure(opt.measure), report(opt.report)))
}

#[pyfunction]
fn bessel_j(order: f64, x: f64) -> PyResult<f64> {
    special::bessel_j(order, x).or_raise()
}

#[pyfunction]
fn bessel_first_zero(order: f64) -> PyResult<f64> {
    special::bessel_first_zero(order).or_raise()
}

/// Fourier transform of the normalized unit-sphere measure in R^n at radius t.
#[pyfunction]
fn omega(n: usize, t: f64) -> PyResult<f64> {
    special::omega(n, t).or_raise()
}

#[pyfunction]
fn jacobi_normalized(k: usize, alpha: f64, t: f64) -> PyResult<f64> {
    let p = special::JacobiParams::new(alpha).or_raise()?;
    special::jacobi_normalized(k, p, t).or_raise()
}

/// Sorted eigenvalues of the Cayley graph of Z_m^dim with the given connection set.
#[pyfunction]
fn circulant_spectrum(modulus: usize, dim: usize, elements: Vec<Vec<i64>>) -> PyResult<Vec<f64>> {
    let g = torus::CirculantGraph::new(modulus, dim, elements).or_raise()?;
    Ok(torus::circulant_spectrum(&g))
}

/// Rows of the torus discretization study as dicts.
#[pyfunction]
fn convergence_study<'py>(
    py: Python<'py>,
    n: usize,
    radii: Vec<f64>,
    moduli: Vec<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = py.detach(|| torus::convergence_study(n, &radii, &moduli)).or_raise()?;
    rows.into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("m", r.m)?;
            d.set_item("discrete_chi_lb", r.discrete_chi_lb)?;
            d.set_item("discrete_alpha_ub", r.discrete_alpha_ub)?;
            d.set_item("continuous_chi_lb", r.continuous_chi_lb)?;
            d.set_item("continuous_alpha_ub", r.continuous_alpha_ub)?;
            d.set_item("oracle_alpha", r.oracle_alpha)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn spectral_bounds_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("BoundsError", py.get_type::<BoundsError>())?;
    m.add("VacuousBound", py.get_type::<VacuousBound>())?;
    m.add_class::<PyBoundReport>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRadialMeasure>()?;
    m.add_class::<PySphereMeasure>()?;
    m.add_function(wrap_pyfunction!(unit_distance_bound, m)?)?;
    m.add_function(wrap_pyfunction!(steinhardt_measure, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_radial_measure, m)?)?;
    m.add_function(wrap_pyfunction!(single_t_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_sphere_measure, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_first_zero, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_normalized, m)?)?;
    m.add_function(wrap_pyfunction!(circulant_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_study, m)?)?;
    Ok(())
}
