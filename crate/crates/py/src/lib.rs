//! Python bindings: `import lambda_arc`.

use lambda_core::arc_gen::{self, GenConfig, Strategy};
use lambda_core::oracle;
use lambda_core::report::AnalysisReport;
use lambda_core::svg::{render_scene, render_schematic, Scene};
use lambda_core::{
    parse_arc, validate_simple, ApexEnd, ApexSide, ArcFormat, Error, Line, PolygonalArc,
    SupportPairSolution, Tolerance,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(lambda_arc, LambdaError, PyException);
create_exception!(lambda_arc, InvalidArcError, LambdaError);
create_exception!(lambda_arc, StructuralError, LambdaError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::InvalidArgument(_) | Error::TooLarge { .. } => PyValueError::new_err(msg),
        Error::Structural(_) => StructuralError::new_err(msg),
        Error::Generation(_) => LambdaError::new_err(msg),
        Error::Parse { .. } | Error::InvalidArc(_) | Error::DegenerateHull | Error::UnsupportedArc(_) => {
            InvalidArcError::new_err(msg)
        }
    }
}

#[pyclass(name = "Arc", module = "lambda_arc", frozen)]
struct PyArc {
    inner: PolygonalArc,
}

#[pymethods]
impl PyArc {
    #[new]
    #[pyo3(signature = (nodes, closed = false))]
    fn new(nodes: Vec<(f64, f64)>, closed: bool) -> PyResult<Self> {
        let pts = nodes.into_iter().map(Into::into).collect();
        let inner = PolygonalArc::new(pts, closed).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = parse_arc(text, ArcFormat::Json).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        let inner = parse_arc(text, ArcFormat::Csv).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn nodes(&self) -> Vec<(f64, f64)> {
        self.inner.nodes().iter().map(|p| (p.x, p.y)).collect()
    }

    #[getter]
    fn closed(&self) -> bool {
        self.inner.is_closed()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Human-readable simplicity violations; empty for a simple arc.
    fn violations(&self) -> Vec<String> {
        let report = validate_simple(&self.inner, &self.inner.tolerance());
        report.violations.iter().map(ToString::to_string).collect()
    }

    fn is_simple(&self) -> bool {
        validate_simple(&self.inner, &self.inner.tolerance()).is_ok()
    }

    fn reversed(&self) -> Self {
        Self {
            inner: self.inner.reversed(),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        let kind = if self.inner.is_closed() { "closed" } else { "open" };
        format!("Arc({} nodes, {kind})", self.inner.len())
    }
}

#[pyclass(name = "Line", module = "lambda_arc", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyLine {
    px: f64,
    py: f64,
    dir_deg: f64,
}

impl From<&Line> for PyLine {
    fn from(l: &Line) -> Self {
        Self {
            px: l.point.x,
            py: l.point.y,
            dir_deg: l.dir.value(),
        }
    }
}

#[pymethods]
impl PyLine {
    fn __repr__(&self) -> String {
        format!("Line(({}, {}), {}°)", self.px, self.py, self.dir_deg)
    }
}

#[pyclass(name = "Pair", module = "lambda_arc", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyPair {
    m: PyLine,
    n: PyLine,
    u: usize,
    v: usize,
    w: usize,
    locale: Option<usize>,
    phi: f64,
    apex: Option<(f64, f64)>,
    apex_side: &'static str,
    apex_end: &'static str,
}

impl From<&SupportPairSolution> for PyPair {
    fn from(p: &SupportPairSolution) -> Self {
        Self {
            m: (&p.m).into(),
            n: (&p.n).into(),
            u: p.u.index,
            v: p.v.index,
            w: p.w.index,
            locale: p.locale,
            phi: p.phi,
            apex: p.apex.map(|a| (a.x, a.y)),
            apex_side: match p.apex_side {
                ApexSide::Left => "left",
                ApexSide::Right => "right",
                ApexSide::None => "none",
            },
            apex_end: match p.apex_end {
                ApexEnd::U => "u",
                ApexEnd::W => "w",
                ApexEnd::None => "none",
            },
        }
    }
}

#[pymethods]
impl PyPair {
    fn __repr__(&self) -> String {
        format!("Pair(u={}, v={}, w={}, phi={})", self.u, self.v, self.w, self.phi)
    }
}

#[pyclass(name = "Solution", module = "lambda_arc", frozen, get_all, skip_from_py_object)]
struct PySolution {
    phi: f64,
    case: String,
    pairs: Vec<PyPair>,
}

#[pymethods]
impl PySolution {
    fn __len__(&self) -> usize {
        self.pairs.len()
    }

    fn __repr__(&self) -> String {
        format!("Solution(phi={}, case={}, {} pairs)", self.phi, self.case, self.pairs.len())
    }
}

fn tolerance(arc: &PolygonalArc, eps: Option<f64>, eps_angle: Option<f64>) -> PyResult<Tolerance> {
    let base = arc.tolerance();
    Tolerance::new(eps.unwrap_or(base.eps_len), eps_angle.unwrap_or(base.eps_angle)).map_err(py_err)
}

/// Hull, guide path, locales, tilt table and schematic of an open arc.
#[pyclass(name = "Analysis", module = "lambda_arc", frozen)]
struct PyAnalysis {
    inner: lambda_core::Analysis,
}

#[pymethods]
impl PyAnalysis {
    #[new]
    #[pyo3(signature = (arc, eps = None, eps_angle = None))]
    fn new(arc: PyRef<'_, PyArc>, eps: Option<f64>, eps_angle: Option<f64>) -> PyResult<Self> {
        let tol = tolerance(&arc.inner, eps, eps_angle)?;
        let inner = lambda_core::Analysis::new(&arc.inner, tol).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// Hull vertices as node indices, counter-clockwise.
    #[getter]
    fn hull(&self) -> Vec<usize> {
        self.inner.hull.node_indices().to_vec()
    }

    #[getter]
    fn visit_order(&self) -> Vec<usize> {
        let h = &self.inner.hull;
        self.inner.guide.visit_order.iter().map(|&v| h.node_index(v)).collect()
    }

    #[getter]
    fn sigma(&self) -> i8 {
        self.inner.guide.sigma
    }

    #[getter]
    fn axis_on_boundary(&self) -> bool {
        self.inner.guide.axis_on_boundary
    }

    #[getter]
    fn locale_count(&self) -> usize {
        self.inner.tilts.j
    }

    #[getter]
    fn tilts(&self) -> Vec<f64> {
        self.inner.tilts.tilts.clone()
    }

    #[getter]
    fn spans(&self) -> Vec<f64> {
        self.inner.tilts.spans.clone()
    }

    #[getter]
    fn delta_total(&self) -> f64 {
        self.inner.tilts.delta_total
    }

    #[getter]
    fn phi_l(&self) -> f64 {
        self.inner.tilts.phi_l
    }

    #[getter]
    fn phi_r(&self) -> f64 {
        self.inner.tilts.phi_r
    }

    fn parallel(&self) -> PyResult<PyPair> {
        Ok((&self.inner.parallel().map_err(py_err)?).into())
    }

    fn solve(&self, phi: f64) -> PyResult<PySolution> {
        let s = self.inner.solve(phi).map_err(py_err)?;
        Ok(PySolution {
            phi: s.phi,
            case: s.case.to_string(),
            pairs: s.pairs.iter().map(PyPair::from).collect(),
        })
    }

    /// The versioned JSON analysis report, solving at each of `phis`.
    #[pyo3(signature = (phis = Vec::new()))]
    fn report_json(&self, phis: Vec<f64>) -> PyResult<String> {
        let sols = phis
            .iter()
            .map(|&p| self.inner.solve(p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        let report = AnalysisReport::open(&self.inner, &sols);
        serde_json::to_string(&report).map_err(|e| LambdaError::new_err(e.to_string()))
    }

    #[pyo3(signature = (phis = Vec::new()))]
    fn scene_svg(&self, phis: Vec<f64>) -> PyResult<String> {
        let mut pairs = Vec::new();
        for p in phis {
            pairs.extend(self.inner.solve(p).map_err(py_err)?.pairs);
        }
        render_scene(&Scene::from_analysis(&self.inner, &pairs)).map_err(py_err)
    }

    #[pyo3(signature = (queries = Vec::new()))]
    fn schematic_svg(&self, queries: Vec<f64>) -> String {
        render_schematic(&self.inner.schematic, &queries)
    }
}

#[pyfunction]
fn solve_parallel(arc: PyRef<'_, PyArc>) -> PyResult<PyPair> {
    let tol = arc.inner.tolerance();
    Ok((&lambda_core::solve_parallel(&arc.inner, &tol).map_err(py_err)?).into())
}

#[pyfunction]
fn solve_at_angle(arc: PyRef<'_, PyArc>, phi: f64) -> PyResult<PySolution> {
    PyAnalysis::new(arc, None, None)?.solve(phi)
}

#[pyfunction]
fn solve_closed(arc: PyRef<'_, PyArc>) -> PyResult<PyPair> {
    let tol = arc.inner.tolerance();
    Ok((&lambda_core::solve_closed(&arc.inner, &tol).map_err(py_err)?).into())
}

/// Brute-force pairs as `(u, v, w)` node-index triples.
#[pyfunction]
fn oracle_pairs(arc: PyRef<'_, PyArc>, phi: f64) -> PyResult<Vec<(usize, usize, usize)>> {
    let tol = arc.inner.tolerance();
    let r = oracle::brute_force_pairs(&arc.inner, phi, &tol).map_err(py_err)?;
    Ok(r.pairs.iter().map(|p| (p.u, p.v, p.w)).collect())
}

/// `(agree, solver_count, oracle_count, mismatches)`.
#[pyfunction]
fn compare_with_oracle(arc: PyRef<'_, PyArc>, phi: f64) -> PyResult<(bool, usize, usize, Vec<String>)> {
    let tol = arc.inner.tolerance();
    let r = oracle::compare_with_solver(&arc.inner, phi, &tol).map_err(py_err)?;
    Ok((r.agree, r.solver_count, r.oracle_count, r.mismatches))
}

fn strategy(name: &str) -> PyResult<Strategy> {
    match name {
        "uncross" => Ok(Strategy::Uncross),
        "zigzag" => Ok(Strategy::Zigzag),
        "perimeter" => Ok(Strategy::Perimeter),
        other => Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
    }
}

#[pyfunction]
#[pyo3(signature = (seed, nodes, strategy = "uncross"))]
fn generate_arc(seed: u64, nodes: usize, strategy: &str) -> PyResult<PyArc> {
    let cfg = GenConfig::new(seed, nodes, self::strategy(strategy)?);
    let inner = arc_gen::generate_arc(&cfg).map_err(py_err)?;
    Ok(PyArc { inner })
}

#[pyfunction]
fn generate_closed(seed: u64, nodes: usize) -> PyResult<PyArc> {
    let cfg = GenConfig::new(seed, nodes, Strategy::Uncross);
    let inner = arc_gen::generate_closed(&cfg).map_err(py_err)?;
    Ok(PyArc { inner })
}

#[pymodule]
fn lambda_arc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("LambdaError", py.get_type::<LambdaError>())?;
    m.add("InvalidArcError", py.get_type::<InvalidArcError>())?;
    m.add("StructuralError", py.get_type::<StructuralError>())?;
    m.add_class::<PyArc>()?;
    m.add_class::<PyLine>()?;
    m.add_class::<PyPair>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyAnalysis>()?;
    m.add_function(wrap_pyfunction!(solve_parallel, m)?)?;
    m.add_function(wrap_pyfunction!(solve_at_angle, m)?)?;
    m.add_function(wrap_pyfunction!(solve_closed, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(compare_with_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(generate_arc, m)?)?;
    m.add_function(wrap_pyfunction!(generate_closed, m)?)?;
    Ok(())
}
