//! Python bindings: polynomials, surfaces, ideal membership, isomorphism
//! decisions and the worked examples. Structured results come back as
//! Python objects decoded from the library's JSON reports.

use ddsurf::cases::run_example as run_case;
use ddsurf::classify::{check_witness as check_one, decide_isomorphic as decide, SearchParams};
use ddsurf::groebner::{buchberger, is_member as member, IdealBasis, MonomialOrder, OrderKind};
use ddsurf::surface::{lemma1_oracle, DegreeBounds, SurfaceSummary};
use ddsurf::{parse_poly_in, AlgebraError, FieldSpec, GbConfig, MultiPoly, SurfacePresentation, VarSet};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn to_py(e: AlgebraError) -> PyErr {
    match e {
        AlgebraError::ResourceExhausted(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field_of(name: &str) -> PyResult<FieldSpec> {
    name.parse().map_err(to_py)
}

fn vars_of(vars: Option<Vec<String>>) -> PyResult<VarSet> {
    match vars {
        Some(v) => VarSet::new(&v).map_err(to_py),
        None => Ok(VarSet::xyzt()),
    }
}

fn json_obj<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Polynomial with exact coefficients in `Q` or `F_p`.
#[pyclass(name = "Poly", module = "pyddsurf", frozen, from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: MultiPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, field = "Q", vars = None))]
    fn new(text: &str, field: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        let inner = parse_poly_in(text, field_of(field)?, &vars_of(vars)?).map_err(to_py)?;
        Ok(PyPoly { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', field='{}')", self.inner, self.inner.field().describe())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.checked_add(&other.inner).map_err(to_py)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.checked_sub(&other.inner).map_err(to_py)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.checked_mul(&other.inner).map_err(to_py)? })
    }

    fn __pow__(&self, k: u32, _modulo: Option<Py<PyAny>>) -> Self {
        PyPoly { inner: self.inner.pow(k) }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    /// Substitutes `images[i]` for the i-th variable.
    fn compose(&self, images: Vec<PyPoly>) -> PyResult<Self> {
        let imgs: Vec<MultiPoly> = images.into_iter().map(|p| p.inner).collect();
        Ok(PyPoly { inner: self.inner.compose(&imgs).map_err(to_py)? })
    }
}

/// `x^d y = P(x, z)`, `x^e t = Q(x, y, z)`.
#[pyclass(name = "Surface", module = "pyddsurf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySurface {
    inner: SurfacePresentation,
}

#[pymethods]
impl PySurface {
    #[new]
    #[pyo3(signature = (d, e, p, q, field = "Q"))]
    fn new(d: u32, e: u32, p: &str, q: &str, field: &str) -> PyResult<Self> {
        let inner = SurfacePresentation::parse(field_of(field)?, d, e, p, q).map_err(to_py)?;
        Ok(PySurface { inner })
    }

    #[getter]
    fn d(&self) -> u32 {
        self.inner.d()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.inner.e()
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    #[getter]
    fn s(&self) -> u32 {
        self.inner.s()
    }

    fn relations(&self) -> Vec<String> {
        self.inner.relations().iter().map(|r| r.to_string()).collect()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_obj(py, &self.inner.validate())
    }

    /// Image of `poly` in `k[x, x^-1, z]`.
    fn laurent_nf(&self, poly: &str) -> PyResult<String> {
        let p = parse_poly_in(poly, self.inner.field(), &self.inner.vars()).map_err(to_py)?;
        Ok(self.inner.laurent_nf(&p).map_err(to_py)?.to_string())
    }

    fn equal_in_b(&self, a: &str, b: &str) -> PyResult<bool> {
        let (f, v) = (self.inner.field(), self.inner.vars());
        let a = parse_poly_in(a, f, &v).map_err(to_py)?;
        let b = parse_poly_in(b, f, &v).map_err(to_py)?;
        self.inner.equal_in_b(&a, &b).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        serde_json::to_string(&SurfaceSummary::from(&self.inner)).unwrap_or_default()
    }
}

fn order_of(order: &str, nvars: usize) -> PyResult<MonomialOrder> {
    let kind = match order {
        "grevlex" => OrderKind::Grevlex,
        "lex" => OrderKind::Lex,
        other => return Err(PyValueError::new_err(format!("unknown order `{other}`"))),
    };
    Ok(MonomialOrder::with_default_ranking(kind, nvars))
}

fn ideal(generators: &[String], field: &str, vars: Option<Vec<String>>, order: &str) -> PyResult<(FieldSpec, VarSet, IdealBasis)> {
    let field = field_of(field)?;
    let vars = vars_of(vars)?;
    let gens = generators
        .iter()
        .map(|g| parse_poly_in(g, field, &vars))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py)?;
    let basis = IdealBasis::new(gens, order_of(order, vars.len())?).map_err(to_py)?;
    Ok((field, vars, basis))
}

/// Reduced Groebner basis as strings.
#[pyfunction]
#[pyo3(signature = (generators, field = "Q", vars = None, order = "grevlex"))]
fn groebner_basis(generators: Vec<String>, field: &str, vars: Option<Vec<String>>, order: &str) -> PyResult<Vec<String>> {
    let (_, _, basis) = ideal(&generators, field, vars, order)?;
    let gb = buchberger(&basis, &GbConfig::default()).map_err(to_py)?;
    Ok(gb.elements().iter().map(|g| g.to_string()).collect())
}

/// Cofactors expressing `poly` in the ideal, or `None` for a non-member.
#[pyfunction]
#[pyo3(signature = (poly, generators, field = "Q", vars = None))]
fn is_member(poly: &str, generators: Vec<String>, field: &str, vars: Option<Vec<String>>) -> PyResult<Option<Vec<String>>> {
    let (field, vars, basis) = ideal(&generators, field, vars, "grevlex")?;
    let p = parse_poly_in(poly, field, &vars).map_err(to_py)?;
    let cert = member(&p, &basis, &GbConfig::default()).map_err(to_py)?;
    Ok(cert.map(|c| c.cofactors.iter().map(|q| q.to_string()).collect()))
}

/// Classification verdict as a dict with key `status`.
#[pyfunction]
#[pyo3(signature = (s1, s2, delta_bound = None, candidates = None))]
fn decide_isomorphic<'py>(
    py: Python<'py>,
    s1: &PySurface,
    s2: &PySurface,
    delta_bound: Option<u32>,
    candidates: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let field = s1.inner.field();
    let candidates = candidates
        .unwrap_or_default()
        .iter()
        .map(|c| field.parse_scalar(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py)?;
    let params = SearchParams {
        delta_bound,
        candidates,
        gb: GbConfig::default(),
    };
    let v = py.detach(|| decide(&s1.inner, &s2.inner, &params)).map_err(to_py)?;
    json_obj(py, &v)
}

/// Verifies one witness for a map from `s2`'s ring to `s1`'s ring.
#[pyfunction]
#[pyo3(signature = (s1, s2, lam, gamma, delta = "0", f = None))]
fn check_witness<'py>(
    py: Python<'py>,
    s1: &PySurface,
    s2: &PySurface,
    lam: &str,
    gamma: &str,
    delta: &str,
    f: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let field = s1.inner.field();
    let vars = VarSet::xyzt();
    let lam = field.parse_scalar(lam).map_err(to_py)?;
    let gamma = field.parse_scalar(gamma).map_err(to_py)?;
    let delta = parse_poly_in(delta, field, &vars).map_err(to_py)?;
    let f = f.map(|t| parse_poly_in(t, field, &vars)).transpose().map_err(to_py)?;
    let v = check_one(&s1.inner, &s2.inner, &lam, &gamma, &delta, f.as_ref(), &GbConfig::default()).map_err(to_py)?;
    json_obj(py, &v)
}

/// Runs one named worked example and returns its report.
#[pyfunction]
#[pyo3(signature = (name, seed = None))]
fn run_example<'py>(py: Python<'py>, name: &str, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let rep = py.detach(|| run_case(name, seed, &GbConfig::default())).map_err(to_py)?;
    json_obj(py, &rep)
}

/// Exhaustive divisibility sweep over a finite field.
#[pyfunction]
#[pyo3(signature = (p, d, bound = 2, field = "Fp:2"))]
fn lemma1<'py>(py: Python<'py>, p: &str, d: u32, bound: u32, field: &str) -> PyResult<Bound<'py, PyAny>> {
    let poly = parse_poly_in(p, field_of(field)?, &VarSet::xyzt()).map_err(to_py)?;
    let rep = py.detach(|| lemma1_oracle(&poly, d, DegreeBounds::uniform(bound))).map_err(to_py)?;
    json_obj(py, &rep)
}

#[pymodule]
fn pyddsurf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(is_member, m)?)?;
    m.add_function(wrap_pyfunction!(decide_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(check_witness, m)?)?;
    m.add_function(wrap_pyfunction!(run_example, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1, m)?)?;
    Ok(())
}
