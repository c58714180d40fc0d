//! Python module `chern`.

use chern_core::inequality::{self, GenerateOptions, MParam};
use chern_core::polytope::{self, Extent, Mode};
use chern_core::schubert::{self, BoxSpec, SchubertExpr};
use chern_core::verify::{self, Section};
use chern_core::{chern as symbols, todd, Partition};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: chern_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let num = big_int(py, q.numer().to_string())?;
    let den = big_int(py, q.denom().to_string())?;
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((num, den))
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((text,))
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(err)
}

/// One generated inequality `lhs >= 0`.
#[pyclass(name = "Inequality", frozen)]
struct PyInequality {
    inner: inequality::Inequality,
}

#[pymethods]
impl PyInequality {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    /// `None` when the parameter is symbolic.
    #[getter]
    fn m(&self) -> Option<i64> {
        match self.inner.m() {
            MParam::Symbolic => None,
            MParam::Value(v) => Some(v),
        }
    }

    #[getter]
    fn lhs(&self) -> String {
        self.inner.lhs().render()
    }

    #[getter]
    fn provenance<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_loads(py, &to_json(self.inner.provenance())?)
    }

    fn specialize(&self, m: i64) -> PyResult<PyInequality> {
        inequality::specialize(&self.inner, m)
            .map(|inner| PyInequality { inner })
            .map_err(err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Inequality({:?})", self.inner.to_text())
    }
}

/// Per-coordinate LP bounds of the ratio polytope.
#[pyclass(name = "BoundsCertificate", frozen)]
struct PyBounds {
    inner: polytope::BoundsCertificate,
}

#[pymethods]
impl PyBounds {
    #[getter]
    fn bounded(&self) -> bool {
        self.inner.bounded()
    }

    /// `{partition tuple: (min, max)}` with `None` for an unbounded side.
    fn intervals<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for c in &self.inner.coords {
            let key = pyo3::types::PyTuple::new(py, c.partition.parts())?;
            let lo = c.min.value.as_ref().map(|v| fraction(py, v)).transpose()?;
            let hi = c.max.value.as_ref().map(|v| fraction(py, v)).transpose()?;
            out.set_item(key, (lo, hi))?;
        }
        Ok(out)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }
}

/// Inequalities for dimension `n`; specialized when `m` is given.
#[pyfunction]
#[pyo3(signature = (n, m=None, comparisons=true))]
fn generate(n: u32, m: Option<i64>, comparisons: bool) -> PyResult<Vec<PyInequality>> {
    let all = inequality::generate_with(
        n,
        GenerateOptions {
            include_comparisons: comparisons,
        },
    )
    .map_err(err)?;
    let mut out = Vec::with_capacity(all.len());
    for q in all {
        let inner = match m {
            Some(v) => inequality::specialize(&q, v).map_err(err)?,
            None => q,
        };
        out.push(PyInequality { inner });
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (n, m, mode="general-type"))]
fn bounds(n: u32, m: i64, mode: &str) -> PyResult<PyBounds> {
    polytope::boundedness_certificate(n, m, parse_mode(mode)?)
        .map(|inner| PyBounds { inner })
        .map_err(err)
}

/// `(d1, d2, d3, d4)` as fractions, `None` where the LP has no finite optimum.
#[pyfunction]
#[pyo3(signature = (n, m, mode="general-type"))]
fn chi_bounds<'py>(
    py: Python<'py>,
    n: u32,
    m: i64,
    mode: &str,
) -> PyResult<Vec<Option<Bound<'py, PyAny>>>> {
    let chi = polytope::chi_bounds(n, m, parse_mode(mode)?).map_err(err)?;
    [chi.d1, chi.d2, chi.d3, chi.d4]
        .iter()
        .map(|e| match e {
            Extent::Finite(v) => fraction(py, v).map(Some),
            _ => Ok(None),
        })
        .collect()
}

/// `σ_a σ_b` as `{partition tuple: coefficient}`.
#[pyfunction]
#[pyo3(signature = (a, b, rows_cols=None))]
fn multiply<'py>(
    py: Python<'py>,
    a: Vec<u32>,
    b: Vec<u32>,
    rows_cols: Option<(u32, u32)>,
) -> PyResult<Bound<'py, PyDict>> {
    let bx = match rows_cols {
        Some((r, c)) => BoxSpec::new(r, c).map_err(err)?,
        None => BoxSpec::STABLE,
    };
    let prod = schubert::multiply(
        &SchubertExpr::basis(partition(a)?),
        &SchubertExpr::basis(partition(b)?),
        bx,
    );
    let out = PyDict::new(py);
    for (k, c) in prod.terms() {
        let key = pyo3::types::PyTuple::new(py, k.parts())?;
        out.set_item(key, big_int(py, c.to_string())?)?;
    }
    Ok(out)
}

#[pyfunction]
fn sigma_to_chern(w: u32) -> String {
    symbols::sigma_to_chern_s(w).render()
}

#[pyfunction]
fn gauss_chern(n: u32, p: u32) -> PyResult<String> {
    symbols::chern_gauss(n, p).map(|c| c.render()).map_err(err)
}

#[pyfunction]
fn todd_polynomial(d: u32) -> String {
    todd::todd_polynomial(d).body().render()
}

/// Report for one block of published formulas, as parsed JSON.
#[pyfunction]
fn verify_section<'py>(py: Python<'py>, section: &str) -> PyResult<Bound<'py, PyAny>> {
    let s: Section = section.parse().map_err(err)?;
    let report = verify::verify_section(s).map_err(err)?;
    json_loads(py, &to_json(&report)?)
}

#[pymodule]
fn chern(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInequality>()?;
    m.add_class::<PyBounds>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(chi_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_to_chern, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_chern, m)?)?;
    m.add_function(wrap_pyfunction!(todd_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_section, m)?)?;
    Ok(())
}
