//! Python bindings for `mstack-core`.
//!
//! Exact rationals are returned as `fractions.Fraction`; structured reports
//! are returned as plain dicts built from their JSON form.

use mstack_core::arith::{BigRational, IntPolynomial, TruncatedSeries};
use mstack_core::curve::{CurveData, GroundField};
use mstack_core::frobenius::{formal_trace, weil_numbers};
use mstack_core::p1::{fixed_point_demo, mass_sl, verify_lefschetz};
use mstack_core::ring::{poincare_closed_form, poincare_from_generators, ring_preset, ring_preset_for_series, Convention, RingKind};
use mstack_core::strata::{self, Stratifier};
use mstack_core::verify::run_suite;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn series_list<'py>(py: Python<'py>, s: &TruncatedSeries) -> PyResult<Bound<'py, PyList>> {
    let items = s.coeffs().iter().map(|c| fraction(py, c)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((v.to_string(),))
}

fn convention(name: &str) -> PyResult<Convention> {
    name.parse().map_err(err)
}

fn curve(genus: u32, q: u64, l_poly: Option<Vec<i64>>) -> PyResult<CurveData> {
    let c = match (l_poly, genus) {
        (Some(l), g) => CurveData::new(g, q, Some(IntPolynomial::from_i64s(&l))),
        (None, 0) => CurveData::projective_line(q),
        (None, g) => CurveData::supersingular(g, q),
    }
    .map_err(err)?;
    weil_numbers(&c).map_err(err)?;
    Ok(c)
}

/// A Harder-Narasimhan type: blocks `(rank, degree)` of strictly decreasing slope.
#[pyclass(name = "HNType", frozen)]
struct PyHNType {
    inner: strata::HNType,
}

#[pymethods]
impl PyHNType {
    #[new]
    fn new(blocks: Vec<(u32, i64)>) -> PyResult<Self> {
        Ok(Self { inner: strata::HNType::new(blocks).map_err(err)? })
    }

    #[getter]
    fn blocks(&self) -> Vec<(u32, i64)> {
        self.inner.blocks().to_vec()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    fn codim(&self, genus: u32) -> i64 {
        strata::codim(&self.inner, genus)
    }

    fn polygon(&self) -> Vec<(i64, i64)> {
        strata::polygon_of(&self.inner).vertices().to_vec()
    }

    /// True when this type's polygon lies on or below `other`'s.
    fn polygon_leq(&self, other: &PyHNType) -> PyResult<bool> {
        strata::polygon_leq(&strata::polygon_of(&self.inner), &strata::polygon_of(&other.inner)).map_err(err)
    }

    fn __eq__(&self, other: &PyHNType) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("HNType({})", self.inner)
    }
}

/// Formal trace of `phi^r x psi^s` on the trivial-determinant moduli stack.
#[pyfunction]
#[pyo3(signature = (rank, genus=0, q=2, r=0, s=1, l_poly=None, convention="sign-fixed"))]
fn trace(
    py: Python<'_>,
    rank: u32,
    genus: u32,
    q: u64,
    r: u32,
    s: u32,
    l_poly: Option<Vec<i64>>,
    convention: &str,
) -> PyResult<Py<PyAny>> {
    let c = curve(genus, q, l_poly)?;
    let kind = RingKind::ModuliFixedDet { genus, rank, convention: self::convention(convention)? };
    let spec = ring_preset(kind, Some(&c)).map_err(err)?;
    let t = formal_trace(&spec, r, s).map_err(err)?;
    Ok(fraction(py, t.value.as_ref().expect("convergent"))?.unbind())
}

/// Poincare series coefficients of the trivial-determinant moduli stack.
#[pyfunction]
#[pyo3(signature = (rank, genus=0, order=40, convention="sign-fixed"))]
fn poincare(py: Python<'_>, rank: u32, genus: u32, order: usize, convention: &str) -> PyResult<Py<PyList>> {
    let kind = RingKind::ModuliFixedDet { genus, rank, convention: self::convention(convention)? };
    let spec = ring_preset_for_series(kind).map_err(err)?;
    Ok(series_list(py, &poincare_from_generators(&spec, order))?.unbind())
}

/// Closed form as `(numerator, denominator)` integer coefficient lists.
#[pyfunction]
#[pyo3(signature = (rank, genus=0, convention="sign-fixed"))]
fn poincare_closed_form_coeffs(rank: u32, genus: u32, convention: &str) -> PyResult<(Vec<String>, Vec<String>)> {
    let f = poincare_closed_form(genus, rank, self::convention(convention)?).map_err(err)?;
    let list = |p: &IntPolynomial| p.coeffs().iter().map(|c| c.to_string()).collect();
    Ok((list(f.num()), list(f.den())))
}

#[pyfunction]
#[pyo3(signature = (n, d, genus=0, order=40))]
fn ss_series(py: Python<'_>, n: u32, d: i64, genus: u32, order: usize) -> PyResult<Py<PyList>> {
    let s = Stratifier::new().ss_series(n, d, genus, order).map_err(err)?;
    Ok(series_list(py, &s)?.unbind())
}

#[pyfunction]
#[pyo3(signature = (n, d, genus, order=40, fixed_det=false))]
fn coarse_series(py: Python<'_>, n: u32, d: i64, genus: u32, order: usize, fixed_det: bool) -> PyResult<Py<PyList>> {
    let st = Stratifier::new();
    let s = if fixed_det {
        st.fixed_det_coarse_series(n, d, genus, order)
    } else {
        st.coarse_moduli_series(n, d, genus, order)
    }
    .map_err(err)?;
    Ok(series_list(py, &s)?.unbind())
}

/// Non-semistable HN types of `(n, d)` with codimension at most `max_codim`.
#[pyfunction]
#[pyo3(signature = (n, d, genus=0, max_codim=6))]
fn strata_types(n: u32, d: i64, genus: u32, max_codim: i64) -> Vec<PyHNType> {
    strata::enumerate_types(n, d, genus, max_codim).into_iter().map(|inner| PyHNType { inner }).collect()
}

#[pyfunction]
#[pyo3(signature = (n, q=2, height=40))]
fn mass(py: Python<'_>, n: u32, q: u64, height: i64) -> PyResult<Py<PyAny>> {
    let m = mass_sl(n, GroundField::new(q).map_err(err)?, height).map_err(err)?;
    Ok(to_py(py, &m.to_json())?.unbind())
}

#[pyfunction]
#[pyo3(signature = (n, q=2, height=60))]
fn lefschetz(py: Python<'_>, n: u32, q: u64, height: i64) -> PyResult<Py<PyAny>> {
    let r = verify_lefschetz(n, GroundField::new(q).map_err(err)?, height).map_err(err)?;
    Ok(to_py(py, &r.to_json())?.unbind())
}

#[pyfunction]
#[pyo3(signature = (q=2, s=2))]
fn demo(py: Python<'_>, q: u64, s: u32) -> PyResult<Py<PyAny>> {
    let d = fixed_point_demo(GroundField::new(q).map_err(err)?, s).map_err(err)?;
    Ok(to_py(py, &d.to_json())?.unbind())
}

/// Run a named check suite and return its report.
#[pyfunction]
#[pyo3(signature = (suite, order=40))]
fn verify(py: Python<'_>, suite: &str, order: usize) -> PyResult<Py<PyAny>> {
    let r = run_suite(suite, order).map_err(err)?;
    Ok(to_py(py, &r.to_json())?.unbind())
}

#[pymodule]
fn mstack(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHNType>()?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_closed_form_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(ss_series, m)?)?;
    m.add_function(wrap_pyfunction!(coarse_series, m)?)?;
    m.add_function(wrap_pyfunction!(strata_types, m)?)?;
    m.add_function(wrap_pyfunction!(mass, m)?)?;
    m.add_function(wrap_pyfunction!(lefschetz, m)?)?;
    m.add_function(wrap_pyfunction!(demo, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", mstack_core::verify::SUITES.to_vec())?;
    Ok(())
}
