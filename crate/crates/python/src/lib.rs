//! Python bindings. Rationals cross the boundary as "p/q" strings so no
//! precision is lost.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use comaxlab::finite::{Capacity, GridFunction};
use comaxlab::io::{parse_capacity, validate_str, ParsedInput};
use comaxlab::omega::{self, OmegaPoint};
use comaxlab::rational::{fmt_rational, parse_rational, Rational};
use comaxlab::runner::{self, Subcommand, SuiteConfig};
use comaxlab::TNorm;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(value_error)
}

fn rationals(items: &[String]) -> PyResult<Vec<Rational>> {
    items.iter().map(|s| rational(s)).collect()
}

fn norm(name: &str) -> PyResult<TNorm> {
    TNorm::from_name(name).ok_or_else(|| value_error(format!("unknown t-norm {name:?}")))
}

/// A continuous function on the compactum `X`, stored exactly.
#[pyclass(name = "OmegaFunction", frozen, eq, skip_from_py_object, module = "pycomax")]
#[derive(Clone, PartialEq)]
struct PyOmegaFunction {
    inner: omega::OmegaFunction,
}

impl From<omega::OmegaFunction> for PyOmegaFunction {
    fn from(inner: omega::OmegaFunction) -> Self {
        PyOmegaFunction { inner }
    }
}

#[pymethods]
impl PyOmegaFunction {
    #[new]
    fn new(v_p: &str, prefix: Vec<String>, alpha: &str, beta: &str) -> PyResult<Self> {
        omega::OmegaFunction::new(rational(v_p)?, rationals(&prefix)?, rational(alpha)?, rational(beta)?)
            .map(Self::from)
            .map_err(value_error)
    }

    #[staticmethod]
    fn constant(c: &str) -> PyResult<Self> {
        omega::make_constant(rational(c)?).map(Self::from).map_err(value_error)
    }

    /// `f_0` or `f_1`.
    #[staticmethod]
    fn f(t: u8) -> PyResult<Self> {
        omega::make_f(t).map(Self::from).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match validate_str(text).map_err(value_error)? {
            ParsedInput::Omega(f) => Ok(f.into()),
            other => Err(value_error(format!("expected a function on X, got {}", other.kind()))),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn v_p(&self) -> String {
        fmt_rational(self.inner.v_p())
    }

    #[getter]
    fn prefix(&self) -> Vec<String> {
        self.inner.prefix().iter().map(fmt_rational).collect()
    }

    #[getter]
    fn alpha(&self) -> String {
        fmt_rational(self.inner.alpha())
    }

    #[getter]
    fn beta(&self) -> String {
        fmt_rational(self.inner.beta())
    }

    #[getter]
    fn v_lim(&self) -> String {
        fmt_rational(&self.inner.v_lim())
    }

    /// Value at `"P"`, `"Index(n)"` or `"Limit"`.
    fn eval(&self, point: &str) -> PyResult<String> {
        let x = OmegaPoint::parse(point).ok_or_else(|| value_error(format!("unknown point {point:?}")))?;
        Ok(fmt_rational(&self.inner.eval(x)))
    }

    fn leq(&self, other: &Self) -> bool {
        omega::leq(&self.inner, &other.inner)
    }

    fn join(&self, other: &Self) -> Self {
        omega::join(&self.inner, &other.inner).into()
    }

    fn meet(&self, other: &Self) -> Self {
        omega::meet(&self.inner, &other.inner).into()
    }

    /// `(value, point)` of the maximum.
    fn attained_max(&self) -> (String, String) {
        let m = omega::attained_max(&self.inner);
        (fmt_rational(&m.value), m.site.to_string())
    }

    /// `None` when comonotone, otherwise a pair of points where the two
    /// functions move in opposite directions.
    fn comonotone_witness(&self, other: &Self) -> Option<(String, String)> {
        omega::comonotone_omega(&self.inner, &other.inner)
            .witness()
            .map(|(a, b)| (a.to_string(), b.to_string()))
    }

    fn is_comonotone(&self, other: &Self) -> bool {
        omega::comonotone_omega(&self.inner, &other.inner).is_comonotone()
    }

    fn nu(&self) -> String {
        fmt_rational(&omega::nu_eval(&self.inner))
    }

    /// `(in_F1, in_F2, in_F3, in_G)`.
    fn membership(&self) -> (bool, bool, bool, bool) {
        let m = omega::membership(&self.inner);
        (m.in_f1, m.in_f2, m.in_f3, m.in_g)
    }

    fn __repr__(&self) -> String {
        format!("OmegaFunction({})", self.inner.to_json())
    }
}

#[pyfunction]
fn tnorm_apply(name: &str, a: &str, b: &str) -> PyResult<String> {
    let r = norm(name)?.apply(&rational(a)?, &rational(b)?).map_err(value_error)?;
    Ok(fmt_rational(&r))
}

/// Integral of `values` against the capacity given as JSON
/// (`{"n": 2, "mu": {"": "0", "0": "1/2", ...}}`).
#[pyfunction]
fn tnormed_integral(capacity_json: &str, norm_name: &str, values: Vec<String>) -> PyResult<String> {
    let doc: serde_json::Value = serde_json::from_str(capacity_json).map_err(value_error)?;
    let cap: Capacity = parse_capacity(&doc).map_err(value_error)?;
    let f = GridFunction::new(rationals(&values)?).map_err(value_error)?;
    let r = comaxlab::finite::tnormed_integral(&cap, norm(norm_name)?, &f).map_err(value_error)?;
    Ok(fmt_rational(&r))
}

/// Runs a suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (subcommand, files=Vec::new(), seed=0, samples=10_000, prefix_max=2, grid="0,1/2,1", n=2, budget=10_000_000, jobs=1))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    py: Python<'_>,
    subcommand: &str,
    files: Vec<PathBuf>,
    seed: u64,
    samples: u64,
    prefix_max: usize,
    grid: &str,
    n: usize,
    budget: u64,
    jobs: usize,
) -> PyResult<String> {
    let cmd: Subcommand = subcommand.parse().map_err(value_error)?;
    let config = SuiteConfig {
        seed,
        samples,
        prefix_max,
        grid: SuiteConfig::parse_grid(grid).map_err(value_error)?,
        n,
        budget,
        jobs,
        output_path: None,
    };
    let report = py
        .detach(|| runner::run(cmd, &config, &files))
        .map_err(value_error)?;
    Ok(report.to_json_string())
}

#[pymodule]
fn pycomax(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOmegaFunction>()?;
    m.add_function(wrap_pyfunction!(tnorm_apply, m)?)?;
    m.add_function(wrap_pyfunction!(tnormed_integral, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
