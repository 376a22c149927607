//! Python bindings: the `qfock` extension module.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use qfock::arith::{self, q_binomial_at_eps, specialize, CyclotomicField, RootOrder};
use qfock::fock::{self, FockLabel, FockVector, GenericQ};
use qfock::json::{parse_label, ModuleDto, RecipeDto, VerifyDto};
use qfock::rep::{self, default_window};
use qfock::selftest;
use qfock::uq::{verify_defining_relations, BosonImage, Realization, UGenerator};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn root(p: i64) -> PyResult<RootOrder> {
    RootOrder::new(p).map_err(value_error)
}

fn realization(which: i64) -> PyResult<Realization> {
    Realization::from_index(which).map_err(value_error)
}

fn to_py_json<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Laurent polynomial in `q` with integer coefficients.
#[pyclass(name = "LaurentPoly", module = "qfock", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLaurentPoly(arith::LaurentPoly);

#[pymethods]
impl PyLaurentPoly {
    /// Builds from a mapping `{exponent: coefficient}`.
    #[new]
    #[pyo3(signature = (coefficients = BTreeMap::new()))]
    fn new(coefficients: BTreeMap<i64, BigInt>) -> Self {
        PyLaurentPoly(arith::LaurentPoly::from_terms(coefficients))
    }

    /// The q-integer `[n]`.
    #[staticmethod]
    fn q_int(n: i64) -> Self {
        PyLaurentPoly(arith::q_int(n))
    }

    /// The Gaussian binomial `[n over m]`.
    #[staticmethod]
    fn q_binomial(n: i64, m: i64) -> PyResult<Self> {
        arith::try_q_binomial(n, m).map(PyLaurentPoly).map_err(value_error)
    }

    #[staticmethod]
    fn q_factorial(n: i64) -> PyResult<Self> {
        arith::q_factorial(n).map(PyLaurentPoly).map_err(value_error)
    }

    fn coefficients(&self) -> BTreeMap<i64, BigInt> {
        self.0.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// Image at a primitive `p`-th root of unity, rendered in `eps`.
    fn at_root(&self, p: i64) -> PyResult<String> {
        let field = CyclotomicField::new(root(p)?);
        Ok(specialize(&self.0, &field).to_string())
    }

    fn div_exact(&self, other: &PyLaurentPoly) -> PyResult<Self> {
        self.0.div_exact(&other.0).map(PyLaurentPoly).map_err(value_error)
    }

    fn __add__(&self, other: &PyLaurentPoly) -> Self {
        PyLaurentPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyLaurentPoly) -> Self {
        PyLaurentPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyLaurentPoly) -> Self {
        PyLaurentPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        PyLaurentPoly(-&self.0)
    }

    fn __bool__(&self) -> bool {
        !self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }
}

/// Base-`p` digits `(n0, n1)` with `n = n0 + p * n1` and `0 <= n0 < p`.
#[pyfunction]
fn digits(n: i64, p: i64) -> PyResult<(i64, i64)> {
    let d = arith::digits(n, root(p)?);
    Ok((d.n0, d.n1))
}

/// `[n over m]` at a primitive `p`-th root of unity, rendered in `eps`.
#[pyfunction]
fn q_binomial_at_root(p: i64, n: i64, m: i64) -> PyResult<String> {
    let field = CyclotomicField::new(root(p)?);
    Ok(q_binomial_at_eps(&field, n, m).to_string())
}

fn vector_dict(v: &FockVector<GenericQ>) -> BTreeMap<String, PyLaurentPoly> {
    v.terms().map(|(l, c)| (l.to_string(), PyLaurentPoly(c.clone()))).collect()
}

fn generator_and_label(generator: &str, label: &str) -> PyResult<(UGenerator, FockLabel)> {
    let g: UGenerator = generator.parse().map_err(value_error)?;
    let l = parse_label(label)
        .ok_or_else(|| value_error(format!("bad basis label '{label}'; expected f(r1,r2) or g(r1,r2)")))?;
    Ok((g, l))
}

/// Closed-form action of a generator (e.g. `"e^(3)"`) on a basis vector
/// (e.g. `"g(1,2)"`), generic in `q`.
#[pyfunction]
fn act(generator: &str, label: &str, which: i64) -> PyResult<BTreeMap<String, PyLaurentPoly>> {
    let (g, l) = generator_and_label(generator, label)?;
    let v = fock::act(&g, &FockVector::basis(l, GenericQ), realization(which)?).map_err(value_error)?;
    Ok(vector_dict(&v))
}

/// The same action computed by normal ordering in the boson algebra.
#[pyfunction]
fn act_oracle(generator: &str, label: &str, which: i64) -> PyResult<BTreeMap<String, PyLaurentPoly>> {
    let (g, l) = generator_and_label(generator, label)?;
    let v = fock::act_oracle(&g, &l, realization(which)?).map_err(value_error)?;
    Ok(vector_dict(&v))
}

/// A finite module (or a window of an infinite one) with its structure.
#[pyclass(name = "ModuleReport", module = "qfock", frozen)]
struct PyModuleReport(rep::ModuleReport);

#[pymethods]
impl PyModuleReport {
    #[getter]
    fn description(&self) -> String {
        self.0.kind.describe(self.0.p)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p.get()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn irreducible(&self) -> bool {
        self.0.irreducible
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.0.basis.iter().map(|l| l.to_string()).collect()
    }

    #[getter]
    fn weights(&self) -> Vec<i64> {
        self.0.weights.iter().map(|w| w.lambda).collect()
    }

    #[getter]
    fn maximal_submodule(&self) -> Vec<usize> {
        self.0.maximal_submodule.clone()
    }

    #[getter]
    fn boundary_flags(&self) -> Vec<String> {
        self.0.boundary_flags.iter().map(|i| self.0.basis[*i].to_string()).collect()
    }

    /// Highest weights of the composition factors, as `(role, lambda)`.
    #[getter]
    fn factors(&self) -> Vec<(String, i64)> {
        self.0.classification.iter().map(|c| (c.role.to_string(), c.lambda)).collect()
    }

    /// The full report as plain Python data.
    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_json(py, &ModuleDto::from(&self.0))
    }

    fn submodule(&self) -> PyResult<PyModuleReport> {
        rep::submodule_report(&self.0, &self.0.maximal_submodule).map(PyModuleReport).map_err(value_error)
    }

    fn quotient(&self) -> PyResult<PyModuleReport> {
        rep::quotient_report(&self.0, &self.0.maximal_submodule).map(PyModuleReport).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("ModuleReport({}, dim={})", self.description(), self.0.dim())
    }
}

/// The Weyl module `V_m` at a primitive `p`-th root of unity.
#[pyfunction]
fn weyl_module(p: i64, m: u32) -> PyResult<PyModuleReport> {
    rep::weyl_module(root(p)?, m).map(PyModuleReport).map_err(value_error)
}

/// The sector `V^s` of the second Fock space, truncated to `window` labels.
#[pyfunction]
#[pyo3(signature = (p, s, window = None))]
fn infinite_module(p: i64, s: i64, window: Option<u32>) -> PyResult<PyModuleReport> {
    let p = root(p)?;
    rep::infinite_module(p, s, window.unwrap_or_else(|| default_window(p))).map(PyModuleReport).map_err(value_error)
}

/// The construction realizing `V(lambda)` with verified alternates.
#[pyfunction]
#[pyo3(signature = (p, lam, window = None))]
fn classify<'py>(py: Python<'py>, p: i64, lam: i64, window: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
    let p = root(p)?;
    let recipe = rep::classify(p, lam, window.unwrap_or_else(|| default_window(p))).map_err(value_error)?;
    to_py_json(py, &RecipeDto::from(&recipe))
}

/// Defining relations of the realization on labels with `r1, r2 <= bound`.
#[pyfunction]
#[pyo3(signature = (which, bound, negate_f = false))]
fn verify_relations<'py>(py: Python<'py>, which: i64, bound: u32, negate_f: bool) -> PyResult<Bound<'py, PyAny>> {
    let image = BosonImage::new(realization(which)?);
    let image = if negate_f { image.with_negated_f() } else { image };
    let report = py.detach(|| verify_defining_relations(&image, bound)).map_err(value_error)?;
    to_py_json(py, &report)
}

/// Relation, oracle and seeded random-word suites.
#[pyfunction]
#[pyo3(signature = (p, bound, which, seed = 0))]
fn verify<'py>(py: Python<'py>, p: i64, bound: u32, which: i64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (p, image) = (root(p)?, BosonImage::new(realization(which)?));
    let outcome = py.detach(|| selftest::verify_suite(p, bound, &image, seed)).map_err(value_error)?;
    to_py_json(py, &VerifyDto::from(&outcome))
}

#[pymodule]
#[pyo3(name = "qfock")]
fn qfock_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurentPoly>()?;
    m.add_class::<PyModuleReport>()?;
    m.add_function(wrap_pyfunction!(digits, m)?)?;
    m.add_function(wrap_pyfunction!(q_binomial_at_root, m)?)?;
    m.add_function(wrap_pyfunction!(act, m)?)?;
    m.add_function(wrap_pyfunction!(act_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_module, m)?)?;
    m.add_function(wrap_pyfunction!(infinite_module, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
