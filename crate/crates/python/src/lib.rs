//! Python bindings: `folcalc.Foliation` with its four ideals, the
//! predicates and the full report, plus `example` and `run` mirroring the
//! command line. Ideals are returned as canonical generator strings.

use folcalc_core::cli::document::InputDocument;
use folcalc_core::cli::json::report_json;
use folcalc_core::cli::parse::Vars;
use folcalc_core::foliation::examples::corpus_member;
use folcalc_core::foliation::FoliationPointError;
use folcalc_core::graded::{GradedError, DEFAULT_SLACK};
use folcalc_core::{Foliation, FoliationReport, Ideal, Rational};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(folcalc, InvalidForm, PyValueError, "The input is not a foliation; the message names the invariant.");
create_exception!(folcalc, StabilizationError, PyRuntimeError, "The unfolding ideal did not stabilize below the degree bound.");

fn graded_err(e: GradedError) -> PyErr {
    match e {
        GradedError::DegreeBoundTooSmall { .. } => PyValueError::new_err(e.to_string()),
        other => StabilizationError::new_err(other.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).expect("serializable");
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A validated integrable 1-form on projective space.
#[pyclass(name = "Foliation", module = "folcalc", frozen)]
struct PyFoliation {
    inner: Foliation,
    names: Vec<String>,
}

impl PyFoliation {
    fn strings(&self, i: &Ideal) -> Vec<String> {
        i.canonical_strings_with(&self.names)
    }

    fn point(&self, coords: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Rational>> {
        coords
            .iter()
            .map(|c| {
                let s = c.str()?.to_string();
                s.trim().parse::<Rational>().map_err(|_| PyValueError::new_err(format!("not a rational number: {s}")))
            })
            .collect()
    }
}

#[pymethods]
impl PyFoliation {
    /// Parse `omega` in the variables `vars` (e.g. `["x", "y", "z"]`).
    #[new]
    fn new(omega: &str, vars: Vec<String>) -> PyResult<Self> {
        let doc = InputDocument { vars: vars.clone(), omega: Some(omega.to_string()), ..Default::default() };
        let w = doc.form().map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = Foliation::new(w).map_err(|e| InvalidForm::new_err(format!("{}: {e}", e.invariant())))?;
        Ok(PyFoliation { inner, names: vars })
    }

    /// Dimension of the ambient projective space.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// The twist `e` (coefficient degree plus one).
    #[getter]
    fn e(&self) -> u32 {
        self.inner.e()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.names.clone()
    }

    #[getter]
    fn omega(&self) -> String {
        self.inner.omega().display_with(&self.names).to_string()
    }

    #[getter]
    fn domega(&self) -> String {
        self.inner.domega().display_with(&self.names).to_string()
    }

    /// `J`, generated by the coefficients of ω.
    fn singular_ideal(&self) -> Vec<String> {
        self.strings(self.inner.singular_ideal())
    }

    /// The ideal of coefficients of dω.
    fn cdomega_ideal(&self) -> Vec<String> {
        self.strings(self.inner.cdomega_ideal())
    }

    /// `K = (J : 𝒞(dω))`.
    fn kupka_ideal(&self) -> Vec<String> {
        self.strings(self.inner.kupka_ideal())
    }

    /// `L = (J : K^∞)`.
    fn non_kupka_ideal(&self) -> Vec<String> {
        self.strings(self.inner.non_kupka_ideal())
    }

    /// The unfolding ideal `I`, assembled up to `max_degree` (default `2e`).
    #[pyo3(signature = (max_degree = None))]
    fn unfolding_ideal(&self, py: Python<'_>, max_degree: Option<u32>) -> PyResult<Vec<String>> {
        let u = py
            .detach(|| self.inner.unfolding_ideal_with(max_degree, DEFAULT_SLACK))
            .map_err(graded_err)?;
        Ok(self.strings(&u.ideal))
    }

    /// `√I = √K`.
    fn in_u(&self, py: Python<'_>) -> PyResult<bool> {
        py.detach(|| self.inner.in_u()).map_err(graded_err)
    }

    /// Whether the Kupka scheme is nonempty.
    fn kupka_scheme_nonempty(&self) -> bool {
        self.inner.kupka_scheme_nonempty()
    }

    /// Whether the localized unfolding ideal is the unit ideal at a rational
    /// point, given by coordinates (ints or strings such as "1/2").
    fn is_division_point(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let p = self.point(point)?;
        self.inner.is_division_point(&p).map_err(|e| match e {
            FoliationPointError::Unfolding(g) => graded_err(g),
            other => PyValueError::new_err(other.to_string()),
        })
    }

    /// Whether a rational point is a Kupka point: singular for ω, not for dω.
    fn is_kupka_point(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let p = self.point(point)?;
        self.inner.is_kupka_point(&p).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// The full report as a dict, in the layout of `report.schema.json`.
    #[pyo3(signature = (max_degree = None))]
    fn report(&self, py: Python<'_>, max_degree: Option<u32>) -> PyResult<Py<PyAny>> {
        let r = py.detach(|| FoliationReport::compute(&self.inner, max_degree)).map_err(graded_err)?;
        json_to_py(py, &report_json(&r, &self.names, &self.omega()))
    }

    fn __repr__(&self) -> String {
        format!("Foliation({:?}, vars={:?})", self.omega(), self.names)
    }
}

/// A corpus example: p2a, p2b, p2c, dulac, sl2 or transverse.
#[pyfunction]
fn example(name: &str) -> PyResult<PyFoliation> {
    let inner = corpus_member(name).ok_or_else(|| PyValueError::new_err(format!("unknown example {name:?}")))?;
    let names = Vars::indexed(inner.nvars()).names().to_vec();
    Ok(PyFoliation { inner, names })
}

/// Run the command line on `args` (without the program name); returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let out = py.detach(|| folcalc_core::cli::run(std::iter::once("folcalc".to_string()).chain(args)));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn folcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFoliation>()?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("InvalidForm", m.py().get_type::<InvalidForm>())?;
    m.add("StabilizationError", m.py().get_type::<StabilizationError>())?;
    m.add("SCHEMA_VERSION", folcalc_core::cli::json::SCHEMA_VERSION)?;
    Ok(())
}
