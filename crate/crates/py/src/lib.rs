//! Python bindings: partitions, pattern composition, term counts, and checks on `.alg` documents.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use multibrace::algebra::Algebra;
use multibrace::bv::{check_weakly_homotopy_bv, descend, dictionary_defects, BvData};
use multibrace::hochschild::{check_gv_identities, gv_structure, TruncatedHochschild};
use multibrace::homotopy::{
    check_a_infinity, check_l_infinity, check_mega, is_homotopy_g, StructureReport,
};
use multibrace::io::AlgebraDocument;
use multibrace::partitions::{compose_patterns, count_terms};
use multibrace::{Error, SubstitutionPattern};

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Syntax(_) | Error::EmptyPartition => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// A partition of an arity into ordered slots, e.g. `Partition("(2|0|1)")`.
#[pyclass(name = "Partition", frozen)]
struct PyPartition(multibrace::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPartition).map_err(err)
    }

    fn slots(&self) -> Vec<usize> {
        self.0.slots().to_vec()
    }

    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition(\"{}\")", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Outcome of a structure check.
#[pyclass(name = "Report", frozen)]
struct PyReport(StructureReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.verdict()
    }

    /// `(label, holds, witness)` per identity.
    fn rows(&self) -> Vec<(String, bool, Option<String>)> {
        self.0
            .rows
            .iter()
            .map(|r| (r.label.clone(), r.zero, r.witness.clone()))
            .collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.0.warnings.clone()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __bool__(&self) -> bool {
        self.0.verdict()
    }
}

/// A parsed `.alg` document.
#[pyclass(name = "Document", frozen)]
struct PyDocument(AlgebraDocument);

impl PyDocument {
    fn bv(&self) -> PyResult<BvData> {
        let b = self
            .0
            .operators
            .first()
            .ok_or_else(|| PyRuntimeError::new_err("document has no operator"))?;
        BvData::new(self.0.space.clone(), self.0.mega(), b.map.clone()).map_err(err)
    }
}

#[pymethods]
impl PyDocument {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        multibrace::io::parse(text).map(PyDocument).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::new(&text)
    }

    fn render(&self) -> String {
        multibrace::io::render(&self.0)
    }

    fn basis(&self) -> Vec<(String, i64)> {
        self.0
            .space
            .basis()
            .iter()
            .map(|b| (b.name.clone(), b.degree))
            .collect()
    }

    fn maps(&self) -> Vec<String> {
        self.0
            .maps
            .iter()
            .chain(&self.0.operators)
            .map(|m| m.name.clone())
            .collect()
    }

    /// Runs one of `ainf`, `linf`, `mega`, `g`, `bv`, `gv`, `dictionary`.
    #[pyo3(signature = (kind, bound = 5, cap = 3))]
    fn check(&self, py: Python<'_>, kind: &str, bound: usize, cap: usize) -> PyResult<PyReport> {
        let (s, m) = (&self.0.space, self.0.mega());
        let report = match kind {
            "ainf" => check_a_infinity(s, &m, bound).map_err(err)?,
            "linf" => check_l_infinity(s, &m, bound).map_err(err)?,
            "mega" => py.detach(|| check_mega(s, &m, bound)),
            "g" => py.detach(|| is_homotopy_g(s, &m, bound)),
            "bv" => check_weakly_homotopy_bv(&self.bv()?, bound).map_err(err)?,
            "dictionary" => dictionary_defects(&self.bv()?).map_err(err)?,
            "gv" => {
                let m2 = m
                    .plain(2)
                    .cloned()
                    .ok_or_else(|| PyRuntimeError::new_err("document has no map of type 2"))?;
                let a = Algebra::from_product(s.clone(), &m2).map_err(err)?;
                let h = Arc::new(TruncatedHochschild::new(&a.space, cap).map_err(err)?);
                let structure = gv_structure(&h, &a).map_err(err)?;
                py.detach(|| check_gv_identities(&h, &structure))
            }
            other => return Err(PyValueError::new_err(format!("unknown check `{other}`"))),
        };
        Ok(PyReport(report))
    }

    /// Dimension of the cohomology per degree, as `{degree: dim}`.
    fn cohomology(&self) -> PyResult<std::collections::BTreeMap<i64, usize>> {
        Ok(descend(&self.bv()?).map_err(err)?.dimensions())
    }
}

/// Composition of substitution patterns, outer first.
#[pyfunction]
fn compose(outer: &str, inner: &str) -> PyResult<String> {
    let o: SubstitutionPattern = outer.parse().map_err(err)?;
    let i: SubstitutionPattern = inner.parse().map_err(err)?;
    compose_patterns(&o, &i).map(|p| p.to_string()).map_err(err)
}

/// Number of terms of `{x}{y}` with the given argument and inner slot sizes.
#[pyfunction]
fn count(args: Vec<usize>, inner: Vec<usize>) -> PyResult<u128> {
    if args.len() != inner.len() {
        return Err(PyValueError::new_err("slot lists differ in length"));
    }
    Ok(count_terms(&args, &inner))
}

#[pymodule]
fn multibrace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyDocument>()?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    Ok(())
}
