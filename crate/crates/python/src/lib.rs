//! Python bindings: weight data, exact classification, candidate checks and
//! the numeric oracle.

use ::geodesy::cli::candidate::CandidateFile;
use ::geodesy::embedcheck::{check_conditions, CheckReportJson, EmbeddingCandidate};
use ::geodesy::ladder::{self, ClassifyOptions, DatumReport, TheoremSummary};
use ::geodesy::oracle::{self, ResidualReport};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(value_err)
}

/// Weight multiplicities of `H` on `V₊` and `V₋`.
#[pyclass(name = "WeightData", module = "geodesy", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyWeightData(ladder::WeightData);

#[pymethods]
impl PyWeightData {
    #[new]
    fn new(plus: Vec<(i64, usize)>, minus: Vec<(i64, usize)>) -> PyResult<Self> {
        ladder::WeightData::from_pairs(&plus, &minus).map(Self).map_err(value_err)
    }

    #[getter]
    fn plus(&self) -> Vec<(i64, usize)> {
        self.0.plus().iter().rev().map(|(&w, &m)| (w, m)).collect()
    }

    #[getter]
    fn minus(&self) -> Vec<(i64, usize)> {
        self.0.minus().iter().rev().map(|(&w, &m)| (w, m)).collect()
    }

    fn canonical(&self) -> String {
        self.0.canonical()
    }

    fn canonical_hash(&self) -> String {
        self.0.canonical_hash()
    }

    fn is_rep_admissible(&self) -> bool {
        self.0.is_rep_admissible()
    }

    fn __repr__(&self) -> String {
        format!("WeightData({})", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Outcome of eliminating one weight datum.
#[pyclass(name = "Datum", module = "geodesy", frozen)]
pub struct PyDatum(DatumReport);

#[pymethods]
impl PyDatum {
    #[getter]
    fn status(&self) -> String {
        self.0.status.to_string()
    }

    #[getter]
    fn canonical(&self) -> &str {
        &self.0.canonical
    }

    #[getter]
    fn hash(&self) -> &str {
        &self.0.hash
    }

    /// One certificate step per line, prefixed by its sector.
    fn certificate(&self) -> Vec<String> {
        self.0
            .sectors
            .iter()
            .flat_map(|s| s.verdict.certificate.iter().map(move |c| format!("{} {:?}: {}", s.sector, c.rule, c.conclusion)))
            .collect()
    }

    /// Replays every sector certificate against its own equations.
    fn replay(&self) -> PyResult<()> {
        for s in &self.0.sectors {
            ladder::replay_certificate(&s.system, &s.verdict).map_err(value_err)?;
        }
        Ok(())
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Datum({}, {})", self.0.canonical, self.0.status)
    }
}

#[pyclass(name = "Summary", module = "geodesy", frozen)]
pub struct PySummary(TheoremSummary);

#[pymethods]
impl PySummary {
    #[getter]
    fn p(&self) -> usize {
        self.0.p
    }

    #[getter]
    fn enumerated(&self) -> usize {
        self.0.enumerated
    }

    #[getter]
    fn feasible(&self) -> usize {
        self.0.feasible
    }

    #[getter]
    fn infeasible(&self) -> usize {
        self.0.infeasible
    }

    #[getter]
    fn unresolved(&self) -> usize {
        self.0.unresolved
    }

    #[getter]
    fn violations(&self) -> Vec<String> {
        self.0.violations.clone()
    }

    /// `(description, standard multiplicity, embeds)` per feasible class.
    fn classes(&self) -> Vec<(String, usize, bool)> {
        self.0.classes.iter().map(|c| (c.description.clone(), c.standard_multiplicity, c.embedding)).collect()
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }
}

#[pyclass(name = "CheckReport", module = "geodesy", frozen, get_all)]
pub struct PyCheckReport {
    is_homomorphism: bool,
    bracket_violations: Vec<String>,
    satisfies_c1: bool,
    satisfies_c3: bool,
    injective: bool,
    accepted: bool,
    totally_geodesic: bool,
    json: String,
}

#[pyclass(name = "OracleReport", module = "geodesy", frozen)]
pub struct PyOracleReport(ResidualReport);

#[pymethods]
impl PyOracleReport {
    #[getter]
    fn final_residual(&self) -> f64 {
        self.0.final_residual
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.0.iterations
    }

    #[getter]
    fn best_restart(&self) -> usize {
        self.0.best_restart
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }
}

/// Rep-admissible weight data for `SU(p,p)`.
#[pyfunction]
#[pyo3(signature = (p, max_weight = None))]
fn enumerate(p: usize, max_weight: Option<i64>) -> Vec<PyWeightData> {
    let mw = max_weight.unwrap_or_else(|| ladder::default_max_weight(p));
    ladder::enumerate_weight_data(p, mw).into_iter().map(PyWeightData).collect()
}

/// Derives and eliminates the block equations of one datum.
#[pyfunction]
fn analyze(data: &PyWeightData) -> PyDatum {
    PyDatum(ladder::analyze_datum(&data.0))
}

#[pyfunction]
#[pyo3(signature = (p, max_weight = None, jobs = 1))]
fn classify(py: Python<'_>, p: usize, max_weight: Option<i64>, jobs: usize) -> PyResult<PySummary> {
    py.detach(|| ladder::classify(p, ClassifyOptions { max_weight, jobs })).map(PySummary).map_err(value_err)
}

/// Checks a candidate given as the text of a candidate JSON file.
#[pyfunction]
fn check(candidate_json: &str) -> PyResult<PyCheckReport> {
    let c = CandidateFile::parse(candidate_json).and_then(|f| f.to_candidate()).map_err(value_err)?;
    report(&c)
}

/// The bundled `standard^m ⊕ trivial` candidate in `su(p,p)` as JSON text.
#[pyfunction]
fn standard_candidate(p: usize, m: usize) -> PyResult<String> {
    let c = EmbeddingCandidate::standard_plus_trivial(p, m).map_err(value_err)?;
    Ok(CandidateFile::from_candidate(&c).to_json())
}

fn report(c: &EmbeddingCandidate) -> PyResult<PyCheckReport> {
    let r = check_conditions(c).map_err(value_err)?;
    Ok(PyCheckReport {
        is_homomorphism: r.is_homomorphism,
        bracket_violations: r.bracket_violations.iter().map(|s| s.to_string()).collect(),
        satisfies_c1: r.satisfies_c1,
        satisfies_c3: r.satisfies_c3,
        injective: r.injective,
        accepted: r.accepted(),
        totally_geodesic: r.totally_geodesic,
        json: to_json(&CheckReportJson::new(c.shape().p(), &r))?,
    })
}

/// Best residual over `restarts` seeded gradient descents.
#[pyfunction]
#[pyo3(signature = (data, restarts = 20, seed = 7))]
fn minimize(py: Python<'_>, data: &PyWeightData, restarts: usize, seed: u64) -> PyResult<PyOracleReport> {
    let wd = data.0.clone();
    py.detach(|| oracle::minimize(&wd, restarts, seed)).map(PyOracleReport).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "geodesy")]
fn geodesy_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeightData>()?;
    m.add_class::<PyDatum>()?;
    m.add_class::<PySummary>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_class::<PyOracleReport>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(standard_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    Ok(())
}
