//! Python bindings. Rationals cross the boundary as strings such as
//! `"3/4"`; anything whose `str()` parses as a fraction is accepted, so
//! `fractions.Fraction` and `int` work as inputs too.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lab::chaos;
use lab::geometry;
use lab::harness::{self, Selection, SuiteOptions};
use lab::regopen;
use lab::scalar::{format_rational, parse_rational};
use lab::spectrum::SpectralMeasure;
use lab::{BoolElem, Cell, Rational};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(obj.str()?.to_str()?).map_err(value_error)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// 1-based cell numbers to an element of the algebra.
fn element(n_cells: usize, cells: &[usize]) -> PyResult<BoolElem> {
    let zero_based = cells
        .iter()
        .map(|&c| c.checked_sub(1).ok_or_else(|| value_error("cells are numbered from 1")))
        .collect::<PyResult<Vec<_>>>()?;
    BoolElem::from_cells(n_cells, zero_based).map_err(value_error)
}

fn cells_of(x: BoolElem) -> Vec<usize> {
    x.cells().map(|i| i + 1).collect()
}

/// A finite product of independent cells with exact rational probabilities.
#[pyclass(name = "NoiseModel", module = "noise_lab", frozen)]
struct PyNoiseModel {
    inner: lab::NoiseModel,
}

impl PyNoiseModel {
    fn vector(&self, values: Vec<Bound<'_, PyAny>>) -> PyResult<lab::RandomVariable> {
        self.inner.variable(rationals(&values)?).map_err(value_error)
    }
}

#[pymethods]
impl PyNoiseModel {
    #[new]
    fn new(probs: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let cells = probs
            .iter()
            .enumerate()
            .map(|(i, p)| Cell::new(rationals(p)?).map_err(|e| value_error(format!("cell {}: {e}", i + 1))))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyNoiseModel {
            inner: lab::NoiseModel::new(cells).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn coins(n: usize) -> Self {
        PyNoiseModel {
            inner: lab::NoiseModel::coins(n),
        }
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn n_cells(&self) -> usize {
        self.inner.n_cells()
    }

    /// The ±1 sign of a cell as a list of values.
    fn sign(&self, cell: usize) -> PyResult<Vec<String>> {
        let i = element(self.inner.n_cells(), &[cell])?.cells().next().expect("one cell");
        Ok(strings(self.inner.sign(i).values()))
    }

    fn expectation(&self, values: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(format_rational(&self.inner.expectation(&self.vector(values)?)))
    }

    /// `Q_x ψ` for `x` given as 1-based cell numbers.
    fn project(&self, cells: Vec<usize>, values: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let x = element(self.inner.n_cells(), &cells)?;
        Ok(strings(self.inner.project(x, &self.vector(values)?).values()))
    }

    fn coefficients(&self, values: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(strings(self.inner.coefficients(&self.vector(values)?).values()))
    }

    /// Spectral mass of each atom, keyed by labels like `"{1,2}"`.
    fn spectral_masses(&self, values: Vec<Bound<'_, PyAny>>) -> PyResult<BTreeMap<String, String>> {
        let psi = self.vector(values)?;
        let mu = SpectralMeasure::of(&self.inner, &psi);
        Ok(self
            .inner
            .algebra()
            .elements()
            .map(|m| (m.label(), format_rational(mu.mass(m))))
            .collect())
    }

    fn first_chaos_dimension(&self) -> usize {
        chaos::first_chaos_basis(&self.inner).dimension()
    }

    fn classify(&self) -> String {
        format!("{:?}", chaos::classify(&self.inner).class).to_lowercase()
    }

    /// `δ²` of a vector additive on the subalgebra with the given blocks.
    fn atomless_defect(&self, values: Vec<Bound<'_, PyAny>>, blocks: Vec<Vec<usize>>) -> PyResult<String> {
        let n = self.inner.n_cells();
        let blocks = blocks
            .iter()
            .map(|b| element(n, b))
            .collect::<PyResult<Vec<_>>>()?;
        let b = self.inner.algebra().subalgebra(blocks).map_err(value_error)?;
        let cert = chaos::atomless_defect(&self.inner, &self.vector(values)?, &b).map_err(value_error)?;
        Ok(format_rational(&cert.delta_sq))
    }

    fn __repr__(&self) -> String {
        let cells: Vec<String> = self
            .inner
            .cells()
            .iter()
            .map(|c| format!("[{}]", strings(c.probs()).join(", ")))
            .collect();
        format!("NoiseModel([{}])", cells.join(", "))
    }
}

/// A regular open subset of `[0, 1]`, as a finite union of intervals.
#[pyclass(name = "RegOpen", module = "noise_lab", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRegOpen {
    inner: lab::RegOpen,
}

#[pymethods]
impl PyRegOpen {
    /// Regularizes the union of the open intervals `(a, b)`; an interval
    /// starting at 0 or ending at 1 includes that endpoint.
    #[new]
    #[pyo3(signature = (intervals = Vec::new()))]
    fn new(intervals: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let raw = intervals
            .iter()
            .map(|(a, b)| Ok((rational(a)?, rational(b)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyRegOpen {
            inner: lab::RegOpen::new(&raw).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn one() -> Self {
        PyRegOpen {
            inner: lab::RegOpen::one(),
        }
    }

    fn intervals(&self) -> Vec<(String, String)> {
        self.inner
            .intervals()
            .iter()
            .map(|(a, b)| (format_rational(a), format_rational(b)))
            .collect()
    }

    fn meet(&self, other: &PyRegOpen) -> Self {
        PyRegOpen {
            inner: self.inner.meet(&other.inner),
        }
    }

    fn join(&self, other: &PyRegOpen) -> Self {
        PyRegOpen {
            inner: self.inner.join(&other.inner),
        }
    }

    fn complement(&self) -> Self {
        PyRegOpen {
            inner: self.inner.complement(),
        }
    }

    fn __and__(&self, other: &PyRegOpen) -> Self {
        self.meet(other)
    }

    fn __or__(&self, other: &PyRegOpen) -> Self {
        self.join(other)
    }

    fn __invert__(&self) -> Self {
        self.complement()
    }

    fn le(&self, other: &PyRegOpen) -> bool {
        self.inner.le(&other.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    fn __contains__(&self, point: Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(&rational(&point)?))
    }

    fn boundary(&self) -> Vec<String> {
        strings(&self.inner.boundary())
    }

    fn closure(&self) -> String {
        self.inner.closure().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RegOpen({})", self.inner)
    }
}

/// Sample points `t_i` placing the cells inside `[0, 1]`.
#[pyclass(name = "Embedding", module = "noise_lab", frozen)]
struct PyEmbedding {
    inner: geometry::Embedding,
}

#[pymethods]
impl PyEmbedding {
    #[new]
    fn new(points: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        Ok(PyEmbedding {
            inner: geometry::Embedding::from_points(rationals(&points)?).map_err(value_error)?,
        })
    }

    /// Cells whose sample point lies in `a`, numbered from 1.
    fn h(&self, a: &PyRegOpen) -> Vec<usize> {
        cells_of(self.inner.h(&a.inner))
    }

    /// Sample points of the cells in `atom`.
    fn points_of(&self, atom: Vec<usize>) -> PyResult<Vec<String>> {
        let m = element(self.inner.n_cells(), &atom)?;
        Ok(strings(&self.inner.f_exact(m)))
    }

    /// `(h⁻(r) ∨ h⁻(r′), witness atom)` where the witness is an atom whose
    /// points meet the boundary of `r`, if any.
    fn boundary_dichotomy(&self, r: &PyRegOpen) -> (Vec<usize>, Option<Vec<usize>>) {
        let d = self.inner.boundary_dichotomy(&r.inner);
        (
            cells_of(d.h_minus.join(d.h_minus_complement)),
            d.witness_atom.map(cells_of),
        )
    }

    fn verify_closure_test(&self, depth: u32, seed: u64) -> PyResult<bool> {
        let mut elements = Vec::new();
        for d in 1..=depth {
            let base = geometry::DyadicBase::new(d);
            elements.extend(
                base.elements(geometry::BaseOrder::Forward)
                    .into_iter()
                    .map(|(i, j)| base.regopen(i, j)),
            );
        }
        let r = self.inner.verify_3b1_many(&elements, seed).map_err(value_error)?;
        Ok(r.passed())
    }
}

/// Runs the verification suite on a configuration file and returns
/// `(exit_code, report_text)`.
#[pyfunction]
#[pyo3(signature = (config, only = "all", seed = None, strict = false))]
fn verify(config: &str, only: &str, seed: Option<u64>, strict: bool) -> PyResult<(i32, String)> {
    let selection = match only {
        "laws" => Selection::Laws,
        "chaos" => Selection::Chaos,
        "spectrum" => Selection::Spectrum,
        "regopen" => Selection::Regopen,
        "geometry" => Selection::Geometry,
        "all" => Selection::All,
        other => return Err(value_error(format!("unknown check group {other:?}"))),
    };
    let cfg = harness::load_model_config(config).map_err(value_error)?;
    let opts = SuiteOptions {
        selection,
        seed,
        ..SuiteOptions::default()
    };
    let report = harness::run_verification_suite(&cfg, config, &opts).map_err(value_error)?;
    Ok((report.exit_code(strict), report.to_text()))
}

/// Whether the interval laws hold on `iterations` random triples.
#[pyfunction]
#[pyo3(signature = (iterations = 200, seed = 0))]
fn check_regular_open_laws(iterations: usize, seed: u64) -> bool {
    regopen::verify_reg_laws(regopen::Sampler::Rational { max_denominator: 12 }, iterations, 2, seed).passed()
}

#[pymodule]
fn noise_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNoiseModel>()?;
    m.add_class::<PyRegOpen>()?;
    m.add_class::<PyEmbedding>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check_regular_open_laws, m)?)?;
    Ok(())
}
