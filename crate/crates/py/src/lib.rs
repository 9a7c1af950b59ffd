//! Python bindings: `import slcone`.
//!
//! Rationals cross the boundary as `fractions.Fraction` on the way out and
//! as `Fraction`, `int` or `"p/q"` strings on the way in. Floats are rejected.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use slcone_core as core;
use slcone_core::{BigRational, EnumerationLimits};

fn to_py_err(err: core::Error) -> PyErr {
    match err {
        core::Error::ResourceLimit { .. } | core::Error::Overflow(_) | core::Error::Inconsistent(_) => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn limits(threads: Option<usize>, max_points: Option<u64>) -> EnumerationLimits {
    let mut l = EnumerationLimits::default();
    if let Some(t) = threads {
        l = l.with_threads(t);
    }
    if let Some(p) = max_points {
        l = l.with_max_points(p);
    }
    l
}

fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(PyValueError::new_err("floats are not accepted; pass a Fraction, int or 'p/q' string"));
    }
    let text = obj.str()?.to_string();
    core::parse_rational(&text).map_err(to_py_err)
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((format!("{}/{}", q.numer(), q.denom()),))
}

/// Spectrum of a link Laplacian, complete up to `complete_up_to`.
#[pyclass(name = "LinkSpectrum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpectrum {
    inner: core::LinkSpectrum,
}

#[pymethods]
impl PySpectrum {
    /// Reads a spectrum from its JSON file format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = core::SpectrumFile::from_json(text).map_err(to_py_err)?;
        Ok(PySpectrum { inner: file.spectrum })
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn complete_up_to<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.complete_up_to())
    }

    /// List of `(lambda, multiplicity)` pairs in increasing order.
    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let list = PyList::empty(py);
        for e in self.inner.entries() {
            list.append((fraction(py, e.lambda())?, e.mult()))?;
        }
        Ok(list)
    }

    fn multiplicity(&self, lam: &Bound<'_, PyAny>) -> PyResult<u64> {
        Ok(self.inner.multiplicity(&rational_arg(lam)?))
    }

    fn mult_at_rate(&self, alpha: &Bound<'_, PyAny>) -> PyResult<u64> {
        self.inner.mult_at_rate(&rational_arg(alpha)?).map_err(to_py_err)
    }

    fn counting_n(&self, delta: &Bound<'_, PyAny>) -> PyResult<i64> {
        self.inner.counting_n(&rational_arg(delta)?).map_err(to_py_err)
    }

    /// Growth rates in `[lo, hi]` as `(lambda, branch, approx, mult)` tuples.
    fn growth_rates<'py>(
        &self,
        py: Python<'py>,
        lo: &Bound<'_, PyAny>,
        hi: &Bound<'_, PyAny>,
    ) -> PyResult<Bound<'py, PyList>> {
        let rates = self
            .inner
            .growth_rates(&rational_arg(lo)?, &rational_arg(hi)?)
            .map_err(to_py_err)?;
        let list = PyList::empty(py);
        for (r, k) in rates {
            list.append((fraction(py, r.lambda())?, r.branch().to_string(), r.to_f64(), k))?;
        }
        Ok(list)
    }

    /// `(exclusive, description, approx)` for the admissible rate supremum.
    fn admissible_rate_sup(&self) -> PyResult<(bool, String, f64)> {
        let sup = self.inner.admissible_rate_sup().map_err(to_py_err)?;
        Ok((sup.is_exclusive(), sup.to_string(), sup.to_f64()))
    }

    fn to_json(&self) -> String {
        core::SpectrumFile::new(self.inner.clone(), None, None).to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.entries().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "LinkSpectrum(m={}, entries={}, complete_up_to={})",
            self.inner.m(),
            self.inner.entries().len(),
            self.inner.complete_up_to()
        )
    }
}

/// A special Lagrangian cone: spectrum, link components and symmetry dimension.
#[pyclass(name = "Cone", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCone {
    inner: core::ConeDescriptor,
}

#[pymethods]
impl PyCone {
    #[new]
    #[pyo3(signature = (spectrum, b0, dim_g, label=String::new()))]
    fn new(spectrum: &PySpectrum, b0: u64, dim_g: u64, label: String) -> PyResult<Self> {
        let inner = core::ConeDescriptor::new(b0, dim_g, spectrum.inner.clone(), label).map_err(to_py_err)?;
        Ok(PyCone { inner })
    }

    /// The Harvey–Lawson cone in `C^m`.
    #[staticmethod]
    #[pyo3(signature = (m, lambda_max=0, threads=None))]
    fn harvey_lawson(m: u32, lambda_max: u64, threads: Option<usize>) -> PyResult<Self> {
        let inner = core::ConeDescriptor::harvey_lawson(m, lambda_max, limits(threads, None)).map_err(to_py_err)?;
        Ok(PyCone { inner })
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn b0(&self) -> u64 {
        self.inner.link_components()
    }

    #[getter]
    fn dim_g(&self) -> u64 {
        self.inner.sym_dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn spectrum(&self) -> PySpectrum {
        PySpectrum {
            inner: self.inner.spectrum().clone(),
        }
    }

    /// Stability report as a dict.
    fn stability<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = core::stability_index(&self.inner).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("N2", r.n2)?;
        d.set_item("m0", r.m0)?;
        d.set_item("m1", r.m1)?;
        d.set_item("m2", r.m2)?;
        d.set_item("s_ind", r.s_ind)?;
        d.set_item("stable", r.stable)?;
        d.set_item("rigid", r.rigid)?;
        d.set_item("bound_violations", r.bound_violations)?;
        Ok(d)
    }

    /// `(name, holds, margin)` for each lower-bound relation.
    fn lower_bounds(&self) -> PyResult<Vec<(String, bool, i64)>> {
        let checks = core::check_lower_bounds(&self.inner).map_err(to_py_err)?;
        Ok(checks.into_iter().map(|c| (c.name.to_string(), c.holds, c.margin)).collect())
    }

    fn stability_index_in_family(&self, family_dim_c: u64) -> PyResult<i64> {
        core::stability_index_in_family(&self.inner, family_dim_c).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Cone(label={:?}, m={}, b0={}, dim_g={})",
            self.inner.label(),
            self.inner.m(),
            self.inner.link_components(),
            self.inner.sym_dim()
        )
    }
}

#[pyfunction]
fn hl_eigenvalue(m: u32, n: Vec<i64>) -> PyResult<u64> {
    core::hl_eigenvalue(m, &core::LatticeVector::new(n)).map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (m, lambda_max, threads=None, max_points=None))]
fn hl_spectrum(m: u32, lambda_max: u64, threads: Option<usize>, max_points: Option<u64>) -> PyResult<PySpectrum> {
    let inner = core::hl_spectrum(m, lambda_max, limits(threads, max_points)).map_err(to_py_err)?;
    Ok(PySpectrum { inner })
}

#[pyfunction]
#[pyo3(signature = (m, lam, threads=None, max_points=None))]
fn hl_eigenvectors(m: u32, lam: u64, threads: Option<usize>, max_points: Option<u64>) -> PyResult<Vec<Vec<i64>>> {
    let vs = core::hl_eigenvectors(m, lam, limits(threads, max_points)).map_err(to_py_err)?;
    Ok(vs.into_iter().map(|v| v.coords().to_vec()).collect())
}

/// Rows `(m, N2, m2, s_ind)` for the Harvey–Lawson cones.
#[pyfunction]
#[pyo3(signature = (m_min=3, m_max=12, threads=None))]
fn hl_table(m_min: u32, m_max: u32, threads: Option<usize>) -> PyResult<Vec<(u32, i64, u64, i64)>> {
    (m_min..=m_max)
        .map(|m| {
            let r = core::verify::hl_row(m, limits(threads, None)).map_err(to_py_err)?;
            Ok((r.m, r.n2, r.m2, r.s_ind))
        })
        .collect()
}

fn config_from(path: &str, rates: &[BigRational]) -> PyResult<core::ModuliConfig> {
    core::ModuliConfig::read(&PathBuf::from(path), rates, EnumerationLimits::default()).map_err(to_py_err)
}

/// Moduli dimension report for a configuration file, as a dict.
#[pyfunction]
fn moduli_report<'py>(py: Python<'py>, config_path: &str) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config_from(config_path, &[])?;
    let r = core::moduli_report(&cfg.config, cfg.transverse).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("dim_E", r.dim_e)?;
    d.set_item("dim_K", r.dim_k)?;
    d.set_item("dim_I", r.dim_i)?;
    d.set_item("dim_O", r.dim_o)?;
    d.set_item("expected_dim", r.expected_dim)?;
    d.set_item("all_stable", r.all_stable)?;
    if let Some(f) = &r.family {
        d.set_item("family_dim", f.family_dim)?;
        d.set_item("family_case", f.case.as_str())?;
        d.set_item("family_expected_dim", f.expected_dim)?;
        d.set_item("fiber_dim", f.fiber_dim)?;
    }
    d.set_item("notes", r.notes)?;
    Ok(d)
}

/// Fredholm index for one weight per singular point of a configuration file.
/// Returns `(fredholm, index_or_None, injective)`.
#[pyfunction]
fn fredholm_index(config_path: &str, rates: Vec<Bound<'_, PyAny>>) -> PyResult<(bool, Option<i64>, bool)> {
    let betas = rates.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
    let cfg = config_from(config_path, &betas)?;
    let r = core::fredholm_index(&cfg.config, &betas).map_err(to_py_err)?;
    Ok((r.fredholm, r.index, r.injective))
}

/// `(b1(N), d + b1(N))` for a nonsingular compact SL m-fold.
#[pyfunction]
fn mclean_dims(b1_n: u64, family_dim: u64) -> (u64, u64) {
    core::mclean_dims(b1_n, family_dim)
}

/// Runs the self-check battery; returns `(name, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (m_max=12, threads=None))]
fn verify(m_max: u32, threads: Option<usize>) -> PyResult<Vec<(String, bool, String)>> {
    let checks = core::verify::verify_battery(m_max, limits(threads, None)).map_err(to_py_err)?;
    Ok(checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect())
}

#[pymodule]
fn slcone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyCone>()?;
    m.add_function(wrap_pyfunction!(hl_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(hl_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(hl_eigenvectors, m)?)?;
    m.add_function(wrap_pyfunction!(hl_table, m)?)?;
    m.add_function(wrap_pyfunction!(moduli_report, m)?)?;
    m.add_function(wrap_pyfunction!(fredholm_index, m)?)?;
    m.add_function(wrap_pyfunction!(mclean_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
