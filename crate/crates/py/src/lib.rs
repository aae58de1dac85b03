//! Python bindings: `import rzeta_py`.

use num_complex::Complex64;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use rzeta::dirac::{self, DiracTarget, SpectralFunctionKind};
use rzeta::landau::{self, LandauGeometry};
use rzeta::mertens::{self, ResidueExpansionConfig};
use rzeta::mirror::{self, MagnusConvention};
use rzeta::specfun::{self, QuadratureSpec};
use rzeta::zeta;

pyo3::create_exception!(rzeta_py, RzetaError, PyException, "Raised by rzeta kernels; `kind` names the error.");

fn err(e: rzeta::Error) -> PyErr {
    let kind = e.kind();
    let py_err = RzetaError::new_err(format!("{kind}: {e}"));
    Python::attach(|py| {
        let _ = py_err.value(py).setattr("kind", kind);
    });
    py_err
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for rzeta::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| json_to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, json_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| RzetaError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

fn kind(name: &str) -> PyResult<SpectralFunctionKind> {
    match name {
        "xi_riemann" => Ok(SpectralFunctionKind::XiRiemann),
        "xi_polya_star" => Ok(SpectralFunctionKind::XiPolyaStar),
        "xi_dirac_h" => Ok(SpectralFunctionKind::XiDiracH),
        _ => Err(RzetaError::new_err(format!("unknown spectral function kind {name:?}"))),
    }
}

#[pyfunction]
fn log_gamma(z: Complex64) -> PyResult<Complex64> {
    specfun::log_gamma(z).py()
}

#[pyfunction]
#[pyo3(signature = (nu, z, max_abscissa = 40.0, node_count = 64, target_abs_tol = 1e-12))]
fn bessel_k(nu: Complex64, z: f64, max_abscissa: f64, node_count: usize, target_abs_tol: f64) -> PyResult<Complex64> {
    let q = QuadratureSpec::new(max_abscissa, node_count, target_abs_tol).py()?;
    specfun::bessel_k_complex_order(nu, z, q).py()
}

#[pyfunction]
fn kummer_m(a: Complex64, b: Complex64, z: Complex64) -> PyResult<Complex64> {
    specfun::kummer_m(a, b, z).py()
}

#[pyfunction(name = "zeta")]
fn zeta_py(s: Complex64) -> PyResult<Complex64> {
    zeta::zeta(s).py()
}

#[pyfunction]
fn zeta_prime(s: Complex64) -> PyResult<Complex64> {
    zeta::zeta_prime(s).py()
}

#[pyfunction]
fn theta(t: f64) -> f64 {
    zeta::theta_rs(t)
}

#[pyfunction]
fn z_function(t: f64) -> PyResult<f64> {
    zeta::z_function(t).py()
}

#[pyfunction]
fn zero_count_below(t: f64) -> PyResult<usize> {
    zeta::zero_count_below(t).py()
}

#[pyfunction]
fn find_zeros(t_min: f64, t_max: f64) -> PyResult<Vec<f64>> {
    Ok(zeta::find_zeros(t_min, t_max).py()?.into_iter().map(|r| r.t).collect())
}

/// Verified zero ordinates, computed or ingested from a table.
#[pyclass(name = "ZeroDatabase")]
struct PyZeroDatabase {
    inner: zeta::ZeroDatabase,
}

#[pymethods]
impl PyZeroDatabase {
    #[staticmethod]
    fn compute(t_max: f64) -> PyResult<Self> {
        Ok(PyZeroDatabase { inner: zeta::ZeroDatabase::compute(t_max).py()? })
    }

    #[staticmethod]
    fn ingest(path: &str) -> PyResult<Self> {
        Ok(PyZeroDatabase { inner: zeta::ingest_zeros(path).py()? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyZeroDatabase { inner: zeta::ZeroDatabase::from_json(text).py()? })
    }

    fn extend_to(&mut self, t_new: f64) -> PyResult<usize> {
        self.inner.extend_to(t_new).py()
    }

    fn ordinates(&self) -> Vec<f64> {
        self.inner.ordinates()
    }

    fn zeta_prime_at(&self, index: usize) -> PyResult<Complex64> {
        self.inner
            .records
            .get(index.wrapping_sub(1))
            .map(|r| r.zeta_prime_at_rho())
            .ok_or_else(|| RzetaError::new_err(format!("no zero with index {index}")))
    }

    fn verify(&self) -> PyResult<()> {
        self.inner.verify().py()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn t_max_verified(&self) -> f64 {
        self.inner.t_max_verified
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
fn spectral_function(kind_name: &str, t: f64) -> PyResult<f64> {
    dirac::spectral_function(kind(kind_name)?, t).py()
}

#[pyfunction]
fn xi_via_fourier(kind_name: &str, t: f64) -> PyResult<f64> {
    dirac::xi_via_fourier(kind(kind_name)?, t, QuadratureSpec::default()).py()
}

#[pyfunction]
fn find_dirac_zeros(kind_name: &str, t_min: f64, t_max: f64) -> PyResult<Vec<f64>> {
    dirac::find_dirac_zeros(DiracTarget::Kind(kind(kind_name)?), t_min, t_max).py()
}

#[pyfunction]
fn boundary_zeros(vartheta: f64, m_lx: f64, t_min: f64, t_max: f64) -> PyResult<Vec<f64>> {
    let b = dirac::BoundaryData::new(vartheta, m_lx).py()?;
    dirac::find_dirac_zeros(DiracTarget::Boundary(b), t_min, t_max).py()
}

#[pyfunction]
#[pyo3(signature = (e_max, l_over_ell = 100.0))]
fn landau_levels(e_max: f64, l_over_ell: f64) -> PyResult<Vec<f64>> {
    landau::landau_levels(e_max, &LandauGeometry::new(1.0, l_over_ell).py()?).py()
}

#[pyfunction]
#[pyo3(signature = (e, l_over_ell = 100.0))]
fn n_landau(e: f64, l_over_ell: f64) -> PyResult<f64> {
    landau::n_landau(e, &LandauGeometry::new(1.0, l_over_ell).py()?).py()
}

#[pyfunction]
fn moebius(n: u64) -> i8 {
    mertens::moebius(n)
}

#[pyfunction(name = "mertens")]
fn mertens_py(x: f64) -> PyResult<i64> {
    mertens::mertens(x).py()
}

#[pyfunction]
#[pyo3(signature = (x, e, primed = false))]
fn m_z_direct(x: f64, e: f64, primed: bool) -> PyResult<Complex64> {
    mertens::m_z_direct(x, e, primed).py()
}

#[pyfunction]
#[pyo3(signature = (x, e, db, n_nontrivial, n_trivial = 20, at_zero_mode = false))]
fn m_z_perron(x: f64, e: f64, db: &PyZeroDatabase, n_nontrivial: usize, n_trivial: u32, at_zero_mode: bool) -> PyResult<Complex64> {
    let cfg = ResidueExpansionConfig::new(&db.inner, n_nontrivial, n_trivial, at_zero_mode).py()?;
    mertens::m_z_perron(x, e, &cfg).py()
}

/// Returns (value, imaginary residue).
#[pyfunction]
#[pyo3(signature = (x, db, n_nontrivial, n_trivial = 20))]
fn mertens_residue(x: f64, db: &PyZeroDatabase, n_nontrivial: usize, n_trivial: u32) -> PyResult<(f64, f64)> {
    let cfg = ResidueExpansionConfig::new(&db.inner, n_nontrivial, n_trivial, false).py()?;
    let r = mertens::mertens_residue(x, &cfg).py()?;
    Ok((r.value, r.imaginary_residue))
}

#[pyfunction]
fn growth_fit(py: Python<'_>, e: f64, n_lo: usize, n_hi: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &mertens::growth_fit(e, (n_lo, n_hi)).py()?)
}

/// Moebius mirror array at l_n = sqrt(n).
#[pyclass(name = "MirrorArray")]
struct PyMirrorArray {
    inner: mirror::MirrorArray,
}

#[pymethods]
impl PyMirrorArray {
    #[new]
    #[pyo3(signature = (n_max, epsilon, vartheta = 0.0))]
    fn new(n_max: usize, epsilon: f64, vartheta: f64) -> PyResult<Self> {
        let inner = mirror::moebius_mirrors(n_max, epsilon).py()?.with_boundary_phase(vartheta).py()?;
        Ok(PyMirrorArray { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn reflection(&self, n: usize) -> Complex64 {
        self.inner.reflection(n)
    }

    fn propagate_exact<'py>(&self, py: Python<'py>, e: f64, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &mirror::propagate_exact(&self.inner, e, n).py()?)
    }

    #[pyo3(signature = (e, n, strict = true))]
    fn propagate_magnus<'py>(&self, py: Python<'py>, e: f64, n: usize, strict: bool) -> PyResult<Bound<'py, PyAny>> {
        let conv = if strict { MagnusConvention::Strict } else { MagnusConvention::WithUnitTerm };
        to_py(py, &mirror::propagate_magnus(&self.inner, e, n, conv).py()?)
    }
}

#[pyfunction]
fn transfer_matrix(rho: Complex64, ell: f64, e: f64) -> PyResult<[[Complex64; 2]; 2]> {
    Ok(mirror::transfer_matrix(rho, ell, e).py()?.0)
}

#[pyfunction]
fn tuned_theta(e: f64) -> PyResult<f64> {
    mirror::tuned_theta(e).py()
}

#[pyfunction]
fn norm_limit(e: f64, epsilon: f64) -> PyResult<f64> {
    mirror::norm_limit(e, epsilon).py()
}

#[pyfunction]
fn zero_sensitivity(e: f64) -> PyResult<Complex64> {
    mirror::zero_sensitivity(e).py()
}

#[pyfunction]
fn phase_phi_z(n: usize, e: f64) -> PyResult<f64> {
    mirror::phase_phi_z(n, e).py()
}

#[pyfunction]
fn normalizability_diagnostic(py: Python<'_>, e: f64, epsilon: f64, n: usize, vartheta: f64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &mirror::normalizability_diagnostic(e, epsilon, n, vartheta))
}

/// Interferometer layout as a dict; `character` is (modulus, values) or None.
#[pyfunction]
#[pyo3(signature = (n_max, character = None, vartheta = 0.0))]
fn interferometer_layout(
    py: Python<'_>,
    n_max: u64,
    character: Option<(u64, Vec<Complex64>)>,
    vartheta: f64,
) -> PyResult<Bound<'_, PyAny>> {
    let chi = character.map(|(q, v)| mirror::DirichletCharacter::new(q, v)).transpose().py()?;
    let layout = mirror::interferometer_layout(n_max, chi.as_ref()).py()?.with_boundary_phase(vartheta);
    to_py(py, &layout)
}

#[pymodule]
fn rzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RzetaError", m.py().get_type::<RzetaError>())?;
    m.add_class::<PyZeroDatabase>()?;
    m.add_class::<PyMirrorArray>()?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_m, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_py, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_prime, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(z_function, m)?)?;
    m.add_function(wrap_pyfunction!(zero_count_below, m)?)?;
    m.add_function(wrap_pyfunction!(find_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_function, m)?)?;
    m.add_function(wrap_pyfunction!(xi_via_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(find_dirac_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(landau_levels, m)?)?;
    m.add_function(wrap_pyfunction!(n_landau, m)?)?;
    m.add_function(wrap_pyfunction!(moebius, m)?)?;
    m.add_function(wrap_pyfunction!(mertens_py, m)?)?;
    m.add_function(wrap_pyfunction!(m_z_direct, m)?)?;
    m.add_function(wrap_pyfunction!(m_z_perron, m)?)?;
    m.add_function(wrap_pyfunction!(mertens_residue, m)?)?;
    m.add_function(wrap_pyfunction!(growth_fit, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(tuned_theta, m)?)?;
    m.add_function(wrap_pyfunction!(norm_limit, m)?)?;
    m.add_function(wrap_pyfunction!(zero_sensitivity, m)?)?;
    m.add_function(wrap_pyfunction!(phase_phi_z, m)?)?;
    m.add_function(wrap_pyfunction!(normalizability_diagnostic, m)?)?;
    m.add_function(wrap_pyfunction!(interferometer_layout, m)?)?;
    Ok(())
}
