//! Python bindings: fields, Kloosterman sums and tables, root systems, and the
//! JSON reports of the census, wild-parameter and verification modules.

use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use kl_core::config::RunConfig;
use kl_core::equidist::{empirical_moments, monodromy_target};
use kl_core::eulerchar::census as core_census;
use kl_core::field::FieldSpec;
use kl_core::repweights::{invariant_moments as core_invariant_moments, RepLabel, WeightMultiset};
use kl_core::rootsys::{CartanType, RootSystem as CoreRootSystem};
use kl_core::sums::{self, table_convolution, table_naive, weil_report, KloostermanSpec, DEFAULT_BUDGET};
use kl_core::KlError;

fn err(e: KlError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyclass(frozen, name = "Field")]
struct Field {
    inner: Arc<FieldSpec>,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (p, k=1))]
    fn new(p: u64, k: u32) -> PyResult<Self> {
        Ok(Field { inner: Arc::new(FieldSpec::new(p, k).map_err(err)?) })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus.clone()
    }

    /// Elements are integer codes `sum c_i p^i` in the polynomial basis.
    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        let f = &self.inner;
        Ok(f.to_int(f.add(f.from_int(a).map_err(err)?, f.from_int(b).map_err(err)?)))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        let f = &self.inner;
        Ok(f.to_int(f.mul(f.from_int(a).map_err(err)?, f.from_int(b).map_err(err)?)))
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        let f = &self.inner;
        Ok(f.to_int(f.inv(f.from_int(a).map_err(err)?).map_err(err)?))
    }

    fn trace(&self, a: u64) -> PyResult<u64> {
        Ok(self.inner.trace(self.inner.from_int(a).map_err(err)?))
    }

    /// Discrete log of a nonzero element with respect to the generator.
    fn log(&self, a: u64) -> PyResult<i64> {
        let x = self.inner.from_int(a).map_err(err)?;
        if x.is_zero() {
            return Err(err(KlError::ZeroArgument));
        }
        Ok(x.log as i64)
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, k={})", self.inner.p, self.inner.k)
    }
}

fn make_spec(p: u64, k: u32, n: usize, coeffs: Option<Vec<u64>>, chi: Option<Vec<u64>>) -> PyResult<KloostermanSpec> {
    let f = Arc::new(FieldSpec::new(p, k).map_err(err)?);
    let coeffs = coeffs.unwrap_or_else(|| vec![1; n]);
    let chi = chi.unwrap_or_else(|| vec![0; n]);
    KloostermanSpec::from_ints(f, &coeffs, &chi).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, k, n, a, coeffs=None, chi=None, normalized=false))]
fn kloosterman(
    p: u64,
    k: u32,
    n: usize,
    a: u64,
    coeffs: Option<Vec<u64>>,
    chi: Option<Vec<u64>>,
    normalized: bool,
) -> PyResult<Complex64> {
    let spec = make_spec(p, k, n, coeffs, chi)?;
    let x = spec.field.from_int(a).map_err(err)?;
    let v = sums::kloosterman(&spec, x).map_err(err)?;
    Ok(if normalized { v / spec.weight_scale() } else { v })
}

/// Values indexed by the discrete log of the argument.
#[pyfunction]
#[pyo3(signature = (p, k, n, coeffs=None, chi=None, method="conv", normalized=false))]
fn kloosterman_table(
    p: u64,
    k: u32,
    n: usize,
    coeffs: Option<Vec<u64>>,
    chi: Option<Vec<u64>>,
    method: &str,
    normalized: bool,
) -> PyResult<Vec<Complex64>> {
    let spec = make_spec(p, k, n, coeffs, chi)?;
    let t = match method {
        "naive" => table_naive(&spec, DEFAULT_BUDGET).map_err(err)?,
        "conv" => table_convolution(&spec),
        other => return Err(PyValueError::new_err(format!("unknown method {other}"))),
    };
    Ok(if normalized { t.normalized_values() } else { t.raw })
}

/// `max |Kl| / q^((n-1)/2)`.
#[pyfunction]
#[pyo3(signature = (p, k, n))]
fn weil_ratio(p: u64, k: u32, n: usize) -> PyResult<f64> {
    Ok(weil_report(&table_convolution(&make_spec(p, k, n, None, None)?)).max_ratio)
}

/// Empirical moments `m_0 .. m_kmax` of the classical normalized table.
#[pyfunction]
fn moments(p: u64, k: u32, n: usize, kmax: usize) -> PyResult<Vec<Complex64>> {
    Ok(empirical_moments(&table_convolution(&make_spec(p, k, n, None, None)?), kmax))
}

/// Label of the monodromy group of `Kl_n` in characteristic `p`.
#[pyfunction]
fn monodromy(n: usize, p: u64) -> PyResult<String> {
    Ok(monodromy_target(n, p).map_err(err)?.label)
}

#[pyclass(frozen, name = "RootSystem")]
struct RootSystem {
    inner: CoreRootSystem,
}

#[pymethods]
impl RootSystem {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        let t: CartanType = label.parse().map_err(err)?;
        Ok(RootSystem { inner: CoreRootSystem::build(t) })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.cartan_type.to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn h(&self) -> usize {
        self.inner.h
    }

    #[getter]
    fn r_s(&self) -> usize {
        self.inner.r_s
    }

    #[getter]
    fn r_l(&self) -> usize {
        self.inner.r_l
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan.clone()
    }

    /// Roots in the simple-root basis.
    fn roots(&self) -> Vec<Vec<i64>> {
        self.inner.roots.clone()
    }

    fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.coxeter_matrix()
    }

    fn dual(&self) -> Self {
        RootSystem { inner: self.inner.dual() }
    }

    fn weyl_order(&self) -> u128 {
        self.inner.cartan_type.weyl_order()
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.cartan_type)
    }
}

fn rep_label(rep: &str) -> PyResult<RepLabel> {
    rep.parse().map_err(err)
}

#[pyfunction]
fn invariant_moments(label: &str, rep: &str, kmax: usize) -> PyResult<Vec<u128>> {
    let rs = RootSystem::new(label)?.inner;
    let v = WeightMultiset::of_label(&rs, rep_label(rep)?);
    core_invariant_moments(&v, kmax).map_err(err)
}

/// Census report of `G` as JSON.
#[pyfunction]
fn census(label: &str, rep: &str) -> PyResult<String> {
    let rs = RootSystem::new(label)?.inner;
    to_json(&core_census(&rs, rep_label(rep)?).map_err(err)?)
}

/// Simple wild parameter report of the dual group `label` at `p`, as JSON.
#[pyfunction]
fn wild(label: &str, p: u64) -> PyResult<String> {
    let rs = RootSystem::new(label)?.inner;
    to_json(&kl_core::wildmono::report(&rs, p).map_err(err)?)
}

/// The full verification report as JSON.
#[pyfunction]
#[pyo3(signature = (seed=0))]
fn verify_all(py: Python<'_>, seed: u64) -> String {
    let cfg = RunConfig { seed, ..RunConfig::default() };
    py.detach(|| kl_core::verify::run_all(&cfg).report.to_json())
}

#[pymodule]
pub fn klpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<RootSystem>()?;
    m.add_function(wrap_pyfunction!(kloosterman, m)?)?;
    m.add_function(wrap_pyfunction!(kloosterman_table, m)?)?;
    m.add_function(wrap_pyfunction!(weil_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_moments, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(wild, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
