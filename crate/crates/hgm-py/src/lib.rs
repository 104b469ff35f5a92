use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use hgm::count::{self, CountResult as CoreCount, DworkSpec};
use hgm::ffield::{field_of_size, FieldDescriptor, FieldElement, GaussTable};
use hgm::gammatriple::{self, HypergeometricParams};
use hgm::hypersum;
use hgm::oracle::{self, OracleConfig};
use hgm::toric::{self, AnalyzeOptions, GaleData, HypersurfaceJson, LaurentHypersurface};

create_exception!(hgm_py, HgmError, PyException);
create_exception!(hgm_py, MismatchError, HgmError);

fn err(e: hgm::Error) -> PyErr {
    match e {
        hgm::Error::Parse(_) => PyValueError::new_err(e.to_string()),
        hgm::Error::Mismatch(_) | hgm::Error::Residual { .. } | hgm::Error::Integrality(_) => {
            MismatchError::new_err(e.to_string())
        }
        _ => HgmError::new_err(e.to_string()),
    }
}

type ParamStrings = (Vec<String>, Vec<String>);

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn element(field: &FieldDescriptor, code: u32) -> PyResult<FieldElement> {
    field.element(code).map_err(err)
}

/// A finite field F_q with its Gauss sum table.
#[pyclass(module = "hgm_py", frozen)]
pub struct Field {
    table: GaussTable,
}

impl Field {
    fn build(q: u64) -> PyResult<Self> {
        let field = field_of_size(q).map_err(err)?;
        Ok(Field { table: GaussTable::for_field(&field).map_err(err)? })
    }
}

#[pymethods]
impl Field {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        Self::build(q)
    }

    #[getter]
    fn q(&self) -> u64 {
        self.table.q()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.table.field().p()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.table.field().k()
    }

    #[getter]
    fn generator(&self) -> u32 {
        self.table.ct().generator().0
    }

    fn gauss(&self, m: i64) -> Complex64 {
        self.table.gauss(m)
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = self.table.field();
        Ok(f.mul(element(f, a)?, element(f, b)?).0)
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.table.q())
    }
}

/// A gamma triple (γ, δ, N).
#[pyclass(module = "hgm_py", frozen)]
pub struct GammaTriple {
    inner: gammatriple::GammaTriple,
}

#[pymethods]
impl GammaTriple {
    #[new]
    #[pyo3(signature = (gamma, delta=None, n=1))]
    fn new(gamma: Vec<i64>, delta: Option<Vec<i64>>, n: u64) -> PyResult<Self> {
        let delta = delta.unwrap_or_else(|| vec![0; gamma.len()]);
        Ok(GammaTriple { inner: gammatriple::GammaTriple::new(gamma, delta, n).map_err(err)? })
    }

    #[staticmethod]
    fn from_params(alpha: Vec<String>, beta: Vec<String>) -> PyResult<Self> {
        let p = params(&alpha, &beta)?;
        Ok(GammaTriple { inner: gammatriple::triple_from_params(&p).map_err(err)? })
    }

    #[getter]
    fn gamma(&self) -> Vec<i64> {
        self.inner.gamma.clone()
    }

    #[getter]
    fn delta(&self) -> Vec<i64> {
        self.inner.delta.clone()
    }

    #[getter(N)]
    fn big_n(&self) -> u64 {
        self.inner.n
    }

    /// (alpha, beta) as fraction strings.
    fn params(&self) -> PyResult<(Vec<String>, Vec<String>)> {
        let p = gammatriple::params_from_triple(&self.inner).map_err(err)?;
        Ok((p.alpha_strings(), p.beta_strings()))
    }

    fn s_delta(&self, q: u64, m: i64) -> PyResult<u32> {
        gammatriple::s_delta(&self.inner, q, m).map_err(err)
    }

    fn hypersum(&self, field: &Field, t: u32) -> PyResult<Complex64> {
        let x = element(field.table.field(), t)?;
        hypersum::f_triple(&self.inner, &field.table, x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("GammaTriple({:?}, {:?}, {})", self.inner.gamma, self.inner.delta, self.inner.n)
    }
}

fn params(alpha: &[String], beta: &[String]) -> PyResult<HypergeometricParams> {
    let conv = |v: &[String]| v.iter().map(|s| gammatriple::parse_fraction(s)).collect::<hgm::Result<Vec<_>>>();
    HypergeometricParams::new(conv(alpha).map_err(err)?, conv(beta).map_err(err)?).map_err(err)
}

/// F_q(α; β | t), through a representing gamma triple when needed.
#[pyfunction]
fn hypersum_params(alpha: Vec<String>, beta: Vec<String>, field: &Field, t: u32) -> PyResult<Complex64> {
    let p = params(&alpha, &beta)?;
    let x = element(field.table.field(), t)?;
    Ok(hypersum::f_extended(&p, &field.table, x).map_err(err)?.value)
}

/// Result of a closed-form point count.
#[pyclass(module = "hgm_py", frozen)]
pub struct CountResult {
    inner: CoreCount,
}

#[pymethods]
impl CountResult {
    #[getter]
    fn raw(&self) -> Complex64 {
        self.inner.raw
    }

    #[getter]
    fn rounded(&self) -> u64 {
        self.inner.rounded
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    /// Hypergeometric parameters of each decomposition term.
    fn classes(&self) -> Vec<(ParamStrings, u64)> {
        count::parameter_classes(self.inner.decomposition.as_deref().unwrap_or_default())
            .into_iter()
            .map(|(p, k)| ((p.alpha_strings(), p.beta_strings()), k))
            .collect()
    }

    fn to_json(&self) -> String {
        json(&self.inner)
    }

    fn __int__(&self) -> u64 {
        self.inner.rounded
    }

    fn __repr__(&self) -> String {
        format!("CountResult(rounded={}, residual={:.1e})", self.inner.rounded, self.inner.residual)
    }
}

fn wrap(r: hgm::Result<CoreCount>) -> PyResult<CountResult> {
    Ok(CountResult { inner: r.map_err(err)? })
}

/// A Laurent polynomial with d+2 monomials in d variables.
#[pyclass(module = "hgm_py", frozen)]
pub struct Hypersurface {
    inner: LaurentHypersurface,
}

#[pymethods]
impl Hypersurface {
    #[new]
    fn new(field: &Field, exponents: Vec<Vec<i64>>, coefficients: Vec<u32>) -> PyResult<Self> {
        let f = field.table.field();
        let coeffs = coefficients.into_iter().map(|c| element(f, c)).collect::<PyResult<Vec<_>>>()?;
        Ok(Hypersurface { inner: LaurentHypersurface::new(f, exponents, coeffs).map_err(err)? })
    }

    #[staticmethod]
    fn dwork(field: &Field, d: usize, u: u32) -> PyResult<Self> {
        let f = field.table.field();
        Ok(Hypersurface { inner: toric::dwork_hypersurface(f, d, element(f, u)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: HypersurfaceJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Hypersurface { inner: LaurentHypersurface::from_json(&j).map_err(err)? })
    }

    fn to_json(&self) -> String {
        json(&self.inner.to_json())
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[pyo3(signature = (flip_gamma=false))]
    fn analyze(&self, flip_gamma: bool) -> PyResult<Gale> {
        let g = toric::analyze_with(&self.inner, &AnalyzeOptions { flip_gamma }).map_err(err)?;
        Ok(Gale { table: GaussTable::for_field(self.inner.field()).map_err(err)?, inner: g })
    }

    /// Brute-force count of compactification I.
    fn bf_compact_i(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| oracle::bf_compact_i(&self.inner, &OracleConfig::from_env()).map(|s| s.total)).map_err(err)
    }

    /// Brute-force count of compactification II.
    fn bf_compact_ii(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| oracle::bf_compact_ii(&self.inner, &OracleConfig::from_env()).map(|s| s.total)).map_err(err)
    }

    fn bf_torus(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| oracle::bf_torus(&self.inner, &OracleConfig::from_env())).map_err(err)
    }
}

/// Gale data of a hypersurface together with the Gauss table of its field.
#[pyclass(module = "hgm_py", frozen)]
pub struct Gale {
    inner: GaleData,
    table: GaussTable,
}

#[pymethods]
impl Gale {
    #[getter]
    fn gamma(&self) -> Vec<i64> {
        self.inner.gamma.clone()
    }

    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.t.0
    }

    fn lambda_set(&self) -> PyResult<Vec<(Vec<u64>, Vec<u64>)>> {
        Ok(self.inner.lambda_set().map_err(err)?.into_iter().map(|e| (e.lambda, e.delta)).collect())
    }

    fn faces(&self) -> Vec<(Vec<usize>, usize)> {
        self.inner.faces().into_iter().map(|f| (f.s, f.dim)).collect()
    }

    fn shift_rho(&self, c: Vec<i64>) -> PyResult<Gale> {
        Ok(Gale { inner: self.inner.shift_rho(&c).map_err(err)?, table: self.table.clone() })
    }

    fn fan_report(&self) -> PyResult<String> {
        Ok(json(&self.inner.fan_report().map_err(err)?))
    }

    fn count_stratum(&self, s: Vec<usize>) -> PyResult<CountResult> {
        wrap(count::count_stratum(&self.inner, &self.table, &s))
    }

    fn count_compact_i(&self) -> PyResult<CountResult> {
        wrap(count::count_compact_i(&self.inner, &self.table))
    }

    fn count_compact_ii(&self) -> PyResult<CountResult> {
        wrap(count::count_compact_ii(&self.inner, &self.table))
    }

    fn to_json(&self) -> String {
        json(&self.inner)
    }
}

/// Projective Dwork hypersurface count.
#[pyfunction]
fn dwork_count(d: usize, field: &Field, u: u32) -> PyResult<CountResult> {
    let u = element(field.table.field(), u)?;
    let spec = DworkSpec::new(d, &field.table, u).map_err(err)?;
    wrap(count::dwork_count(&spec, &field.table))
}

#[pyfunction]
fn bf_projective_dwork(py: Python<'_>, d: usize, field: &Field, u: u32) -> PyResult<u64> {
    let f = field.table.field().clone();
    let u = element(&f, u)?;
    py.detach(|| oracle::bf_projective_dwork(&f, d, u, &OracleConfig::from_env())).map_err(err)
}

/// Compactified cyclic cover of a gamma triple.
#[pyfunction]
fn cyclic_cover_count(triple: &GammaTriple, field: &Field, t: u32) -> PyResult<CountResult> {
    let t = element(field.table.field(), t)?;
    wrap(count::count_cyclic_cover(&triple.inner, &field.table, t))
}

/// Runs acceptance criteria; returns (id, title, pass, detail) tuples.
#[pyfunction]
#[pyo3(signature = (criterion=None))]
fn selftest(py: Python<'_>, criterion: Option<usize>) -> Vec<(usize, String, bool, String)> {
    let cfg = OracleConfig::from_env();
    let reports = py.detach(|| match criterion {
        Some(id) => vec![hgm::selftest::run(id, &cfg)],
        None => hgm::selftest::run_all(&cfg),
    });
    reports.into_iter().map(|r| (r.id, r.title.to_string(), r.pass, r.detail)).collect()
}

#[pymodule]
fn hgm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<GammaTriple>()?;
    m.add_class::<Hypersurface>()?;
    m.add_class::<Gale>()?;
    m.add_class::<CountResult>()?;
    m.add_function(wrap_pyfunction!(hypersum_params, m)?)?;
    m.add_function(wrap_pyfunction!(dwork_count, m)?)?;
    m.add_function(wrap_pyfunction!(bf_projective_dwork, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_cover_count, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("HgmError", m.py().get_type::<HgmError>())?;
    m.add("MismatchError", m.py().get_type::<MismatchError>())?;
    Ok(())
}
