//! Python bindings. Results carry decimal strings at the requested number
//! of significant digits, so nothing is lost to binary floats unless the
//! caller asks for `float(result)`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyFloat, PyInt, PyString};
use rug::{Float, Integer, Rational};

use hzeta::format::{format_err, format_value};
use hzeta::validate::SelftestLevel;
use hzeta::{constants, gengamma, hurwitz, validate, ConstantStrategy, Error};

create_exception!(hzeta, HzetaError, PyRuntimeError, "A computation could not meet its accuracy target.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(m) => PyValueError::new_err(m),
        other => HzetaError::new_err(other.to_string()),
    }
}

/// Converts an int, float, str (decimal or "p/q") or `fractions.Fraction`.
fn real_arg(obj: &Bound<'_, PyAny>, bits: u32) -> PyResult<Float> {
    let bad = || PyValueError::new_err(format!("cannot read a real number from {obj}"));
    if obj.is_instance_of::<PyInt>() {
        let i = Integer::parse(obj.str()?.to_str()?).map_err(|_| bad())?;
        return Ok(Float::with_val(bits, Integer::from(i)));
    }
    if obj.is_instance_of::<PyFloat>() {
        return Ok(Float::with_val(bits, obj.extract::<f64>()?));
    }
    if obj.is_instance_of::<PyString>() {
        let s: String = obj.extract()?;
        let s = s.trim();
        if s.contains('/') {
            let r = Rational::parse(s).map_err(|_| bad())?;
            return Ok(Float::with_val(bits, Rational::from(r)));
        }
        let f = Float::parse(s).map_err(|_| bad())?;
        return Ok(Float::with_val(bits, f));
    }
    if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
        let num = Integer::parse(obj.getattr("numerator")?.str()?.to_str()?).map_err(|_| bad())?;
        let den = Integer::parse(obj.getattr("denominator")?.str()?.to_str()?).map_err(|_| bad())?;
        let (num, den) = (Integer::from(num), Integer::from(den));
        if den == 0 {
            return Err(bad());
        }
        return Ok(Float::with_val(bits, Rational::from((num, den))));
    }
    Err(PyTypeError::new_err("expected int, float, str or Fraction"))
}

/// `ζ'(-k, w)` with its error bound.
#[pyclass(frozen, get_all, skip_from_py_object, module = "hzeta")]
#[derive(Clone)]
pub struct DerivResult {
    k: u32,
    w: String,
    value: String,
    err: String,
    method: String,
}

#[pymethods]
impl DerivResult {
    fn __float__(&self) -> f64 {
        self.value.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!(
            "DerivResult(k={}, w={}, value={}, err={}, method='{}')",
            self.k, self.w, self.value, self.err, self.method
        )
    }
}

/// One of the constants `L_k`, `ϖ(k)` or Kinkelin's `log ϖ`.
#[pyclass(frozen, get_all, skip_from_py_object, module = "hzeta")]
#[derive(Clone)]
pub struct ConstantRecord {
    kind: String,
    k: i64,
    value: String,
    err: String,
    w_used: u64,
    tail_terms_used: usize,
}

#[pymethods]
impl ConstantRecord {
    fn __float__(&self) -> f64 {
        self.value.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!(
            "ConstantRecord(kind='{}', k={}, value={}, err={}, w_used={}, tail_terms_used={})",
            self.kind, self.k, self.value, self.err, self.w_used, self.tail_terms_used
        )
    }
}

/// `log Γ_k(x)`.
#[pyclass(frozen, get_all, skip_from_py_object, module = "hzeta")]
#[derive(Clone)]
pub struct GenGammaValue {
    k: u32,
    x: String,
    value: String,
    err: String,
    method: String,
}

#[pymethods]
impl GenGammaValue {
    fn __float__(&self) -> f64 {
        self.value.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!(
            "GenGammaValue(k={}, x={}, value={}, err={}, method='{}')",
            self.k, self.x, self.value, self.err, self.method
        )
    }
}

/// Outcome of one self-test check.
#[pyclass(frozen, get_all, skip_from_py_object, module = "hzeta")]
#[derive(Clone)]
pub struct CheckReport {
    name: String,
    k: Option<i64>,
    x_or_w: Option<String>,
    residual: String,
    tolerance: String,
    passed: bool,
    elapsed_ms: f64,
    detail: Option<String>,
}

#[pymethods]
impl CheckReport {
    fn __repr__(&self) -> String {
        format!(
            "CheckReport(name='{}', passed={}, residual={}, tolerance={})",
            self.name,
            if self.passed { "True" } else { "False" },
            self.residual,
            self.tolerance
        )
    }
}

/// Precision and parameter settings shared by a series of computations.
///
/// `Context(digits=20, w_trial=None, terms=None)`; giving `w_trial` or
/// `terms` fixes the trial point and tail length used for the constants.
#[pyclass(frozen, module = "hzeta")]
pub struct Context {
    inner: hzeta::Context,
}

impl Context {
    fn build(digits: u32, w_trial: Option<u64>, terms: Option<usize>) -> PyResult<Self> {
        let mut inner = hzeta::Context::new(digits).map_err(to_py)?;
        if terms.is_some() || w_trial.is_some() {
            inner = inner
                .with_lambda_terms(terms)
                .with_strategy(ConstantStrategy::Fixed {
                    w: w_trial.unwrap_or(100),
                    tail_terms: terms.unwrap_or(20),
                });
        }
        Ok(Self { inner })
    }

    fn fmt(&self, x: &Float) -> String {
        format_value(x, self.inner.target_digits())
    }

    fn deriv(&self, d: hurwitz::DerivResult) -> DerivResult {
        DerivResult {
            k: d.k,
            w: format_value(&d.w, self.inner.target_digits()),
            value: self.fmt(&d.value),
            err: format_err(&d.err),
            method: d.method.as_str().to_string(),
        }
    }

    fn constant(&self, c: constants::ConstantRecord) -> ConstantRecord {
        ConstantRecord {
            kind: c.kind.as_str().to_string(),
            k: c.k,
            value: self.fmt(&c.value),
            err: format_err(&c.err),
            w_used: c.w_used,
            tail_terms_used: c.tail_terms_used,
        }
    }
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (digits = 20, w_trial = None, terms = None))]
    fn new(digits: u32, w_trial: Option<u64>, terms: Option<usize>) -> PyResult<Self> {
        Self::build(digits, w_trial, terms)
    }

    #[getter]
    fn digits(&self) -> u32 {
        self.inner.target_digits()
    }

    #[getter]
    fn bits(&self) -> u32 {
        self.inner.bits()
    }

    /// `ζ'(-k)`.
    fn zeta_deriv_neg(&self, py: Python<'_>, k: u32) -> PyResult<DerivResult> {
        let d = py.detach(|| hurwitz::zeta_deriv_neg(&self.inner, k)).map_err(to_py)?;
        Ok(self.deriv(d))
    }

    /// `ζ'(-k, w)` for real `w > 0`; positive integers use the exact sum.
    fn hurwitz_deriv(&self, py: Python<'_>, k: u32, w: &Bound<'_, PyAny>) -> PyResult<DerivResult> {
        let w = real_arg(w, self.inner.bits())?;
        let d = py
            .detach(|| match w.to_i32_saturating() {
                Some(n) if w.is_integer() && (1..=1_000_000).contains(&n) => {
                    hurwitz::hurwitz_deriv_integer(&self.inner, k, n.into())
                }
                _ => hurwitz::hurwitz_deriv(&self.inner, k, &w),
            })
            .map_err(to_py)?;
        Ok(self.deriv(d))
    }

    /// The generalized Glaisher-Kinkelin constant `L_k`.
    fn gkbj(&self, py: Python<'_>, k: u32) -> PyResult<ConstantRecord> {
        let c = py.detach(|| constants::gkbj(&self.inner, k)).map_err(to_py)?;
        Ok(self.constant(c))
    }

    /// Jeffery's constant `ϖ(k)`, `k >= 1`.
    fn varpi(&self, py: Python<'_>, k: u32) -> PyResult<ConstantRecord> {
        let c = py.detach(|| constants::varpi(&self.inner, k)).map_err(to_py)?;
        Ok(self.constant(c))
    }

    /// Kinkelin's `log ϖ = 2 L_1 - 1/6`.
    fn kinkelin(&self, py: Python<'_>) -> PyResult<ConstantRecord> {
        let c = py.detach(|| constants::kinkelin_logvarpi(&self.inner)).map_err(to_py)?;
        Ok(self.constant(c))
    }

    /// `log Γ_k(x)` for real `x > 0`.
    fn log_gengamma(&self, py: Python<'_>, k: u32, x: &Bound<'_, PyAny>) -> PyResult<GenGammaValue> {
        let x = real_arg(x, self.inner.bits())?;
        let g = py.detach(|| gengamma::log_gengamma(&self.inner, k, &x)).map_err(to_py)?;
        Ok(GenGammaValue {
            k: g.k,
            x: self.fmt(&g.x),
            value: self.fmt(&g.value),
            err: format_err(&g.err),
            method: g.method.as_str().to_string(),
        })
    }

    /// Runs the built-in checks; `level` is "quick" or "full".
    #[pyo3(signature = (level = "quick"))]
    fn selftest(&self, py: Python<'_>, level: &str) -> PyResult<Vec<CheckReport>> {
        let level: SelftestLevel = level.parse().map_err(|e: Error| to_py(e))?;
        let reports = py.detach(|| validate::selftest(&self.inner, level));
        Ok(reports
            .into_iter()
            .map(|r| CheckReport {
                name: r.name,
                k: r.k,
                x_or_w: r.x_or_w.as_ref().map(|x| format_value(x, 17)),
                residual: format_err(&r.residual),
                tolerance: format_err(&r.tolerance),
                passed: r.passed,
                elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
                detail: r.detail,
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Context(digits={})", self.inner.target_digits())
    }
}

/// `ζ'(-k)` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (k, digits = 20))]
fn zeta_deriv_neg(py: Python<'_>, k: u32, digits: u32) -> PyResult<DerivResult> {
    Context::build(digits, None, None)?.zeta_deriv_neg(py, k)
}

/// `ζ'(-k, w)` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (k, w, digits = 20))]
fn hurwitz_deriv(py: Python<'_>, k: u32, w: &Bound<'_, PyAny>, digits: u32) -> PyResult<DerivResult> {
    Context::build(digits, None, None)?.hurwitz_deriv(py, k, w)
}

/// `L_k` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (k, digits = 20))]
fn gkbj(py: Python<'_>, k: u32, digits: u32) -> PyResult<ConstantRecord> {
    Context::build(digits, None, None)?.gkbj(py, k)
}

/// `ϖ(k)` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (k, digits = 20))]
fn varpi(py: Python<'_>, k: u32, digits: u32) -> PyResult<ConstantRecord> {
    Context::build(digits, None, None)?.varpi(py, k)
}

/// Kinkelin's `log ϖ` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (digits = 20))]
fn kinkelin(py: Python<'_>, digits: u32) -> PyResult<ConstantRecord> {
    Context::build(digits, None, None)?.kinkelin(py)
}

/// `log Γ_k(x)` at `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (k, x, digits = 20))]
fn log_gengamma(py: Python<'_>, k: u32, x: &Bound<'_, PyAny>, digits: u32) -> PyResult<GenGammaValue> {
    Context::build(digits, None, None)?.log_gengamma(py, k, x)
}

/// Runs the self-test at `digits` and returns the reports.
#[pyfunction]
#[pyo3(signature = (level = "quick", digits = 20))]
fn selftest(py: Python<'_>, level: &str, digits: u32) -> PyResult<Vec<CheckReport>> {
    Context::build(digits, None, None)?.selftest(py, level)
}

#[pymodule(name = "hzeta")]
fn hzeta_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HzetaError", m.py().get_type::<HzetaError>())?;
    m.add_class::<Context>()?;
    m.add_class::<DerivResult>()?;
    m.add_class::<ConstantRecord>()?;
    m.add_class::<GenGammaValue>()?;
    m.add_class::<CheckReport>()?;
    m.add_function(wrap_pyfunction!(zeta_deriv_neg, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_deriv, m)?)?;
    m.add_function(wrap_pyfunction!(gkbj, m)?)?;
    m.add_function(wrap_pyfunction!(varpi, m)?)?;
    m.add_function(wrap_pyfunction!(kinkelin, m)?)?;
    m.add_function(wrap_pyfunction!(log_gengamma, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_py<R>(f: impl FnOnce(Python<'_>) -> R) -> R {
        Python::initialize();
        Python::attach(f)
    }

    #[test]
    fn reads_every_argument_form() {
        with_py(|py| {
            let half = Float::with_val(128, 0.5);
            for src in ["1/2", "'1/2'", "0.5", "'0.5'", "__import__('fractions').Fraction(1, 2)"] {
                let src = std::ffi::CString::new(src).unwrap();
                let obj = py.eval(&src, None, None).unwrap();
                assert_eq!(real_arg(&obj, 128).unwrap(), half, "{src:?}");
            }
            let big = py.eval(c"10**30", None, None).unwrap();
            assert_eq!(real_arg(&big, 128).unwrap(), Float::with_val(128, Float::parse("1e30").unwrap()));
            let bad = py.eval(c"'x'", None, None).unwrap();
            assert!(real_arg(&bad, 128).unwrap_err().is_instance_of::<PyValueError>(py));
            let wrong = py.eval(c"[1]", None, None).unwrap();
            assert!(real_arg(&wrong, 128).unwrap_err().is_instance_of::<PyTypeError>(py));
        });
    }

    #[test]
    fn errors_map_to_python_types() {
        with_py(|py| {
            let e = to_py(Error::InvalidArgument("no".into()));
            assert!(e.is_instance_of::<PyValueError>(py));
            let ctx = Context::build(12, None, None).unwrap();
            assert_eq!(ctx.zeta_deriv_neg(py, 1).unwrap().value, "-0.165421143700");
            assert!(ctx.varpi(py, 0).is_err());
        });
    }
}
