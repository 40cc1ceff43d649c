//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use zetakit_core::cli::{decimal_digits, parse_rational};
use zetakit_core::fourierpolys::{c_poly as c_poly_core, eval_normalized, s_poly as s_poly_core, NormalizedPolynomial};
use zetakit_core::numerics::numeric_eval as numeric_eval_core;
use zetakit_core::numtheory::bernoulli as bernoulli_core;
use zetakit_core::{AlgebraicPiMultiple, PrecisionContext, Rational, SumKind, SumQuery};

fn err(e: zetakit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((format!("{}/{}", q.numer(), q.denom()),))
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn query(kind: &str, n: u32, k: u64, l: u64) -> PyResult<SumQuery> {
    let kind: SumKind = kind.parse().map_err(err)?;
    SumQuery::new(kind, n, k, l).map_err(err)
}

/// An exact value `c · π^e` with `c` in a cyclotomic field.
#[pyclass(name = "PiMultiple", frozen)]
struct PyPiMultiple {
    inner: AlgebraicPiMultiple,
}

#[pymethods]
impl PyPiMultiple {
    #[getter]
    fn pi_exponent(&self) -> u32 {
        self.inner.pi_exponent()
    }

    #[getter]
    fn conductor(&self) -> u32 {
        self.inner.conductor()
    }

    /// Coefficients of `1, z, z², …` with `z = exp(2πi/conductor)`.
    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self.inner.coeff().coeffs().iter().map(|c| fraction(py, c)).collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    /// Square-root rendering when the value lies in ℚ(√2) or ℚ(√3).
    #[getter]
    fn radical(&self) -> Option<String> {
        self.inner.radical()
    }

    fn canonical(&self) -> String {
        self.inner.canonical()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    #[pyo3(signature = (prec = 192))]
    fn decimal(&self, prec: u32) -> PyResult<String> {
        let v = self.inner.decimal(prec + 16).map_err(err)?;
        Ok(v.to_decimal_string(decimal_digits(prec)))
    }

    fn __float__(&self) -> PyResult<f64> {
        Ok(self.inner.decimal(80).map_err(err)?.to_f64())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PiMultiple({})", self.inner)
    }
}

fn wrap(inner: AlgebraicPiMultiple) -> PyPiMultiple {
    PyPiMultiple { inner }
}

/// Exact value of `S(n,k,l)` (kind "S") or `Ŝ(n,k,l)` (kind "Shat").
#[pyfunction]
fn evaluate(py: Python<'_>, kind: &str, n: u32, k: u64, l: u64) -> PyResult<PyPiMultiple> {
    let q = query(kind, n, k, l)?;
    py.detach(|| zetakit_core::evaluate(&q)).map(wrap).map_err(err)
}

/// `ζ(n,p) + (-1)^n ζ(n,1-p)`, or the alternating analogue, for `p = "a/b"`.
#[pyfunction]
#[pyo3(signature = (n, p, alternating = false))]
fn hurwitz(py: Python<'_>, n: u32, p: &str, alternating: bool) -> PyResult<PyPiMultiple> {
    let p = rational(p)?;
    py.detach(|| zetakit_core::hurwitz_combination(n, &p, alternating)).map(wrap).map_err(err)
}

/// Decimal string of the sum from direct summation.
#[pyfunction]
#[pyo3(signature = (kind, n, k, l, prec = 192))]
fn numeric_eval(py: Python<'_>, kind: &str, n: u32, k: u64, l: u64, prec: u32) -> PyResult<String> {
    let q = query(kind, n, k, l)?;
    if !(64..=4096).contains(&prec) {
        return Err(PyValueError::new_err("prec must lie in 64..=4096"));
    }
    let v = py.detach(|| numeric_eval_core(&q, &PrecisionContext::with_working_bits(prec)));
    Ok(v.to_decimal_string(decimal_digits(prec)))
}

/// All residues `1..=k/2` of a modulus as `(kind, l, value)` rows.
#[pyfunction]
#[pyo3(signature = (n, k, kind = "both"))]
fn table(py: Python<'_>, n: u32, k: u64, kind: &str) -> PyResult<Vec<(String, u64, PyPiMultiple)>> {
    let kinds = match kind {
        "both" => vec![SumKind::S, SumKind::Shat],
        other => vec![other.parse().map_err(err)?],
    };
    let mut rows = Vec::new();
    for kind in kinds {
        for l in (1..k).filter(|l| match kind {
            SumKind::S => 2 * l <= k,
            SumKind::Shat => 2 * l < k,
        }) {
            let q = SumQuery::new(kind, n, k, l).map_err(err)?;
            let v = py.detach(|| zetakit_core::evaluate(&q)).map_err(err)?;
            rows.push((kind.to_string(), l, wrap(v)));
        }
    }
    Ok(rows)
}

/// Bernoulli number `B_k` with `B_1 = +1/2`.
#[pyfunction]
fn bernoulli<'py>(py: Python<'py>, k: u32) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bernoulli_core(k))
}

fn poly_coeffs<'py>(py: Python<'py>, p: &NormalizedPolynomial) -> PyResult<Vec<Bound<'py, PyAny>>> {
    p.coeffs().iter().map(|c| fraction(py, c)).collect()
}

/// Coefficients of `C_m(t)`, constant term first.
#[pyfunction]
fn c_poly<'py>(py: Python<'py>, m: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    poly_coeffs(py, &c_poly_core(m))
}

/// Coefficients of `S_m(t)`, constant term first.
#[pyfunction]
fn s_poly<'py>(py: Python<'py>, m: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    poly_coeffs(py, &s_poly_core(m))
}

/// Exact value of `C_m(t)` or `S_m(t)` at rational `t = "a/b"`.
#[pyfunction]
fn poly_eval<'py>(py: Python<'py>, kind: &str, m: u32, t: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = match kind {
        "c" | "C" => c_poly_core(m),
        "s" | "S" => s_poly_core(m),
        _ => return Err(PyValueError::new_err("kind must be 'c' or 's'")),
    };
    fraction(py, &eval_normalized(&p, &rational(t)?))
}

#[pymodule]
fn zetakit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPiMultiple>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_eval, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(c_poly, m)?)?;
    m.add_function(wrap_pyfunction!(s_poly, m)?)?;
    m.add_function(wrap_pyfunction!(poly_eval, m)?)?;
    Ok(())
}
