//! Python bindings: `import pyqtheta`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use qtheta::identity::{
    formal_certificate, reports_to_json, run_suite_with_order, IdentityId, SamplePlan,
};
use qtheta::{
    make_param, qtrig_crosscheck, qtrig_theta, theta_eval, Error, Method, QTrigKind, ThetaKind,
    TruncationPolicy,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Convergence(_) | Error::Pole(_) => PyArithmeticError::new_err(e.to_string()),
        Error::UnsupportedFormal(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// theta_j(z | tau) for j in 1..=4, by series or product.
#[pyfunction]
#[pyo3(signature = (j, z, tau, method = "series"))]
fn theta(j: u8, z: Complex64, tau: Complex64, method: &str) -> PyResult<Complex64> {
    let method = match method {
        "series" => Method::Series,
        "product" => Method::Product,
        m => return Err(PyValueError::new_err(format!("unknown method {m:?}"))),
    };
    let kind = ThetaKind::from_index(j).map_err(to_py)?;
    let p = make_param(tau).map_err(to_py)?;
    theta_eval(kind, z, &p, &TruncationPolicy::default(), method).map_err(to_py)
}

/// A q-trigonometric function by name, e.g. "tan_q".
#[pyfunction]
fn qtrig(name: &str, z: Complex64, tau: Complex64) -> PyResult<Complex64> {
    let kind: QTrigKind = name.parse().map_err(to_py)?;
    let p = make_param(tau).map_err(to_py)?;
    qtrig_theta(kind, z, &p, &TruncationPolicy::default()).map_err(to_py)
}

/// Distance between the theta-quotient and product evaluations.
#[pyfunction]
fn crosscheck(name: &str, z: Complex64, tau: Complex64) -> PyResult<f64> {
    let kind: QTrigKind = name.parse().map_err(to_py)?;
    let p = make_param(tau).map_err(to_py)?;
    qtrig_crosscheck(kind, z, &p, &TruncationPolicy::default()).map_err(to_py)
}

/// Certify an identity exactly; returns (passed, certificate text).
#[pyfunction]
#[pyo3(signature = (id, order = None))]
fn certify(id: &str, order: Option<i64>) -> PyResult<(bool, String)> {
    let id: IdentityId = id.parse().map_err(to_py)?;
    let (report, cert) =
        formal_certificate(id, order.unwrap_or(id.default_order())).map_err(to_py)?;
    Ok((report.passed(), cert.to_text()))
}

/// Run the whole suite and return the JSON report.
#[pyfunction]
#[pyo3(signature = (seed = 42, count = 500, tol = 1e-10, order = None))]
fn suite(seed: u64, count: usize, tol: f64, order: Option<i64>) -> PyResult<String> {
    let plan = SamplePlan {
        seed,
        count,
        ..SamplePlan::default()
    };
    let reports = run_suite_with_order(&plan, tol, order).map_err(to_py)?;
    reports_to_json(&reports).map_err(to_py)
}

#[pymodule]
fn pyqtheta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(qtrig, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    Ok(())
}
