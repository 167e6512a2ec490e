use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hlvkit_core::hlv::{dim_moduli, hlv_H, hlv_kernel, poincare_polynomial, springer_count, CurveData, ParabolicData};
use hlvkit_core::macdonald::{hall_littlewood as hl, macdonald_htilde};
use hlvkit_core::oracle;
use hlvkit_core::partitions::Partition;
use hlvkit_core::seriesalg::{classify_polynomial, TSMatrix};
use hlvkit_core::verify::{run_suite, Suite};

fn err(e: hlvkit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn part(v: Vec<usize>) -> PyResult<Partition> {
    Partition::new(v).map_err(err)
}

/// H̃_λ[X; q, t] as text in the monomial basis.
#[pyfunction]
fn macdonald(lam: Vec<usize>) -> PyResult<String> {
    Ok(macdonald_htilde(&part(lam)?).map_err(err)?.to_text())
}

#[pyfunction]
fn hall_littlewood(lam: Vec<usize>) -> PyResult<String> {
    Ok(hl(&part(lam)?).map_err(err)?.to_text())
}

#[pyfunction]
#[pyo3(signature = (genus, punctures, tmax=2))]
fn kernel(genus: usize, punctures: usize, tmax: usize) -> PyResult<String> {
    let c = CurveData::symbolic(genus, punctures).map_err(err)?;
    Ok(hlv_kernel(&c, tmax).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (genus, punctures, tmax=2))]
fn hlog(genus: usize, punctures: usize, tmax: usize) -> PyResult<String> {
    let c = CurveData::symbolic(genus, punctures).map_err(err)?;
    Ok(hlv_H(&c, tmax).map_err(err)?.to_string())
}

/// Poincaré polynomial in s and the dimension, for multiplicities like "1,1;1,1;1,1".
#[pyfunction]
fn poincare(genus: usize, rank: usize, mults: &str) -> PyResult<(String, i64)> {
    let pd = ParabolicData::parse(rank, mults).map_err(err)?;
    let dim = dim_moduli(genus, &pd).map_err(err)?;
    Ok((poincare_polynomial(genus, &pd).map_err(err)?.to_text(), dim))
}

#[pyfunction]
#[pyo3(signature = (lam, mu, tmax=2))]
fn springer(lam: Vec<usize>, mu: Vec<usize>, tmax: usize) -> PyResult<Vec<String>> {
    let c = springer_count(&part(lam)?, &part(mu)?, tmax).map_err(err)?;
    Ok(c.iter().map(|x| x.to_text()).collect())
}

/// (type, degree, working precision) of a nilpotent matrix over F_p[[x]].
#[pyfunction]
fn classify(matrix: &str) -> PyResult<(Vec<usize>, i32, i32)> {
    let theta = TSMatrix::parse(matrix).map_err(err)?;
    let c = classify_polynomial(&theta).map_err(err)?;
    Ok((c.lambda.parts().to_vec(), c.d, c.working_precision))
}

#[pyfunction]
fn flag_count(lam: Vec<usize>, mu: Vec<usize>, p: u32) -> PyResult<u64> {
    oracle::flag_count_bruteforce(&part(lam)?, &mu, p).map_err(err)
}

#[pyfunction]
fn centralizer_order(lam: Vec<usize>, p: u32) -> PyResult<u64> {
    oracle::centralizer_order(&part(lam)?, p).map_err(err)
}

/// Run a verification suite; returns (passed, JSON report).
#[pyfunction]
#[pyo3(signature = (suite, p=None, max=None))]
fn verify(suite: &str, p: Option<u32>, max: Option<usize>) -> PyResult<(bool, String)> {
    let rep = run_suite(Suite::parse(suite).map_err(err)?, p, max).map_err(err)?;
    Ok((rep.passed(), rep.to_json().to_string()))
}

#[pymodule]
fn hlvkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(macdonald, m)?)?;
    m.add_function(wrap_pyfunction!(hall_littlewood, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(hlog, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(springer, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(flag_count, m)?)?;
    m.add_function(wrap_pyfunction!(centralizer_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
