//! Python bindings. Vectors cross the boundary as lists of
//! `(index, coefficient)` pairs with 1-based indices.

use greedylab_core::closedform::{l1_indicator_d, lp_indicator_d, LpIndicatorCase};
use greedylab_core::constants::{theorem_harness, InstanceFamily};
use greedylab_core::functionals::{d_m, d_star_m, hilbert_d_closed, sigma_m};
use greedylab_core::greedy::{greedy_ordering, greedy_residual, greedy_sum};
use greedylab_core::{CoeffVector, SpaceSpec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Pairs = Vec<(u32, f64)>;

fn vector(pairs: Pairs) -> PyResult<CoeffVector> {
    CoeffVector::from_pairs(pairs).map_err(to_py)
}

fn to_py(e: greedylab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen)]
#[derive(Clone)]
struct Space {
    inner: SpaceSpec,
}

#[pymethods]
impl Space {
    #[staticmethod]
    fn lp(p: f64) -> PyResult<Self> {
        Ok(Space {
            inner: SpaceSpec::lp(p).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn weighted_lp(p: f64, weights: Vec<f64>) -> PyResult<Self> {
        Ok(Space {
            inner: SpaceSpec::weighted_lp(p, weights).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn hilbert() -> Self {
        Space {
            inner: SpaceSpec::Hilbert,
        }
    }

    #[staticmethod]
    fn summing_c0() -> Self {
        Space {
            inner: SpaceSpec::SummingC0,
        }
    }

    fn norm(&self, x: Pairs) -> PyResult<f64> {
        self.inner.norm(&vector(x)?).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Space({:?})", self.inner)
    }
}

/// Greedy ordering of the support: by |coefficient| descending, ties by
/// lower index.
#[pyfunction]
fn ordering(x: Pairs) -> PyResult<Vec<u32>> {
    Ok(greedy_ordering(&vector(x)?).indices().to_vec())
}

/// The greedy sum G_m(x) as pairs.
#[pyfunction]
fn greedy_m(x: Pairs, m: usize) -> PyResult<Pairs> {
    Ok(greedy_sum(&vector(x)?, m).into())
}

/// ||x - G_m(x)|| in the given space.
#[pyfunction]
fn greedy_residual_norm(space: &Space, x: Pairs, m: usize) -> PyResult<f64> {
    space
        .inner
        .norm(&greedy_residual(&vector(x)?, m))
        .map_err(to_py)
}

/// Best m-term approximation error; returns (value, witness index set).
#[pyfunction]
fn sigma(space: &Space, x: Pairs, m: usize, scope: u32) -> PyResult<(f64, Vec<u32>)> {
    let r = sigma_m(&space.inner, &vector(x)?, m, scope).map_err(to_py)?;
    Ok((r.value, r.witness_set))
}

/// Distance to the best unsigned indicator line; returns (value, witness set).
#[pyfunction]
fn d(space: &Space, x: Pairs, m: usize, scope: u32) -> PyResult<(f64, Vec<u32>)> {
    let r = d_m(&space.inner, &vector(x)?, m, scope).map_err(to_py)?;
    Ok((r.value, r.witness_set))
}

/// Distance to the best signed indicator line; returns
/// (value, witness set, witness signs).
#[pyfunction]
fn d_star(
    space: &Space,
    x: Pairs,
    m: usize,
    scope: u32,
) -> PyResult<(f64, Vec<u32>, Vec<i8>)> {
    let r = d_star_m(&space.inner, &vector(x)?, m, scope).map_err(to_py)?;
    let signs = r.witness_signs.unwrap_or_default();
    Ok((r.value, r.witness_set, signs))
}

/// Closed-form indicator distance in lp (1 < p < inf).
#[pyfunction]
fn lp_indicator_distance(p: f64, n: u32, m: u32) -> PyResult<f64> {
    lp_indicator_d(&LpIndicatorCase { p, n, m }).map_err(to_py)
}

/// Piecewise l1 indicator distance.
#[pyfunction]
fn l1_indicator_distance(n: u32, m: u32) -> f64 {
    l1_indicator_d(n, m)
}

/// Hilbert closed form for D_m (signed=False) or D*_m (signed=True).
#[pyfunction]
fn hilbert_closed(x: Pairs, m: usize, signed: bool) -> PyResult<f64> {
    Ok(hilbert_d_closed(&vector(x)?, m, signed))
}

/// Runs every constant estimator on a default family over 1..=universe and
/// returns the full harness report as a JSON string.
#[pyfunction]
#[pyo3(signature = (space, universe=8, tol=1e-9))]
fn constants_report(space: &Space, universe: u32, tol: f64) -> PyResult<String> {
    let family = InstanceFamily::with_universe(universe);
    let report = theorem_harness(&space.inner, &family, universe, tol).map_err(to_py)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn greedylab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_function(wrap_pyfunction!(ordering, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_m, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_residual_norm, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(d, m)?)?;
    m.add_function(wrap_pyfunction!(d_star, m)?)?;
    m.add_function(wrap_pyfunction!(lp_indicator_distance, m)?)?;
    m.add_function(wrap_pyfunction!(l1_indicator_distance, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_closed, m)?)?;
    m.add_function(wrap_pyfunction!(constants_report, m)?)?;
    Ok(())
}
