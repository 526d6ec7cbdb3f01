//! Python bindings. Rationals cross the boundary as strings such as `"3/4"`
//! (ints and `fractions.Fraction` are accepted on input); structured results
//! come back as plain dicts and lists.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use eqlab::border::{self, InterimRule, Prior};
use eqlab::correlated::{self, EquilibriumKind};
use eqlab::dynamics::{fictitious_play_run, smooth_fp_run, DynamicsConfig, FeedbackMode};
use eqlab::games::io::NamedGame;
use eqlab::games::nash::support_enumeration;
use eqlab::games::{verify_epsilon_ne, verify_well_supported, BimatrixGame, MixedStrategy, VerificationQuery};
use eqlab::markets::{self, Market};
use eqlab::reductions::{self, DiscretizedHypercube, GridMap, SeparableFunction};
use eqlab::sparse::{self, SuccessCriterion};
use eqlab::tfnp::{self, BrouwerFunction, EolInstance, GridSpec, SpernerInstance};
use eqlab::zerosum::{self, ZeroSumGame};
use eqlab::{Budget, Error, Matrix, Rational};

create_exception!(eqlab, BudgetExceeded, PyException);
create_exception!(eqlab, InvariantViolation, PyRuntimeError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::Unbounded(_) => PyValueError::new_err(e.to_string()),
        Error::Budget { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Invariant(_) => InvariantViolation::new_err(e.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    text.trim()
        .parse()
        .map_err(|_| PyValueError::new_err(format!("not a rational number: {:?}", text)))
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn matrix(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Matrix> {
    let rows = rows.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(err)
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn budget(outcomes: Option<u128>) -> Budget {
    let mut b = Budget::default();
    if let Some(o) = outcomes {
        b.max_outcomes = o;
    }
    b
}

fn strategy(probs: Vec<Bound<'_, PyAny>>) -> PyResult<MixedStrategy> {
    MixedStrategy::new(rationals(&probs)?).map_err(err)
}

/// Two-player game with exact rational payoffs.
#[pyclass(module = "eqlab", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Game {
    inner: BimatrixGame,
}

#[pymethods]
impl Game {
    /// Payoff matrices for Alice and Bob, entries as ints or strings.
    #[new]
    fn new(a: Vec<Vec<Bound<'_, PyAny>>>, b: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        Ok(Game {
            inner: BimatrixGame::new(matrix(a)?, matrix(b)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn zero_sum(a: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        Ok(Game {
            inner: BimatrixGame::zero_sum(matrix(a)?).map_err(err)?,
        })
    }

    /// Reads the JSON game format used by the command-line tool.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let g = NamedGame::from_json(text).and_then(|g| g.to_bimatrix()).map_err(err)?;
        Ok(Game { inner: g })
    }

    fn to_json(&self) -> String {
        NamedGame::from_bimatrix(&self.inner).to_json()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    fn normalized(&self) -> Self {
        Game {
            inner: self.inner.normalize_payoffs(),
        }
    }

    fn solve_minimax(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let g = ZeroSumGame::from_bimatrix(&self.inner).map_err(err)?;
        to_py(py, &zerosum::solve_minimax_certified(&g).map_err(err)?)
    }

    #[pyo3(signature = (max_support=None, max_outcomes=None))]
    fn equilibria(&self, py: Python<'_>, max_support: Option<usize>, max_outcomes: Option<u128>) -> PyResult<Py<PyAny>> {
        let eqs = support_enumeration(&self.inner, max_support, &budget(max_outcomes)).map_err(err)?;
        to_py(py, &eqs)
    }

    #[pyo3(signature = (x, y, epsilon=None))]
    fn verify(
        &self,
        py: Python<'_>,
        x: Vec<Bound<'_, PyAny>>,
        y: Vec<Bound<'_, PyAny>>,
        epsilon: Option<Bound<'_, PyAny>>,
    ) -> PyResult<Py<PyAny>> {
        let eps = epsilon.as_ref().map(rational).transpose()?.unwrap_or_else(Rational::zero);
        let q = VerificationQuery::new(eps).map_err(err)?;
        let (x, y) = (strategy(x)?, strategy(y)?);
        let plain = verify_epsilon_ne(&self.inner, &x, &y, &q).map_err(err)?;
        let ws = verify_well_supported(&self.inner, &x, &y, &q).map_err(err)?;
        to_py(py, &serde_json::json!({"plain": plain, "well_supported": ws}))
    }

    #[pyo3(signature = (steps, smooth=true, seed=0, sampled=false))]
    fn dynamics(&self, py: Python<'_>, steps: usize, smooth: bool, seed: u64, sampled: bool) -> PyResult<Py<PyAny>> {
        let cfg = DynamicsConfig {
            seed,
            feedback: if sampled { FeedbackMode::Sampled } else { FeedbackMode::ExactMixed },
            ..DynamicsConfig::default()
        };
        let t = if smooth {
            smooth_fp_run(&self.inner, steps, &cfg)
        } else {
            fictitious_play_run(&self.inner, steps, &cfg)
        }
        .map_err(err)?;
        let avg = serde_json::json!({
            "average_x": t.average_x().map_err(err)?,
            "average_y": t.average_y().map_err(err)?,
            "trace": t,
        });
        to_py(py, &avg)
    }

    #[pyo3(signature = (epsilon, max_size=None, max_outcomes=None))]
    fn qptas(
        &self,
        py: Python<'_>,
        epsilon: Bound<'_, PyAny>,
        max_size: Option<usize>,
        max_outcomes: Option<u128>,
    ) -> PyResult<Py<PyAny>> {
        let r = sparse::qptas_search(&self.inner, &rational(&epsilon)?, max_size, &budget(max_outcomes)).map_err(err)?;
        to_py(py, &r)
    }

    #[pyo3(signature = (x, y, epsilon, seed=0, well_supported=true))]
    fn lmm_sample(
        &self,
        py: Python<'_>,
        x: Vec<Bound<'_, PyAny>>,
        y: Vec<Bound<'_, PyAny>>,
        epsilon: Bound<'_, PyAny>,
        seed: u64,
        well_supported: bool,
    ) -> PyResult<Py<PyAny>> {
        let crit = if well_supported { SuccessCriterion::WellSupported } else { SuccessCriterion::Plain };
        let r = sparse::lmm_sample(&self.inner, (&strategy(x)?, &strategy(y)?), &rational(&epsilon)?, seed, crit)
            .map_err(err)?;
        to_py(py, &r)
    }

    /// Price of anarchy over CE (`"ce"`) or CCE (`"cce"`) with welfare.
    fn poa(&self, py: Python<'_>, kind: &str) -> PyResult<Py<PyAny>> {
        let kind = match kind {
            "ce" => EquilibriumKind::Ce,
            "cce" => EquilibriumKind::Cce,
            other => return Err(PyValueError::new_err(format!("unknown kind {:?}", other))),
        };
        let r = correlated::poa_report(&self.inner.to_normal_form(), kind, None, &Budget::default()).map_err(err)?;
        to_py(py, &r)
    }

    fn __repr__(&self) -> String {
        let (m, n) = self.inner.shape();
        format!("Game({}x{})", m, n)
    }
}

/// Follows the line from the all-zeros vertex of an edge-list file.
#[pyfunction]
fn eol_solve(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let inst = EolInstance::parse(text).map_err(err)?;
    let (sol, counter) = tfnp::eol_solve(&inst).map_err(err)?;
    to_py(py, &serde_json::json!({"solution": sol, "queries": counter.count()}))
}

#[pyfunction]
fn sperner(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let inst = SpernerInstance::parse(text).map_err(err)?;
    let (count, cells) = tfnp::sperner_count(&inst);
    let found = tfnp::sperner_find(&inst).map_err(err)?;
    to_py(py, &serde_json::json!({"count": count, "cells": cells, "found": found}))
}

#[pyfunction]
fn random_sperner(n: usize, seed: u64) -> PyResult<String> {
    Ok(SpernerInstance::random(n, seed).map_err(err)?.to_text())
}

/// Fixed point of `p -> M p` for a column-stochastic 3x3 matrix.
#[pyfunction]
fn brouwer_affine(py: Python<'_>, m: Vec<Vec<Bound<'_, PyAny>>>, epsilon: Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let f = BrouwerFunction::affine(matrix(m)?).map_err(err)?;
    let grid = GridSpec::for_function(&f, rational(&epsilon)?).map_err(err)?;
    to_py(py, &tfnp::brouwer_fixed_point(&f, &grid).map_err(err)?)
}

/// Imitation game for a separable piecewise-linear map given as JSON.
#[pyfunction]
fn mt_game(function_json: &str, epsilon: Bound<'_, PyAny>) -> PyResult<Game> {
    let f = SeparableFunction::from_json(function_json).map_err(err)?;
    let cube = DiscretizedHypercube::new(f.dim(), rational(&epsilon)?).map_err(err)?;
    let map: GridMap = Arc::new(move |x: &[Rational]| f.eval(x));
    let mt = reductions::build_mt_game(map, &cube, &Budget::default()).map_err(err)?;
    Ok(Game { inner: mt.game })
}

#[pyfunction]
fn althofer(k: usize) -> PyResult<Game> {
    let g = reductions::build_althofer(k).map_err(err)?;
    Ok(Game {
        inner: g.game.to_bimatrix(),
    })
}

#[pyfunction]
fn althofer_punishment(py: Python<'_>, p: Vec<Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
    to_py(py, &reductions::althofer_punishment(&strategy(p)?).map_err(err)?)
}

#[pyfunction]
fn walrasian_exists(py: Python<'_>, market_json: &str) -> PyResult<Py<PyAny>> {
    let m = Market::from_json(market_json).map_err(err)?;
    to_py(py, &markets::walrasian_exists(&m, &Budget::default()).map_err(err)?)
}

#[pyfunction]
fn configuration_lp(py: Python<'_>, market_json: &str) -> PyResult<Py<PyAny>> {
    let m = Market::from_json(market_json).map_err(err)?;
    to_py(py, &markets::solve_configuration_lp(&m, &Budget::default()).map_err(err)?)
}

fn rule(y: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<InterimRule> {
    let y = y.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
    InterimRule::new(y, None).map_err(err)
}

/// Max-flow feasibility of interim rule `y` under a prior given as JSON.
#[pyfunction]
fn border_flow(py: Python<'_>, prior_json: &str, y: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Py<PyAny>> {
    let prior = Prior::from_json(prior_json).map_err(err)?;
    to_py(py, &border::feasibility_via_maxflow(&prior, &rule(y)?, &Budget::default()).map_err(err)?)
}

#[pyfunction]
fn border_violations(py: Python<'_>, prior_json: &str, y: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Py<PyAny>> {
    let prior = Prior::from_json(prior_json).map_err(err)?;
    to_py(py, &border::enumerate_border_violations(&prior, &rule(y)?, &Budget::default()).map_err(err)?)
}

#[pyfunction]
fn bic_revenue(py: Python<'_>, prior_json: &str) -> PyResult<Py<PyAny>> {
    let prior = Prior::from_json(prior_json).map_err(err)?;
    to_py(py, &border::optimal_bic_revenue(&prior, &Budget::default()).map_err(err)?)
}

#[pyfunction]
fn monopoly_price(support: Vec<Bound<'_, PyAny>>, probs: Vec<Bound<'_, PyAny>>) -> PyResult<(String, String)> {
    let b = border::BidderPrior::new(rationals(&support)?, rationals(&probs)?).map_err(err)?;
    let (r, rev) = border::monopoly_price(&b).map_err(err)?;
    Ok((r.to_string(), rev.to_string()))
}

#[pymodule]
#[pyo3(name = "eqlab")]
fn eqlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("InvariantViolation", m.py().get_type::<InvariantViolation>())?;
    m.add_class::<Game>()?;
    m.add_function(wrap_pyfunction!(eol_solve, m)?)?;
    m.add_function(wrap_pyfunction!(sperner, m)?)?;
    m.add_function(wrap_pyfunction!(random_sperner, m)?)?;
    m.add_function(wrap_pyfunction!(brouwer_affine, m)?)?;
    m.add_function(wrap_pyfunction!(mt_game, m)?)?;
    m.add_function(wrap_pyfunction!(althofer, m)?)?;
    m.add_function(wrap_pyfunction!(althofer_punishment, m)?)?;
    m.add_function(wrap_pyfunction!(walrasian_exists, m)?)?;
    m.add_function(wrap_pyfunction!(configuration_lp, m)?)?;
    m.add_function(wrap_pyfunction!(border_flow, m)?)?;
    m.add_function(wrap_pyfunction!(border_violations, m)?)?;
    m.add_function(wrap_pyfunction!(bic_revenue, m)?)?;
    m.add_function(wrap_pyfunction!(monopoly_price, m)?)?;
    Ok(())
}
