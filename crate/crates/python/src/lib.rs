//! Python bindings. Arm indices are zero-based, as in the Rust library.

use std::path::PathBuf;

use linked_bandits as lb;
use linked_bandits::env::{BanditInstance, Environment, PlayRequest, RngStream, SamplingMode};
use linked_bandits::harness::{RunResult, ScenarioConfig, ScenarioKind, StrategyKind};
use linked_bandits::strategies::{AnytimeConfig, LilConfig, StrategyOutcome};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(linked_bandits_py, LinkedBanditsError, PyValueError);

fn err(e: lb::Error) -> PyErr {
    LinkedBanditsError::new_err(e.to_string())
}

#[pyclass(name = "BanditInstance", module = "linked_bandits_py", frozen)]
struct PyBanditInstance {
    inner: BanditInstance,
}

#[pymethods]
impl PyBanditInstance {
    #[new]
    fn new(means: Vec<f64>) -> PyResult<Self> {
        BanditInstance::new(means).map(|inner| Self { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        lb::env::read_means_file(&path).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn means(&self) -> Vec<f64> {
        self.inner.means().to_vec()
    }

    fn best_arm(&self) -> PyResult<usize> {
        self.inner.best_arm().map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("BanditInstance({:?})", self.inner.means())
    }
}

#[pyclass(name = "Environment", module = "linked_bandits_py")]
struct PyEnvironment {
    inner: Environment,
}

#[pymethods]
impl PyEnvironment {
    #[new]
    #[pyo3(signature = (instance, seed, stream=0, per_play=false))]
    fn new(instance: PyRef<'_, PyBanditInstance>, seed: u64, stream: u64, per_play: bool) -> Self {
        let mode = if per_play {
            SamplingMode::PerPlay
        } else {
            SamplingMode::Aggregated
        };
        Self {
            inner: Environment::new(instance.inner.clone(), RngStream::new(seed, stream)).with_mode(mode),
        }
    }

    /// One play of `arms`; returns the revealed prefix as `(sampled, rewards)`.
    fn play(&mut self, arms: Vec<usize>) -> PyResult<(Vec<usize>, Vec<bool>)> {
        let req = PlayRequest::new(arms, self.inner.n()).map_err(err)?;
        let fb = self.inner.play(&req).map_err(err)?;
        Ok((fb.sampled().to_vec(), fb.rewards().to_vec()))
    }

    /// `count` identical plays of `arms`; per-position counts.
    fn play_repeated<'py>(&mut self, py: Python<'py>, arms: Vec<usize>, count: u64) -> PyResult<Bound<'py, PyDict>> {
        let req = PlayRequest::new(arms, self.inner.n()).map_err(err)?;
        let tally = self.inner.play_repeated(&req, count).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("plays", tally.plays)?;
        d.set_item("sampled", tally.sampled)?;
        d.set_item("successes", tally.successes)?;
        d.set_item("empty", tally.empty)?;
        Ok(d)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner.mode() {
            SamplingMode::PerPlay => "per-play",
            SamplingMode::Aggregated => "aggregated",
        }
    }

    #[getter]
    fn total_plays(&self) -> u64 {
        self.inner.total_plays()
    }

    #[getter]
    fn empty_count(&self) -> u64 {
        self.inner.ledger().empty_count()
    }

    #[getter]
    fn success_counts(&self) -> Vec<u64> {
        self.inner.ledger().success_count().to_vec()
    }

    #[getter]
    fn sample_counts(&self) -> Vec<u64> {
        self.inner.stats().sample_count().to_vec()
    }

    #[getter]
    fn cum_rewards(&self) -> Vec<u64> {
        self.inner.stats().cum_reward().to_vec()
    }

    /// `None` for arms never sampled.
    fn empirical_means(&self) -> Vec<Option<f64>> {
        self.inner.stats().empirical_means()
    }

    fn ledger_balanced(&self) -> bool {
        self.inner.ledger().is_balanced()
    }
}

fn outcome_dict<'py>(py: Python<'py>, o: &StrategyOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("identified_arm", o.identified_arm)?;
    d.set_item("total_plays", o.total_plays)?;
    d.set_item("line5_plays", o.line5_plays)?;
    d.set_item("per_arm_samples", o.per_arm_samples.clone())?;
    d.set_item("under_sampled", o.under_sampled.clone())?;
    Ok(d)
}

fn anytime(play_cap: u64) -> AnytimeConfig {
    AnytimeConfig {
        play_cap,
        ..AnytimeConfig::default()
    }
}

#[pyfunction]
#[pyo3(signature = (instance, arms, seed, stream=0))]
fn play(
    instance: PyRef<'_, PyBanditInstance>,
    arms: Vec<usize>,
    seed: u64,
    stream: u64,
) -> PyResult<(Vec<usize>, Vec<bool>)> {
    let req = PlayRequest::new(arms, instance.inner.n()).map_err(err)?;
    let fb = lb::env::play(&instance.inner, &req, &mut RngStream::new(seed, stream)).map_err(err)?;
    Ok((fb.sampled().to_vec(), fb.rewards().to_vec()))
}

#[pyfunction]
fn suffix_sample<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    arms: Vec<usize>,
    t: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let s = lb::strategies::suffix_sample(&mut env.inner, &arms, t).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("means", s.means())?;
    d.set_item("arms", s.arms)?;
    d.set_item("samples", s.samples)?;
    d.set_item("successes", s.successes)?;
    d.set_item("plays", s.plays)?;
    Ok(d)
}

#[pyfunction]
fn maximal_sampling_fixed<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let o = lb::strategies::maximal_sampling_fixed(&mut env.inner, budget).map_err(err)?;
    outcome_dict(py, &o)
}

#[pyfunction]
fn uniform_sampling_fixed<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    t: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let o = lb::strategies::uniform_sampling_fixed(&mut env.inner, t).map_err(err)?;
    outcome_dict(py, &o)
}

#[pyfunction]
#[pyo3(signature = (env, delta, play_cap=100_000_000))]
fn maximal_sampling_lil<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    delta: f64,
    play_cap: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let o = lb::strategies::maximal_sampling_lil(&mut env.inner, delta, &anytime(play_cap)).map_err(err)?;
    outcome_dict(py, &o)
}

#[pyfunction]
#[pyo3(signature = (env, delta, play_cap=100_000_000))]
fn uniform_sampling_lil<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    delta: f64,
    play_cap: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let o = lb::strategies::uniform_sampling_lil(&mut env.inner, delta, &anytime(play_cap)).map_err(err)?;
    outcome_dict(py, &o)
}

#[pyfunction]
fn median_elimination<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    arms: Vec<usize>,
    epsilon: f64,
    delta: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let me = lb::strategies::median_elimination(&mut env.inner, &arms, epsilon, delta).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("arm", me.arm)?;
    d.set_item("plays", me.plays)?;
    d.set_item("rounds", me.rounds)?;
    Ok(d)
}

#[pyfunction]
fn linked_ege<'py>(
    py: Python<'py>,
    mut env: PyRefMut<'_, PyEnvironment>,
    delta: f64,
    min_gap: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let run = lb::strategies::linked_ege(&mut env.inner, delta, min_gap).map_err(err)?;
    let d = outcome_dict(py, &run.outcome)?;
    d.set_item("round_cap", run.schedule.round_cap)?;
    let rounds = run
        .rounds
        .iter()
        .map(|r| {
            let rd = PyDict::new(py);
            rd.set_item("round", r.params.round)?;
            rd.set_item("epsilon", r.params.epsilon)?;
            rd.set_item("delta", r.params.delta)?;
            rd.set_item("samples", r.params.samples)?;
            rd.set_item("survivors_before", r.survivors_before.clone())?;
            rd.set_item("survivors_after", r.survivors_after.clone())?;
            rd.set_item("reference_arm", r.reference_arm)?;
            rd.set_item("line5_plays", r.line5_plays)?;
            rd.set_item("median_plays", r.median_plays)?;
            Ok(rd)
        })
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("rounds", rounds)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (t, omega, epsilon=0.01))]
fn lil_radius(t: u64, omega: f64, epsilon: f64) -> f64 {
    let cfg = LilConfig {
        epsilon,
        ..LilConfig::default()
    };
    lb::strategies::lil_radius(t, omega, &cfg)
}

#[pyfunction]
fn gap_profile<'py>(py: Python<'py>, means: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let p = lb::complexity::gap_profile(&means).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("best_index", p.best_index)?;
    d.set_item("best_mean", p.best_mean)?;
    d.set_item("gaps", p.gaps)?;
    d.set_item("min_gap", p.min_gap)?;
    d.set_item("survival_prefix", p.survival_prefix)?;
    d.set_item("survival_all", p.survival_all)?;
    Ok(d)
}

#[pyfunction]
fn bounds<'py>(py: Python<'py>, means: Vec<f64>, delta: f64) -> PyResult<Bound<'py, PyDict>> {
    let (_, r) = lb::complexity::bound_report(&means, delta).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("delta", r.delta)?;
    d.set_item("maximal", r.maximal)?;
    d.set_item("uniform", r.uniform)?;
    d.set_item("ege", r.ege)?;
    d.set_item("lower", r.lower)?;
    d.set_item("convention", r.convention)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (kind, n, best_index=None))]
fn make_scenario(kind: &str, n: usize, best_index: Option<usize>) -> PyResult<PyBanditInstance> {
    let kind: ScenarioKind = kind.parse().map_err(err)?;
    lb::harness::make_scenario(kind, n, best_index)
        .map(|inner| PyBanditInstance { inner })
        .map_err(err)
}

fn row_dict<'py>(py: Python<'py>, r: &RunResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("scenario", r.scenario.name())?;
    d.set_item("n", r.n)?;
    d.set_item("strategy", r.strategy.name())?;
    d.set_item("trial", r.trial)?;
    d.set_item("seed", r.seed)?;
    d.set_item("delta", r.delta)?;
    d.set_item("plays_total", r.plays_total)?;
    d.set_item("plays_line5", r.plays_line5)?;
    d.set_item("samples_total", r.samples_total)?;
    d.set_item("identified_arm", r.identified_arm)?;
    d.set_item("correct", r.correct)?;
    d.set_item("fail_reason", r.fail_reason.clone())?;
    Ok(d)
}

/// Runs the harness. Returns a list of row dicts (zero-based
/// `identified_arm`), or with `csv=True` the exact CSV text the CLI writes.
#[pyfunction]
#[pyo3(signature = (
    scenario, delta, n_grid=Vec::new(), strategies=None, trials=1, seed=0,
    means_path=None, best_index=None, play_cap=100_000_000, per_play=false, csv=false
))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    py: Python<'_>,
    scenario: &str,
    delta: f64,
    n_grid: Vec<usize>,
    strategies: Option<Vec<String>>,
    trials: u32,
    seed: u64,
    means_path: Option<PathBuf>,
    best_index: Option<usize>,
    play_cap: u64,
    per_play: bool,
    csv: bool,
) -> PyResult<Py<PyAny>> {
    let kind: ScenarioKind = scenario.parse().map_err(err)?;
    let strategies = match strategies {
        None => StrategyKind::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| s.parse())
            .collect::<lb::Result<_>>()
            .map_err(err)?,
    };
    let config = ScenarioConfig {
        best_index,
        strategies,
        trials,
        seed,
        means_path,
        play_cap,
        mode: if per_play {
            SamplingMode::PerPlay
        } else {
            SamplingMode::Aggregated
        },
        ..ScenarioConfig::new(kind, n_grid, delta)
    };
    let rows = py.detach(|| lb::harness::run_experiment(&config)).map_err(err)?;
    if csv {
        let mut buf = Vec::new();
        lb::harness::write_csv(&rows, &mut buf).map_err(err)?;
        let text = String::from_utf8(buf).expect("CSV output is UTF-8");
        return Ok(text.into_pyobject(py)?.into_any().unbind());
    }
    let list = rows.iter().map(|r| row_dict(py, r)).collect::<PyResult<Vec<_>>>()?;
    Ok(list.into_pyobject(py)?.into_any().unbind())
}

#[pymodule]
fn linked_bandits_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LinkedBanditsError", m.py().get_type::<LinkedBanditsError>())?;
    m.add_class::<PyBanditInstance>()?;
    m.add_class::<PyEnvironment>()?;
    m.add_function(wrap_pyfunction!(play, m)?)?;
    m.add_function(wrap_pyfunction!(suffix_sample, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_sampling_fixed, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_sampling_fixed, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_sampling_lil, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_sampling_lil, m)?)?;
    m.add_function(wrap_pyfunction!(median_elimination, m)?)?;
    m.add_function(wrap_pyfunction!(linked_ege, m)?)?;
    m.add_function(wrap_pyfunction!(lil_radius, m)?)?;
    m.add_function(wrap_pyfunction!(gap_profile, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(make_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
