//! Monte Carlo experiments over the three synthetic scenarios (or a means
//! file): scenario construction, single trials, experiment grids, CSV and
//! SVG output.

mod csv;
mod svg;

pub use self::csv::{parse_csv, read_csv, write_csv, CSV_HEADER};
pub use self::svg::{render_svg, BoundPoint};

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::complexity::{bound_ege, bound_maximal, bound_uniform, gap_profile};
use crate::env::{derive_stream_id, read_means_file, BanditInstance, Environment, PlayLedger, RngStream, SamplingMode};
use crate::strategies::{linked_ege, maximal_sampling_lil, uniform_sampling_lil, AnytimeConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioKind {
    OneSparse,
    Decreasing,
    Increasing,
    File,
}

impl ScenarioKind {
    pub const GENERATED: [ScenarioKind; 3] = [Self::OneSparse, Self::Decreasing, Self::Increasing];

    pub fn name(self) -> &'static str {
        match self {
            Self::OneSparse => "one-sparse",
            Self::Decreasing => "decreasing",
            Self::Increasing => "increasing",
            Self::File => "file",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-sparse" => Ok(Self::OneSparse),
            "decreasing" => Ok(Self::Decreasing),
            "increasing" => Ok(Self::Increasing),
            "file" => Ok(Self::File),
            other => Err(Error::InvalidScenario(format!("unknown scenario {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyKind {
    /// Full-sequence plays, LIL-stopped.
    Maximal,
    /// Suffix sampling in doubling batches, LIL-stopped.
    Uniform,
    /// LinkedEGE with the true minimum gap.
    Ege,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] = [Self::Maximal, Self::Uniform, Self::Ege];

    pub fn name(self) -> &'static str {
        match self {
            Self::Maximal => "maximal",
            Self::Uniform => "uniform",
            Self::Ege => "ege",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximal" => Ok(Self::Maximal),
            "uniform" => Ok(Self::Uniform),
            "ege" => Ok(Self::Ege),
            other => Err(Error::InvalidScenario(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Means of a generated scenario. `best_index` (zero-based) places the best
/// arm of the one-sparse scenario and defaults to the last arm.
pub fn make_scenario(kind: ScenarioKind, n: usize, best_index: Option<usize>) -> Result<BanditInstance> {
    if n < 2 {
        return Err(Error::InvalidScenario(format!(
            "generated scenarios need n >= 2, got {n}"
        )));
    }
    let means = match kind {
        ScenarioKind::OneSparse => {
            let best = best_index.unwrap_or(n - 1);
            if best >= n {
                return Err(Error::InvalidScenario(format!(
                    "best index {} out of range for n = {n}",
                    best + 1
                )));
            }
            (0..n).map(|i| if i == best { 0.1 } else { 0.05 }).collect()
        }
        ScenarioKind::Decreasing => (0..n)
            .map(|i| {
                if i == 0 {
                    0.05
                } else {
                    0.05 - 0.005 * 0.95f64.powf((n - 1 - i) as f64 / 2.0)
                }
            })
            .collect(),
        ScenarioKind::Increasing => (1..=n).map(|i| i as f64 / n as f64).collect(),
        ScenarioKind::File => {
            return Err(Error::InvalidScenario(
                "file scenarios are loaded from a means file".into(),
            ));
        }
    };
    BanditInstance::new(means)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSettings {
    pub delta: f64,
    pub anytime: AnytimeConfig,
    pub mode: SamplingMode,
}

impl TrialSettings {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            anytime: AnytimeConfig::default(),
            mode: SamplingMode::default(),
        }
    }
}

/// LinkedEGE round bookkeeping kept for invariant checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EgeTrace {
    pub rounds: u32,
    pub round_cap: u32,
    pub best_always_survived: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub identified_arm: Option<usize>,
    pub plays_total: u64,
    pub plays_line5: u64,
    pub samples_total: u64,
    pub correct: bool,
    pub fail_reason: Option<String>,
    pub ledger: PlayLedger,
    pub ege: Option<EgeTrace>,
}

/// One trial on a fresh environment. Strategy failures (the play cap) come
/// back as a failed report rather than an error.
pub fn run_trial(
    instance: &BanditInstance,
    strategy: StrategyKind,
    settings: &TrialSettings,
    rng: RngStream,
) -> Result<TrialReport> {
    let profile = gap_profile(instance.means())?;
    let mut env = Environment::new(instance.clone(), rng).with_mode(settings.mode);
    let mut ege = None;
    let result = match strategy {
        StrategyKind::Maximal => maximal_sampling_lil(&mut env, settings.delta, &settings.anytime),
        StrategyKind::Uniform => uniform_sampling_lil(&mut env, settings.delta, &settings.anytime),
        StrategyKind::Ege => {
            let gap = profile.min_gap.min(1.0);
            linked_ege(&mut env, settings.delta, gap).map(|run| {
                ege = Some(EgeTrace {
                    rounds: run.rounds.len() as u32,
                    round_cap: run.schedule.round_cap,
                    best_always_survived: run
                        .rounds
                        .iter()
                        .all(|r| r.survivors_after.contains(&profile.best_index)),
                });
                run.outcome
            })
        }
    };
    let plays_total = env.total_plays();
    let samples_total = env.stats().total_samples();
    let ledger = env.ledger().clone();
    Ok(match result {
        Ok(outcome) => TrialReport {
            identified_arm: Some(outcome.identified_arm),
            plays_total,
            plays_line5: outcome.line5_plays,
            samples_total,
            correct: outcome.identified_arm == profile.best_index,
            fail_reason: None,
            ledger,
            ege,
        },
        Err(Error::PlayCap { .. }) => TrialReport {
            identified_arm: None,
            plays_total,
            plays_line5: plays_total,
            samples_total,
            correct: false,
            fail_reason: Some("play cap".into()),
            ledger,
            ege,
        },
        Err(e) => return Err(e),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub strategy: StrategyKind,
    pub trial: u32,
    /// Base seed; the trial's stream id is derived from the other labels.
    pub seed: u64,
    pub delta: f64,
    pub plays_total: u64,
    pub plays_line5: u64,
    pub samples_total: u64,
    /// Zero-based.
    pub identified_arm: Option<usize>,
    pub correct: bool,
    pub fail_reason: Option<String>,
}

pub fn trial_stream(seed: u64, scenario: ScenarioKind, n: usize, strategy: StrategyKind, trial: u32) -> RngStream {
    let id = derive_stream_id(&[scenario as u64, n as u64, strategy as u64, u64::from(trial)]);
    RngStream::new(seed, id)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Arm counts to sweep; ignored for file scenarios.
    pub n_grid: Vec<usize>,
    /// Zero-based best arm of the one-sparse scenario; `None` means last.
    pub best_index: Option<usize>,
    pub delta: f64,
    pub strategies: Vec<StrategyKind>,
    pub trials: u32,
    pub seed: u64,
    pub means_path: Option<PathBuf>,
    pub play_cap: u64,
    pub mode: SamplingMode,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind, n_grid: Vec<usize>, delta: f64) -> Self {
        Self {
            kind,
            n_grid,
            best_index: None,
            delta,
            strategies: StrategyKind::ALL.to_vec(),
            trials: 1,
            seed: 0,
            means_path: None,
            play_cap: AnytimeConfig::default().play_cap,
            mode: SamplingMode::default(),
        }
    }

    fn settings(&self) -> TrialSettings {
        TrialSettings {
            delta: self.delta,
            anytime: AnytimeConfig {
                play_cap: self.play_cap,
                ..AnytimeConfig::default()
            },
            mode: self.mode,
        }
    }

    /// Instances to run, validated up front.
    pub fn instances(&self) -> Result<Vec<BanditInstance>> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidDelta(self.delta));
        }
        if self.trials == 0 {
            return Err(Error::InvalidScenario("trials must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidScenario("no strategies selected".into()));
        }
        let instances = match self.kind {
            ScenarioKind::File => {
                let path: &Path = self
                    .means_path
                    .as_deref()
                    .ok_or_else(|| Error::InvalidScenario("file scenario needs a means path".into()))?;
                vec![read_means_file(path)?]
            }
            kind => {
                if self.n_grid.is_empty() {
                    return Err(Error::InvalidScenario("empty n grid".into()));
                }
                self.n_grid
                    .iter()
                    .map(|&n| make_scenario(kind, n, self.best_index))
                    .collect::<Result<_>>()?
            }
        };
        for inst in &instances {
            inst.best_arm()?;
        }
        Ok(instances)
    }
}

/// Runs every `(n, strategy, trial)` cell. Trials execute in parallel; rows
/// come back sorted by `(scenario, n, strategy, trial)`.
pub fn run_experiment(config: &ScenarioConfig) -> Result<Vec<RunResult>> {
    let instances = config.instances()?;
    let settings = config.settings();
    let mut jobs = Vec::new();
    for inst in &instances {
        for &strategy in &config.strategies {
            for trial in 0..config.trials {
                jobs.push((inst, strategy, trial));
            }
        }
    }
    let mut rows = jobs
        .into_par_iter()
        .map(|(inst, strategy, trial)| {
            let rng = trial_stream(config.seed, config.kind, inst.n(), strategy, trial);
            let report = run_trial(inst, strategy, &settings, rng)?;
            Ok(RunResult {
                scenario: config.kind,
                n: inst.n(),
                strategy,
                trial,
                seed: config.seed,
                delta: config.delta,
                plays_total: report.plays_total,
                plays_line5: report.plays_line5,
                samples_total: report.samples_total,
                identified_arm: report.identified_arm,
                correct: report.correct,
                fail_reason: report.fail_reason,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.scenario, r.n, r.strategy, r.trial));
    Ok(rows)
}

pub fn emit_csv(rows: &[RunResult], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(rows, std::io::BufWriter::new(file))
}

pub fn emit_svg(rows: &[RunResult], bounds: &[BoundPoint], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidScenario("cannot plot an empty table".into()));
    }
    std::fs::write(path, render_svg(&summarize(rows), bounds)).map_err(|e| Error::io(path, e))
}

/// Aggregate over the trials of one `(scenario, n, strategy)` cell. Play
/// statistics use `plays_line5`, the accounting that excludes
/// MedianElimination's internal plays (identical to `plays_total` for the
/// LIL-stopped strategies).
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub strategy: StrategyKind,
    pub trials: usize,
    pub mean_plays: f64,
    pub min_plays: u64,
    pub max_plays: u64,
    pub mean_plays_total: f64,
    pub errors: usize,
    pub failures: usize,
}

impl CellSummary {
    pub fn error_rate(&self) -> f64 {
        self.errors as f64 / self.trials as f64
    }
}

pub fn summarize(rows: &[RunResult]) -> Vec<CellSummary> {
    let mut cells: Vec<CellSummary> = Vec::new();
    for row in rows {
        let key = (row.scenario, row.n, row.strategy);
        let cell = match cells.iter_mut().find(|c| (c.scenario, c.n, c.strategy) == key) {
            Some(c) => c,
            None => {
                cells.push(CellSummary {
                    scenario: row.scenario,
                    n: row.n,
                    strategy: row.strategy,
                    trials: 0,
                    mean_plays: 0.0,
                    min_plays: u64::MAX,
                    max_plays: 0,
                    mean_plays_total: 0.0,
                    errors: 0,
                    failures: 0,
                });
                cells.last_mut().unwrap()
            }
        };
        cell.trials += 1;
        cell.mean_plays += row.plays_line5 as f64;
        cell.mean_plays_total += row.plays_total as f64;
        cell.min_plays = cell.min_plays.min(row.plays_line5);
        cell.max_plays = cell.max_plays.max(row.plays_line5);
        cell.errors += usize::from(!row.correct);
        cell.failures += usize::from(row.fail_reason.is_some());
    }
    for c in &mut cells {
        c.mean_plays /= c.trials as f64;
        c.mean_plays_total /= c.trials as f64;
    }
    cells.sort_by_key(|c| (c.scenario, c.n, c.strategy));
    cells
}

/// Theoretical bound per `(n, strategy)` for the overlay of [`render_svg`].
pub fn bound_overlay(config: &ScenarioConfig) -> Result<Vec<BoundPoint>> {
    let mut points = Vec::new();
    for inst in config.instances()? {
        let means = inst.means();
        let profile = gap_profile(means)?;
        for &strategy in &config.strategies {
            let value = match strategy {
                StrategyKind::Maximal => bound_maximal(&profile, config.delta)?,
                StrategyKind::Uniform => bound_uniform(&profile, means, config.delta)?,
                StrategyKind::Ege => bound_ege(&profile, means, config.delta)?,
            };
            if value.is_finite() && value > 0.0 {
                points.push(BoundPoint {
                    scenario: config.kind,
                    n: inst.n(),
                    strategy,
                    value,
                });
            }
        }
    }
    Ok(points)
}
