//! Anytime stopping with a law-of-the-iterated-logarithm confidence radius.
//!
//! The radius for an arm with `t` samples at per-arm confidence `ω` is
//!
//! ```text
//! (1 + √ε) · sqrt( 2σ² (1 + ε) ln( ln((1 + ε) t) / ω ) / t )
//! ```
//!
//! with `σ² = 1/4` for rewards in `[0, 1]`. The argument of the inner
//! logarithm is clamped below at `e`, so the radius is real for every
//! `t ≥ 2`; fewer than two samples give an infinite radius.

use super::{argmax_defined, check_delta, suffix_sample, StrategyOutcome};
use crate::env::{ArmStats, Environment, PlayRequest};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LilConfig {
    pub epsilon: f64,
    pub variance_proxy: f64,
}

impl Default for LilConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            variance_proxy: 0.25,
        }
    }
}

pub fn lil_radius(t: u64, omega: f64, cfg: &LilConfig) -> f64 {
    if t < 2 {
        return f64::INFINITY;
    }
    let eps = cfg.epsilon;
    let t = t as f64;
    let iterated = ((1.0 + eps) * t).max(std::f64::consts::E).ln();
    let log_term = (iterated / omega).ln();
    (1.0 + eps.sqrt()) * (2.0 * cfg.variance_proxy * (1.0 + eps) * log_term / t).sqrt()
}

/// Returns the arm whose lower confidence bound clears every other arm's
/// upper bound, using per-arm confidence `δ/n`.
pub fn lil_stopped(stats: &ArmStats, delta: f64, cfg: &LilConfig) -> Option<usize> {
    let n = stats.n();
    let counts = stats.sample_count();
    if counts.iter().any(|&t| t < 2) {
        return None;
    }
    let means: Vec<Option<f64>> = stats.empirical_means();
    let leader = argmax_defined(&means)?;
    if n == 1 {
        return Some(leader);
    }
    let omega = delta / n as f64;
    let lower = means[leader]? - lil_radius(counts[leader], omega, cfg);
    let clears = (0..n)
        .filter(|&j| j != leader)
        .all(|j| lower >= means[j].unwrap() + lil_radius(counts[j], omega, cfg));
    clears.then_some(leader)
}

/// Stop checks fire when the play count first exceeds `⌈1.5^k⌉`.
#[derive(Debug, Clone)]
pub struct CheckSchedule {
    k: i32,
    threshold: u64,
}

impl Default for CheckSchedule {
    fn default() -> Self {
        Self { k: 0, threshold: 1 }
    }
}

impl CheckSchedule {
    fn checkpoint(k: i32) -> u64 {
        1.5f64.powi(k).ceil() as u64
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    /// Plays still needed before the next check fires.
    pub fn plays_until_due(&self, plays: u64) -> u64 {
        (self.threshold + 1).saturating_sub(plays).max(1)
    }

    /// True when a check is due at `plays`; advances to the next checkpoint.
    pub fn due(&mut self, plays: u64) -> bool {
        if plays <= self.threshold {
            return false;
        }
        while self.threshold < plays {
            self.k += 1;
            self.threshold = Self::checkpoint(self.k);
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnytimeConfig {
    pub lil: LilConfig,
    /// Hard limit on plays before giving up.
    pub play_cap: u64,
    /// Per-arm batch of the first suffix-sampling pass; doubles afterwards.
    pub first_batch: u64,
}

impl Default for AnytimeConfig {
    fn default() -> Self {
        Self {
            lil: LilConfig::default(),
            play_cap: 100_000_000,
            first_batch: 16,
        }
    }
}

fn outcome(arm: usize, plays: u64, stats: &ArmStats) -> StrategyOutcome {
    StrategyOutcome {
        identified_arm: arm,
        total_plays: plays,
        line5_plays: plays,
        per_arm_samples: stats.sample_count().to_vec(),
        under_sampled: Vec::new(),
    }
}

fn cap_error(cap: u64, plays: u64, stats: &ArmStats) -> Error {
    Error::PlayCap {
        cap,
        plays,
        under_sampled: (0..stats.n()).filter(|&i| stats.sample_count()[i] < 2).collect(),
    }
}

/// Plays the full sequence until the LIL rule stops.
pub fn maximal_sampling_lil(env: &mut Environment, delta: f64, cfg: &AnytimeConfig) -> Result<StrategyOutcome> {
    check_delta(delta)?;
    let n = env.n();
    let full = PlayRequest::full(n)?;
    let mut stats = ArmStats::new(n);
    let mut schedule = CheckSchedule::default();
    let mut plays = 0u64;
    while plays < cfg.play_cap {
        let batch = schedule.plays_until_due(plays).min(cfg.play_cap - plays);
        let tally = env.play_repeated(&full, batch)?;
        for (arm, (&t, &x)) in tally.sampled.iter().zip(&tally.successes).enumerate() {
            stats.add(arm, t, x);
        }
        plays += batch;
        if schedule.due(plays) {
            if let Some(arm) = lil_stopped(&stats, delta, &cfg.lil) {
                return Ok(outcome(arm, plays, &stats));
            }
        }
    }
    Err(cap_error(cfg.play_cap, plays, &stats))
}

/// Repeated suffix-sampling passes over all arms with per-arm batches
/// `16, 32, 64, ...`, stopped by the LIL rule.
pub fn uniform_sampling_lil(env: &mut Environment, delta: f64, cfg: &AnytimeConfig) -> Result<StrategyOutcome> {
    check_delta(delta)?;
    let n = env.n();
    let arms: Vec<usize> = (0..n).collect();
    let mut stats = ArmStats::new(n);
    let mut schedule = CheckSchedule::default();
    let mut plays = 0u64;
    let mut batch = cfg.first_batch.max(1);
    while plays < cfg.play_cap {
        let sample = suffix_sample(env, &arms, batch)?;
        for (&arm, (&t, &x)) in arms.iter().zip(sample.samples.iter().zip(&sample.successes)) {
            stats.add(arm, t, x);
        }
        plays += sample.plays;
        if schedule.due(plays) {
            if let Some(arm) = lil_stopped(&stats, delta, &cfg.lil) {
                return Ok(outcome(arm, plays, &stats));
            }
        }
        batch = batch.saturating_mul(2);
    }
    Err(cap_error(cfg.play_cap, plays, &stats))
}
