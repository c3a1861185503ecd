use super::{ceil_count, check_delta, median_elimination, suffix_sample, StrategyOutcome};
use crate::env::Environment;
use crate::{Error, Result};

/// Per-round parameters of LinkedEGE for a fixed `(δ, Δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgeSchedule {
    pub delta: f64,
    pub min_gap: f64,
    /// `⌈log₂(1/Δ)⌉`, at least 1.
    pub round_cap: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgeRoundParams {
    pub round: u32,
    /// `2^-r / 4`
    pub epsilon: f64,
    /// `δ / (50 r³)`
    pub delta: f64,
    /// `⌈(2/ε_r²) ln(2/δ_r)⌉`
    pub samples: u64,
}

impl EgeSchedule {
    pub fn new(delta: f64, min_gap: f64) -> Result<Self> {
        check_delta(delta)?;
        if !(min_gap > 0.0 && min_gap <= 1.0) {
            return Err(Error::InvalidGap(min_gap));
        }
        let round_cap = ((1.0 / min_gap).log2().ceil() as u32).max(1);
        Ok(Self {
            delta,
            min_gap,
            round_cap,
        })
    }

    pub fn round(&self, r: u32) -> EgeRoundParams {
        let epsilon = 0.25 * 0.5f64.powi(r as i32);
        let delta = self.delta / (50.0 * f64::from(r).powi(3));
        let samples = ceil_count(2.0 / (epsilon * epsilon) * (2.0 / delta).ln());
        EgeRoundParams {
            round: r,
            epsilon,
            delta,
            samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EgeRound {
    pub params: EgeRoundParams,
    pub survivors_before: Vec<usize>,
    pub survivors_after: Vec<usize>,
    /// Arm returned by MedianElimination this round.
    pub reference_arm: usize,
    pub line5_plays: u64,
    pub median_plays: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EgeRun {
    pub outcome: StrategyOutcome,
    pub schedule: EgeSchedule,
    pub rounds: Vec<EgeRound>,
}

/// LinkedEGE: exponential-gap elimination over suffix sampling, capped at
/// `⌈log₂(1/Δ)⌉` rounds.
///
/// Each round draws fresh means from `suffix_sample(S_r, t_r)`, gets a
/// reference arm `i_r` from MedianElimination at `(ε_r/2, δ_r)` and drops
/// every arm whose round mean falls more than `ε_r` below the reference
/// arm's round mean. The sole survivor is returned; if the cap ends the loop
/// with several left, the last reference arm is.
pub fn linked_ege(env: &mut Environment, delta: f64, min_gap: f64) -> Result<EgeRun> {
    let schedule = EgeSchedule::new(delta, min_gap)?;
    let n = env.n();
    let before: Vec<u64> = env.stats().sample_count().to_vec();

    let mut survivors: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();
    let mut last_reference = None;
    let (mut line5, mut total) = (0u64, 0u64);
    let mut r = 1;
    while survivors.len() > 1 && r <= schedule.round_cap {
        let params = schedule.round(r);
        let sample = suffix_sample(env, &survivors, params.samples)?;
        let median = median_elimination(env, &survivors, params.epsilon / 2.0, params.delta)?;
        let reference = sample.mean_of(median.arm).expect("reference arm is a survivor");
        let means = sample.means();
        let kept: Vec<usize> = survivors
            .iter()
            .zip(&means)
            .filter(|&(_, &m)| m >= reference - params.epsilon)
            .map(|(&a, _)| a)
            .collect();

        line5 += sample.plays;
        total += sample.plays + median.plays;
        last_reference = Some(median.arm);
        rounds.push(EgeRound {
            params,
            survivors_before: std::mem::replace(&mut survivors, kept.clone()),
            survivors_after: kept,
            reference_arm: median.arm,
            line5_plays: sample.plays,
            median_plays: median.plays,
        });
        r += 1;
    }

    let identified_arm = if survivors.len() == 1 {
        survivors[0]
    } else {
        last_reference.expect("loop runs at least once when several arms remain")
    };
    let per_arm_samples = env
        .stats()
        .sample_count()
        .iter()
        .zip(&before)
        .map(|(a, b)| a - b)
        .collect();
    Ok(EgeRun {
        outcome: StrategyOutcome {
            identified_arm,
            total_plays: total,
            line5_plays: line5,
            per_arm_samples,
            under_sampled: Vec::new(),
        },
        schedule,
        rounds,
    })
}
