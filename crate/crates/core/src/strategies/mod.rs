//! Sampling procedures for linked bandits.
//!
//! Everything that needs uniform per-arm samples goes through
//! [`suffix_sample`]; the fixed-budget procedures, MedianElimination and
//! LinkedEGE are built on it. The anytime variants of maximal and uniform
//! sampling stop with the LIL rule in [`lil`].

mod ege;
mod fixed;
pub mod lil;
mod median;
mod suffix;

pub use ege::{linked_ege, EgeRound, EgeRoundParams, EgeRun, EgeSchedule};
pub use fixed::{maximal_sampling_fixed, uniform_sampling_fixed};
pub use lil::{
    lil_radius, lil_stopped, maximal_sampling_lil, uniform_sampling_lil, AnytimeConfig, CheckSchedule, LilConfig,
};
pub use median::{median_elimination, MedianElimination};
pub use suffix::{suffix_sample, SuffixSample};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyOutcome {
    pub identified_arm: usize,
    pub total_plays: u64,
    /// Plays outside MedianElimination calls; equal to `total_plays` except
    /// for LinkedEGE.
    pub line5_plays: u64,
    pub per_arm_samples: Vec<u64>,
    /// Arms excluded from the final argmax because they had no samples.
    pub under_sampled: Vec<usize>,
}

impl StrategyOutcome {
    pub fn is_under_sampled(&self) -> bool {
        !self.under_sampled.is_empty()
    }
}

/// Index of the largest defined value, lowest index on ties.
pub(crate) fn argmax_defined(values: &[Option<f64>]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.iter().enumerate() {
        if let Some(v) = *v {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

/// Real-valued sample counts always round up.
pub(crate) fn ceil_count(x: f64) -> u64 {
    x.ceil() as u64
}
