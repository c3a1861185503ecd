use super::{argmax_defined, suffix_sample, StrategyOutcome};
use crate::env::{Environment, PlayRequest};
use crate::{Error, Result};

/// Plays the whole arm sequence `budget` times and returns the empirical
/// best among arms that received at least one sample.
pub fn maximal_sampling_fixed(env: &mut Environment, budget: u64) -> Result<StrategyOutcome> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = env.n();
    let tally = env.play_repeated(&PlayRequest::full(n)?, budget)?;
    let means: Vec<Option<f64>> = tally
        .sampled
        .iter()
        .zip(&tally.successes)
        .map(|(&t, &x)| (t > 0).then(|| x as f64 / t as f64))
        .collect();
    let identified_arm = argmax_defined(&means).expect("the first arm is sampled on every play");
    Ok(StrategyOutcome {
        identified_arm,
        total_plays: budget,
        line5_plays: budget,
        under_sampled: (0..n).filter(|&i| tally.sampled[i] == 0).collect(),
        per_arm_samples: tally.sampled,
    })
}

/// One suffix-sampling pass with `t` samples per arm, then the argmax.
pub fn uniform_sampling_fixed(env: &mut Environment, t: u64) -> Result<StrategyOutcome> {
    let arms: Vec<usize> = (0..env.n()).collect();
    let sample = suffix_sample(env, &arms, t)?;
    let means: Vec<Option<f64>> = sample.means().into_iter().map(Some).collect();
    Ok(StrategyOutcome {
        identified_arm: argmax_defined(&means).expect("at least one arm"),
        total_plays: sample.plays,
        line5_plays: sample.plays,
        per_arm_samples: sample.samples,
        under_sampled: Vec::new(),
    })
}
