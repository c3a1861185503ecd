use crate::env::{Environment, PlayRequest};
use crate::{Error, Result};

/// Fresh per-arm samples gathered by one [`suffix_sample`] call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixSample {
    pub arms: Vec<usize>,
    /// Fresh samples per arm of `arms`; every entry equals the requested `t`.
    pub samples: Vec<u64>,
    /// Fresh rewards of 1 per arm of `arms`.
    pub successes: Vec<u64>,
    pub plays: u64,
}

impl SuffixSample {
    pub fn means(&self) -> Vec<f64> {
        self.successes
            .iter()
            .zip(&self.samples)
            .map(|(&x, &t)| x as f64 / t as f64)
            .collect()
    }

    pub fn mean_of(&self, arm: usize) -> Option<f64> {
        let pos = self.arms.iter().position(|&a| a == arm)?;
        Some(self.successes[pos] as f64 / self.samples[pos] as f64)
    }
}

/// Samples every arm of `subset` exactly `t` times.
///
/// Round `i` plays the suffix starting at the `i`-th arm of `subset` until
/// that arm holds `t` fresh samples. The leading arm is sampled on every play
/// of its round, so the rounds after the first need only as many plays as
/// the previous leading arm collected rewards, and the plays used are
/// `t + X_1 + ... + X_{k-1}` with `X_j` the fresh rewards of the `j`-th arm.
pub fn suffix_sample(env: &mut Environment, subset: &[usize], t: u64) -> Result<SuffixSample> {
    if t == 0 {
        return Err(Error::ZeroSamples);
    }
    // validates nonempty, ordered and in range
    PlayRequest::new(subset.to_vec(), env.n())?;

    let k = subset.len();
    let mut samples = vec![0u64; k];
    let mut successes = vec![0u64; k];
    let mut plays = 0;
    for lead in 0..k {
        let missing = t - samples[lead];
        if missing == 0 {
            continue;
        }
        let request = PlayRequest::new(subset[lead..].to_vec(), env.n())?;
        let tally = env.play_repeated(&request, missing)?;
        for (offset, (s, x)) in tally.sampled.iter().zip(&tally.successes).enumerate() {
            samples[lead + offset] += s;
            successes[lead + offset] += x;
        }
        plays += missing;
        debug_assert_eq!(samples[lead], t);
    }
    Ok(SuffixSample {
        arms: subset.to_vec(),
        samples,
        successes,
        plays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{BanditInstance, RngStream, SamplingMode};

    fn env(means: Vec<f64>, seed: u64, mode: SamplingMode) -> Environment {
        Environment::new(BanditInstance::new(means).unwrap(), RngStream::new(seed, 0)).with_mode(mode)
    }

    #[test]
    fn rejects_bad_arguments() {
        let mut e = env(vec![0.5; 3], 1, SamplingMode::PerPlay);
        assert_eq!(suffix_sample(&mut e, &[0, 1], 0), Err(Error::ZeroSamples));
        assert_eq!(suffix_sample(&mut e, &[], 5), Err(Error::EmptyRequest));
        assert!(matches!(
            suffix_sample(&mut e, &[2, 1], 5),
            Err(Error::NotIncreasing { .. })
        ));
        assert!(matches!(
            suffix_sample(&mut e, &[0, 3], 5),
            Err(Error::ArmOutOfRange { .. })
        ));
    }

    #[test]
    fn single_arm_uses_exactly_t_plays() {
        for mode in [SamplingMode::PerPlay, SamplingMode::Aggregated] {
            let mut e = env(vec![0.2, 0.7, 0.4], 3, mode);
            let s = suffix_sample(&mut e, &[1], 500).unwrap();
            assert_eq!(s.plays, 500);
            assert_eq!(s.samples, vec![500]);
            assert_eq!(e.stats().sample_count(), &[0, 500, 0]);
        }
    }

    #[test]
    fn zero_means_need_t_plays() {
        let mut e = env(vec![0.0; 5], 3, SamplingMode::PerPlay);
        let s = suffix_sample(&mut e, &[0, 1, 2, 3, 4], 100).unwrap();
        assert_eq!(s.plays, 100);
        assert!(s.samples.iter().all(|&x| x == 100));
    }

    #[test]
    fn subset_with_gaps() {
        let mut e = env(vec![0.3, 0.9, 0.2, 0.6, 0.1], 5, SamplingMode::PerPlay);
        let s = suffix_sample(&mut e, &[0, 2, 4], 200).unwrap();
        assert_eq!(s.samples, vec![200, 200, 200]);
        assert_eq!(s.plays, 200 + s.successes[0] + s.successes[1]);
        assert_eq!(e.stats().sample_count()[1], 0);
        assert_eq!(e.stats().sample_count()[3], 0);
    }

    #[test]
    fn expected_plays_four_halves() {
        // E[plays] = t (1 + Σ_{j<4} μ_j) = 2000 * 2.5
        let mut total = 0u64;
        for rep in 0..200 {
            let mut e = env(vec![0.5; 4], 1000 + rep, SamplingMode::PerPlay);
            total += suffix_sample(&mut e, &[0, 1, 2, 3], 2000).unwrap().plays;
        }
        let mean = total as f64 / 200.0;
        assert!((mean - 5000.0).abs() < 0.02 * 5000.0, "{mean}");
    }
}
