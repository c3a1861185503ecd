//! The linked-bandit environment.
//!
//! [`play`] is the primitive: it draws rewards arm by arm and reveals the
//! prefix up to the first success. [`Environment`] bundles an instance with
//! its RNG stream, cumulative [`ArmStats`] and a [`PlayLedger`], and can
//! issue a request many times in one call.
//!
//! Repeated plays run in one of two [`SamplingMode`]s. `PerPlay` calls
//! [`play`] once per play. `Aggregated` draws, position by position, the
//! number of the remaining plays that end at each arm from a binomial. For a
//! block of identical requests the two give the same joint law of per-arm
//! sample counts, rewards and ledger entries; the aggregated path costs
//! `O(request length)` per block instead of `O(plays)`.

mod instance;
mod play;
mod rng;
mod stats;

pub use instance::{parse_means, read_means_file, BanditInstance};
pub use play::{play, PlayFeedback, PlayRequest};
pub use rng::{derive_stream_id, RngStream};
pub use stats::{record, ArmStats, PlayLedger};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingMode {
    /// One [`play`] call per play.
    PerPlay,
    /// Binomial draws per request position for a block of identical plays.
    #[default]
    Aggregated,
}

/// Outcome of issuing one request several times, indexed by position in the
/// request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatTally {
    pub plays: u64,
    /// Plays in which the arm at this position was sampled.
    pub sampled: Vec<u64>,
    /// Plays that ended with a reward of 1 at this position.
    pub successes: Vec<u64>,
    /// Plays with no positive reward.
    pub empty: u64,
}

impl RepeatTally {
    fn zeroed(len: usize) -> Self {
        Self {
            plays: 0,
            sampled: vec![0; len],
            successes: vec![0; len],
            empty: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Environment {
    instance: BanditInstance,
    rng: RngStream,
    stats: ArmStats,
    ledger: PlayLedger,
    mode: SamplingMode,
}

impl Environment {
    pub fn new(instance: BanditInstance, rng: RngStream) -> Self {
        let n = instance.n();
        Self {
            instance,
            rng,
            stats: ArmStats::new(n),
            ledger: PlayLedger::new(n),
            mode: SamplingMode::default(),
        }
    }

    pub fn with_mode(mut self, mode: SamplingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn mode(&self) -> SamplingMode {
        self.mode
    }

    pub fn instance(&self) -> &BanditInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn stats(&self) -> &ArmStats {
        &self.stats
    }

    pub fn ledger(&self) -> &PlayLedger {
        &self.ledger
    }

    pub fn total_plays(&self) -> u64 {
        self.ledger.total_plays()
    }

    pub fn rng(&self) -> &RngStream {
        &self.rng
    }

    /// One play, recorded into the stats and ledger.
    pub fn play(&mut self, request: &PlayRequest) -> Result<PlayFeedback> {
        let feedback = play(&self.instance, request, &mut self.rng)?;
        record(&mut self.stats, &mut self.ledger, &feedback);
        Ok(feedback)
    }

    /// Issues `request` `count` times and records every play.
    pub fn play_repeated(&mut self, request: &PlayRequest, count: u64) -> Result<RepeatTally> {
        request.check_against(self.n())?;
        let tally = match self.mode {
            SamplingMode::PerPlay => self.repeat_per_play(request, count)?,
            SamplingMode::Aggregated => self.repeat_aggregated(request, count),
        };
        Ok(tally)
    }

    fn repeat_per_play(&mut self, request: &PlayRequest, count: u64) -> Result<RepeatTally> {
        let mut tally = RepeatTally::zeroed(request.len());
        for _ in 0..count {
            let fb = self.play(request)?;
            for pos in 0..fb.len() {
                tally.sampled[pos] += 1;
            }
            match fb.success_arm() {
                Some(_) => tally.successes[fb.len() - 1] += 1,
                None => tally.empty += 1,
            }
        }
        tally.plays = count;
        Ok(tally)
    }

    fn repeat_aggregated(&mut self, request: &PlayRequest, count: u64) -> RepeatTally {
        let mut tally = RepeatTally::zeroed(request.len());
        let mut reaching = count;
        for (pos, &arm) in request.arms().iter().enumerate() {
            if reaching == 0 {
                break;
            }
            let hits = self.rng.binomial(reaching, self.instance.mean(arm));
            tally.sampled[pos] = reaching;
            tally.successes[pos] = hits;
            self.stats.add(arm, reaching, hits);
            reaching -= hits;
        }
        tally.empty = reaching;
        tally.plays = count;
        self.ledger.add(
            count,
            request.arms().iter().copied().zip(tally.successes.iter().copied()),
            reaching,
        );
        tally
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(means: Vec<f64>, mode: SamplingMode, stream: u64) -> Environment {
        Environment::new(BanditInstance::new(means).unwrap(), RngStream::new(42, stream)).with_mode(mode)
    }

    #[test]
    fn repeated_plays_keep_ledger_balanced() {
        for mode in [SamplingMode::PerPlay, SamplingMode::Aggregated] {
            let mut e = env(vec![0.2, 0.5, 0.1, 0.7], mode, 1);
            let full = PlayRequest::full(4).unwrap();
            let tail = PlayRequest::new(vec![1, 3], 4).unwrap();
            e.play_repeated(&full, 500).unwrap();
            e.play_repeated(&tail, 300).unwrap();
            e.play(&full).unwrap();
            let l = e.ledger();
            assert_eq!(l.total_plays(), 801);
            assert!(l.is_balanced());
            let x: u64 = e.stats().cum_reward().iter().sum();
            assert_eq!(x, l.success_count().iter().sum::<u64>());
        }
    }

    #[test]
    fn tally_is_consistent() {
        for mode in [SamplingMode::PerPlay, SamplingMode::Aggregated] {
            let mut e = env(vec![0.3, 0.3, 0.3], mode, 2);
            let req = PlayRequest::full(3).unwrap();
            let t = e.play_repeated(&req, 1000).unwrap();
            assert_eq!(t.sampled[0], 1000);
            for pos in 1..3 {
                assert_eq!(t.sampled[pos], t.sampled[pos - 1] - t.successes[pos - 1]);
            }
            assert_eq!(t.empty, t.sampled[2] - t.successes[2]);
            assert_eq!(e.stats().sample_count(), t.sampled.as_slice());
        }
    }

    #[test]
    fn same_stream_is_bit_identical() {
        for mode in [SamplingMode::PerPlay, SamplingMode::Aggregated] {
            let run = || {
                let mut e = env(vec![0.1, 0.4, 0.25], mode, 9);
                let req = PlayRequest::full(3).unwrap();
                let mut fbs = Vec::new();
                for _ in 0..50 {
                    fbs.push(e.play(&req).unwrap());
                }
                e.play_repeated(&req, 777).unwrap();
                (fbs, e.stats().clone(), e.ledger().clone())
            };
            assert_eq!(run(), run());
        }
    }

    #[test]
    fn modes_agree_in_distribution() {
        // Mean samples at the third position of a full play: 1 - 0.06 vs Monte Carlo.
        let means = vec![0.2, 0.25, 0.5];
        let expected_third = 0.8 * 0.75;
        for mode in [SamplingMode::PerPlay, SamplingMode::Aggregated] {
            let mut e = env(means.clone(), mode, 3);
            let req = PlayRequest::full(3).unwrap();
            let t = e.play_repeated(&req, 200_000).unwrap();
            let f = t.sampled[2] as f64 / 200_000.0;
            assert!((f - expected_third).abs() < 0.005, "{mode:?}: {f}");
            let e_empty = expected_third * 0.5;
            assert!((t.empty as f64 / 200_000.0 - e_empty).abs() < 0.005);
        }
    }
}
