use super::PlayFeedback;

/// Per-arm cumulative rewards `X_i` and sample counts `t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmStats {
    cum_reward: Vec<u64>,
    sample_count: Vec<u64>,
}

impl ArmStats {
    pub fn new(n: usize) -> Self {
        Self {
            cum_reward: vec![0; n],
            sample_count: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.sample_count.len()
    }

    pub fn cum_reward(&self) -> &[u64] {
        &self.cum_reward
    }

    pub fn sample_count(&self) -> &[u64] {
        &self.sample_count
    }

    pub fn record(&mut self, feedback: &PlayFeedback) {
        for (&arm, &hit) in feedback.sampled().iter().zip(feedback.rewards()) {
            self.sample_count[arm] += 1;
            self.cum_reward[arm] += u64::from(hit);
        }
    }

    pub(crate) fn add(&mut self, arm: usize, samples: u64, rewards: u64) {
        debug_assert!(rewards <= samples);
        self.sample_count[arm] += samples;
        self.cum_reward[arm] += rewards;
    }

    /// `X_i / t_i`, or `None` for arms that were never sampled.
    pub fn empirical_mean(&self, arm: usize) -> Option<f64> {
        match self.sample_count[arm] {
            0 => None,
            t => Some(self.cum_reward[arm] as f64 / t as f64),
        }
    }

    pub fn empirical_means(&self) -> Vec<Option<f64>> {
        (0..self.n()).map(|i| self.empirical_mean(i)).collect()
    }

    pub fn total_samples(&self) -> u64 {
        self.sample_count.iter().sum()
    }

    /// Arms with no samples at all.
    pub fn unsampled(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.sample_count[i] == 0).collect()
    }
}

/// Play accounting: every play ends with exactly one positive reward (at the
/// arm counted in `success_count`) or with none (`empty_count`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayLedger {
    total_plays: u64,
    success_count: Vec<u64>,
    empty_count: u64,
}

impl PlayLedger {
    pub fn new(n: usize) -> Self {
        Self {
            total_plays: 0,
            success_count: vec![0; n],
            empty_count: 0,
        }
    }

    pub fn total_plays(&self) -> u64 {
        self.total_plays
    }

    pub fn success_count(&self) -> &[u64] {
        &self.success_count
    }

    pub fn empty_count(&self) -> u64 {
        self.empty_count
    }

    pub fn record(&mut self, feedback: &PlayFeedback) {
        self.total_plays += 1;
        match feedback.success_arm() {
            Some(arm) => self.success_count[arm] += 1,
            None => self.empty_count += 1,
        }
    }

    pub(crate) fn add(&mut self, plays: u64, successes: impl IntoIterator<Item = (usize, u64)>, empty: u64) {
        self.total_plays += plays;
        for (arm, s) in successes {
            self.success_count[arm] += s;
        }
        self.empty_count += empty;
        debug_assert!(self.is_balanced());
    }

    /// `T = Σ u_i + empty_count`.
    pub fn is_balanced(&self) -> bool {
        self.total_plays == self.success_count.iter().sum::<u64>() + self.empty_count
    }
}

/// Applies one play's feedback to both the statistics and the ledger.
pub fn record(stats: &mut ArmStats, ledger: &mut PlayLedger, feedback: &PlayFeedback) {
    stats.record(feedback);
    ledger.record(feedback);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{play, BanditInstance, PlayRequest, RngStream};

    fn feedback(n: usize, arms: Vec<usize>, means: Vec<f64>) -> PlayFeedback {
        // deterministic means force the desired feedback
        let inst = BanditInstance::new(means).unwrap();
        let req = PlayRequest::new(arms, n).unwrap();
        play(&inst, &req, &mut RngStream::new(0, 0)).unwrap()
    }

    #[test]
    fn record_success_at_second_arm() {
        let fb = feedback(4, vec![0, 1], vec![0.0, 1.0, 0.0, 0.0]);
        let mut stats = ArmStats::new(4);
        let mut ledger = PlayLedger::new(4);
        record(&mut stats, &mut ledger, &fb);
        assert_eq!(stats.sample_count(), &[1, 1, 0, 0]);
        assert_eq!(stats.cum_reward(), &[0, 1, 0, 0]);
        assert_eq!(ledger.success_count(), &[0, 1, 0, 0]);
        assert_eq!(ledger.total_plays(), 1);
        assert!(ledger.is_balanced());
    }

    #[test]
    fn record_empty_play() {
        let fb = feedback(3, vec![0, 1, 2], vec![0.0; 3]);
        let mut stats = ArmStats::new(3);
        let mut ledger = PlayLedger::new(3);
        record(&mut stats, &mut ledger, &fb);
        assert_eq!(stats.sample_count(), &[1, 1, 1]);
        assert_eq!(stats.cum_reward(), &[0, 0, 0]);
        assert_eq!(ledger.empty_count(), 1);
        assert_eq!(ledger.total_plays(), 1);
    }

    #[test]
    fn empirical_means_flag_unsampled() {
        let mut stats = ArmStats::new(2);
        stats.add(0, 10, 3);
        assert_eq!(stats.empirical_means(), vec![Some(0.3), None]);
        assert_eq!(stats.unsampled(), vec![1]);

        let mut all = ArmStats::new(3);
        for i in 0..3 {
            all.add(i, 7, 7);
        }
        assert!(all.empirical_means().iter().all(|m| *m == Some(1.0)));
    }
}
