use super::{BanditInstance, RngStream};
use crate::{Error, Result};

/// A strictly increasing, nonempty list of arm indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayRequest {
    arms: Vec<usize>,
}

impl PlayRequest {
    pub fn new(arms: Vec<usize>, n: usize) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::EmptyRequest);
        }
        for pair in arms.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::NotIncreasing {
                    prev: pair[0],
                    next: pair[1],
                });
            }
        }
        let last = *arms.last().unwrap();
        if last >= n {
            return Err(Error::ArmOutOfRange { arm: last, n });
        }
        Ok(Self { arms })
    }

    /// Every arm of an `n`-armed instance, in order.
    pub fn full(n: usize) -> Result<Self> {
        Self::new((0..n).collect(), n)
    }

    pub fn arms(&self) -> &[usize] {
        &self.arms
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub(crate) fn check_against(&self, n: usize) -> Result<()> {
        let last = *self.arms.last().expect("requests are nonempty");
        if last >= n {
            return Err(Error::ArmOutOfRange { arm: last, n });
        }
        Ok(())
    }
}

/// The revealed prefix of one play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayFeedback {
    sampled: Vec<usize>,
    rewards: Vec<bool>,
}

impl PlayFeedback {
    pub fn sampled(&self) -> &[usize] {
        &self.sampled
    }

    pub fn rewards(&self) -> &[bool] {
        &self.rewards
    }

    pub fn len(&self) -> usize {
        self.sampled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sampled.is_empty()
    }

    /// The arm that ended the play with a reward of 1, if any.
    pub fn success_arm(&self) -> Option<usize> {
        match self.rewards.last() {
            Some(true) => self.sampled.last().copied(),
            _ => None,
        }
    }
}

/// Executes one play: rewards are drawn lazily in request order and drawing
/// stops right after the first 1, so arms past the revealed prefix consume
/// no randomness.
pub fn play(instance: &BanditInstance, request: &PlayRequest, rng: &mut RngStream) -> Result<PlayFeedback> {
    request.check_against(instance.n())?;
    let mut sampled = Vec::with_capacity(request.len());
    let mut rewards = Vec::with_capacity(request.len());
    for &arm in request.arms() {
        let hit = rng.bernoulli(instance.mean(arm));
        sampled.push(arm);
        rewards.push(hit);
        if hit {
            break;
        }
    }
    Ok(PlayFeedback { sampled, rewards })
}
