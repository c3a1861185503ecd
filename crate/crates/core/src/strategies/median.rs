use super::{ceil_count, check_delta, suffix_sample};
use crate::env::Environment;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianElimination {
    pub arm: usize,
    pub plays: u64,
    pub rounds: u32,
}

/// MedianElimination with its uniform sampling done by [`suffix_sample`].
///
/// Starts at `ε/4`, `δ/2`; each round samples the survivors
/// `⌈(4/ε_l²) ln(3/δ_l)⌉` times and keeps the upper half by fresh mean
/// (ties toward the lower index, the median arm kept), then sets
/// `ε_{l+1} = 3ε_l/4`, `δ_{l+1} = δ_l/2`. Returns an `ε`-optimal arm of
/// `subset` with probability at least `1 - δ`.
pub fn median_elimination(
    env: &mut Environment,
    subset: &[usize],
    epsilon: f64,
    delta: f64,
) -> Result<MedianElimination> {
    if subset.is_empty() {
        return Err(Error::EmptyRequest);
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    check_delta(delta)?;

    let mut survivors = subset.to_vec();
    let mut eps = epsilon / 4.0;
    let mut dlt = delta / 2.0;
    let mut plays = 0;
    let mut rounds = 0;
    while survivors.len() > 1 {
        let count = ceil_count(4.0 / (eps * eps) * (3.0 / dlt).ln());
        let sample = suffix_sample(env, &survivors, count)?;
        plays += sample.plays;
        rounds += 1;

        let means = sample.means();
        let mut order: Vec<usize> = (0..survivors.len()).collect();
        order.sort_by(|&a, &b| means[b].total_cmp(&means[a]).then(a.cmp(&b)));
        order.truncate(survivors.len().div_ceil(2));
        order.sort_unstable();
        survivors = order.into_iter().map(|pos| survivors[pos]).collect();

        eps *= 0.75;
        dlt /= 2.0;
    }
    Ok(MedianElimination {
        arm: survivors[0],
        plays,
        rounds,
    })
}
