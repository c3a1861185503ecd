//! Closed-form play-complexity formulas.
//!
//! Every `O(.)` / `Omega(.)` is evaluated with constant 1 and natural
//! logarithms; the values are meant for trend overlays and comparisons, not
//! as certified budgets. In the LinkedEGE bound both the inner argument
//! `1/Δ_i` and the outer argument `ln(1/Δ_i)/δ` are clamped below at 2 so every
//! log-log factor stays positive for large gaps.

use crate::env::BanditInstance;
use crate::{Error, Result};

/// Note printed next to every reported bound.
pub const CONVENTION: &str = "constant 1, natural log; LinkedEGE log arguments clamped below at 2";

#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub best_index: usize,
    pub best_mean: f64,
    /// `μ* - μ_i`; zero at the best arm.
    pub gaps: Vec<f64>,
    /// Smallest gap over suboptimal arms; `+inf` for a single arm.
    pub min_gap: f64,
    /// `Π_{i<n} (1 - μ_i)`: chance a full play reaches the last arm.
    pub survival_prefix: f64,
    /// `Π_i (1 - μ_i)`: chance a full play earns no reward.
    pub survival_all: f64,
}

impl GapProfile {
    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    fn suboptimal(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let best = self.best_index;
        self.gaps.iter().copied().enumerate().filter(move |&(i, _)| i != best)
    }
}

pub fn gap_profile(means: &[f64]) -> Result<GapProfile> {
    let instance = BanditInstance::new(means.to_vec())?;
    let best_index = instance.best_arm()?;
    let best_mean = means[best_index];
    let gaps: Vec<f64> = means.iter().map(|m| best_mean - m).collect();
    let min_gap = gaps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best_index)
        .map(|(_, &g)| g)
        .fold(f64::INFINITY, f64::min);
    let survival_prefix = means[..means.len() - 1].iter().map(|m| 1.0 - m).product();
    let survival_all = means.iter().map(|m| 1.0 - m).product();
    Ok(GapProfile {
        best_index,
        best_mean,
        gaps,
        min_gap,
        survival_prefix,
        survival_all,
    })
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

/// MaximalSampling: `(1/(Δ² p²)) ln(n/(Δ p δ))` with `p` the prefix survival.
pub fn bound_maximal(profile: &GapProfile, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let n = profile.n() as f64;
    let (gap, p) = (profile.min_gap, profile.survival_prefix);
    if profile.n() == 1 {
        return Ok(0.0);
    }
    if p == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((n / (gap * p * delta)).ln() / (gap * gap * p * p))
}

/// UniformSampling: `((1 + Σ_{i<n} μ_i)/Δ² + sqrt((n-1)/Δ²)) ln(n/δ)`.
pub fn bound_uniform(profile: &GapProfile, means: &[f64], delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let n = means.len();
    if n == 1 {
        return Ok(0.0);
    }
    let gap2 = profile.min_gap * profile.min_gap;
    let head: f64 = means[..n - 1].iter().sum();
    Ok(((1.0 + head) / gap2 + ((n - 1) as f64 / gap2).sqrt()) * (n as f64 / delta).ln())
}

/// `ln((1/δ) ln(1/g))` with both arguments clamped below at 2.
fn loglog_factor(gap: f64, delta: f64) -> f64 {
    let inner = (1.0 / gap).max(2.0).ln();
    (inner / delta).max(2.0).ln()
}

/// LinkedEGE:
/// `(1/Δ²) L(Δ) + Σ_{i≠i*} (μ_i/Δ_i²) L(Δ_i) + sqrt(Σ_{i≠i*} L(Δ_i)/Δ_i²) ln(1/δ)`
/// where `L(g) = ln((1/δ) ln(1/g))`.
pub fn bound_ege(profile: &GapProfile, means: &[f64], delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if profile.n() == 1 {
        return Ok(0.0);
    }
    let gap = profile.min_gap;
    let mut weighted = 0.0;
    let mut spread = 0.0;
    for (i, g) in profile.suboptimal() {
        let l = loglog_factor(g, delta);
        weighted += means[i] / (g * g) * l;
        spread += l / (g * g);
    }
    Ok(loglog_factor(gap, delta) / (gap * gap) + weighted + spread.sqrt() * (1.0 / delta).ln())
}

/// Lower bound: `(Σ_{i≠i*} μ_i/Δ_i² + (μ* + p)/Δ²) ln(1/δ)`, `p` the full survival.
pub fn bound_lower(profile: &GapProfile, means: &[f64], delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if profile.n() == 1 {
        return Ok(0.0);
    }
    let gap = profile.min_gap;
    let per_arm: f64 = profile.suboptimal().map(|(i, g)| means[i] / (g * g)).sum();
    Ok((per_arm + (profile.best_mean + profile.survival_all) / (gap * gap)) * (1.0 / delta).ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub delta: f64,
    pub maximal: f64,
    pub uniform: f64,
    pub ege: f64,
    pub lower: f64,
    pub convention: &'static str,
}

pub fn bound_report(means: &[f64], delta: f64) -> Result<(GapProfile, BoundReport)> {
    let profile = gap_profile(means)?;
    let report = BoundReport {
        delta,
        maximal: bound_maximal(&profile, delta)?,
        uniform: bound_uniform(&profile, means, delta)?,
        ege: bound_ege(&profile, means, delta)?,
        lower: bound_lower(&profile, means, delta)?,
        convention: CONVENTION,
    };
    Ok((profile, report))
}
