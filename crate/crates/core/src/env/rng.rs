//! Seeded, splittable randomness.
//!
//! Each trial owns one ChaCha8 stream selected by `(seed, stream_id)`. ChaCha
//! is counter based, so streams with different ids are independent and any
//! `(seed, stream_id)` pair replays the same sequence regardless of how many
//! other streams were used or in what order trials ran.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    bernoulli_draws: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            bernoulli_draws: 0,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of single-reward draws consumed so far.
    pub fn bernoulli_draws(&self) -> u64 {
        self.bernoulli_draws
    }

    /// One Bernoulli(`p`) reward. `p = 1` always succeeds, `p = 0` never does.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.bernoulli_draws += 1;
        self.inner.random::<f64>() < p
    }

    /// Number of successes in `trials` independent Bernoulli(`p`) draws.
    pub fn binomial(&mut self, trials: u64, p: f64) -> u64 {
        if trials == 0 || p <= 0.0 {
            return 0;
        }
        if p >= 1.0 {
            return trials;
        }
        Binomial::new(trials, p)
            .expect("probability checked to lie in (0, 1)")
            .sample(&mut self.inner)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a tuple of identifiers into a stream id.
pub fn derive_stream_id(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6c62_272e_07bb_0142, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}
