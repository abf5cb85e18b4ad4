//! Reproducible random streams.
//!
//! Every task that consumes randomness (a bootstrap replicate, a power-study
//! replication, a chunk of limit-law draws) gets its own ChaCha stream keyed by
//! `(seed, stream id)`. ChaCha is counter based, so the stream for a given id
//! does not depend on how many other streams were created before it or on
//! which thread asks for it. That is what makes results independent of the
//! thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator handed to samplers.
pub type StreamRng = ChaCha8Rng;

/// Derives independent substreams from a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamFactory {
    seed: u64,
}

impl StreamFactory {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stream number `id`.
    pub fn stream(&self, id: u64) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }

    /// Stream addressed by a (group, index) pair, e.g. (theta index, replication).
    pub fn substream(&self, group: u32, index: u64) -> StreamRng {
        assert!(index < (1 << 40), "substream index overflow");
        self.stream(((group as u64) << 40) | index)
    }

    /// A child factory, for handing a whole sub-computation its own seed space.
    pub fn child(&self, id: u64) -> StreamFactory {
        StreamFactory::new(self.stream(id).random())
    }
}

/// Draws a vector of independent Rademacher signs.
pub fn rademacher<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

/// Uniform draw on the open interval (0, 1).
pub(crate) fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}
