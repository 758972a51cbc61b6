//! Seeded random streams.
//!
//! Every experiment derives all randomness from one 64-bit master seed. Worker
//! `w` uses ChaCha stream `w` of that seed, so a single-worker run is a pure
//! function of the seed and concurrent workers never share a stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random stream type used throughout the crate.
pub type Stream = ChaCha8Rng;

/// Stream for worker `worker` of an experiment seeded with `seed`.
pub fn worker_stream(seed: u64, worker: usize) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Stream used by an evaluator to draw the noise for one evaluation.
pub fn evaluation_stream(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}
