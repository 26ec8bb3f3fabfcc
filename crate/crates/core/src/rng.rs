//! Seeded random generators for reproducible random forms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type FormRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> FormRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for a named sub-stream of `seed`.
///
/// Each verification suite draws from its own stream so that adding or
/// reordering suites does not perturb the others.
pub fn stream(seed: u64, stream: u64) -> FormRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
