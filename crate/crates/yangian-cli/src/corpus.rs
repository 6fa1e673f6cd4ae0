//! Seeded sampling of root multisets and module parameters for the
//! randomized suites. The same generators back the command-line `verify`
//! runs and the acceptance tests, so corpora are reproducible from a seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use yangian::scalar::{rat, rat_int, Rat};
use yangian::strings::RootMultiset;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random multiset of total degree 1..=max_deg drawn over mixed rational
/// cosets (integers weighted double) with repeated roots allowed.
pub fn random_multiset(rng: &mut ChaCha8Rng, max_deg: usize) -> RootMultiset {
    let degree = rng.gen_range(1..=max_deg.max(1));
    let mut multiset = RootMultiset::new();
    for _ in 0..degree {
        let offset = match rng.gen_range(0..4u8) {
            0 | 1 => rat_int(0),
            2 => rat(1, 2),
            _ => rat(1, 3),
        };
        let base: i64 = rng.gen_range(-2..=3);
        multiset.insert(rat_int(base) + offset, 1);
    }
    multiset
}

/// Random evaluation-module parameters (size, evaluation point).
pub fn random_parameters(rng: &mut ChaCha8Rng, max_r: usize) -> (usize, Rat) {
    let r = rng.gen_range(1..=max_r.max(1));
    let offset = match rng.gen_range(0..3u8) {
        0 => rat_int(0),
        1 => rat(1, 2),
        _ => rat(7, 3),
    };
    let base: i64 = rng.gen_range(-2..=2);
    (r, rat_int(base) + offset)
}
