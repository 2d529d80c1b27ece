//! Seeded random numbers.
//!
//! All randomness in the crate comes from xoshiro256++ (a linear shift-register
//! generator) seeded through `seed_from_u64`, so fixture files and Monte Carlo reports
//! are reproducible bit for bit.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type SeededRng = Xoshiro256PlusPlus;

pub fn seeded(seed: u64) -> SeededRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Independent stream number `index` derived from a master seed.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut rng = seeded(seed);
    for _ in 0..index {
        rng.jump();
    }
    rng
}
