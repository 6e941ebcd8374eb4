//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xxpaths::{Limits, C64};

pub fn limits() -> Limits {
    Limits {
        enumeration: Limits::DEFAULT_ENUMERATION,
        sector_dimension: Limits::DEFAULT_SECTOR_DIMENSION,
    }
}

/// `n` complex points with moduli in `[0.5, 1.5)`, fixed by `seed`.
pub fn points(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect()
}
