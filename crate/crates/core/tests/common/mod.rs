#![allow(dead_code)]

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use signotope::search::random_signotope;
use signotope::Signotope;

pub fn signotope(rank: usize, n: usize, seed: u64) -> Signotope {
    let mut rng = StdRng::seed_from_u64(seed);
    random_signotope(rank, n, 4 * n * n, &mut rng).unwrap()
}

/// Random signotopes with `rank` in `ranks` and `rank + 1 <= n <= max_n`.
pub fn arb_signotope(ranks: std::ops::RangeInclusive<usize>, max_n: usize) -> impl Strategy<Value = Signotope> {
    ranks
        .prop_flat_map(move |r| (Just(r), r + 1..=max_n.max(r + 1), any::<u64>()))
        .prop_map(|(r, n, seed)| signotope(r, n, seed))
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_signotope")
}
