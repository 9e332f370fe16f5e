//! Exhaustive searches: counting, 2-extendability scans, witnesses and the
//! lower-bound family.

pub mod count;
pub mod family;
pub mod scan;
pub mod witness;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::signotope::{Sign, Signotope};

pub use count::{count_signotopes, enumerate_signotopes, for_each_signotope, Method};
pub use family::{family_threshold, free_positions, gen_lower_bound_family};
pub use scan::{
    brute_force_2_extendability, check_2_extendability, check_pair, disjoint_pairs, insertion_scan,
    ExtendabilityReport, PairOutcome, PairResult, Pairs,
};
pub use witness::{
    canonical_rank4, reconstruct_rank4, reconstruct_witness, verify_witness, witness_models, PropertyStatus,
    WitnessReport,
};

/// A random signotope: `steps` random fliple flips starting from a random
/// constant map.
pub fn random_signotope(rank: usize, n: usize, steps: usize, rng: &mut impl Rng) -> Result<Signotope> {
    let mut s = Signotope::constant(rank, n, if rng.gen() { Sign::Plus } else { Sign::Minus })?;
    for _ in 0..steps {
        let fl = s.fliples();
        let &x = fl.choose(rng).expect("every signotope has a fliple");
        s = s.flip(x)?;
    }
    Ok(s)
}
