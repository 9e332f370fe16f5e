//! Members of the lower-bound family: every sign choice on the free positions
//! gives a distinct signotope.

use std::collections::HashSet;

use signotope::search::{family_threshold, free_positions, gen_lower_bound_family};
use signotope::Sign;

fn main() -> signotope::Result<()> {
    for (r, m) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
        let free = free_positions(r, m)?;
        let k = free.len();
        let mut seen = HashSet::new();
        for bits in 0..1u32 << k.min(10) {
            let signs: Vec<_> = (0..k).map(|i| Sign::from_bool(bits >> i & 1 == 1)).collect();
            seen.insert(gen_lower_bound_family(r, m, &signs)?.sign_string());
        }
        println!("r={r} m={m} T={} free={k} distinct members={}", family_threshold(r, m), seen.len());
    }
    Ok(())
}
