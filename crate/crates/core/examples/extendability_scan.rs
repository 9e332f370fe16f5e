//! Scan every disjoint pair of a random 3-signotope for 2-extendability.

use rand::rngs::StdRng;
use rand::SeedableRng;
use signotope::sat::SatSolver;
use signotope::search::{brute_force_2_extendability, check_2_extendability, random_signotope, PairOutcome, Pairs};

fn main() -> signotope::Result<()> {
    let mut rng = StdRng::seed_from_u64(11);
    let s = random_signotope(3, 5, 100, &mut rng)?;
    let solver = SatSolver::from_config(None);
    let report = check_2_extendability(&s, Pairs::AllDisjoint, &solver, 4)?;
    print!("{}", report.to_text());

    for p in &report.results {
        let brute = brute_force_2_extendability(&s, p.i, p.j)?.is_some();
        assert_eq!(brute, matches!(p.outcome, PairOutcome::Extendable(_)));
    }
    println!("brute force agrees on all {} pairs", report.results.len());
    Ok(())
}
