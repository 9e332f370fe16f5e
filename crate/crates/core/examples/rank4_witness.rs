//! Reconstruct the rank-4 witnesses on 8 elements and verify them.
//!
//! `cargo run --release --example rank4_witness [OUT.sig]` writes the
//! canonical model to OUT.sig.

use signotope::sat::canonical_pair;
use signotope::sat::SatSolver;
use signotope::search::{canonical_rank4, check_2_extendability, reconstruct_rank4, verify_witness, Pairs};

fn main() -> signotope::Result<()> {
    let solver = SatSolver::from_config(None);
    let models = reconstruct_rank4(&solver)?;
    println!("{} models", models.len());
    for s in &models {
        let rep = verify_witness(s, None, &solver)?;
        println!(
            "{}  fliples={} verdict={}",
            s.sign_string(),
            rep.fliple_count,
            if rep.pass { "pass" } else { "fail" }
        );
    }

    let s = canonical_rank4(&solver)?;
    let (i, j) = canonical_pair(4);
    print!("{}", check_2_extendability(&s, Pairs::Single(i, j), &solver, 1)?.to_text());
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, format!("# rank-4 witness on [8]\n{}", s.to_text()))?;
        println!("wrote {path}");
    }
    Ok(())
}
