//! Build even-rank witnesses on [2r] by climbing from rank 4, each rank
//! reusing the previous one for property (f).
//!
//! `cargo run --release --example witness_chain [MAX_RANK] [DIR]` writes
//! `witness<r>.sig` files into DIR.

use signotope::sat::SatSolver;
use signotope::search::{canonical_rank4, reconstruct_witness, verify_witness};

fn main() -> signotope::Result<()> {
    let mut args = std::env::args().skip(1);
    let max: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let dir = args.next();
    let solver = SatSolver::from_config(None);
    let mut lower = canonical_rank4(&solver)?;
    for r in (6..=max).step_by(2) {
        let start = std::time::Instant::now();
        let Some(s) = reconstruct_witness(r, &lower, &solver)? else {
            println!("r={r}: no model");
            return Ok(());
        };
        let rep = verify_witness(&s, Some(&lower), &solver)?;
        println!(
            "r={r}: fliples={} unsat_rotations={}/{} verdict={} ({:.1?})",
            rep.fliple_count,
            rep.unsat_rotations,
            rep.rotations_checked,
            if rep.pass { "pass" } else { "fail" },
            start.elapsed()
        );
        if let Some(dir) = &dir {
            let path = format!("{dir}/witness{r}.sig");
            std::fs::write(&path, format!("# rank-{r} witness on [{}]\n{}", 2 * r, s.to_text()))?;
        }
        lower = s;
    }
    Ok(())
}
