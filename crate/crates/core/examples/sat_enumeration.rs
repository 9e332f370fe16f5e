//! Count signotopes with the oracle and the SAT encoding, then dump a CNF.

use signotope::sat::dimacs::write_model;
use signotope::sat::{encode_enumeration, EnumOptions, SatSolver};
use signotope::search::{count_signotopes, Method};

fn main() -> signotope::Result<()> {
    let solver = SatSolver::from_config(None);
    for (r, n) in [(2, 4), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6)] {
        let oracle = count_signotopes(r, n, Method::Oracle, &solver)?;
        let sat = count_signotopes(r, n, Method::Sat, &solver)?;
        println!("r={r} n={n}: oracle {oracle}, sat {sat}");
    }

    let opts = EnumOptions { packet_types: true, fliple_vars: true, fliple_count: Some(3), ..Default::default() };
    let m = encode_enumeration(3, 5, &opts)?;
    println!("r=3 n=5 with exactly 3 fliples: {} vars, {} clauses", m.num_vars(), m.clauses().len());
    let mut head = Vec::new();
    write_model(&mut head, &m)?;
    println!("{}", String::from_utf8_lossy(&head).lines().next().unwrap_or(""));
    Ok(())
}
