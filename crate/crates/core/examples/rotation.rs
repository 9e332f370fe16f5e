//! Rotation, deletion and contraction on a random signotope.

use rand::rngs::StdRng;
use rand::SeedableRng;
use signotope::search::random_signotope;

fn main() -> signotope::Result<()> {
    let mut rng = StdRng::seed_from_u64(7);
    let s = random_signotope(3, 7, 200, &mut rng)?;
    println!("start     {}", s.sign_string());
    let mut t = s.clone();
    for i in 1..=2 * s.n() {
        t = t.rotate();
        println!("rot^{i:<2}    {}", t.sign_string());
    }
    assert_eq!(t, s);
    assert_eq!(s.rotate_k(7), s.reverse());
    println!("rotate_k(n) = reverse for odd rank");

    println!("delete 4  {}", s.delete(4)?.sign_string());
    println!("contract 4 {}", s.contract(4)?.sign_string());

    let fl = s.fliples();
    let rotated: Vec<_> = s.rotate().fliples();
    println!("{} fliples before rotation, {} after", fl.len(), rotated.len());
    Ok(())
}
