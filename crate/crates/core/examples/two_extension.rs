//! Odd-rank 2-extension with an independent re-check.

use signotope::extend::{one_extend, two_extend, verify_extension};
use signotope::search::gen_lower_bound_family;
use signotope::{Error, Sign, Subset};

fn main() -> signotope::Result<()> {
    let s = gen_lower_bound_family(3, 3, &[Sign::Minus, Sign::Plus, Sign::Minus])?;
    println!("{}", s.to_text().trim_end());

    let i: Subset = "1,4".parse()?;
    let j: Subset = "2,7".parse()?;
    let cert = two_extend(&s, i, j)?;
    println!("k={} rotations={} fliples={:?}", cert.k, cert.rotations, cert.fliples);
    println!("{}", cert.extended.sign_string());
    assert!(verify_extension(&s, &[i, j], &cert).ok());

    let one = one_extend(&s, i)?;
    assert!(verify_extension(&s, &[i], &one).ok());

    match two_extend(&s, "1,2".parse()?, "1,3".parse()?) {
        Err(Error::UnsupportedParity(m)) => println!("|I∩J|+r = {m} is even: no guarantee"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
