//! Parse a signotope, check it, and list its fliples.
//!
//! `cargo run --example validate_fliples [FILE]`

use signotope::text::{parse_sign_map, read_sign_map};
use signotope::{Signotope, Subset};

fn main() -> signotope::Result<()> {
    let map = match std::env::args().nth(1) {
        Some(path) => read_sign_map(path)?,
        None => parse_sign_map("signotope r=3 n=6\n+++++-+--++----+--++\n")?,
    };
    let bad = map.validate();
    if !bad.is_empty() {
        println!("invalid; violating packets:");
        for y in bad {
            println!("  ({y}) {:?}", map.packet_sequence(y)?);
        }
        return Ok(());
    }
    let s = Signotope::new(map)?;
    println!("{}", s.to_text().trim_end());
    for x in s.fliples() {
        let flipped = s.flip(x)?;
        println!("fliple ({x}); flipped map has {} plus signs", flipped.count_plus());
    }
    let x: Subset = "1,2,3".parse()?;
    println!("({x}) is a fliple: {}", s.is_fliple(x));
    Ok(())
}
