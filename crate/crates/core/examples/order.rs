//! The partial order on (r-1)-subsets and the first/last pivot partitions.

use signotope::order::{partition_pivot, Pivot};
use signotope::text::parse_sign_map;
use signotope::{PartialOrder, Signotope, Subset};

fn main() -> signotope::Result<()> {
    let s = Signotope::new(parse_sign_map("signotope r=3 n=6\n+++++-+--++----+--++\n")?)?;
    let p = PartialOrder::new(&s)?;
    for (a, b) in p.cover_edges() {
        println!("({a}) < ({b})");
    }
    let i: Subset = "1,2".parse()?;
    let j: Subset = "4,5".parse()?;
    println!("({i}) vs ({j}): {:?}", p.compare(i, j)?);

    let down = p.downset_of(&[i, j])?;
    println!("down-set of both: {} of {} elements", down.len(), p.len());

    for pivot in [Pivot::First, Pivot::Last] {
        let part = partition_pivot(&s, pivot);
        println!("{pivot:?}: |H|={} |U|={} |D|={}", part.h.len(), part.u.len(), part.d.len());
    }
    print!("{}", p.to_dot());
    Ok(())
}
