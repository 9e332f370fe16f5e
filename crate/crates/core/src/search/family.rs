//! A large family of signotopes on `[rm]` with freely choosable signs.
//!
//! Split `[rm]` into blocks `N_k = [(k−1)m + 1, km]` and weigh an `r`-subset
//! by `φ(x) = x₁ + … + x_{r−1} − x_r`. With threshold `T = m(r−4)(r−1)/2`:
//! `σ(x) = −` if `x_{r−1} ∉ N_r`, `x_r ∈ N_r` and `φ(x) > T`; the sign is
//! free on splitted subsets (`x_k ∈ N_k` for all `k`) with `φ(x) = T`; all
//! other signs are `+`.

use crate::error::{input, Error, Result};
use crate::signotope::{Sign, SignMap, Signotope};
use crate::subset::{binomial, subsets, Subset};

/// `m(r−4)(r−1)/2`.
pub fn family_threshold(rank: usize, m: usize) -> i64 {
    let (r, m) = (rank as i64, m as i64);
    m * (r - 4) * (r - 1) / 2
}

fn block(x: usize, m: usize) -> usize {
    (x - 1) / m + 1
}

fn weight(x: Subset) -> i64 {
    let e = x.to_vec();
    let (last, rest) = e.split_last().unwrap();
    rest.iter().map(|&v| v as i64).sum::<i64>() - *last as i64
}

fn is_splitted(x: Subset, m: usize) -> bool {
    x.iter().enumerate().all(|(k, e)| block(e, m) == k + 1)
}

fn check(rank: usize, m: usize) -> Result<()> {
    if rank < 3 || m == 0 {
        return input(format!("family needs r >= 3 and m >= 1, got r={rank} m={m}"));
    }
    SignMap::constant(rank, rank * m, Sign::Plus).map(|_| ())
}

/// The splitted subsets of weight exactly `T`, in lexicographic order.
pub fn free_positions(rank: usize, m: usize) -> Result<Vec<Subset>> {
    check(rank, m)?;
    let t = family_threshold(rank, m);
    Ok(subsets(rank * m, rank).filter(|&x| is_splitted(x, m) && weight(x) == t).collect())
}

/// The member of the family with `free[i]` on the `i`-th free position.
pub fn gen_lower_bound_family(rank: usize, m: usize, free: &[Sign]) -> Result<Signotope> {
    let positions = free_positions(rank, m)?;
    if free.len() != positions.len() {
        return input(format!("expected {} free signs (C({m},{})), got {}", positions.len(), rank - 1, free.len()));
    }
    debug_assert_eq!(positions.len() as u64, binomial(m, rank - 1));
    let t = family_threshold(rank, m);
    log::debug!("family threshold T = m(r-4)(r-1)/2 = {t} for r={rank} m={m}");
    let n = rank * m;
    let map = SignMap::from_fn(rank, n, |x| {
        if let Ok(i) = positions.binary_search(&x) {
            return free[i];
        }
        let e = x.to_vec();
        let tail = block(e[rank - 2], m) != rank && block(e[rank - 1], m) == rank;
        if tail && weight(x) > t {
            Sign::Minus
        } else {
            Sign::Plus
        }
    })?;
    Signotope::new(map).map_err(|e| Error::Internal(format!("family member is not a signotope: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_family() {
        assert_eq!(family_threshold(3, 2), -2);
        let free = free_positions(3, 2).unwrap();
        assert_eq!(free, vec![Subset::new(&[1, 3, 6]).unwrap()]);
        let a = gen_lower_bound_family(3, 2, &[Sign::Plus]).unwrap();
        let b = gen_lower_bound_family(3, 2, &[Sign::Minus]).unwrap();
        assert_ne!(a, b);
        assert!(gen_lower_bound_family(3, 2, &[]).is_err());
    }

    #[test]
    fn free_counts() {
        for (r, m) in [(3, 3), (4, 2), (4, 3), (3, 4), (5, 2)] {
            assert_eq!(free_positions(r, m).unwrap().len() as u64, binomial(m, r - 1), "r={r} m={m}");
        }
    }

    #[test]
    fn every_member_validates() {
        for (r, m) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
            let k = free_positions(r, m).unwrap().len();
            for bits in 0u32..1 << k {
                let free: Vec<Sign> = (0..k).map(|i| Sign::from_bool(bits >> i & 1 == 1)).collect();
                gen_lower_bound_family(r, m, &free).unwrap();
            }
        }
    }
}
