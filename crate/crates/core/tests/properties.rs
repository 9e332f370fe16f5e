mod common;

use std::collections::BTreeSet;

use common::arb_signotope;
use proptest::prelude::*;
use signotope::order::{partition_pivot, Pivot};
use signotope::{subsets, Comparison, PartialOrder, Sign, SignMap, Signotope, Subset};

/// Reachability from scratch: facet chains, then Floyd–Warshall.
fn closure(s: &Signotope) -> (Vec<Subset>, Vec<Vec<bool>>) {
    let nodes: Vec<Subset> = subsets(s.n(), s.rank() - 1).collect();
    let idx = |x: Subset| nodes.iter().position(|&y| y == x).unwrap();
    let m = nodes.len();
    let mut reach = vec![vec![false; m]; m];
    for (x, sign) in s.iter() {
        let mut chain: Vec<Subset> = x.iter().map(|e| x.without(e)).collect();
        chain.sort_by_key(|f| f.to_vec());
        if sign == Sign::Minus {
            chain.reverse();
        }
        for w in chain.windows(2) {
            reach[idx(w[0])][idx(w[1])] = true;
        }
    }
    for k in 0..m {
        for i in 0..m {
            if reach[i][k] {
                let row = reach[k].clone();
                for (dst, src) in reach[i].iter_mut().zip(row) {
                    *dst |= src;
                }
            }
        }
    }
    (nodes, reach)
}

fn rotate_all(set: &BTreeSet<Subset>, n: usize) -> BTreeSet<Subset> {
    set.iter().map(|x| x.rotate(n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn rotation_preserves_validity_and_has_period_2n(s in arb_signotope(2..=5, 9)) {
        let n = s.n() as i64;
        prop_assert!(s.rotate().as_map().is_signotope());
        prop_assert_eq!(s.rotate_k(2 * n), s.clone());
        let half = if s.rank() % 2 == 1 { s.reverse() } else { s.clone() };
        prop_assert_eq!(s.rotate_k(n), half);
        prop_assert_eq!(s.rotate_k(-1).rotate(), s.clone());
    }

    #[test]
    fn rotate_k_agrees_with_repeated_rotation(s in arb_signotope(2..=4, 8), k in 0i64..20) {
        let mut t = s.clone();
        for _ in 0..k {
            t = t.rotate();
        }
        prop_assert_eq!(s.rotate_k(k), t);
    }

    #[test]
    fn fliples_follow_rotation(s in arb_signotope(2..=5, 9)) {
        let n = s.n();
        let mapped: BTreeSet<Subset> = s.fliples().into_iter().map(|x| x.rotate(n)).collect();
        let rotated: BTreeSet<Subset> = s.rotate().fliples().into_iter().collect();
        prop_assert_eq!(mapped, rotated);
    }

    #[test]
    fn fliples_match_brute_force(s in arb_signotope(2..=4, 7)) {
        for x in subsets(s.n(), s.rank()) {
            let mut m: SignMap = s.as_map().clone();
            m.flip(x);
            prop_assert_eq!(s.is_fliple(x), m.is_signotope(), "at {}", x);
        }
    }

    #[test]
    fn deletion_commutes_with_rotation(s in arb_signotope(2..=5, 9)) {
        let n = s.n();
        prop_assume!(n > s.rank() + 1);
        prop_assert_eq!(s.rotate().delete(n).unwrap(), s.delete(1).unwrap());
        for x in 2..=n {
            prop_assert_eq!(s.rotate().delete(x - 1).unwrap(), s.delete(x).unwrap().rotate());
        }
    }

    #[test]
    fn delete_and_contract_commute(s in arb_signotope(3..=5, 9), a in 1usize..10, b in 1usize..10) {
        let n = s.n();
        prop_assume!(n > s.rank() + 1);
        let (a, b) = (1 + a % n, 1 + b % (n - 1));
        // both orders remove the same two original labels
        let b0 = if b >= a { b + 1 } else { b };
        let a1 = if a > b0 { a - 1 } else { a };
        prop_assert_eq!(s.delete(a).unwrap().delete(b).unwrap(), s.delete(b0).unwrap().delete(a1).unwrap());
        prop_assert_eq!(s.contract(a).unwrap().delete(b).unwrap(), s.delete(b0).unwrap().contract(a1).unwrap());
    }

    #[test]
    fn order_matches_floyd_warshall(s in arb_signotope(2..=4, 7)) {
        let p = PartialOrder::new(&s).unwrap();
        let (nodes, reach) = closure(&s);
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                prop_assert_eq!(p.less(a, b).unwrap(), reach[i][j], "{} < {}", a, b);
            }
        }
    }

    #[test]
    fn pivot_parts_are_closed(s in arb_signotope(2..=5, 8)) {
        let p = PartialOrder::new(&s).unwrap();
        for pivot in [Pivot::First, Pivot::Last] {
            let part = partition_pivot(&s, pivot);
            prop_assert!(p.is_up_set(&part.u).unwrap());
            prop_assert!(p.is_down_set(&part.d).unwrap());
            prop_assert_eq!(part.h.len() + part.u.len() + part.d.len(), p.len());
        }
    }

    #[test]
    fn pivot_partitions_correspond_under_rotation(s in arb_signotope(2..=5, 8)) {
        let n = s.n();
        let first = partition_pivot(&s, Pivot::First);
        let last = partition_pivot(&s.rotate(), Pivot::Last);
        prop_assert_eq!(rotate_all(&first.u, n), last.u);
        prop_assert_eq!(rotate_all(&first.d, n), last.d);
        prop_assert_eq!(rotate_all(&first.h, n), last.h);
    }

    #[test]
    fn one_rotation_never_reverses_comparability(s in arb_signotope(2..=5, 8)) {
        let n = s.n();
        let p = PartialOrder::new(&s).unwrap();
        let q = PartialOrder::new(&s.rotate()).unwrap();
        for &i in p.nodes() {
            for &j in p.nodes() {
                if !i.is_disjoint(j) || !p.less(i, j).unwrap() {
                    continue;
                }
                let c = q.compare(i.rotate(n), j.rotate(n)).unwrap();
                prop_assert!(matches!(c, Comparison::Less | Comparison::Incomparable), "{} < {} became {:?}", i, j, c);
            }
        }
    }

    #[test]
    fn text_round_trip(s in arb_signotope(1..=5, 9)) {
        let text = s.to_text();
        let back = signotope::text::parse_sign_map(&text).unwrap();
        prop_assert_eq!(&back, s.as_map());
    }
}
