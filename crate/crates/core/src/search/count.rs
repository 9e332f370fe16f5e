//! Counting and listing all signotopes of a given shape.

use crate::error::{Error, Result};
use crate::sat::{encode_enumeration, EnumOptions, SatSolver};
use crate::signotope::{sign_changes, Sign, SignMap, Signotope};
use crate::subset::{binomial, rank_unchecked, subsets};

/// Largest `C(n, r)` the backtracking oracle accepts.
pub const ORACLE_LIMIT: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Sat,
}

/// Calls `visit` on every `r`-signotope on `[n]` until it returns false.
/// Returns the number visited.
pub fn for_each_signotope(
    rank: usize,
    n: usize,
    method: Method,
    solver: &SatSolver,
    mut visit: impl FnMut(&Signotope) -> bool,
) -> Result<u64> {
    match method {
        Method::Oracle => oracle(rank, n, &mut visit),
        Method::Sat => {
            let model = encode_enumeration(rank, n, &EnumOptions::default())?;
            let project: Vec<i32> = (1..=model.num_s_vars() as i32).collect();
            let mut bad = None;
            let count = solver.enumerate(&model, &project, |a| {
                match Signotope::new(crate::sat::encode::decode_map(&model, a)) {
                    Ok(s) => visit(&s),
                    Err(e) => {
                        bad = Some(e);
                        false
                    }
                }
            })?;
            if let Some(e) = bad {
                return Err(Error::Internal(format!("enumeration model produced a non-signotope: {e}")));
            }
            Ok(count as u64)
        }
    }
}

pub fn count_signotopes(rank: usize, n: usize, method: Method, solver: &SatSolver) -> Result<u64> {
    for_each_signotope(rank, n, method, solver, |_| true)
}

pub fn enumerate_signotopes(rank: usize, n: usize, method: Method, solver: &SatSolver) -> Result<Vec<Signotope>> {
    let mut out = Vec::new();
    for_each_signotope(rank, n, method, solver, |s| {
        out.push(s.clone());
        true
    })?;
    Ok(out)
}

/// Depth-first over signs in lexicographic subset order. A packet is checked
/// as soon as its last subset (the one without its minimum) is assigned.
fn oracle(rank: usize, n: usize, visit: &mut dyn FnMut(&Signotope) -> bool) -> Result<u64> {
    let total = SignMap::constant(rank, n, Sign::Plus)?.len();
    if binomial(n, rank) > ORACLE_LIMIT {
        return Err(Error::Resource(format!("C({n},{rank}) = {total} exceeds the oracle limit {ORACLE_LIMIT}")));
    }
    let mut completes: Vec<Vec<Vec<usize>>> = vec![Vec::new(); total];
    for y in subsets(n, rank + 1) {
        let facets: Vec<usize> = y.iter().map(|e| rank_unchecked(y.without(e), n, rank)).collect();
        let last = *facets.iter().max().unwrap();
        completes[last].push(facets);
    }
    let mut map = SignMap::constant(rank, n, Sign::Plus)?;
    let mut count = 0;
    let mut stop = false;
    dfs(0, &mut map, &completes, &mut count, &mut stop, visit);
    Ok(count)
}

fn dfs(
    i: usize,
    map: &mut SignMap,
    completes: &[Vec<Vec<usize>>],
    count: &mut u64,
    stop: &mut bool,
    visit: &mut dyn FnMut(&Signotope) -> bool,
) {
    if i == completes.len() {
        *count += 1;
        if !visit(&Signotope::new_unchecked(map.clone())) {
            *stop = true;
        }
        return;
    }
    for sign in [Sign::Plus, Sign::Minus] {
        if *stop {
            return;
        }
        map.set_at(i, sign);
        let ok = completes[i].iter().all(|facets| {
            let seq: Vec<Sign> = facets.iter().map(|&f| map.sign_at(f)).collect();
            sign_changes(&seq) <= 1
        });
        if ok {
            dfs(i + 1, map, completes, count, stop, visit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let s = SatSolver::embedded();
        for (r, n, want) in [(3, 4, 8), (3, 5, 62), (4, 5, 10), (3, 3, 2), (2, 4, 24)] {
            assert_eq!(count_signotopes(r, n, Method::Oracle, &s).unwrap(), want, "oracle r={r} n={n}");
            assert_eq!(count_signotopes(r, n, Method::Sat, &s).unwrap(), want, "sat r={r} n={n}");
        }
    }

    #[test]
    fn oracle_guard() {
        assert!(matches!(count_signotopes(3, 8, Method::Oracle, &SatSolver::embedded()), Err(Error::Resource(_))));
    }

    #[test]
    fn listings_agree() {
        let s = SatSolver::embedded();
        let mut a = enumerate_signotopes(3, 5, Method::Oracle, &s).unwrap();
        let mut b = enumerate_signotopes(3, 5, Method::Sat, &s).unwrap();
        a.sort_by_key(|x| x.sign_string());
        b.sort_by_key(|x| x.sign_string());
        assert_eq!(a, b);
    }
}
