//! 2-extendability: the rotation-based SAT scanner and two independent
//! cross-checks.

use rayon::prelude::*;

use crate::error::{input, Error, Result};
use crate::extend::{rotate_back, verify_extension, ExtensionCertificate};
use crate::sat::{decode_signotope, encode_extendability, encode_insertion, SatSolver, Verdict};
use crate::signotope::{Sign, SignMap, Signotope};
use crate::subset::{binomial, subsets, Subset};

/// Largest `C(n, r−1)` the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairs {
    AllDisjoint,
    Single(Subset, Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Extendable(ExtensionCertificate),
    NotExtendable { rotations_checked: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub i: Subset,
    pub j: Subset,
    pub outcome: PairOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendabilityReport {
    pub results: Vec<PairResult>,
}

impl ExtendabilityReport {
    pub fn is_extendable(&self) -> bool {
        self.counterexample().is_none()
    }

    /// The first pair without an extension.
    pub fn counterexample(&self) -> Option<(Subset, Subset)> {
        self.results.iter().find(|p| matches!(p.outcome, PairOutcome::NotExtendable { .. })).map(|p| (p.i, p.j))
    }

    /// One line per pair, then `key=value` summary lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.results {
            match &p.outcome {
                PairOutcome::Extendable(c) => {
                    out += &format!("pair {}:{} extendable k={} rot={}\n", p.i, p.j, c.k, c.rotations)
                }
                PairOutcome::NotExtendable { rotations_checked } => {
                    out += &format!("pair {}:{} not-extendable unsat-rotations={rotations_checked}\n", p.i, p.j)
                }
            }
        }
        out += &format!("pairs={}\n", self.results.len());
        out += &format!("extendable={}\n", self.is_extendable());
        if let Some((i, j)) = self.counterexample() {
            out += &format!("counterexample={i}:{j}\n");
        }
        out
    }
}

/// Unordered pairs of disjoint `(r−1)`-subsets of `[n]`, smaller first.
pub fn disjoint_pairs(rank: usize, n: usize) -> Vec<(Subset, Subset)> {
    let all: Vec<Subset> = subsets(n, rank - 1).collect();
    let mut out = Vec::new();
    for (a, &i) in all.iter().enumerate() {
        for &j in &all[a + 1..] {
            if i.is_disjoint(j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn check_pair_shape(s: &Signotope, i: Subset, j: Subset) -> Result<()> {
    for x in [i, j] {
        if x.len() + 1 != s.rank() || !x.within(s.n()) {
            return input(format!("{x:?} is not an {}-subset of [{}]", s.rank() - 1, s.n()));
        }
    }
    Ok(())
}

/// Tries the last position of every rotation `ρ = 0, …, 2n−1` and returns
/// the first verified certificate.
pub fn check_pair(s: &Signotope, i: Subset, j: Subset, solver: &SatSolver) -> Result<PairOutcome> {
    check_pair_shape(s, i, j)?;
    let n = s.n();
    let mut rotated = s.clone();
    for rho in 0..2 * n {
        let (ir, jr) = (i.rotate_by(n, rho as i64), j.rotate_by(n, rho as i64));
        let model = encode_extendability(&rotated, ir, jr)?;
        let verdict = solver.solve(&model)?;
        if verdict.is_sat() {
            let star = decode_signotope(&model, &verdict)?;
            let cert = rotate_back(&star, rho, &[ir.with(n + 1), jr.with(n + 1)]);
            let check = verify_extension(s, &[i, j], &cert);
            if !check.ok() {
                return Err(Error::Internal(format!(
                    "solver extension fails verification: {}",
                    check.reasons.join("; ")
                )));
            }
            return Ok(PairOutcome::Extendable(cert));
        }
        rotated = rotated.rotate();
    }
    Ok(PairOutcome::NotExtendable { rotations_checked: 2 * n })
}

/// Runs [`check_pair`] over the requested pairs on `jobs` worker threads.
/// Results come back in pair order regardless of scheduling.
pub fn check_2_extendability(
    s: &Signotope,
    pairs: Pairs,
    solver: &SatSolver,
    jobs: usize,
) -> Result<ExtendabilityReport> {
    let list = match pairs {
        Pairs::AllDisjoint => disjoint_pairs(s.rank(), s.n()),
        Pairs::Single(i, j) => {
            check_pair_shape(s, i, j)?;
            vec![(i, j)]
        }
    };
    let run = |&(i, j): &(Subset, Subset)| check_pair(s, i, j, solver).map(|outcome| PairResult { i, j, outcome });
    let results = if jobs > 1 && list.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| list.par_iter().map(run).collect::<Result<Vec<_>>>())?
    } else {
        list.iter().map(run).collect::<Result<Vec<_>>>()?
    };
    Ok(ExtendabilityReport { results })
}

/// Every position `k` and every assignment of the new signs, checked
/// directly. Returns the first extension found (smallest `k`).
pub fn brute_force_2_extendability(s: &Signotope, i: Subset, j: Subset) -> Result<Option<ExtensionCertificate>> {
    check_pair_shape(s, i, j)?;
    let (r, n) = (s.rank(), s.n());
    let free = binomial(n, r - 1);
    if free > BRUTE_FORCE_LIMIT {
        return Err(Error::Resource(format!("2^{free} assignments per position exceed the brute-force limit")));
    }
    for k in 1..=n + 1 {
        let fliples = [i.lift(k).with(k), j.lift(k).with(k)];
        for bits in 0u64..1 << free {
            let mut next = 0;
            let map = SignMap::from_fn(r, n + 1, |x| {
                if x.contains(k) {
                    next += 1;
                    Sign::from_bool(bits >> (next - 1) & 1 == 1)
                } else {
                    s.sign(x.delete(k))
                }
            })?;
            if !map.is_signotope() {
                continue;
            }
            let all_flip = fliples.iter().all(|&f| {
                let mut g = map.clone();
                g.flip(f);
                g.is_signotope()
            });
            if all_flip {
                let extended = Signotope::new(map)?;
                return Ok(Some(ExtensionCertificate { extended, k, fliples: fliples.to_vec(), rotations: 0 }));
            }
        }
    }
    Ok(None)
}

/// Direct insertion search: one SAT call per position `k ∈ [n+1]`, no
/// rotations. Returns the first position that admits an extension.
pub fn insertion_scan(s: &Signotope, i: Subset, j: Subset, solver: &SatSolver) -> Result<Option<ExtensionCertificate>> {
    check_pair_shape(s, i, j)?;
    for k in 1..=s.n() + 1 {
        let model = encode_insertion(s, &[i, j], k)?;
        let verdict = solver.solve(&model)?;
        if let Verdict::Sat(_) = verdict {
            let extended = decode_signotope(&model, &verdict)?;
            let cert =
                ExtensionCertificate { extended, k, fliples: vec![i.lift(k).with(k), j.lift(k).with(k)], rotations: 0 };
            let check = verify_extension(s, &[i, j], &cert);
            if !check.ok() {
                return Err(Error::Internal(format!(
                    "insertion extension fails verification: {}",
                    check.reasons.join("; ")
                )));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}
