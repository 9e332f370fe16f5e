//! Encodings of signotopes, fliples and extensions as CNF.

use std::ops::Not;

use crate::error::{input, Error, Result};
use crate::signotope::{Sign, SignMap, Signotope};
use crate::subset::{binomial, subsets, Subset, MAX_ELEMENT};

use super::cnf::{CnfModel, PacketType, Var};
use super::solver::Verdict;

/// Largest `C(n, r)` accepted by the encoders.
pub const MAX_SUBSETS: u64 = 1 << 22;

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Encode packets with the `T(Y, t)` pattern variables instead of the
    /// auxiliary-free clause pairs.
    pub packet_types: bool,
    /// Add `F(X, Y)` and `F(X)`.
    pub fliple_vars: bool,
    /// Exactly this many fliples (adds the counter and `L(X, k)`).
    pub fliple_count: Option<usize>,
    /// Subsets forced to be fliples.
    pub required_fliples: Vec<Subset>,
}

impl EnumOptions {
    fn needs_fliples(&self) -> bool {
        self.fliple_vars || self.fliple_count.is_some() || !self.required_fliples.is_empty()
    }
}

fn check_shape(rank: usize, n: usize) -> Result<()> {
    if rank == 0 || n < rank || n > MAX_ELEMENT {
        return input(format!("no encoding for r={rank} n={n}"));
    }
    if binomial(n, rank) > MAX_SUBSETS {
        return Err(Error::Resource(format!("C({n},{rank}) subsets exceed the encoder limit")));
    }
    Ok(())
}

fn check_subset(x: Subset, size: usize, n: usize) -> Result<()> {
    if x.len() != size || !x.within(n) {
        return input(format!("{x:?} is not a {size}-subset of [{n}]"));
    }
    Ok(())
}

/// Satisfying assignments correspond to `r`-signotopes on `[n]`.
pub fn encode_enumeration(rank: usize, n: usize, options: &EnumOptions) -> Result<CnfModel> {
    check_shape(rank, n)?;
    let mut m = CnfModel::new(rank, n);
    if options.packet_types || options.needs_fliples() {
        add_packet_types(&mut m);
    } else {
        add_packet_clauses(&mut m);
    }
    if options.needs_fliples() {
        add_fliple_vars(&mut m);
    }
    for &x in &options.required_fliples {
        check_subset(x, rank, n)?;
        let f = m.var(Var::F(x));
        m.add_clause(vec![f]);
    }
    if let Some(k) = options.fliple_count {
        add_fliple_count(&mut m, k)?;
    }
    Ok(m)
}

fn packet_literals(m: &mut CnfModel, packet: Subset, flipped: Option<Subset>) -> Vec<i32> {
    packet
        .iter()
        .map(|y| {
            let x = packet.without(y);
            let l = m.var(Var::S(x));
            if Some(x) == flipped {
                -l
            } else {
                l
            }
        })
        .collect()
}

/// Forbids `+−+` and `−+−` on every triple of positions in every packet.
pub fn add_packet_clauses(m: &mut CnfModel) {
    for y in subsets(m.n(), m.rank() + 1) {
        let lits = packet_literals(m, y, None);
        add_triples(m, &lits, None);
    }
}

fn add_triples(m: &mut CnfModel, lits: &[i32], through: Option<usize>) {
    let len = lits.len();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                if through.is_some_and(|q| q != i && q != j && q != k) {
                    continue;
                }
                let (a, b, c) = (lits[i], lits[j], lits[k]);
                m.add_clause(vec![-a, b, -c]);
                m.add_clause(vec![a, -b, c]);
            }
        }
    }
}

/// Asserts that flipping `x` keeps every packet through `x` monotone,
/// without auxiliary variables.
pub fn assert_fliple(m: &mut CnfModel, x: Subset) {
    for y in (1..=m.n()).filter(|&y| !x.contains(y)) {
        let packet = x.with(y);
        let lits = packet_literals(m, packet, Some(x));
        let q = packet.iter().position(|e| e == y).unwrap();
        add_triples(m, &lits, Some(q));
    }
}

/// `T(Y, t)` is equivalent to packet `Y` showing pattern `t`; one pattern
/// must hold.
pub fn add_packet_types(m: &mut CnfModel) {
    let r = m.rank();
    for y in subsets(m.n(), r + 1) {
        let lits = packet_literals(m, y, None);
        let mut any = Vec::with_capacity(2 * r + 2);
        for t in PacketType::all(r) {
            let tv = m.var(Var::T(y, t));
            let pattern: Vec<i32> =
                lits.iter().enumerate().map(|(q, &l)| if t.sign_at(q).is_plus() { l } else { -l }).collect();
            for &l in &pattern {
                m.add_clause(vec![-tv, l]);
            }
            let mut back = vec![tv];
            back.extend(pattern.iter().map(|l| -l));
            m.add_clause(back);
            any.push(tv);
        }
        m.add_clause(any);
    }
}

/// `F(X, Y)` holds when `Y`'s pattern lets `X` flip; `F(X)` is their
/// conjunction over all packets through `X`.
pub fn add_fliple_vars(m: &mut CnfModel) {
    let (r, n) = (m.rank(), m.n());
    for x in subsets(n, r) {
        let f = m.var(Var::F(x));
        let mut all = vec![f];
        for y in (1..=n).filter(|&y| !x.contains(y)) {
            let packet = x.with(y);
            let q = packet.iter().position(|e| e == y).unwrap();
            let g = m.var(Var::FlipIn(x, packet));
            let good: Vec<i32> =
                PacketType::all(r).filter(|t| t.flippable(r, q)).map(|t| m.var(Var::T(packet, t))).collect();
            let mut forward = vec![-g];
            forward.extend(&good);
            m.add_clause(forward);
            for t in good {
                m.add_clause(vec![-t, g]);
            }
            m.add_clause(vec![-f, g]);
            all.push(-g);
        }
        m.add_clause(all);
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bit {
    Const(bool),
    Lit(i32),
}

impl Not for Bit {
    type Output = Bit;

    fn not(self) -> Bit {
        match self {
            Bit::Const(b) => Bit::Const(!b),
            Bit::Lit(l) => Bit::Lit(-l),
        }
    }
}

fn add_bits(m: &mut CnfModel, bits: &[Bit]) {
    if bits.contains(&Bit::Const(true)) {
        return;
    }
    let clause: Vec<i32> = bits.iter().filter_map(|b| if let Bit::Lit(l) = b { Some(*l) } else { None }).collect();
    m.add_clause(clause);
}

/// Sequential counter over `F(X₁), …, F(X_m)` in lexicographic order,
/// forced to exactly `count`, with `L(X_j, k)` marking the `k`-th fliple.
pub fn add_fliple_count(m: &mut CnfModel, count: usize) -> Result<()> {
    let (r, n) = (m.rank(), m.n());
    let xs: Vec<Subset> = subsets(n, r).collect();
    if count > xs.len() {
        return input(format!("{count} fliples requested but only {} subsets exist", xs.len()));
    }
    let f: Vec<Bit> = xs.iter().map(|&x| Bit::Lit(m.var(Var::F(x)))).collect();
    let mut prev: Vec<Bit> = (0..=count + 1).map(|c| Bit::Const(c == 0)).collect();
    for j in 1..=xs.len() {
        let fj = f[j - 1];
        for k in 1..=count {
            let inputs = [fj, prev[k - 1], !prev[k]];
            if inputs.contains(&Bit::Const(false)) {
                continue;
            }
            let l = Bit::Lit(m.var(Var::L(xs[j - 1], k)));
            for &x in &inputs {
                add_bits(m, &[!l, x]);
            }
            add_bits(m, &[l, !inputs[0], !inputs[1], !inputs[2]]);
        }
        let mut next = vec![Bit::Const(true)];
        for c in 1..=count + 1 {
            if c > j {
                next.push(Bit::Const(false));
                continue;
            }
            let (a, b) = (prev[c], prev[c - 1]);
            let v = Bit::Lit(m.var(Var::Count(j, c)));
            add_bits(m, &[!a, v]);
            add_bits(m, &[!b, !fj, v]);
            add_bits(m, &[!v, a, b]);
            add_bits(m, &[!v, a, fj]);
            next.push(v);
        }
        prev = next;
    }
    add_bits(m, &[prev[count]]);
    add_bits(m, &[!prev[count + 1]]);
    Ok(())
}

/// Extensions of `s` by a new element at position `k` in which every
/// prescribed `(r−1)`-subset, lifted and joined with `k`, is a fliple.
pub fn encode_insertion(s: &Signotope, prescribed: &[Subset], k: usize) -> Result<CnfModel> {
    let (r, n) = (s.rank(), s.n());
    for &p in prescribed {
        check_subset(p, r - 1, n)?;
    }
    if !(1..=n + 1).contains(&k) {
        return input(format!("insertion position {k} outside [{}]", n + 1));
    }
    check_shape(r, n + 1)?;
    let mut m = CnfModel::new(r, n + 1);
    add_packet_clauses(&mut m);
    for x in subsets(n + 1, r).filter(|x| !x.contains(k)) {
        let l = m.s_lit(x, s.sign(x.delete(k)));
        m.add_clause(vec![l]);
    }
    for &p in prescribed {
        assert_fliple(&mut m, p.lift(k).with(k));
    }
    Ok(m)
}

/// Extensions at the last position with `I ∪ {n+1}` and `J ∪ {n+1}` fliples.
pub fn encode_extendability(s: &Signotope, i: Subset, j: Subset) -> Result<CnfModel> {
    encode_insertion(s, &[i, j], s.n() + 1)
}

/// Fliples every witness of rank 4 has.
pub const F4: [[usize; 4]; 8] =
    [[1, 3, 5, 7], [2, 4, 6, 8], [2, 3, 7, 8], [1, 3, 4, 8], [1, 2, 4, 7], [3, 5, 6, 8], [4, 5, 7, 8], [3, 4, 6, 7]];

pub fn f4() -> Vec<Subset> {
    F4.iter().map(|x| Subset::new(x).unwrap()).collect()
}

/// `(r/2)² + r/2 + 2`.
pub fn witness_fliple_count(rank: usize) -> usize {
    let h = rank / 2;
    h * h + h + 2
}

/// `I = {2, 4, …, 2r−2}`, `J = {1, 3, …, 2r−3}`.
pub fn canonical_pair(rank: usize) -> (Subset, Subset) {
    let i = (1..rank).map(|k| 2 * k).collect();
    let j = (1..rank).map(|k| 2 * k - 1).collect();
    (i, j)
}

fn check_witness_rank(rank: usize) -> Result<()> {
    if rank % 2 == 1 || rank < 4 {
        return input(format!("witness properties need an even rank of at least 4, got {rank}"));
    }
    Ok(())
}

/// A structural rule assigning a fixed sign to some `r`-subsets of `[2r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// Invariance under four clockwise rotations.
    A,
    /// `σ(2, 4, …, 2r) = −` and `σ(1, 3, …, 2r−1) = +`.
    B,
    /// A single even or a single odd element decides the sign by its position.
    C,
    /// Evens then odds.
    D,
    /// Odds then evens.
    E,
    /// Subsets avoiding 1, 3 and containing 2, 4 copy the lower-rank witness.
    F,
}

impl Property {
    pub const ALL: [Property; 6] = [Property::A, Property::B, Property::C, Property::D, Property::E, Property::F];

    pub fn label(self) -> char {
        match self {
            Property::A => 'a',
            Property::B => 'b',
            Property::C => 'c',
            Property::D => 'd',
            Property::E => 'e',
            Property::F => 'f',
        }
    }
}

/// The sign a fixing property (b)–(f) prescribes for `x`, if any. `lower`
/// is the rank-`(r−2)` witness used by (f).
pub fn prescribed_sign(rank: usize, x: Subset, lower: Option<&Signotope>) -> Vec<(Property, Sign)> {
    let n = 2 * rank;
    let elems = x.to_vec();
    let even = |e: usize| e.is_multiple_of(2);
    let mut out = Vec::new();
    let (evens, odds): (Vec<usize>, Vec<usize>) = (1..=rank).partition(|&i| even(elems[i - 1]));
    if evens.len() == rank {
        out.push((Property::B, Sign::Minus));
    }
    if odds.len() == rank {
        out.push((Property::B, Sign::Plus));
    }
    if evens.len() == 1 {
        out.push((Property::C, Sign::alternating(evens[0])));
    }
    if odds.len() == 1 {
        out.push((Property::C, Sign::alternating(odds[0] + 1)));
    }
    for i in 2..=rank - 2 {
        let head_even = elems[..i].iter().all(|&e| even(e));
        let tail_even = elems[i..].iter().all(|&e| even(e));
        let head_odd = elems[..i].iter().all(|&e| !even(e));
        let tail_odd = elems[i..].iter().all(|&e| !even(e));
        if head_even && tail_odd {
            out.push((Property::D, Sign::alternating(i)));
        }
        if head_odd && tail_even {
            if elems[rank - 1] < n {
                out.push((Property::E, Sign::Minus));
            } else if (i + 1..=rank).all(|j| elems[j - 1] == 2 * j) {
                out.push((Property::E, Sign::Plus));
            }
        }
    }
    if let Some(low) = lower {
        if !x.contains(1) && !x.contains(3) && x.contains(2) && x.contains(4) {
            let z = x.delete(4).delete(3).delete(2).delete(1);
            out.push((Property::F, low.sign(z)));
        }
    }
    out
}

fn check_lower(rank: usize, lower: Option<&Signotope>) -> Result<()> {
    if let Some(l) = lower {
        if l.rank() + 2 != rank || l.n() + 4 != 2 * rank {
            return input(format!(
                "lower witness has r={} n={}, expected r={} n={}",
                l.rank(),
                l.n(),
                rank - 2,
                2 * rank - 4
            ));
        }
    }
    Ok(())
}

/// Adds the structural rules (a)–(f) to a model on `[2r]`.
pub fn add_structural(m: &mut CnfModel, lower: Option<&Signotope>) -> Result<()> {
    let (r, n) = (m.rank(), m.n());
    check_witness_rank(r)?;
    if n != 2 * r {
        return input(format!("structural rules live on [2r] = [{}], model has n={n}", 2 * r));
    }
    check_lower(r, lower)?;
    for z in subsets(n, r) {
        let x = z.rotate_by(n, -4);
        let a = m.var(Var::S(z));
        let b = m.var(Var::S(x));
        let negate = x.iter().filter(|&e| e <= 4).count() % 2 == 1;
        match (a == b, negate) {
            (true, false) => {}
            (true, true) => {
                return Err(Error::Internal(format!("{z:?} is fixed by four rotations but must change sign")))
            }
            (false, false) => m.extend_clauses([vec![-a, b], vec![a, -b]]),
            (false, true) => m.extend_clauses([vec![a, b], vec![-a, -b]]),
        }
        for (_, sign) in prescribed_sign(r, z, lower) {
            let l = m.s_lit(z, sign);
            m.add_clause(vec![l]);
        }
    }
    Ok(())
}

/// The structural rules alone, over the canonical `S` numbering on `[2r]`,
/// ready to be conjoined with an enumeration model of the same shape.
pub fn encode_structural(rank: usize, lower: Option<&Signotope>) -> Result<CnfModel> {
    check_witness_rank(rank)?;
    let mut m = CnfModel::new(rank, 2 * rank);
    add_structural(&mut m, lower)?;
    Ok(m)
}

/// Reads the `S` variables of a satisfying assignment.
pub fn decode_signotope(m: &CnfModel, verdict: &Verdict) -> Result<Signotope> {
    let Verdict::Sat(assignment) = verdict else {
        return input("cannot decode an unsatisfiable verdict");
    };
    let map = decode_map(m, assignment);
    Signotope::new(map).map_err(|e| Error::Internal(format!("decoded assignment is not a signotope: {e}")))
}

pub(crate) fn decode_map(m: &CnfModel, assignment: &[bool]) -> SignMap {
    // S(X) is the lexicographic rank of X plus one
    SignMap::from_signs(m.rank(), m.n(), (1..=m.num_s_vars()).map(|v| Sign::from_bool(assignment[v])))
        .expect("model shape was validated")
}

/// The subsets whose `F` variable is true.
pub fn decode_fliples(m: &CnfModel, assignment: &[bool]) -> Vec<Subset> {
    subsets(m.n(), m.rank()).filter(|&x| m.lookup(Var::F(x)).is_some_and(|v| assignment[v as usize])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::SatSolver;

    fn count(m: &CnfModel) -> usize {
        let project: Vec<i32> = (1..=m.num_s_vars() as i32).collect();
        SatSolver::embedded().enumerate(m, &project, |_| true).unwrap()
    }

    fn brute_count(r: usize, n: usize) -> usize {
        let len = binomial(n, r) as u32;
        (0u64..1 << len)
            .filter(|bits| {
                SignMap::from_signs(r, n, (0..len).map(|i| Sign::from_bool(bits >> i & 1 == 1))).unwrap().is_signotope()
            })
            .count()
    }

    #[test]
    fn footnote_model_r3_n4() {
        let m = encode_enumeration(3, 4, &EnumOptions::default()).unwrap();
        assert_eq!(m.num_vars(), 4);
        assert_eq!(m.clauses().len(), 8);
        assert_eq!(count(&m), 8);
    }

    #[test]
    fn counts_match_brute_force() {
        for (r, n) in [(1, 3), (2, 4), (3, 5), (4, 5), (2, 5), (3, 3)] {
            let want = brute_count(r, n);
            assert_eq!(count(&encode_enumeration(r, n, &EnumOptions::default()).unwrap()), want, "r={r} n={n}");
            let typed = EnumOptions { packet_types: true, ..Default::default() };
            assert_eq!(count(&encode_enumeration(r, n, &typed).unwrap()), want, "typed r={r} n={n}");
        }
        assert_eq!(brute_count(4, 5), 10);
    }

    #[test]
    fn fliple_variables_match_core() {
        for (r, n) in [(3, 4), (3, 5), (2, 4), (4, 6)] {
            let opts = EnumOptions { fliple_vars: true, ..Default::default() };
            let m = encode_enumeration(r, n, &opts).unwrap();
            let project: Vec<i32> = (1..=m.num_s_vars() as i32).collect();
            SatSolver::embedded()
                .enumerate(&m, &project, |a| {
                    let s = Signotope::new(decode_map(&m, a)).unwrap();
                    assert_eq!(decode_fliples(&m, a), s.fliples());
                    true
                })
                .unwrap();
        }
    }

    #[test]
    fn exact_fliple_counts_partition_models() {
        let (r, n) = (3, 5);
        let mut total = 0;
        for k in 0..=10 {
            let opts = EnumOptions { fliple_count: Some(k), ..Default::default() };
            let m = encode_enumeration(r, n, &opts).unwrap();
            let project: Vec<i32> = (1..=m.num_s_vars() as i32).collect();
            total += SatSolver::embedded()
                .enumerate(&m, &project, |a| {
                    let s = Signotope::new(decode_map(&m, a)).unwrap();
                    assert_eq!(s.fliples().len(), k);
                    let mr = &m;
                    let ls: Vec<usize> = s
                        .subsets()
                        .flat_map(|x| (1..=k).filter(move |&j| mr.lookup(Var::L(x, j)).is_some_and(|v| a[v as usize])))
                        .collect();
                    assert_eq!(ls, (1..=k).collect::<Vec<_>>());
                    true
                })
                .unwrap();
        }
        assert_eq!(total, 62);
        assert!(encode_enumeration(3, 4, &EnumOptions { fliple_count: Some(5), ..Default::default() }).is_err());
    }

    #[test]
    fn extendability_matches_last_position_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let all: Vec<Signotope> = {
            let m = encode_enumeration(3, 5, &EnumOptions::default()).unwrap();
            let mut v = Vec::new();
            SatSolver::embedded()
                .enumerate(&m, &(1..=10).collect::<Vec<_>>(), |a| {
                    v.push(Signotope::new(decode_map(&m, a)).unwrap());
                    true
                })
                .unwrap();
            v
        };
        let pairs: Vec<Subset> = subsets(5, 2).collect();
        for _ in 0..40 {
            let s = &all[rng.gen_range(0..all.len())];
            let (i, j) = (pairs[rng.gen_range(0..10)], pairs[rng.gen_range(0..10)]);
            let verdict = SatSolver::embedded().solve(&encode_extendability(s, i, j).unwrap()).unwrap();
            let brute = (0u32..1 << 10).any(|bits| {
                let mut free = (0..10).map(|b| Sign::from_bool(bits >> b & 1 == 1));
                let ext =
                    SignMap::from_fn(3, 6, |x| if x.contains(6) { free.next().unwrap() } else { s.sign(x) }).unwrap();
                ext.is_signotope()
                    && [i, j].iter().all(|p| {
                        let mut f = ext.clone();
                        f.flip(p.with(6));
                        f.is_signotope()
                    })
            });
            assert_eq!(verdict.is_sat(), brute, "{s:?} {i} {j}");
            if let Verdict::Sat(_) = verdict {
                let m = encode_extendability(s, i, j).unwrap();
                let ext = decode_signotope(&m, &verdict).unwrap();
                assert_eq!(ext.delete(6).unwrap(), *s);
            }
        }
    }

    #[test]
    fn structural_units_rank4() {
        let m = encode_structural(4, None).unwrap();
        let units: Vec<i32> = m.clauses().iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        let id = |v: &[usize]| crate::subset::subset_rank(Subset::new(v).unwrap(), 8, 4).unwrap() as i32 + 1;
        assert!(units.contains(&-id(&[2, 4, 6, 8])));
        assert!(units.contains(&id(&[1, 3, 5, 7])));
        assert!(encode_structural(5, None).is_err());
        assert!(encode_structural(2, None).is_err());
    }

    #[test]
    fn witness_constants() {
        assert_eq!(witness_fliple_count(4), 8);
        assert_eq!(witness_fliple_count(6), 14);
        let (i, j) = canonical_pair(4);
        assert_eq!((i.to_vec(), j.to_vec()), (vec![2, 4, 6], vec![1, 3, 5]));
    }
}
