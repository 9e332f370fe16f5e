use std::collections::HashMap;
use std::fmt;

use crate::signotope::Sign;
use crate::subset::{subsets, Subset};

/// One of the `2r + 2` monotone packet patterns: the first `run` positions
/// carry `lead`, the rest carry `−lead`. `run = r + 1` is constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PacketType {
    pub lead: Sign,
    pub run: usize,
}

impl PacketType {
    pub fn all(rank: usize) -> impl Iterator<Item = PacketType> {
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(move |lead| (1..=rank + 1).map(move |run| PacketType { lead, run }))
    }

    /// Position in [`PacketType::all`], counted from 1.
    pub fn number(self, rank: usize) -> usize {
        match self.lead {
            Sign::Plus => self.run,
            Sign::Minus => rank + 1 + self.run,
        }
    }

    /// Sign at 0-based packet position `q`.
    pub fn sign_at(self, q: usize) -> Sign {
        if q < self.run {
            self.lead
        } else {
            -self.lead
        }
    }

    /// Whether position `q` can be flipped in this pattern.
    pub fn flippable(self, rank: usize, q: usize) -> bool {
        if self.run == rank + 1 {
            q == 0 || q == rank
        } else {
            q + 1 == self.run || q == self.run
        }
    }
}

/// Semantic names for CNF variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// `σ(X) = +`.
    S(Subset),
    /// Packet `Y` follows pattern `t`.
    T(Subset, PacketType),
    /// `X` may be flipped within packet `Y`.
    FlipIn(Subset, Subset),
    /// `X` is a fliple.
    F(Subset),
    /// `X` is the `k`-th fliple in lexicographic order.
    L(Subset, usize),
    /// At least `c` fliples among the first `j` subsets.
    Count(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S(x) => write!(f, "S {x}"),
            Var::T(y, t) => write!(f, "T {y} {}{}", t.lead, t.run),
            Var::FlipIn(x, y) => write!(f, "FP {x} {y}"),
            Var::F(x) => write!(f, "F {x}"),
            Var::L(x, k) => write!(f, "L {x} {k}"),
            Var::Count(j, c) => write!(f, "C {j} {c}"),
        }
    }
}

/// A clause set over named variables on the `r`-subsets of `[n]`.
///
/// The `S` variables come first, so `S(X)` is always the lexicographic rank
/// of `X` plus one.
#[derive(Clone, Debug)]
pub struct CnfModel {
    rank: usize,
    n: usize,
    clauses: Vec<Vec<i32>>,
    names: Vec<Option<Var>>,
    directory: HashMap<Var, u32>,
}

impl CnfModel {
    pub fn new(rank: usize, n: usize) -> Self {
        let mut m = CnfModel { rank, n, clauses: Vec::new(), names: Vec::new(), directory: HashMap::new() };
        for x in subsets(n, rank) {
            m.var(Var::S(x));
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_s_vars(&self) -> usize {
        self.directory.keys().filter(|v| matches!(v, Var::S(_))).count()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// The index of a named variable, creating it on first use.
    pub fn var(&mut self, v: Var) -> i32 {
        if let Some(&i) = self.directory.get(&v) {
            return i as i32;
        }
        self.names.push(Some(v));
        let i = self.names.len() as u32;
        self.directory.insert(v, i);
        i as i32
    }

    pub fn lookup(&self, v: Var) -> Option<i32> {
        self.directory.get(&v).map(|&i| i as i32)
    }

    pub fn name(&self, index: usize) -> Option<Var> {
        self.names.get(index.checked_sub(1)?).copied().flatten()
    }

    /// Named variables in index order.
    pub fn directory(&self) -> impl Iterator<Item = (i32, Var)> + '_ {
        self.names.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i as i32 + 1, v)))
    }

    /// Literal stating `σ(X) = sign`.
    pub fn s_lit(&mut self, x: Subset, sign: Sign) -> i32 {
        let v = self.var(Var::S(x));
        if sign.is_plus() {
            v
        } else {
            -v
        }
    }

    /// Adds a clause; panics on an empty one, which no encoding should emit.
    pub fn add_clause(&mut self, clause: Vec<i32>) {
        assert!(!clause.is_empty(), "empty clause added to CNF model");
        debug_assert!(clause.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars()));
        self.clauses.push(clause);
    }

    pub fn extend_clauses(&mut self, clauses: impl IntoIterator<Item = Vec<i32>>) {
        for c in clauses {
            self.add_clause(c);
        }
    }

    /// Whether an assignment (indexed by variable, slot 0 unused) satisfies
    /// every clause; returns the first falsified clause otherwise.
    pub fn check(&self, assignment: &[bool]) -> Result<(), usize> {
        for (i, c) in self.clauses.iter().enumerate() {
            if !c.iter().any(|&l| assignment.get(l.unsigned_abs() as usize).copied().unwrap_or(false) == (l > 0)) {
                return Err(i);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_variables_follow_rank() {
        let m = CnfModel::new(3, 5);
        for (i, x) in subsets(5, 3).enumerate() {
            assert_eq!(m.lookup(Var::S(x)), Some(i as i32 + 1));
        }
        assert_eq!(m.num_vars(), 10);
    }

    #[test]
    fn directory_is_injective() {
        let mut m = CnfModel::new(2, 3);
        let y = Subset::interval(3);
        let t = PacketType { lead: Sign::Plus, run: 2 };
        let a = m.var(Var::T(y, t));
        assert_eq!(m.var(Var::T(y, t)), a);
        assert_eq!(m.name(a as usize), Some(Var::T(y, t)));
        assert_eq!(m.directory().count(), m.num_vars());
    }

    #[test]
    fn packet_types_are_monotone_and_distinct() {
        let r = 3;
        let types: Vec<_> = PacketType::all(r).collect();
        assert_eq!(types.len(), 2 * r + 2);
        let patterns: std::collections::HashSet<Vec<Sign>> =
            types.iter().map(|t| (0..=r).map(|q| t.sign_at(q)).collect()).collect();
        assert_eq!(patterns.len(), 2 * r + 2);
        for (i, t) in types.iter().enumerate() {
            assert_eq!(t.number(r), i + 1);
        }
    }
}
