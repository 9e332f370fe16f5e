//! The partial order on `(r−1)`-subsets induced by a signotope.
//!
//! Each `r`-subset `X` orders its facets: for `σ(X) = +` the facets form a
//! chain in lexicographic order (`ab ≺ ac ≺ bc` in rank 3), for `σ(X) = −`
//! the chain is reversed. The order is the transitive closure of all chains.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{input, Error, Result};
use crate::signotope::{Sign, Signotope};
use crate::subset::{binomial, rank_unchecked, subsets, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pivot {
    First,
    Last,
}

/// `H`: subsets through the pivot; `U` and `D`: the rest, split by the sign
/// of `I ∪ {pivot}` (`U` gets `+` for the first element, `−` for the last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstLastPartition {
    pub pivot: usize,
    pub h: BTreeSet<Subset>,
    pub u: BTreeSet<Subset>,
    pub d: BTreeSet<Subset>,
}

/// Reachability over the `C(n, r−1)` subsets, stored as a dense bit matrix.
#[derive(Clone, Debug)]
pub struct PartialOrder {
    rank: usize,
    n: usize,
    nodes: Vec<Subset>,
    edges: Vec<(u32, u32)>,
    words: usize,
    reach: Vec<u64>,
}

impl PartialOrder {
    pub fn new(s: &Signotope) -> Result<Self> {
        let (rank, n) = (s.rank(), s.n());
        let k = rank - 1;
        let count = binomial(n, k) as usize;
        let nodes: Vec<Subset> = subsets(n, k).collect();
        let mut edges = BTreeSet::new();
        let mut chain = Vec::with_capacity(rank);
        for (x, sign) in s.iter() {
            chain.clear();
            // X∖x_r, …, X∖x_1 is lexicographically ascending
            chain.extend(x.iter().rev().map(|e| rank_unchecked(x.without(e), n, k) as u32));
            if sign == Sign::Minus {
                chain.reverse();
            }
            edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();

        let mut succ = vec![Vec::new(); count];
        let mut indegree = vec![0usize; count];
        for &(a, b) in &edges {
            succ[a as usize].push(b as usize);
            indegree[b as usize] += 1;
        }
        let mut order = Vec::with_capacity(count);
        let mut stack: Vec<usize> = (0..count).filter(|&v| indegree[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() != count {
            return Err(Error::Internal(format!(
                "facet relation of {s:?} has a cycle through {} subsets",
                count - order.len()
            )));
        }

        let words = count.div_ceil(64).max(1);
        let mut reach = vec![0u64; count * words];
        for &v in order.iter().rev() {
            let mut row = vec![0u64; words];
            for &w in &succ[v] {
                row[w / 64] |= 1 << (w % 64);
                for (a, b) in row.iter_mut().zip(&reach[w * words..(w + 1) * words]) {
                    *a |= b;
                }
            }
            reach[v * words..(v + 1) * words].copy_from_slice(&row);
        }
        Ok(PartialOrder { rank, n, nodes, edges, words, reach })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The `(r−1)`-subsets in index order.
    pub fn nodes(&self) -> &[Subset] {
        &self.nodes
    }

    /// Consecutive pairs of every facet chain, as `(lower, upper)` node indices.
    pub fn cover_edges(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.edges.iter().map(|&(a, b)| (self.nodes[a as usize], self.nodes[b as usize]))
    }

    fn index(&self, x: Subset) -> Result<usize> {
        if x.len() != self.rank - 1 || !x.within(self.n) {
            return input(format!("{x:?} is not an {}-subset of [{}]", self.rank - 1, self.n));
        }
        Ok(rank_unchecked(x, self.n, self.rank - 1))
    }

    /// `a ≺ b` by node index.
    pub fn less_index(&self, a: usize, b: usize) -> bool {
        self.reach[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn less(&self, a: Subset, b: Subset) -> Result<bool> {
        Ok(self.less_index(self.index(a)?, self.index(b)?))
    }

    pub fn compare(&self, a: Subset, b: Subset) -> Result<Comparison> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(if i == j {
            Comparison::Equal
        } else if self.less_index(i, j) {
            Comparison::Less
        } else if self.less_index(j, i) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        })
    }

    /// Everything at or below some generator.
    pub fn downset_of(&self, generators: &[Subset]) -> Result<BTreeSet<Subset>> {
        let gens = generators.iter().map(|&g| self.index(g)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.len())
            .filter(|&v| gens.iter().any(|&g| g == v || self.less_index(v, g)))
            .map(|v| self.nodes[v])
            .collect())
    }

    /// Everything at or above some generator.
    pub fn upset_of(&self, generators: &[Subset]) -> Result<BTreeSet<Subset>> {
        let gens = generators.iter().map(|&g| self.index(g)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.len())
            .filter(|&v| gens.iter().any(|&g| g == v || self.less_index(g, v)))
            .map(|v| self.nodes[v])
            .collect())
    }

    pub fn is_down_set(&self, set: &BTreeSet<Subset>) -> Result<bool> {
        let idx = set.iter().map(|&x| self.index(x)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.len()).all(|v| set.contains(&self.nodes[v]) || !idx.iter().any(|&d| self.less_index(v, d))))
    }

    pub fn is_up_set(&self, set: &BTreeSet<Subset>) -> Result<bool> {
        let idx = set.iter().map(|&x| self.index(x)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.len()).all(|v| set.contains(&self.nodes[v]) || !idx.iter().any(|&u| self.less_index(u, v))))
    }

    /// Maximal elements of a down-set.
    pub fn maximal_elements(&self, set: &BTreeSet<Subset>) -> Result<BTreeSet<Subset>> {
        if !self.is_down_set(set)? {
            return input("set is not downward closed");
        }
        let idx: Vec<usize> = set.iter().map(|&x| self.index(x)).collect::<Result<_>>()?;
        Ok(idx.iter().filter(|&&a| !idx.iter().any(|&b| self.less_index(a, b))).map(|&a| self.nodes[a]).collect())
    }

    /// The cover relation as a DOT digraph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph order {\n");
        for (i, x) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{x}\"];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn partition_pivot(s: &Signotope, pivot: Pivot) -> FirstLastPartition {
    let (r, n) = (s.rank(), s.n());
    let (p, up) = match pivot {
        Pivot::First => (1, Sign::Plus),
        Pivot::Last => (n, Sign::Minus),
    };
    let mut part = FirstLastPartition { pivot: p, h: BTreeSet::new(), u: BTreeSet::new(), d: BTreeSet::new() };
    for i in subsets(n, r - 1) {
        if i.contains(p) {
            part.h.insert(i);
        } else if s.sign(i.with(p)) == up {
            part.u.insert(i);
        } else {
            part.d.insert(i);
        }
    }
    part
}
