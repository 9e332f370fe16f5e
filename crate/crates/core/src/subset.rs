//! Subsets of a ground set `[n] = {1, …, n}`, their lexicographic ranking,
//! and the index shifts used by deletion and rotation.
//!
//! A [`Subset`] is a bitmask over elements `1..=64`; element `x` lives in
//! bit `x - 1`. The ground-set size is carried by the caller.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENT: usize = 64;

const fn pascal() -> [[u64; MAX_ELEMENT + 1]; MAX_ELEMENT + 1] {
    let mut t = [[0u64; MAX_ELEMENT + 1]; MAX_ELEMENT + 1];
    let mut n = 0;
    while n <= MAX_ELEMENT {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOMIAL: [[u64; MAX_ELEMENT + 1]; MAX_ELEMENT + 1] = pascal();

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n || n > MAX_ELEMENT {
        0
    } else {
        BINOMIAL[n][k]
    }
}

/// A finite set of positive integers, iterated in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a subset from elements in any order. Duplicates and elements
    /// outside `1..=64` are rejected.
    pub fn new(elements: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &x in elements {
            if x == 0 || x > MAX_ELEMENT {
                return input(format!("element {x} outside 1..={MAX_ELEMENT}"));
            }
            let b = 1u64 << (x - 1);
            if bits & b != 0 {
                return input(format!("duplicate element {x}"));
            }
            bits |= b;
        }
        Ok(Subset(bits))
    }

    /// `{1, …, n}`.
    pub fn interval(n: usize) -> Self {
        match n {
            0 => Subset(0),
            MAX_ELEMENT => Subset(u64::MAX),
            _ => Subset((1u64 << n) - 1),
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=MAX_ELEMENT).contains(&x) && self.0 & (1u64 << (x - 1)) != 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_ELEMENT - self.0.leading_zeros() as usize)
    }

    /// True when every element lies in `[n]`.
    pub fn within(self, n: usize) -> bool {
        self.max().is_none_or(|m| m <= n)
    }

    pub fn with(self, x: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENT).contains(&x));
        Subset(self.0 | (1u64 << (x - 1)))
    }

    pub fn without(self, x: usize) -> Self {
        if (1..=MAX_ELEMENT).contains(&x) {
            Subset(self.0 & !(1u64 << (x - 1)))
        } else {
            self
        }
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `i`-th smallest element, 1-based.
    pub fn nth(self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.iter().nth(i - 1)
    }

    /// `X↓k`: drop `k` and shift every larger element down by one.
    pub fn delete(self, k: usize) -> Self {
        if k == 0 || k > MAX_ELEMENT {
            return self;
        }
        let low_mask = (1u64 << (k - 1)) - 1;
        let low = self.0 & low_mask;
        let high = if k == MAX_ELEMENT { 0 } else { self.0 >> k };
        Subset(low | (high << (k - 1)))
    }

    /// Right inverse of [`Subset::delete`]: shift every element `>= k` up by
    /// one, leaving `k` itself absent.
    pub fn lift(self, k: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENT).contains(&k));
        let low_mask = (1u64 << (k - 1)) - 1;
        let low = self.0 & low_mask;
        let high = self.0 & !low_mask;
        Subset(low | (high << 1))
    }

    /// `X_rot` on `[n]`: `1 ↦ n`, `x ↦ x − 1` otherwise.
    pub fn rotate(self, n: usize) -> Self {
        debug_assert!(self.within(n));
        let shifted = self.0 >> 1;
        if self.0 & 1 != 0 {
            Subset(shifted | (1u64 << (n - 1)))
        } else {
            Subset(shifted)
        }
    }

    /// Inverse of [`Subset::rotate`]: `n ↦ 1`, `x ↦ x + 1` otherwise.
    pub fn rotate_back(self, n: usize) -> Self {
        debug_assert!(self.within(n));
        let top = 1u64 << (n - 1);
        let rest = (self.0 & !top) << 1;
        if self.0 & top != 0 {
            Subset(rest | 1)
        } else {
            Subset(rest)
        }
    }

    /// `k` clockwise rotation steps on `[n]`; negative `k` rotates back.
    pub fn rotate_by(self, n: usize, k: i64) -> Self {
        let steps = k.rem_euclid(n as i64) as usize;
        self.iter().map(|x| (x + n - 1 - steps) % n + 1).fold(Subset::EMPTY, Subset::with)
    }
}

impl Ord for Subset {
    /// Lexicographic order on the increasing element sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses `1,2,3` (surrounding parentheses and blanks tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let elements = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad subset literal {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Subset::new(&elements)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Subset::EMPTY, Subset::with)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Ascending element iterator.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl DoubleEndedIterator for Elements {
    fn next_back(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = 63 - self.0.leading_zeros() as usize;
        self.0 &= !(1u64 << bit);
        Some(bit + 1)
    }
}

impl ExactSizeIterator for Elements {}

/// Position of `x` among the `r`-subsets of `[n]` in lexicographic order.
pub fn subset_rank(x: Subset, n: usize, r: usize) -> Result<usize> {
    if x.len() != r {
        return input(format!("subset {x:?} has {} elements, expected {r}", x.len()));
    }
    if !x.within(n) || n > MAX_ELEMENT {
        return input(format!("subset {x:?} not contained in [{n}]"));
    }
    Ok(rank_unchecked(x, n, r))
}

/// Lexicographic rank without argument checks. Lex order on `[n]` is the
/// reverse of colex order on the reflected set `{n − x}`.
#[inline]
pub(crate) fn rank_unchecked(x: Subset, n: usize, r: usize) -> usize {
    let mut colex = 0u64;
    for (i, e) in x.iter().rev().enumerate() {
        colex += BINOMIAL[n - e][i + 1];
    }
    (BINOMIAL[n][r] - 1 - colex) as usize
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Subsets {
    let current = if k <= n && n <= MAX_ELEMENT { Some((1..=k).collect()) } else { None };
    Subsets { n, current }
}

pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.current.as_mut()?;
        let out: Subset = cur.iter().copied().collect();
        let k = cur.len();
        let n = self.n;
        // advance: rightmost position that can still grow
        match (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Subset {
        Subset::new(v).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(subset_rank(s(&[1, 2, 3]), 4, 3).unwrap(), 0);
        assert_eq!(subset_rank(s(&[2, 3, 4]), 4, 3).unwrap(), 3);
        assert_eq!(subset_rank(s(&[1, 3, 4]), 4, 3).unwrap(), 2);
    }

    #[test]
    fn rank_errors() {
        assert!(subset_rank(s(&[1, 2]), 4, 3).is_err());
        assert!(subset_rank(s(&[1, 2, 5]), 4, 3).is_err());
        assert!(Subset::new(&[0]).is_err());
        assert!(Subset::new(&[2, 2]).is_err());
    }

    #[test]
    fn rank_is_position_in_enumeration() {
        for n in 0..=9 {
            for k in 0..=n {
                let all: Vec<_> = subsets(n, k).collect();
                assert_eq!(all.len() as u64, binomial(n, k));
                for (i, x) in all.iter().enumerate() {
                    assert_eq!(subset_rank(*x, n, k).unwrap(), i);
                }
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn delete_examples() {
        assert_eq!(s(&[1, 3, 5]).delete(2), s(&[1, 2, 4]));
        assert_eq!(s(&[1, 2, 3]).delete(4), s(&[1, 2, 3]));
        assert_eq!(s(&[2, 4]).delete(4), s(&[2]));
        assert_eq!(s(&[64]).delete(64), Subset::EMPTY);
        assert_eq!(s(&[3, 7]).lift(3).delete(3), s(&[3, 7]));
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(s(&[1, 2]).rotate(4), s(&[1, 4]));
        assert_eq!(s(&[3, 4]).rotate(4), s(&[2, 3]));
        assert_eq!(s(&[2, 3, 4]).rotate(4), s(&[1, 2, 3]));
        for x in subsets(6, 3) {
            assert_eq!(x.rotate(6).rotate_back(6), x);
            assert_eq!(x.rotate_by(6, 1), x.rotate(6));
            assert_eq!(x.rotate_by(6, -1), x.rotate_back(6));
            assert_eq!(x.rotate_by(6, 6), x);
        }
    }

    #[test]
    fn parse_and_display() {
        let x: Subset = "2,4,6".parse().unwrap();
        assert_eq!(x, s(&[2, 4, 6]));
        assert_eq!(x.to_string(), "2,4,6");
        assert_eq!("(1, 3)".parse::<Subset>().unwrap(), s(&[1, 3]));
        assert!("1,x".parse::<Subset>().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 12), 2_704_156);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
