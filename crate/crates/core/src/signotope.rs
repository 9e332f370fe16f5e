//! Sign maps on `r`-subsets and the validated [`Signotope`] type.
//!
//! Signs are stored in a bit vector indexed by the lexicographic rank of the
//! `r`-subset (`+` = 1). Packet sequences are computed on demand in
//! reverse-lexicographic order: for `Y = (y₁ < … < y_{r+1})` the sequence is
//! `σ(Y∖y₁), σ(Y∖y₂), …, σ(Y∖y_{r+1})`.

use std::fmt;
use std::ops::{Deref, Neg};

use bitvec::prelude::*;

use crate::error::{input, Error, Result};
use crate::subset::{binomial, rank_unchecked, subsets, Subset, Subsets, MAX_ELEMENT};

/// Upper bound on the number of stored signs.
pub const MAX_SIGNS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    /// `(−)^i`: `+` for even `i`, `−` for odd `i`.
    pub fn alternating(i: usize) -> Sign {
        Sign::from_bool(i.is_multiple_of(2))
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Number of adjacent positions with different signs.
pub fn sign_changes(seq: &[Sign]) -> usize {
    seq.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Positions of a monotone sequence whose sign can be flipped without
/// creating a second sign change: both ends of a constant sequence, or the
/// two positions around the single change.
pub(crate) fn flippable_positions(seq: &[Sign]) -> Option<[usize; 2]> {
    let len = seq.len();
    match seq.windows(2).position(|w| w[0] != w[1]) {
        None => Some([0, len - 1]),
        Some(b) if sign_changes(&seq[b + 1..]) == 0 => Some([b, b + 1]),
        Some(_) => None,
    }
}

/// An arbitrary map from the `r`-subsets of `[n]` to signs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMap {
    rank: usize,
    n: usize,
    signs: BitVec<u64, Lsb0>,
}

impl SignMap {
    fn check_shape(rank: usize, n: usize) -> Result<usize> {
        if rank == 0 {
            return input("rank must be at least 1");
        }
        if n < rank {
            return input(format!("ground set size {n} smaller than rank {rank}"));
        }
        if n > MAX_ELEMENT {
            return input(format!("ground set size {n} exceeds {MAX_ELEMENT}"));
        }
        let len = binomial(n, rank);
        if len > MAX_SIGNS {
            return input(format!("C({n},{rank}) = {len} signs is too large"));
        }
        Ok(len as usize)
    }

    /// The constant map.
    pub fn constant(rank: usize, n: usize, sign: Sign) -> Result<Self> {
        let len = Self::check_shape(rank, n)?;
        Ok(SignMap { rank, n, signs: BitVec::repeat(sign.is_plus(), len) })
    }

    pub fn from_fn(rank: usize, n: usize, mut f: impl FnMut(Subset) -> Sign) -> Result<Self> {
        let len = Self::check_shape(rank, n)?;
        let mut signs = BitVec::with_capacity(len);
        for x in subsets(n, rank) {
            signs.push(f(x).is_plus());
        }
        Ok(SignMap { rank, n, signs })
    }

    /// Signs listed in lexicographic subset order.
    pub fn from_signs(rank: usize, n: usize, signs: impl IntoIterator<Item = Sign>) -> Result<Self> {
        let len = Self::check_shape(rank, n)?;
        let signs: BitVec<u64, Lsb0> = signs.into_iter().map(Sign::is_plus).collect();
        if signs.len() != len {
            return input(format!("expected {len} signs for r={rank} n={n}, got {}", signs.len()));
        }
        Ok(SignMap { rank, n, signs })
    }

    /// Parses a string of `+`/`-` in lexicographic subset order.
    pub fn parse_signs(rank: usize, n: usize, s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| {
                Sign::from_char(c).ok_or_else(|| Error::Input(format!("unexpected character {c:?} in sign string")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_signs(rank, n, signs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `r`-subsets, `C(n, r)`.
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn index_of(&self, x: Subset) -> usize {
        debug_assert!(x.len() == self.rank && x.within(self.n), "{x:?} is not an {}-subset of [{}]", self.rank, self.n);
        rank_unchecked(x, self.n, self.rank)
    }

    /// Sign of an `r`-subset. Panics in debug builds on a wrong-sized subset.
    pub fn sign(&self, x: Subset) -> Sign {
        Sign::from_bool(self.signs[self.index_of(x)])
    }

    pub fn try_sign(&self, x: Subset) -> Result<Sign> {
        if x.len() != self.rank || !x.within(self.n) {
            return input(format!("{x:?} is not an {}-subset of [{}]", self.rank, self.n));
        }
        Ok(self.sign(x))
    }

    pub fn sign_at(&self, index: usize) -> Sign {
        Sign::from_bool(self.signs[index])
    }

    pub fn set(&mut self, x: Subset, sign: Sign) {
        let i = self.index_of(x);
        self.signs.set(i, sign.is_plus());
    }

    pub fn set_at(&mut self, index: usize, sign: Sign) {
        self.signs.set(index, sign.is_plus());
    }

    pub fn flip(&mut self, x: Subset) {
        let i = self.index_of(x);
        let v = self.signs[i];
        self.signs.set(i, !v);
    }

    /// The `r`-subsets of `[n]` in storage order.
    pub fn subsets(&self) -> Subsets {
        subsets(self.n, self.rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, Sign)> + '_ {
        self.subsets().zip(self.signs.iter().by_vals().map(Sign::from_bool))
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        self.signs.iter().by_vals().map(Sign::from_bool)
    }

    pub fn count_plus(&self) -> usize {
        self.signs.count_ones()
    }

    /// All signs negated.
    pub fn negated(&self) -> SignMap {
        SignMap { rank: self.rank, n: self.n, signs: !self.signs.clone() }
    }

    /// The signs of `Y∖y₁, …, Y∖y_{r+1}` for an `(r+1)`-subset `Y`.
    pub fn packet_sequence(&self, packet: Subset) -> Result<Vec<Sign>> {
        if packet.len() != self.rank + 1 || !packet.within(self.n) {
            return input(format!("{packet:?} is not an {}-subset of [{}]", self.rank + 1, self.n));
        }
        Ok(self.packet_unchecked(packet))
    }

    pub(crate) fn packet_unchecked(&self, packet: Subset) -> Vec<Sign> {
        packet.iter().map(|y| self.sign(packet.without(y))).collect()
    }

    /// Every packet whose sequence has two or more sign changes, in
    /// lexicographic order. Empty exactly when the map is a signotope.
    pub fn validate(&self) -> Vec<Subset> {
        subsets(self.n, self.rank + 1).filter(|&y| sign_changes(&self.packet_unchecked(y)) > 1).collect()
    }

    pub fn is_signotope(&self) -> bool {
        subsets(self.n, self.rank + 1).all(|y| sign_changes(&self.packet_unchecked(y)) <= 1)
    }

    /// Validity of the packets through `x` only.
    pub(crate) fn packets_through_valid(&self, x: Subset) -> bool {
        (1..=self.n).filter(|&y| !x.contains(y)).all(|y| sign_changes(&self.packet_unchecked(x.with(y))) <= 1)
    }

    pub fn sign_string(&self) -> String {
        self.signs().map(Sign::as_char).collect()
    }

    /// The text format: header line, sign line, trailing newline.
    pub fn to_text(&self) -> String {
        format!("signotope r={} n={}\n{}\n", self.rank, self.n, self.sign_string())
    }
}

impl fmt::Debug for SignMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignMap(r={}, n={}, {})", self.rank, self.n, self.sign_string())
    }
}

/// A sign map in which every packet has at most one sign change.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signotope(SignMap);

impl Signotope {
    /// Validates eagerly; the error lists every violating packet.
    pub fn new(map: SignMap) -> Result<Self> {
        let violations = map.validate();
        if violations.is_empty() {
            Ok(Signotope(map))
        } else {
            Err(Error::NotSignotope { violations })
        }
    }

    pub(crate) fn new_unchecked(map: SignMap) -> Self {
        debug_assert!(map.is_signotope());
        Signotope(map)
    }

    /// Wraps a map without validation, so tests can build broken certificates.
    #[cfg(test)]
    pub(crate) fn assume_valid(map: SignMap) -> Self {
        Signotope(map)
    }

    pub fn constant(rank: usize, n: usize, sign: Sign) -> Result<Self> {
        SignMap::constant(rank, n, sign).map(Signotope)
    }

    pub fn parse_signs(rank: usize, n: usize, s: &str) -> Result<Self> {
        Signotope::new(SignMap::parse_signs(rank, n, s)?)
    }

    pub fn as_map(&self) -> &SignMap {
        &self.0
    }

    pub fn into_map(self) -> SignMap {
        self.0
    }

    pub fn is_fliple(&self, x: Subset) -> bool {
        let mut m = self.0.clone();
        m.flip(x);
        m.packets_through_valid(x)
    }

    /// All fliples in lexicographic order. One pass over the packets: a
    /// subset stops being a fliple as soon as one packet forbids the flip.
    pub fn fliples(&self) -> Vec<Subset> {
        let (r, n) = (self.rank(), self.n());
        let mut ok: BitVec<u64, Lsb0> = BitVec::repeat(true, self.len());
        for packet in subsets(n, r + 1) {
            let seq = self.packet_unchecked(packet);
            let allowed = flippable_positions(&seq);
            for (pos, y) in packet.iter().enumerate() {
                if allowed.is_none_or(|a| !a.contains(&pos)) {
                    let i = self.index_of(packet.without(y));
                    ok.set(i, false);
                }
            }
        }
        self.subsets().zip(ok.iter().by_vals()).filter(|&(_, f)| f).map(|(x, _)| x).collect()
    }

    /// The signotope with the sign of a fliple reversed.
    pub fn flip(&self, x: Subset) -> Result<Signotope> {
        if x.len() != self.rank() || !x.within(self.n()) {
            return input(format!("{x:?} is not an {}-subset of [{}]", self.rank(), self.n()));
        }
        let mut m = self.0.clone();
        m.flip(x);
        if m.packets_through_valid(x) {
            Ok(Signotope(m))
        } else {
            input(format!("{x:?} is not a fliple"))
        }
    }

    /// `σ↓k` on `[n − 1]`.
    pub fn delete(&self, k: usize) -> Result<Signotope> {
        let (r, n) = (self.rank(), self.n());
        if !(1..=n).contains(&k) {
            return input(format!("element {k} not in [{n}]"));
        }
        if n == r {
            return input("deleting from n = r leaves no r-subset");
        }
        let m = SignMap::from_fn(r, n - 1, |z| self.sign(z.lift(k)))?;
        Ok(Signotope(m))
    }

    /// `σ/ᵢ`: the rank-`(r−1)` signotope on `[n − 1]` with
    /// `σ/ᵢ(J↓i) = σ(J)` for every `r`-subset `J ∋ i`.
    pub fn contract(&self, i: usize) -> Result<Signotope> {
        let (r, n) = (self.rank(), self.n());
        if r < 2 {
            return input("contraction needs rank at least 2");
        }
        if !(1..=n).contains(&i) {
            return input(format!("element {i} not in [{n}]"));
        }
        let m = SignMap::from_fn(r - 1, n - 1, |z| self.sign(z.lift(i).with(i)))?;
        Ok(Signotope(m))
    }

    /// One clockwise rotation: `σ_rot(X_rot) = σ(X)` if `1 ∉ X`, `−σ(X)` otherwise.
    pub fn rotate(&self) -> Signotope {
        let n = self.n();
        let m = SignMap::from_fn(self.rank(), n, |z| {
            let s = self.sign(z.rotate_back(n));
            if z.contains(n) {
                -s
            } else {
                s
            }
        })
        .expect("shape already validated");
        Signotope(m)
    }

    /// `k` clockwise rotations (negative: counterclockwise); period `2n`.
    pub fn rotate_k(&self, k: i64) -> Signotope {
        let n = self.n();
        let steps = k.rem_euclid(2 * n as i64) as usize;
        if steps == 0 {
            return self.clone();
        }
        let m = SignMap::from_fn(self.rank(), n, |z| {
            let x = z.rotate_by(n, -(steps as i64));
            // element x sits at position 1 at steps x-1, x-1+n, ...
            let wraps: usize = x.iter().map(|e| if steps > e - 1 { (steps - e + n) / n } else { 0 }).sum();
            let s = self.sign(x);
            if wraps % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .expect("shape already validated");
        Signotope(m)
    }

    /// All signs negated.
    pub fn reverse(&self) -> Signotope {
        Signotope(self.0.negated())
    }
}

impl Deref for Signotope {
    type Target = SignMap;

    fn deref(&self) -> &SignMap {
        &self.0
    }
}

impl TryFrom<SignMap> for Signotope {
    type Error = Error;

    fn try_from(map: SignMap) -> Result<Self> {
        Signotope::new(map)
    }
}

impl From<Signotope> for SignMap {
    fn from(s: Signotope) -> SignMap {
        s.0
    }
}

impl fmt::Debug for Signotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signotope(r={}, n={}, {})", self.rank(), self.n(), self.sign_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn s(v: &[usize]) -> Subset {
        Subset::new(v).unwrap()
    }

    fn sig(r: usize, n: usize, signs: &str) -> Signotope {
        Signotope::parse_signs(r, n, signs).unwrap()
    }

    #[test]
    fn packet_sequence_examples() {
        let y = s(&[1, 2, 3, 4]);
        let plus = SignMap::constant(3, 4, Plus).unwrap();
        assert_eq!(plus.packet_sequence(y).unwrap(), vec![Plus; 4]);
        let m = SignMap::parse_signs(3, 4, "+---").unwrap();
        assert_eq!(m.packet_sequence(y).unwrap(), vec![Minus, Minus, Minus, Plus]);
        let m = SignMap::parse_signs(3, 4, "+-+-").unwrap();
        assert_eq!(m.packet_sequence(y).unwrap(), vec![Minus, Plus, Minus, Plus]);
        assert!(m.packet_sequence(s(&[1, 2, 3])).is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(SignMap::parse_signs(3, 4, "-+++").unwrap().validate().is_empty());
        assert_eq!(SignMap::parse_signs(3, 4, "+-+-").unwrap().validate(), vec![s(&[1, 2, 3, 4])]);
        assert!(SignMap::parse_signs(4, 4, "-").unwrap().validate().is_empty());
        assert!(matches!(Signotope::parse_signs(3, 4, "+-+-"), Err(Error::NotSignotope { .. })));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SignMap::constant(0, 3, Plus).is_err());
        assert!(SignMap::constant(4, 3, Plus).is_err());
        assert!(SignMap::parse_signs(3, 4, "+++").is_err());
        assert!(SignMap::parse_signs(3, 4, "++x+").is_err());
    }

    #[test]
    fn fliple_examples() {
        let plus = Signotope::constant(3, 4, Plus).unwrap();
        assert_eq!(plus.fliples(), vec![s(&[1, 2, 3]), s(&[2, 3, 4])]);
        // packet sequence ++-- is lex string --++
        let m = sig(3, 4, "--++");
        assert_eq!(m.fliples(), vec![s(&[1, 2, 4]), s(&[1, 3, 4])]);
        let single = sig(3, 3, "-");
        assert_eq!(single.fliples(), vec![s(&[1, 2, 3])]);
    }

    #[test]
    fn fliples_match_flip_and_revalidate() {
        for signs in ["++++", "-+++", "--++", "---+", "----", "+---", "++--", "+++-"] {
            let m = sig(3, 4, signs);
            let brute: Vec<_> = m
                .subsets()
                .filter(|&x| {
                    let mut f = m.as_map().clone();
                    f.flip(x);
                    f.is_signotope()
                })
                .collect();
            assert_eq!(m.fliples(), brute, "{signs}");
            for x in m.subsets() {
                assert_eq!(m.is_fliple(x), brute.contains(&x));
            }
        }
    }

    #[test]
    fn delete_examples() {
        let plus5 = Signotope::constant(3, 5, Plus).unwrap();
        assert_eq!(plus5.delete(3).unwrap(), Signotope::constant(3, 4, Plus).unwrap());
        let m = sig(3, 4, "+---");
        assert_eq!(m.delete(4).unwrap(), sig(3, 3, "+"));
        assert!(sig(3, 3, "+").delete(1).is_err());
        assert!(m.delete(5).is_err());
    }

    #[test]
    fn contract_examples() {
        let plus = Signotope::constant(3, 4, Plus).unwrap();
        assert_eq!(plus.contract(1).unwrap(), Signotope::constant(2, 3, Plus).unwrap());
        assert_eq!(plus.contract(4).unwrap(), Signotope::constant(2, 3, Plus).unwrap());
        assert_eq!(sig(3, 4, "+---").contract(4).unwrap(), sig(2, 3, "---"));
        assert!(Signotope::constant(1, 3, Plus).unwrap().contract(1).is_err());
    }

    #[test]
    fn rotate_examples() {
        let plus = Signotope::constant(3, 4, Plus).unwrap();
        assert_eq!(plus.rotate(), sig(3, 4, "+---"));
        assert_eq!(plus.rotate_k(8), plus);
        assert_eq!(plus.rotate_k(4), plus.reverse());
        assert_eq!(plus.rotate_k(-1).rotate_k(1), plus);
        assert_eq!(plus.rotate_k(0), plus);
    }

    #[test]
    fn rotate_k_matches_iteration() {
        let base = sig(3, 5, &"+".repeat(10)).rotate().rotate().rotate();
        let m = base.flip(base.fliples()[0]).unwrap();
        let mut it = m.clone();
        for k in 0..=12 {
            assert_eq!(m.rotate_k(k), it, "k={k}");
            assert_eq!(m.rotate_k(k - 10), it, "k={}", k - 10);
            it = it.rotate();
        }
    }

    #[test]
    fn reverse_is_involution() {
        let m = sig(3, 4, "--++");
        assert_eq!(m.reverse(), sig(3, 4, "++--"));
        assert_eq!(m.reverse().reverse(), m);
    }

    #[test]
    fn flip_rejects_non_fliple() {
        let plus = Signotope::constant(3, 4, Plus).unwrap();
        assert!(plus.flip(s(&[1, 2, 4])).is_err());
        assert_eq!(plus.flip(s(&[1, 2, 3])).unwrap(), sig(3, 4, "-+++"));
    }

    #[test]
    fn flippable_positions_cases() {
        assert_eq!(flippable_positions(&[Plus, Plus, Plus]), Some([0, 2]));
        assert_eq!(flippable_positions(&[Plus, Minus, Minus]), Some([0, 1]));
        assert_eq!(flippable_positions(&[Plus, Minus, Plus]), None);
    }
}
