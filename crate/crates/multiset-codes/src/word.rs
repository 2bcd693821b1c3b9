//! Multiset words over a q-ary alphabet, stored as multiplicity vectors, with
//! the deletion metric and lexicographic ranking of the space `S_{n,q}`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of words materialized by an enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A multiset of symbols from `{0, .., q-1}`, represented by its multiplicity
/// vector: `counts[i]` is how many copies of symbol `i` the word contains.
///
/// The cardinality `n` is the sum of the counts. Words are immutable after
/// construction and all operations are pure, so values can be shared freely
/// across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetWord {
    counts: Vec<u64>,
}

/// A multiset of deleted symbols. Same representation as a word; its
/// cardinality is the number of deletions it describes.
pub type DeletionPattern = MultisetWord;

impl MultisetWord {
    /// Builds a word from its multiplicity vector. The alphabet size is the
    /// vector length and must be at least 1.
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidParameter(
                "a word needs an alphabet of at least one symbol".into(),
            ));
        }
        Ok(Self { counts })
    }

    /// The all-zero word (empty multiset) over `q` symbols.
    pub fn empty(q: usize) -> Result<Self> {
        Self::new(vec![0; q])
    }

    /// Builds a word over `q` symbols from an explicit symbol list, e.g.
    /// `from_symbols(3, &[0, 1, 1, 2, 2, 2])`.
    pub fn from_symbols(q: usize, symbols: &[usize]) -> Result<Self> {
        let mut counts = vec![0u64; q];
        for &s in symbols {
            if s >= q {
                return Err(Error::InvalidParameter(format!(
                    "symbol {s} outside alphabet of size {q}"
                )));
            }
            counts[s] += 1;
        }
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.counts.len()
    }

    /// Cardinality (number of elements, counted with multiplicity).
    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Multiplicity of one symbol.
    pub fn count(&self, symbol: usize) -> u64 {
        self.counts[symbol]
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.q() != other.q() {
            return Err(Error::AlphabetMismatch {
                left: self.q(),
                right: other.q(),
            });
        }
        Ok(())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        self.check_alphabet(other)?;
        if self.n() != other.n() {
            return Err(Error::CardinalityMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Multiset intersection: componentwise minimum of the counts.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(Self { counts })
    }

    /// Multiset difference: componentwise `max(a - b, 0)`.
    pub fn subtract(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        Ok(Self { counts })
    }

    /// Disjoint multiset union: componentwise sum of the counts.
    pub fn union_add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self { counts })
    }

    /// True when every multiplicity of `self` is at most the corresponding
    /// multiplicity of `other`.
    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        self.q() == other.q()
            && self
                .counts
                .iter()
                .zip(&other.counts)
                .all(|(&a, &b)| a <= b)
    }

    /// Deletion distance `d(S, T) = n - |S ∩ T|` between two words of equal
    /// cardinality and alphabet.
    pub fn deletion_distance(&self, other: &Self) -> Result<u64> {
        self.check_same_space(other)?;
        let common: u64 = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.min(b))
            .sum();
        Ok(self.n() - common)
    }

    /// Half the l1 distance between the multiplicity vectors. Always an
    /// integer for words of equal cardinality, and equal to the deletion
    /// distance.
    pub fn l1_distance(&self, other: &Self) -> Result<u64> {
        self.check_same_space(other)?;
        let total: u64 = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.abs_diff(b))
            .sum();
        Ok(total / 2)
    }

    /// Position of this word in the lexicographic enumeration of `S_{n,q}`.
    pub fn rank(&self) -> BigUint {
        let q = self.q();
        let mut rank = BigUint::zero();
        let mut remaining = self.n();
        for i in 0..q.saturating_sub(1) {
            for v in 0..self.counts[i] {
                rank += space_size(remaining - v, q - i - 1);
            }
            remaining -= self.counts[i];
        }
        rank
    }

    /// Inverse of [`MultisetWord::rank`]: the `index`-th word of `S_{n,q}` in
    /// lexicographic order of counts.
    pub fn unrank(index: &BigUint, n: u64, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
        }
        let total = space_size(n, q);
        if index >= &total {
            return Err(Error::IndexOutOfRange {
                index: index.clone(),
                limit: total,
            });
        }
        let mut counts = vec![0u64; q];
        let mut rest = index.clone();
        let mut remaining = n;
        for (i, slot) in counts.iter_mut().enumerate().take(q - 1) {
            let mut v = 0u64;
            loop {
                let block = space_size(remaining - v, q - i - 1);
                if rest < block {
                    break;
                }
                rest -= block;
                v += 1;
            }
            *slot = v;
            remaining -= v;
        }
        counts[q - 1] = remaining;
        Ok(Self { counts })
    }
}

impl fmt::Display for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// The canonical text form of a word is the bare JSON array of its counts.
impl Serialize for MultisetWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for c in &self.counts {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MultisetWord {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        struct CountsVisitor;
        impl<'de> Visitor<'de> for CountsVisitor {
            type Value = MultisetWord;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-empty array of non-negative symbol counts")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut counts = Vec::new();
                while let Some(c) = seq.next_element::<u64>()? {
                    counts.push(c);
                }
                MultisetWord::new(counts).map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_seq(CountsVisitor)
    }
}

/// Exact binomial coefficient `C(n, k)` with arbitrary precision.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 1..=k {
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// Number of multisets of cardinality `n` over `q` symbols:
/// `|S_{n,q}| = C(n + q - 1, q - 1)`.
pub fn space_size(n: u64, q: usize) -> BigUint {
    if q == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(n + q as u64 - 1, q as u64 - 1)
}

/// Iterator over all of `S_{n,q}` in lexicographic order of count vectors.
pub struct SpaceIter {
    next: Option<Vec<u64>>,
    remaining: u64,
}

impl Iterator for SpaceIter {
    type Item = MultisetWord;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        self.remaining -= 1;
        self.next = lex_successor(&current);
        Some(MultisetWord { counts: current })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for SpaceIter {}

fn lex_successor(counts: &[u64]) -> Option<Vec<u64>> {
    let q = counts.len();
    // Find the rightmost position (before the last) with some mass after it,
    // bump it, and push everything remaining to the tail.
    let mut tail: u64 = 0;
    for i in (0..q - 1).rev() {
        tail += counts[i + 1];
        if tail > 0 {
            let mut next = counts[..=i].to_vec();
            next[i] += 1;
            next.resize(q, 0);
            next[q - 1] = tail - 1;
            return Some(next);
        }
    }
    None
}

/// First `limit` words of `S_{n,q}` in lexicographic order, without touching
/// the rest of a possibly huge space.
pub(crate) fn space_prefix(n: u64, q: usize, limit: usize) -> Vec<MultisetWord> {
    let mut out = Vec::new();
    let mut current = Some({
        let mut first = vec![0u64; q];
        first[q - 1] = n;
        first
    });
    while let Some(counts) = current {
        if out.len() == limit {
            break;
        }
        current = lex_successor(&counts);
        out.push(MultisetWord { counts });
    }
    out
}

/// Enumerates `S_{n,q}` with the default cap on the space size.
pub fn enumerate_space(n: u64, q: usize) -> Result<SpaceIter> {
    enumerate_space_capped(n, q, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates `S_{n,q}` provided the space has at most `cap` words.
pub fn enumerate_space_capped(n: u64, q: usize, cap: u64) -> Result<SpaceIter> {
    if q == 0 {
        return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
    }
    let size = space_size(n, q);
    if size > BigUint::from(cap) {
        return Err(Error::EnumerationCapExceeded { size, cap });
    }
    let mut first = vec![0u64; q];
    first[q - 1] = n;
    Ok(SpaceIter {
        next: Some(first),
        remaining: size.try_into().expect("size fits after cap check"),
    })
}
