//! Code constructions with membership tests, exact class sizes, systematic
//! encoding, and deletion decoding.
//!
//! All constructions here carve a code out of `S_{n,q}` by congruence
//! constraints on the multiplicity vector: a weighted symbol sum modulo `m`
//! for [`WeightedCongruenceCode`], or q independent mod-2 constraints for
//! [`ParityCode`]. [`ExplicitCode`] holds a literal list of words for
//! verification work.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sidon;
use crate::word::{
    enumerate_space_capped, space_size, DeletionPattern, MultisetWord, DEFAULT_ENUMERATION_CAP,
};

/// Which congruence family a [`WeightedCongruenceCode`] belongs to. The kind
/// fixes the decoding algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    /// q = 2, weights (0, 1), modulus t+1: the weight congruence code.
    BinaryCongruence,
    /// Weights (0, 1, .., q-1), modulus q, single-deletion only.
    SumModQ,
    /// Weights (t+1)^i with a trailing zero, modulus t(t+1)^(q-2) + 1.
    CyclicSidon,
    /// User-supplied weights, admitted after a brute-force injectivity check
    /// of the deletion-syndrome map.
    Custom,
}

impl CodeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::BinaryCongruence => "binary_congruence",
            CodeKind::SumModQ => "sum_mod_q",
            CodeKind::CyclicSidon => "cyclic_sidon",
            CodeKind::Custom => "custom",
        }
    }
}

/// Result of decoding a received word: the transmitted codeword and the
/// multiset of deleted symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: MultisetWord,
    pub pattern: DeletionPattern,
}

/// Elementary operation count of one decode call, for complexity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeCost {
    pub ops: u64,
}

/// Common surface of the constructive code families.
pub trait DeletionCode {
    /// Cardinality of every codeword.
    fn n(&self) -> u64;
    /// Alphabet size.
    fn q(&self) -> usize;
    /// Designed number of correctable deletions.
    fn t(&self) -> u64;

    /// Membership test; the word must live in the same `S_{n,q}`.
    fn contains(&self, w: &MultisetWord) -> Result<bool>;

    /// Exact number of codewords.
    fn class_size(&self) -> BigUint;

    /// The `index`-th codeword in lexicographic count order. Bijective from
    /// `[0, class_size)` onto the code.
    fn encode(&self, index: &BigUint) -> Result<MultisetWord>;

    /// Inverse of [`DeletionCode::encode`].
    fn message_index(&self, w: &MultisetWord) -> Result<BigUint>;

    /// Decodes a word produced by deleting at most `t` symbols from a
    /// codeword, returning the codeword, the deletion pattern, and the
    /// number of elementary operations spent.
    fn decode_instrumented(&self, received: &MultisetWord) -> Result<(Decoded, DecodeCost)>;

    fn decode(&self, received: &MultisetWord) -> Result<Decoded> {
        self.decode_instrumented(received).map(|(d, _)| d)
    }

    /// All codewords in lexicographic order, by filtering `S_{n,q}`.
    fn codewords(&self) -> Result<Vec<MultisetWord>> {
        self.codewords_capped(DEFAULT_ENUMERATION_CAP)
    }

    fn codewords_capped(&self, cap: u64) -> Result<Vec<MultisetWord>> {
        let mut out = Vec::new();
        for w in enumerate_space_capped(self.n(), self.q(), cap)? {
            if self.contains(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Redundancy `log_q |S_{n,q}| - log_q M` from the actual code size.
    fn redundancy(&self) -> f64 {
        let space = big_ln(&space_size(self.n(), self.q()));
        let size = big_ln(&self.class_size());
        (space - size) / (self.q() as f64).ln()
    }
}

/// Natural log of a big integer, stable for values far beyond f64 range.
fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return u64::try_from(x).map(|v| (v as f64).ln()).unwrap_or(0.0);
    }
    let shift = bits - 53;
    let head = u64::try_from(&(x >> shift)).expect("53-bit head");
    (head as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn submod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - b as u128 % m as u128) % m as u128) as u64
}

fn reduce_weight(w: i64, m: u64) -> u64 {
    let m = m as i128;
    (((w as i128 % m) + m) % m) as u64
}

/// Weight vector and modulus of the cyclic Sidon-type construction:
/// `f(i) = (t+1)^i` for `i < q-1`, `f(q-1) = 0`, `m = t(t+1)^(q-2) + 1`.
pub fn cyclic_weights(q: usize, t: u64) -> Result<(Vec<u64>, u64)> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("need q >= 2, got {q}")));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("need t >= 1".into()));
    }
    let base = t as u128 + 1;
    let mut weights = Vec::with_capacity(q);
    let mut power: u128 = 1;
    for i in 0..q - 1 {
        if i > 0 {
            power = power.checked_mul(base).ok_or_else(|| {
                Error::InvalidParameter(format!("weights overflow at q={q}, t={t}"))
            })?;
        }
        weights.push(power);
    }
    let m = (t as u128)
        .checked_mul(*weights.last().expect("q >= 2"))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::InvalidParameter(format!("modulus overflows at q={q}, t={t}")))?;
    if m > u64::MAX as u128 {
        return Err(Error::InvalidParameter(format!(
            "modulus {m} does not fit in 64 bits"
        )));
    }
    let mut weights: Vec<u64> = weights.into_iter().map(|w| w as u64).collect();
    weights.push(0);
    Ok((weights, m as u64))
}

/// A code cut out of `S_{n,q}` by one congruence: all words whose weighted
/// symbol sum is `a` modulo `m`. Immutable after construction; the class-size
/// table is computed once on first use and shared.
#[derive(Debug, Clone)]
pub struct WeightedCongruenceCode {
    n: u64,
    q: usize,
    t: u64,
    weights: Vec<u64>,
    modulus: u64,
    residue: u64,
    kind: CodeKind,
    dp: OnceLock<SuffixDp>,
}

impl WeightedCongruenceCode {
    /// Binary weight-congruence code: `w(S) = a (mod t+1)` over q = 2.
    /// `a = None` picks the residue with the largest class.
    pub fn binary(n: u64, t: u64, a: Option<u64>) -> Result<Self> {
        if n < 1 || t < 1 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and t >= 1, got n={n}, t={t}"
            )));
        }
        Self::assemble(n, 2, t, vec![0, 1], t + 1, a, CodeKind::BinaryCongruence)
    }

    /// Symbol-sum code: `sum of symbols = a (mod q)`. Corrects one deletion;
    /// with two or more deletions the sum no longer identifies the pattern.
    pub fn sum_mod_q(n: u64, q: usize, a: Option<u64>) -> Result<Self> {
        if n < 1 || q < 2 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and q >= 2, got n={n}, q={q}"
            )));
        }
        let weights = (0..q as u64).collect();
        Self::assemble(n, q, 1, weights, q as u64, a, CodeKind::SumModQ)
    }

    /// Cyclic Sidon-type code for arbitrary `(q, t)`: weights `(t+1)^i` with
    /// a trailing zero, modulus `t(t+1)^(q-2) + 1`. Deleted multisets are
    /// recovered from the syndrome difference by base-(t+1) expansion.
    pub fn cyclic(n: u64, q: usize, t: u64, a: Option<u64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("need n >= 1".into()));
        }
        let (weights, m) = cyclic_weights(q, t)?;
        Self::assemble(n, q, t, weights, m, a, CodeKind::CyclicSidon)
    }

    /// Arbitrary weights, admitted only if the deletion-syndrome map is
    /// injective on the patterns of each size up to `t` (checked by brute
    /// force). Decoding searches the patterns of the observed size.
    pub fn custom(
        n: u64,
        q: usize,
        weights: &[i64],
        m: u64,
        t: u64,
        a: Option<u64>,
    ) -> Result<Self> {
        if n < 1 || q < 2 || t < 1 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1, q >= 2, t >= 1, got n={n}, q={q}, t={t}"
            )));
        }
        if !sidon::validate_deletion_syndrome(weights, m, t, q)? {
            return Err(Error::InvalidParameter(
                "weights do not identify deletion patterns up to the requested size".into(),
            ));
        }
        let reduced = weights.iter().map(|&w| reduce_weight(w, m)).collect();
        Self::assemble(n, q, t, reduced, m, a, CodeKind::Custom)
    }

    fn assemble(
        n: u64,
        q: usize,
        t: u64,
        weights: Vec<u64>,
        m: u64,
        a: Option<u64>,
        kind: CodeKind,
    ) -> Result<Self> {
        let mut code = Self {
            n,
            q,
            t,
            weights,
            modulus: m,
            residue: 0,
            kind,
            dp: OnceLock::new(),
        };
        match a {
            Some(a) if a >= m => {
                return Err(Error::InvalidParameter(format!(
                    "residue {a} not below modulus {m}"
                )))
            }
            Some(a) => code.residue = a,
            None => code.residue = code.best_residue().0,
        }
        Ok(code)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// The weighted symbol sum of a word modulo `m`, in `[0, m)`.
    pub fn syndrome(&self, w: &MultisetWord) -> Result<u64> {
        if w.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: w.q(),
            });
        }
        let m = self.modulus as u128;
        let mut acc: u128 = 0;
        for (&c, &wt) in w.counts().iter().zip(&self.weights) {
            acc = (acc + c as u128 % m * (wt as u128)) % m;
        }
        Ok(acc as u64)
    }

    /// Class sizes for every residue, from one dynamic program.
    pub fn class_sizes(&self) -> Vec<BigUint> {
        let dp = self.dp();
        (0..self.modulus)
            .map(|r| dp.ways(0, self.n, r).clone())
            .collect()
    }

    /// Residue with the largest class; ties break to the smallest residue.
    pub fn best_residue(&self) -> (u64, BigUint) {
        let sizes = self.class_sizes();
        let mut best = 0usize;
        for (a, size) in sizes.iter().enumerate() {
            if size > &sizes[best] {
                best = a;
            }
        }
        (best as u64, sizes[best].clone())
    }

    /// Redundancy implied by the modulus, `log_q m`. The exact redundancy
    /// from [`DeletionCode::redundancy`] can differ when the classes are not
    /// perfectly balanced.
    pub fn nominal_redundancy(&self) -> f64 {
        (self.modulus as f64).ln() / (self.q as f64).ln()
    }

    fn dp(&self) -> &SuffixDp {
        self.dp
            .get_or_init(|| SuffixDp::build(self.n, self.q, &self.weights, self.modulus))
    }

    fn decode_pattern(&self, deletions: u64, target: u64, ops: &mut u64) -> Result<Vec<u64>> {
        match self.kind {
            CodeKind::SumModQ => {
                // m = q and f(s) = s, so the target is the deleted symbol.
                let mut counts = vec![0u64; self.q];
                if deletions == 1 {
                    counts[target as usize] = 1;
                    *ops += 1;
                } else if target != 0 {
                    return Err(Error::DecodeFailure(
                        "zero deletions but non-matching syndrome".into(),
                    ));
                }
                Ok(counts)
            }
            CodeKind::BinaryCongruence => {
                // target = number of deleted ones, in [0, t].
                let ones = target;
                if ones > deletions {
                    return Err(Error::DecodeFailure(format!(
                        "syndrome implies {ones} deleted ones but only {deletions} deletions"
                    )));
                }
                *ops += 1;
                Ok(vec![deletions - ones, ones])
            }
            CodeKind::CyclicSidon => {
                // Greedy base-(t+1) expansion of the syndrome difference:
                // digit i is the multiplicity of symbol i in the pattern, the
                // leftover deletions are copies of the zero-weight symbol q-1.
                let mut counts = vec![0u64; self.q];
                let mut rest = target;
                let mut used: u64 = 0;
                for i in (0..self.q - 1).rev() {
                    let digit = rest / self.weights[i];
                    rest %= self.weights[i];
                    counts[i] = digit;
                    used += digit;
                    *ops += 1;
                }
                debug_assert_eq!(rest, 0, "weights[0] = 1 consumes the residue");
                if used > deletions {
                    return Err(Error::DecodeFailure(format!(
                        "expansion of syndrome needs {used} deletions, observed {deletions}"
                    )));
                }
                counts[self.q - 1] = deletions - used;
                Ok(counts)
            }
            CodeKind::Custom => {
                // Injectivity per pattern size was verified at construction,
                // so scanning the patterns of the observed size finds at most
                // one match.
                let mut found: Option<Vec<u64>> = None;
                sidon::for_each_multiset(self.q, deletions, &mut |counts| {
                    if found.is_some() {
                        return;
                    }
                    *ops += 1;
                    let mut acc: u128 = 0;
                    for (&c, &w) in counts.iter().zip(&self.weights) {
                        acc = (acc + c as u128 * w as u128) % self.modulus as u128;
                    }
                    if acc as u64 == target {
                        found = Some(counts.to_vec());
                    }
                });
                found.ok_or_else(|| {
                    Error::DecodeFailure("no deletion pattern matches the syndrome".into())
                })
            }
        }
    }
}

impl DeletionCode for WeightedCongruenceCode {
    fn n(&self) -> u64 {
        self.n
    }

    fn q(&self) -> usize {
        self.q
    }

    fn t(&self) -> u64 {
        self.t
    }

    fn contains(&self, w: &MultisetWord) -> Result<bool> {
        if w.n() != self.n {
            return Err(Error::CardinalityMismatch {
                left: self.n,
                right: w.n(),
            });
        }
        Ok(self.syndrome(w)? == self.residue)
    }

    fn class_size(&self) -> BigUint {
        self.dp().ways(0, self.n, self.residue).clone()
    }

    fn encode(&self, index: &BigUint) -> Result<MultisetWord> {
        let limit = self.class_size();
        if index >= &limit {
            return Err(Error::IndexOutOfRange {
                index: index.clone(),
                limit,
            });
        }
        let dp = self.dp();
        let mut rest = index.clone();
        let mut counts = vec![0u64; self.q];
        let mut rem_n = self.n;
        let mut rem_r = self.residue;
        for i in 0..self.q - 1 {
            let mut chosen = None;
            for x in 0..=rem_n {
                let shifted = submod(
                    rem_r,
                    ((x as u128 * self.weights[i] as u128) % self.modulus as u128) as u64,
                    self.modulus,
                );
                let ways = dp.ways(i + 1, rem_n - x, shifted);
                if &rest < ways {
                    chosen = Some((x, shifted));
                    break;
                }
                rest -= ways;
            }
            let (x, shifted) = chosen.expect("index below class size");
            counts[i] = x;
            rem_n -= x;
            rem_r = shifted;
        }
        counts[self.q - 1] = rem_n;
        MultisetWord::new(counts)
    }

    fn message_index(&self, w: &MultisetWord) -> Result<BigUint> {
        if !self.contains(w)? {
            return Err(Error::InvalidParameter(
                "word is not a member of the code".into(),
            ));
        }
        let dp = self.dp();
        let mut index = BigUint::zero();
        let mut rem_n = self.n;
        let mut rem_r = self.residue;
        for i in 0..self.q - 1 {
            let x_i = w.count(i);
            for x in 0..x_i {
                let shifted = submod(
                    rem_r,
                    ((x as u128 * self.weights[i] as u128) % self.modulus as u128) as u64,
                    self.modulus,
                );
                index += dp.ways(i + 1, rem_n - x, shifted);
            }
            let shifted = submod(
                rem_r,
                ((x_i as u128 * self.weights[i] as u128) % self.modulus as u128) as u64,
                self.modulus,
            );
            rem_n -= x_i;
            rem_r = shifted;
        }
        Ok(index)
    }

    fn decode_instrumented(&self, received: &MultisetWord) -> Result<(Decoded, DecodeCost)> {
        if received.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: received.q(),
            });
        }
        let got = received.n();
        if got > self.n {
            return Err(Error::InvalidParameter(format!(
                "received cardinality {got} exceeds code length {}",
                self.n
            )));
        }
        let deletions = self.n - got;
        if deletions > self.t {
            return Err(Error::TooManyDeletions {
                got: deletions,
                max: self.t,
            });
        }

        let mut ops: u64 = 0;
        // Single pass over the received elements, as a streaming receiver
        // would do: one modular addition per symbol occurrence.
        let mut synd: u64 = 0;
        for (i, &c) in received.counts().iter().enumerate() {
            let w = self.weights[i];
            for _ in 0..c {
                synd = addmod(synd, w, self.modulus);
                ops += 1;
            }
        }
        let target = submod(self.residue, synd, self.modulus);
        ops += 1;

        let pattern = MultisetWord::new(self.decode_pattern(deletions, target, &mut ops)?)?;
        let codeword = received.union_add(&pattern)?;
        Ok((Decoded { codeword, pattern }, DecodeCost { ops }))
    }
}

/// Suffix counting table: `ways(i, c, r)` is the number of ways to pick the
/// multiplicities of symbols `i..q` with total count `c` and weighted sum
/// `r` modulo `m`.
#[derive(Debug, Clone)]
struct SuffixDp {
    m: usize,
    levels: Vec<Vec<BigUint>>,
}

impl SuffixDp {
    fn build(n: u64, q: usize, weights: &[u64], modulus: u64) -> Self {
        let n = usize::try_from(n).expect("code length fits in memory");
        let m = usize::try_from(modulus).expect("modulus fits usize");
        let cells = (n + 1)
            .checked_mul(m)
            .and_then(|v| v.checked_mul(q + 1))
            .expect("table size fits");
        assert!(
            cells <= 1 << 31,
            "class-size table with {cells} cells is too large; use explicit residues instead"
        );

        let mut levels = vec![vec![BigUint::zero(); (n + 1) * m]; q + 1];
        levels[q][0] = BigUint::one();
        for i in (0..q).rev() {
            let w = (weights[i] % modulus) as usize;
            let (head, tail) = levels.split_at_mut(i + 1);
            let cur = &mut head[i];
            let next = &tail[0];
            for c in 0..=n {
                for r in 0..m {
                    let mut v = next[c * m + r].clone();
                    if c >= 1 {
                        v += &cur[(c - 1) * m + (r + m - w) % m];
                    }
                    cur[c * m + r] = v;
                }
            }
        }
        Self { m, levels }
    }

    fn ways(&self, level: usize, count: u64, residue: u64) -> &BigUint {
        &self.levels[level][count as usize * self.m + residue as usize]
    }
}

/// The all-even-multiplicities code: after one deletion exactly one
/// coordinate is odd, which names the deleted symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCode {
    n: u64,
    q: usize,
}

impl ParityCode {
    pub fn new(n: u64, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("need q >= 2, got {q}")));
        }
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "parity code needs even n >= 2, got {n}"
            )));
        }
        Ok(Self { n, q })
    }
}

impl DeletionCode for ParityCode {
    fn n(&self) -> u64 {
        self.n
    }

    fn q(&self) -> usize {
        self.q
    }

    fn t(&self) -> u64 {
        1
    }

    fn contains(&self, w: &MultisetWord) -> Result<bool> {
        if w.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: w.q(),
            });
        }
        if w.n() != self.n {
            return Err(Error::CardinalityMismatch {
                left: self.n,
                right: w.n(),
            });
        }
        Ok(w.counts().iter().all(|&c| c % 2 == 0))
    }

    fn class_size(&self) -> BigUint {
        // Halving the counts maps the code onto S_{n/2, q}.
        space_size(self.n / 2, self.q)
    }

    fn encode(&self, index: &BigUint) -> Result<MultisetWord> {
        let halved = MultisetWord::unrank(index, self.n / 2, self.q).map_err(|e| match e {
            Error::IndexOutOfRange { index, limit } => Error::IndexOutOfRange { index, limit },
            other => other,
        })?;
        MultisetWord::new(halved.counts().iter().map(|&c| 2 * c).collect())
    }

    fn message_index(&self, w: &MultisetWord) -> Result<BigUint> {
        if !self.contains(w)? {
            return Err(Error::InvalidParameter(
                "word is not a member of the code".into(),
            ));
        }
        let halved = MultisetWord::new(w.counts().iter().map(|&c| c / 2).collect())?;
        Ok(halved.rank())
    }

    fn decode_instrumented(&self, received: &MultisetWord) -> Result<(Decoded, DecodeCost)> {
        if received.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: received.q(),
            });
        }
        let got = received.n();
        if got > self.n {
            return Err(Error::InvalidParameter(format!(
                "received cardinality {got} exceeds code length {}",
                self.n
            )));
        }
        let deletions = self.n - got;
        if deletions > 1 {
            return Err(Error::TooManyDeletions {
                got: deletions,
                max: 1,
            });
        }
        let mut ops = 0u64;
        let odd: Vec<usize> = received
            .counts()
            .iter()
            .enumerate()
            .inspect(|_| ops += 1)
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(i, _)| i)
            .collect();
        let mut pattern_counts = vec![0u64; self.q];
        match (deletions, odd.as_slice()) {
            (0, []) => {}
            (1, [symbol]) => pattern_counts[*symbol] = 1,
            _ => {
                return Err(Error::DecodeFailure(format!(
                    "{} odd coordinates after {deletions} deletions",
                    odd.len()
                )))
            }
        }
        let pattern = MultisetWord::new(pattern_counts)?;
        let codeword = received.union_add(&pattern)?;
        Ok((Decoded { codeword, pattern }, DecodeCost { ops }))
    }
}

/// A literal set of words claimed to correct `t` deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitCode {
    words: Vec<MultisetWord>,
    t: u64,
}

impl ExplicitCode {
    /// Words must be distinct and share one `(n, q)`.
    pub fn new(words: Vec<MultisetWord>, t: u64) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::InvalidParameter("a code needs at least one word".into()))?;
        let (n, q) = (first.n(), first.q());
        for w in &words {
            if w.q() != q {
                return Err(Error::AlphabetMismatch {
                    left: q,
                    right: w.q(),
                });
            }
            if w.n() != n {
                return Err(Error::CardinalityMismatch {
                    left: n,
                    right: w.n(),
                });
            }
        }
        let mut sorted = words.clone();
        sorted.sort();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidParameter("codewords must be distinct".into()));
        }
        Ok(Self { words, t })
    }

    pub fn from_counts(counts: &[Vec<u64>], t: u64) -> Result<Self> {
        let words = counts
            .iter()
            .map(|c| MultisetWord::new(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(words, t)
    }

    pub fn words(&self) -> &[MultisetWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn n(&self) -> u64 {
        self.words[0].n()
    }

    pub fn q(&self) -> usize {
        self.words[0].q()
    }

    /// Claimed correction capability.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Minimum pairwise deletion distance; `None` for a single word.
    pub fn min_distance(&self) -> Option<u64> {
        let mut best: Option<u64> = None;
        for i in 0..self.words.len() {
            for j in i + 1..self.words.len() {
                let d = self.words[i]
                    .deletion_distance(&self.words[j])
                    .expect("validated at construction");
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// Distance criterion for correcting `t` deletions: minimum pairwise
    /// distance at least `t + 1`.
    pub fn is_deletion_correcting(&self, t: u64) -> bool {
        self.min_distance().map_or(true, |d| d >= t + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::enumerate_space;

    fn w(counts: &[u64]) -> MultisetWord {
        MultisetWord::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_weight_tables() {
        let (weights, m) = cyclic_weights(3, 2).unwrap();
        assert_eq!(weights, vec![1, 3, 0]);
        assert_eq!(m, 7);
        let (weights, m) = cyclic_weights(2, 4).unwrap();
        assert_eq!(weights, vec![1, 0]);
        assert_eq!(m, 5);
        let (weights, m) = cyclic_weights(4, 3).unwrap();
        assert_eq!(weights, vec![1, 4, 16, 0]);
        assert_eq!(m, 49);
    }

    #[test]
    fn syndrome_examples() {
        let cyclic = WeightedCongruenceCode::cyclic(4, 3, 2, Some(0)).unwrap();
        assert_eq!(cyclic.syndrome(&w(&[2, 1, 1])).unwrap(), 5);

        let summod = WeightedCongruenceCode::sum_mod_q(6, 3, Some(0)).unwrap();
        assert_eq!(summod.syndrome(&w(&[6, 0, 0])).unwrap(), 0);

        let binary = WeightedCongruenceCode::binary(9, 2, Some(0)).unwrap();
        assert_eq!(binary.syndrome(&w(&[2, 7])).unwrap(), 1); // 7 mod 3
    }

    #[test]
    fn sum_mod_q_classes_partition_evenly_at_n4_q3() {
        let mut total = BigUint::zero();
        for a in 0..3 {
            let code = WeightedCongruenceCode::sum_mod_q(4, 3, Some(a)).unwrap();
            let size = code.class_size();
            assert_eq!(size, BigUint::from(5u32), "residue {a}");
            // Independent oracle: filter the enumerated space.
            let listed = code.codewords().unwrap();
            assert_eq!(BigUint::from(listed.len()), size);
            total += size;
        }
        assert_eq!(total, space_size(4, 3));
    }

    #[test]
    fn class_sizes_match_enumeration_for_all_kinds() {
        let codes: Vec<WeightedCongruenceCode> = vec![
            WeightedCongruenceCode::binary(7, 2, Some(1)).unwrap(),
            WeightedCongruenceCode::sum_mod_q(5, 4, Some(2)).unwrap(),
            WeightedCongruenceCode::cyclic(6, 3, 2, Some(3)).unwrap(),
            WeightedCongruenceCode::custom(5, 3, &[0, -1, 2], 7, 2, Some(4)).unwrap(),
        ];
        for code in codes {
            let listed = code.codewords().unwrap();
            assert_eq!(
                BigUint::from(listed.len()),
                code.class_size(),
                "kind {:?}",
                code.kind()
            );
            let sizes = code.class_sizes();
            let total: BigUint = sizes.iter().sum();
            assert_eq!(total, space_size(code.n(), code.q()));
        }
    }

    #[test]
    fn binary_class_balance() {
        for n in 1..=30u64 {
            for t in 1..=6u64 {
                let proto = WeightedCongruenceCode::binary(n, t, Some(0)).unwrap();
                let sizes = proto.class_sizes();
                let max = sizes.iter().max().unwrap();
                let min = sizes.iter().min().unwrap();
                assert!(max - min <= BigUint::one());
                let k = (n + 1) / (t + 1);
                let r = (n + 1) % (t + 1);
                let larger = sizes
                    .iter()
                    .filter(|s| **s == BigUint::from(k + 1))
                    .count() as u64;
                assert_eq!(larger, r, "n={n}, t={t}");
            }
        }
    }

    #[test]
    fn best_residue_prefers_largest_then_smallest() {
        // Binary n = 6, t = 1: weights 0..6, evens have 4 members, odds 3.
        let code = WeightedCongruenceCode::binary(6, 1, None).unwrap();
        assert_eq!(code.residue(), 0);
        assert_eq!(code.class_size(), BigUint::from(4u32));
        // Ceiling class size for the two-class cyclic binary code as well.
        let cyclic = WeightedCongruenceCode::cyclic(6, 2, 1, None).unwrap();
        assert_eq!(cyclic.class_size(), BigUint::from(4u32));
    }

    #[test]
    fn parity_code_basics() {
        let code = ParityCode::new(4, 3).unwrap();
        assert_eq!(code.class_size(), BigUint::from(6u32));
        assert!(code.contains(&w(&[2, 2, 0])).unwrap());
        assert!(!code.contains(&w(&[2, 1, 1])).unwrap());
        assert!(ParityCode::new(5, 3).is_err());
        let listed = code.codewords().unwrap();
        assert_eq!(listed.len(), 6);
    }

    #[test]
    fn encode_enumerates_the_class_in_lex_order() {
        let code = WeightedCongruenceCode::sum_mod_q(4, 3, Some(0)).unwrap();
        let listed = code.codewords().unwrap();
        assert_eq!(code.encode(&BigUint::zero()).unwrap(), listed[0]);
        for (i, word) in listed.iter().enumerate() {
            let idx = BigUint::from(i);
            assert_eq!(&code.encode(&idx).unwrap(), word);
            assert_eq!(code.message_index(word).unwrap(), idx);
        }
        assert!(matches!(
            code.encode(&BigUint::from(5u32)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_encode_roundtrip() {
        let code = ParityCode::new(6, 3).unwrap();
        let size = u64::try_from(&code.class_size()).unwrap();
        for i in 0..size {
            let word = code.encode(&BigUint::from(i)).unwrap();
            assert!(code.contains(&word).unwrap());
            assert_eq!(code.message_index(&word).unwrap(), BigUint::from(i));
        }
    }

    #[test]
    fn binary_decode_restores_deleted_ones() {
        // Weight 6 codeword, two ones deleted: the congruence names u = 2.
        let code = WeightedCongruenceCode::binary(10, 2, Some(0)).unwrap();
        let sent = w(&[4, 6]);
        assert!(code.contains(&sent).unwrap());
        let received = w(&[4, 4]);
        let decoded = code.decode(&received).unwrap();
        assert_eq!(decoded.codeword, sent);
        assert_eq!(decoded.pattern, w(&[0, 2]));
    }

    #[test]
    fn cyclic_decode_walkthrough() {
        // q=3, t=2: weights (1,3,0), m=7. Send (1,1,2), delete {0, 2}.
        let code = WeightedCongruenceCode::cyclic(4, 3, 2, Some(4)).unwrap();
        let sent = w(&[1, 1, 2]);
        assert!(code.contains(&sent).unwrap());
        let received = w(&[0, 1, 1]);
        let decoded = code.decode(&received).unwrap();
        assert_eq!(decoded.codeword, sent);
        assert_eq!(decoded.pattern, w(&[1, 0, 1]));
    }

    #[test]
    fn zero_deletions_roundtrip_and_reject() {
        let code = WeightedCongruenceCode::cyclic(5, 3, 2, Some(1)).unwrap();
        let member = code.encode(&BigUint::zero()).unwrap();
        let decoded = code.decode(&member).unwrap();
        assert_eq!(decoded.codeword, member);
        assert!(decoded.pattern.is_empty());

        // A full-length word outside the class must be rejected.
        for word in enumerate_space(5, 3).unwrap() {
            if !code.contains(&word).unwrap() {
                assert!(code.decode(&word).is_err());
                break;
            }
        }
    }

    #[test]
    fn sum_mod_q_rejects_two_deletions() {
        let code = WeightedCongruenceCode::sum_mod_q(5, 3, Some(0)).unwrap();
        let sent = code.encode(&BigUint::zero()).unwrap();
        let mut counts = sent.counts().to_vec();
        let symbol = counts.iter().position(|&c| c >= 2).unwrap_or(0);
        counts[symbol] = counts[symbol].saturating_sub(2);
        let received = MultisetWord::new(counts).unwrap();
        assert!(matches!(
            code.decode(&received),
            Err(Error::TooManyDeletions { got: 2, max: 1 })
        ));
    }

    #[test]
    fn exhaustive_decode_roundtrips_small() {
        let codes: Vec<Box<dyn DeletionCode>> = vec![
            Box::new(WeightedCongruenceCode::binary(8, 3, None).unwrap()),
            Box::new(WeightedCongruenceCode::sum_mod_q(5, 3, None).unwrap()),
            Box::new(WeightedCongruenceCode::cyclic(6, 3, 2, None).unwrap()),
            Box::new(WeightedCongruenceCode::custom(6, 3, &[0, -1, 2], 7, 2, None).unwrap()),
            Box::new(ParityCode::new(6, 3).unwrap()),
        ];
        for code in &codes {
            for sent in code.codewords().unwrap() {
                for t_prime in 0..=code.t() {
                    crate::sidon::for_each_multiset(code.q(), t_prime, &mut |pattern| {
                        let pattern = w(pattern);
                        if !pattern.is_submultiset_of(&sent) {
                            return;
                        }
                        let received = sent.subtract(&pattern).unwrap();
                        let decoded = code.decode(&received).unwrap();
                        assert_eq!(decoded.codeword, sent);
                        assert_eq!(decoded.pattern, pattern);
                    });
                }
            }
        }
    }

    #[test]
    fn constructed_codes_have_min_distance_above_t() {
        let check = |words: Vec<MultisetWord>, t: u64| {
            let code = ExplicitCode::new(words, t).unwrap();
            assert!(code.is_deletion_correcting(t));
        };
        check(
            WeightedCongruenceCode::binary(9, 2, Some(0))
                .unwrap()
                .codewords()
                .unwrap(),
            2,
        );
        check(
            WeightedCongruenceCode::cyclic(6, 3, 2, Some(0))
                .unwrap()
                .codewords()
                .unwrap(),
            2,
        );
        check(ParityCode::new(6, 3).unwrap().codewords().unwrap(), 1);
    }

    #[test]
    fn explicit_code_distance_checks() {
        // The six-word ternary single-deletion code.
        let star = ExplicitCode::from_counts(
            &[
                vec![4, 0, 0],
                vec![0, 4, 0],
                vec![0, 0, 4],
                vec![2, 2, 0],
                vec![2, 0, 2],
                vec![0, 2, 2],
            ],
            1,
        )
        .unwrap();
        assert_eq!(star.min_distance(), Some(2));
        assert!(star.is_deletion_correcting(1));
        assert!(!star.is_deletion_correcting(2));

        let close = ExplicitCode::from_counts(&[vec![3, 2], vec![2, 3]], 1).unwrap();
        assert!(!close.is_deletion_correcting(1));

        assert!(ExplicitCode::from_counts(&[vec![1, 0], vec![1, 0]], 1).is_err());
    }

    #[test]
    fn custom_rejects_colliding_weights() {
        assert!(matches!(
            WeightedCongruenceCode::custom(5, 3, &[0, 0, 1], 4, 1, Some(0)),
            Err(Error::InvalidParameter(_))
        ));
        // Ternary alternate weights (0, -1, t) with m = t^2 + t + 1.
        for t in 1..=4i64 {
            let m = (t * t + t + 1) as u64;
            let code =
                WeightedCongruenceCode::custom(6, 3, &[0, -1, t], m, t as u64, Some(0)).unwrap();
            assert_eq!(code.kind(), CodeKind::Custom);
        }
    }

    #[test]
    fn decode_cost_is_linear_in_n() {
        let mut costs = Vec::new();
        for n in [100u64, 200, 400] {
            let code = WeightedCongruenceCode::cyclic(n, 3, 2, Some(0)).unwrap();
            let sent = w(&[0, 7, n - 7]); // syndrome 21 = 0 mod 7
            assert!(code.contains(&sent).unwrap());
            let received = sent.subtract(&w(&[0, 1, 1])).unwrap();
            let (decoded, cost) = code.decode_instrumented(&received).unwrap();
            assert_eq!(decoded.codeword, sent);
            costs.push(cost.ops);
        }
        // One op per surviving element plus a constant tail.
        assert!(costs[1] - costs[0] >= 95 && costs[1] - costs[0] <= 105);
        assert!(costs[2] - costs[1] >= 195 && costs[2] - costs[1] <= 205);
    }

    #[test]
    fn redundancy_reporting() {
        let code = WeightedCongruenceCode::cyclic(6, 3, 2, Some(0)).unwrap();
        let nominal = code.nominal_redundancy();
        assert!((nominal - (7f64).ln() / (3f64).ln()).abs() < 1e-12);
        // |S_{6,3}| = 28 does not divide evenly by 7, so actual redundancy
        // differs from log_q m per class.
        let actual = code.redundancy();
        assert!(actual > 0.0);
    }
}
