//! Generalized Sidon (B_t) set verification in cyclic groups, and brute-force
//! validation that a weight vector gives an injective deletion-syndrome map.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{binomial, DEFAULT_ENUMERATION_CAP};

/// A candidate B_t set: distinct residues in the cyclic group `Z_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtSetCandidate {
    modulus: u64,
    elements: Vec<u64>,
}

/// First collision found by a failed B_t check. `left` and `right` are
/// multiplicity vectors over the candidate's elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BtCollision {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub sum: u64,
}

impl BtSetCandidate {
    /// Elements are reduced modulo `g` and must be pairwise distinct there.
    pub fn new(g: u64, elements: Vec<u64>) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidParameter("group modulus must be >= 1".into()));
        }
        let reduced: Vec<u64> = elements.iter().map(|&e| e % g).collect();
        let mut sorted = reduced.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "elements must be pairwise distinct modulo g".into(),
            ));
        }
        Ok(Self {
            modulus: g,
            elements: reduced,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The additive map `phi(x) = sum_i x_i * b_i  (mod g)` on multiplicity
    /// vectors over the elements.
    pub fn phi(&self, multiplicities: &[u64]) -> Result<u64> {
        if multiplicities.len() != self.elements.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} multiplicities, got {}",
                self.elements.len(),
                multiplicities.len()
            )));
        }
        let g = self.modulus as u128;
        let mut acc: u128 = 0;
        for (&x, &b) in multiplicities.iter().zip(&self.elements) {
            acc = (acc + (x as u128 % g) * (b as u128)) % g;
        }
        Ok(acc as u64)
    }

    /// Whether all multiset sums of 1 up to `t` elements are pairwise
    /// distinct in `Z_g` (sums of different sizes must differ too).
    pub fn is_bt_set(&self, t: u64) -> Result<bool> {
        Ok(self.bt_collision(t)?.is_none())
    }

    /// Like [`BtSetCandidate::is_bt_set`] but reports the first collision.
    pub fn bt_collision(&self, t: u64) -> Result<Option<BtCollision>> {
        self.bt_collision_capped(t, DEFAULT_ENUMERATION_CAP)
    }

    pub fn bt_collision_capped(&self, t: u64, cap: u64) -> Result<Option<BtCollision>> {
        let m = self.elements.len();
        let mut total = 0u64;
        for size in 1..=t {
            total = total.saturating_add(multiset_count(m, size, cap)?);
            if total > cap {
                return Err(Error::EnumerationCapExceeded {
                    size: total.into(),
                    cap,
                });
            }
        }

        let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut collision = None;
        for size in 1..=t {
            for_each_multiset(m, size, &mut |counts| {
                if collision.is_some() {
                    return;
                }
                let sum = self.phi(counts).expect("lengths match");
                if let Some(prev) = seen.get(&sum) {
                    collision = Some(BtCollision {
                        left: prev.clone(),
                        right: counts.to_vec(),
                        sum,
                    });
                } else {
                    seen.insert(sum, counts.to_vec());
                }
            });
            if collision.is_some() {
                break;
            }
        }
        Ok(collision)
    }
}

fn multiset_count(q: usize, size: u64, cap: u64) -> Result<u64> {
    let count = binomial(size + q as u64 - 1, q as u64 - 1);
    u64::try_from(&count).map_err(|_| Error::EnumerationCapExceeded { size: count, cap })
}

/// Calls `f` with every multiplicity vector of length `q` summing to `size`,
/// ordered by the sorted element lists they describe ({0,0} before {0,1}).
pub(crate) fn for_each_multiset(q: usize, size: u64, f: &mut impl FnMut(&[u64])) {
    let mut counts = vec![0u64; q];
    descend(&mut counts, 0, size, f);
}

fn descend(counts: &mut [u64], pos: usize, remaining: u64, f: &mut impl FnMut(&[u64])) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        f(counts);
        counts[pos] = 0;
        return;
    }
    for take in (0..=remaining).rev() {
        counts[pos] = take;
        descend(counts, pos + 1, remaining - take, f);
    }
    counts[pos] = 0;
}

fn reduce_weight(w: i64, m: u64) -> u64 {
    let m = m as i128;
    (((w as i128 % m) + m) % m) as u64
}

/// Checks that for every fixed size `s <= t`, deletion patterns of
/// cardinality `s` over `{0..q-1}` have pairwise distinct weighted sums
/// modulo `m`. This is what a decoder needs when the received cardinality
/// reveals the pattern size.
pub fn validate_deletion_syndrome(weights: &[i64], m: u64, t: u64, q: usize) -> Result<bool> {
    validate_syndrome_inner(weights, m, t, q, false, DEFAULT_ENUMERATION_CAP)
}

/// Stricter variant for decoders that do not learn the pattern size: sums
/// must be distinct across all sizes `0..=t` jointly.
pub fn validate_deletion_syndrome_joint(
    weights: &[i64],
    m: u64,
    t: u64,
    q: usize,
) -> Result<bool> {
    validate_syndrome_inner(weights, m, t, q, true, DEFAULT_ENUMERATION_CAP)
}

fn validate_syndrome_inner(
    weights: &[i64],
    m: u64,
    t: u64,
    q: usize,
    joint: bool,
    cap: u64,
) -> Result<bool> {
    if q == 0 || weights.len() != q {
        return Err(Error::InvalidParameter(format!(
            "expected {q} weights, got {}",
            weights.len()
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("modulus must be >= 1".into()));
    }
    let reduced: Vec<u64> = weights.iter().map(|&w| reduce_weight(w, m)).collect();

    let mut total = 0u64;
    for size in 0..=t {
        total = total.saturating_add(multiset_count(q, size, cap)?);
        if total > cap {
            return Err(Error::EnumerationCapExceeded {
                size: total.into(),
                cap,
            });
        }
    }

    let mut seen: HashMap<u64, ()> = HashMap::new();
    let mut injective = true;
    for size in 0..=t {
        if !joint {
            seen.clear();
        }
        for_each_multiset(q, size, &mut |counts| {
            if !injective {
                return;
            }
            let mut acc: u128 = 0;
            for (&c, &w) in counts.iter().zip(&reduced) {
                acc = (acc + c as u128 * w as u128) % m as u128;
            }
            if seen.insert(acc as u64, ()).is_some() {
                injective = false;
            }
        });
        if !injective {
            return Ok(false);
        }
    }
    Ok(true)
}
