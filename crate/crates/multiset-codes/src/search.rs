//! Exact maximum code sizes on small instances, via branch-and-bound over
//! the confusability graph of `S_{n,q}`, with reproducible witnesses.

use serde::Serialize;

use crate::codes::ExplicitCode;
use crate::error::{Error, Result};
use crate::word::{space_prefix, space_size, MultisetWord};

/// Default cap on the number of graph vertices an exact search will touch.
pub const DEFAULT_SEARCH_CAP: u64 = 5000;

/// Distance route: two words of a common `S_{n,q}` are confusable under `t`
/// deletions exactly when their deletion distance is at most `t`.
pub fn confusable(a: &MultisetWord, b: &MultisetWord, t: u64) -> Result<bool> {
    Ok(a.deletion_distance(b)? <= t)
}

/// Output route, used as an independent oracle: confusable exactly when some
/// multiset of size `n - t` survives deletion from both words.
pub fn confusable_exhaustive(a: &MultisetWord, b: &MultisetWord, t: u64) -> Result<bool> {
    if a.q() != b.q() {
        return Err(Error::AlphabetMismatch {
            left: a.q(),
            right: b.q(),
        });
    }
    if a.n() != b.n() {
        return Err(Error::CardinalityMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let size = a.n().saturating_sub(t);
    let mut scratch = vec![0u64; a.q()];
    Ok(search_common_output(a, b, 0, size, &mut scratch))
}

fn search_common_output(
    a: &MultisetWord,
    b: &MultisetWord,
    pos: usize,
    remaining: u64,
    taken: &mut Vec<u64>,
) -> bool {
    if pos == a.q() {
        if remaining > 0 {
            return false;
        }
        let output = MultisetWord::new(taken.clone()).expect("q >= 1");
        return output.is_submultiset_of(a) && output.is_submultiset_of(b);
    }
    for take in 0..=a.count(pos).min(remaining) {
        taken[pos] = take;
        if search_common_output(a, b, pos + 1, remaining - take, taken) {
            taken[pos] = 0;
            return true;
        }
    }
    taken[pos] = 0;
    false
}

/// The graph on all of `S_{n,q}` (by lexicographic rank) whose edges join
/// words at deletion distance at most `t`. Codes are its independent sets.
pub struct ConflictGraph {
    t: u64,
    words: Vec<MultisetWord>,
    // compat[i] holds the bitset of vertices at distance >= t+1 from i:
    // the complement adjacency, on which code search is a clique search.
    compat: Vec<Vec<u64>>,
}

impl ConflictGraph {
    pub fn build(n: u64, q: usize, t: u64) -> Result<Self> {
        Self::build_capped(n, q, t, DEFAULT_SEARCH_CAP)
    }

    pub fn build_capped(n: u64, q: usize, t: u64, cap: u64) -> Result<Self> {
        let size = space_size(n, q);
        if size > cap.into() {
            return Err(Error::EnumerationCapExceeded { size, cap });
        }
        let words = space_prefix(n, q, u64::try_from(&size).expect("below cap") as usize);
        Ok(Self::from_words(words, t))
    }

    fn from_words(words: Vec<MultisetWord>, t: u64) -> Self {
        let v = words.len();
        let blocks = v.div_ceil(64);
        let mut compat = vec![vec![0u64; blocks]; v];
        for i in 0..v {
            for j in i + 1..v {
                let d = words[i]
                    .deletion_distance(&words[j])
                    .expect("same space by construction");
                if d > t {
                    compat[i][j / 64] |= 1 << (j % 64);
                    compat[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Self { t, words, compat }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[MultisetWord] {
        &self.words
    }

    /// Whether ranks `i` and `j` are joined in the conflict graph.
    pub fn is_conflict(&self, i: usize, j: usize) -> bool {
        i != j && !self.compatible(i, j)
    }

    fn compatible(&self, i: usize, j: usize) -> bool {
        self.compat[i][j / 64] >> (j % 64) & 1 == 1
    }
}

/// Outcome of an exact search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Size of the best code found; the true maximum when `exact` holds.
    pub optimum: u64,
    /// A code of that size; the lexicographically first optimum when exact.
    pub witness: ExplicitCode,
    /// Whether the search closed the gap (false when the cap was exceeded).
    pub exact: bool,
    /// Branch-and-bound nodes explored.
    pub nodes: u64,
}

/// Exact `S_q(n,t)` by branch-and-bound, with the default vertex cap.
pub fn max_code_exact(n: u64, q: usize, t: u64) -> Result<SearchResult> {
    max_code_exact_capped(n, q, t, DEFAULT_SEARCH_CAP)
}

/// Exact search when `|S_{n,q}| <= cap`; otherwise a deterministic greedy
/// pass over the first `cap` words, reported with `exact = false`.
pub fn max_code_exact_capped(n: u64, q: usize, t: u64, cap: u64) -> Result<SearchResult> {
    if q == 0 {
        return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
    }
    match ConflictGraph::build_capped(n, q, t, cap) {
        Ok(graph) => {
            let (ranks, nodes) = solve(&graph);
            let words = ranks.iter().map(|&r| graph.words[r as usize].clone()).collect();
            Ok(SearchResult {
                optimum: ranks.len() as u64,
                witness: ExplicitCode::new(words, t)?,
                exact: true,
                nodes,
            })
        }
        Err(Error::EnumerationCapExceeded { .. }) => {
            let words = space_prefix(n, q, cap as usize);
            let mut chosen: Vec<MultisetWord> = Vec::new();
            for w in words {
                if chosen
                    .iter()
                    .all(|c| c.deletion_distance(&w).expect("same space") > t)
                {
                    chosen.push(w);
                }
            }
            Ok(SearchResult {
                optimum: chosen.len() as u64,
                witness: ExplicitCode::new(chosen, t)?,
                exact: false,
                nodes: 0,
            })
        }
        Err(other) => Err(other),
    }
}

/// Maximum independent set of the conflict graph as a max clique of the
/// stored complement, then re-derived as the lexicographically first optimum.
fn solve(graph: &ConflictGraph) -> (Vec<u32>, u64) {
    let v = graph.len();
    if v == 0 {
        return (Vec::new(), 0);
    }
    // Static branching order: highest compatible degree first, rank breaking
    // ties, which keeps the coloring bound tight early.
    let mut order: Vec<u32> = (0..v as u32).collect();
    let degree: Vec<usize> = (0..v)
        .map(|i| (0..v).filter(|&j| j != i && graph.compatible(i, j)).count())
        .collect();
    order.sort_by(|&a, &b| {
        degree[b as usize]
            .cmp(&degree[a as usize])
            .then(a.cmp(&b))
    });

    let mut best: Vec<u32> = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    let mut nodes = 0u64;
    expand(graph, &order, &mut cur, &mut best, &mut nodes);

    let witness = lex_first_of_size(graph, best.len());
    (witness, nodes)
}

fn expand(
    graph: &ConflictGraph,
    cand: &[u32],
    cur: &mut Vec<u32>,
    best: &mut Vec<u32>,
    nodes: &mut u64,
) {
    *nodes += 1;
    if cand.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    let colored = color_sort(graph, cand);
    for i in (0..colored.len()).rev() {
        let (v, color) = colored[i];
        if cur.len() + color as usize <= best.len() {
            return;
        }
        let rest: Vec<u32> = colored[..i]
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| graph.compatible(v as usize, u as usize))
            .collect();
        cur.push(v);
        expand(graph, &rest, cur, best, nodes);
        cur.pop();
    }
}

/// Greedy coloring of the compatibility graph restricted to `cand`; the
/// number of classes bounds any clique inside, hence any code.
fn color_sort(graph: &ConflictGraph, cand: &[u32]) -> Vec<(u32, u32)> {
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for &v in cand {
        let slot = classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !graph.compatible(u as usize, v as usize)));
        match slot {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut out = Vec::with_capacity(cand.len());
    for (k, class) in classes.iter().enumerate() {
        for &v in class {
            out.push((v, k as u32 + 1));
        }
    }
    out
}

/// The lexicographically first (by rank) code of exactly `target` words.
fn lex_first_of_size(graph: &ConflictGraph, target: usize) -> Vec<u32> {
    let v = graph.len();
    let mut chosen: Vec<u32> = Vec::new();
    let mut alive: Vec<bool> = vec![true; v];
    for rank in 0..v {
        if chosen.len() == target {
            break;
        }
        if !alive[rank] {
            continue;
        }
        let extension: Vec<u32> = (rank + 1..v)
            .filter(|&u| alive[u] && graph.compatible(rank, u))
            .map(|u| u as u32)
            .collect();
        let need = target - chosen.len() - 1;
        if exists_clique(graph, &extension, need) {
            chosen.push(rank as u32);
            for u in rank + 1..v {
                alive[u] = alive[u] && graph.compatible(rank, u);
            }
        }
        alive[rank] = false;
    }
    debug_assert_eq!(chosen.len(), target);
    chosen
}

fn exists_clique(graph: &ConflictGraph, cand: &[u32], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if cand.len() < k {
        return false;
    }
    let colored = color_sort(graph, cand);
    for i in (0..colored.len()).rev() {
        let (v, color) = colored[i];
        if (color as usize) < k {
            return false;
        }
        let rest: Vec<u32> = colored[..i]
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| graph.compatible(v as usize, u as usize))
            .collect();
        if exists_clique(graph, &rest, k - 1) {
            return true;
        }
    }
    false
}

/// Verdict of checking an explicit code against a claimed capability, by the
/// distance criterion and by exhaustive output disjointness independently.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub words: usize,
    pub t: u64,
    pub min_distance: Option<u64>,
    pub distance_ok: bool,
    pub outputs_disjoint: bool,
    pub routes_agree: bool,
    pub pass: bool,
}

/// Checks `code` against `t` along both routes; they must agree pair by pair.
pub fn verify_code(code: &ExplicitCode, t: u64) -> Result<VerifyReport> {
    let words = code.words();
    let mut min_distance: Option<u64> = None;
    let mut distance_ok = true;
    let mut outputs_disjoint = true;
    let mut routes_agree = true;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = words[i].deletion_distance(&words[j])?;
            min_distance = Some(min_distance.map_or(d, |m| m.min(d)));
            let by_distance = d <= t;
            let by_outputs = confusable_exhaustive(&words[i], &words[j], t)?;
            distance_ok &= !by_distance;
            outputs_disjoint &= !by_outputs;
            routes_agree &= by_distance == by_outputs;
        }
    }
    Ok(VerifyReport {
        words: words.len(),
        t,
        min_distance,
        distance_ok,
        outputs_disjoint,
        routes_agree,
        pass: distance_ok && outputs_disjoint && routes_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{DeletionCode, WeightedCongruenceCode};
    use crate::word::enumerate_space;

    fn w(counts: &[u64]) -> MultisetWord {
        MultisetWord::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn confusable_examples() {
        assert!(!confusable(&w(&[4, 0, 0]), &w(&[0, 4, 0]), 3).unwrap());
        assert!(confusable(&w(&[0, 3, 1]), &w(&[1, 0, 3]), 3).unwrap());
        let x = w(&[2, 1]);
        assert!(confusable(&x, &x, 0).unwrap());
    }

    #[test]
    fn confusable_routes_agree_small() {
        for (n, q) in [(4u64, 3usize), (5, 2)] {
            let words: Vec<_> = enumerate_space(n, q).unwrap().collect();
            for a in &words {
                for b in &words {
                    for t in 0..=n {
                        assert_eq!(
                            confusable(a, b, t).unwrap(),
                            confusable_exhaustive(a, b, t).unwrap(),
                            "disagree at {a} vs {b}, t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn binary_optimum_matches_line_packing() {
        // Binary words are points on the weight line 0..n, and codes are
        // sets with pairwise gaps above t, so the greedy count n/(t+1) + 1
        // is an independent oracle.
        for n in 1..=10u64 {
            for t in 1..=n {
                let result = max_code_exact(n, 2, t).unwrap();
                assert!(result.exact);
                assert_eq!(result.optimum, n / (t + 1) + 1, "n={n}, t={t}");
            }
        }
    }

    #[test]
    fn extremal_regimes_are_exact() {
        for q in 2..=4usize {
            for n in 2..=5u64 {
                let result = max_code_exact(n, q, n - 1).unwrap();
                assert_eq!(result.optimum, q as u64, "t = n-1, n={n}, q={q}");
            }
        }
        for q in 2..=3usize {
            for n in 4..=6u64 {
                let result = max_code_exact(n, q, n - 2).unwrap();
                assert_eq!(result.optimum, q as u64, "t = n-2, n={n}, q={q}");
            }
        }
    }

    #[test]
    fn ternary_single_deletion_optimum_is_at_least_six() {
        let result = max_code_exact(4, 3, 1).unwrap();
        assert!(result.exact);
        assert!(result.optimum >= 6);
        let report = verify_code(&result.witness, 1).unwrap();
        assert!(report.pass, "witness must verify: {report:?}");
    }

    #[test]
    fn small_q4_code_beats_alphabet_size() {
        let result = max_code_exact(3, 4, 1).unwrap();
        assert!(result.exact);
        assert!(result.optimum >= 5);
    }

    #[test]
    fn witness_is_deterministic_and_lex_first() {
        let a = max_code_exact(4, 3, 1).unwrap();
        let b = max_code_exact(4, 3, 1).unwrap();
        assert_eq!(a.witness.words(), b.witness.words());
        assert_eq!(a.nodes, b.nodes);
        // First witness word is the lexicographically first word extendable
        // to an optimum, which for these parameters is the very first word.
        assert_eq!(a.witness.words()[0].rank(), 0u32.into());
    }

    #[test]
    fn cap_exceeded_falls_back_to_greedy() {
        let result = max_code_exact_capped(8, 4, 1, 50).unwrap();
        assert!(!result.exact);
        assert!(result.optimum >= 1);
        let report = verify_code(&result.witness, 1).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn verify_code_verdicts() {
        let constant = ExplicitCode::from_counts(&[vec![5, 0], vec![0, 5]], 4).unwrap();
        assert!(verify_code(&constant, 4).unwrap().pass);

        let close = ExplicitCode::from_counts(&[vec![3, 2], vec![2, 3]], 1).unwrap();
        let report = verify_code(&close, 1).unwrap();
        assert!(!report.pass);
        assert!(report.routes_agree);

        let class = WeightedCongruenceCode::binary(12, 2, Some(0)).unwrap();
        let code = ExplicitCode::new(class.codewords().unwrap(), 2).unwrap();
        assert!(verify_code(&code, 2).unwrap().pass);
    }

    #[test]
    fn conflict_graph_edges() {
        let graph = ConflictGraph::build(4, 3, 1).unwrap();
        assert_eq!(graph.len(), 15);
        let words = graph.words().to_vec();
        for i in 0..words.len() {
            for j in 0..words.len() {
                if i != j {
                    let d = words[i].deletion_distance(&words[j]).unwrap();
                    assert_eq!(graph.is_conflict(i, j), d <= graph.t);
                }
            }
        }
    }
}
