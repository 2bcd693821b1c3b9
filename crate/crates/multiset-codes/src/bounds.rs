//! Upper bounds and exact values for the maximum size `S_q(n,t)` of a
//! t-deletion-correcting code in `S_{n,q}`, plus a best-bound selector.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::word::{binomial, space_size};

/// One evaluated bound. `value` is `None` when the bound does not apply at
/// the given parameters, so a vacuous bound can never win a comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: Option<BigUint>,
    pub applicability: &'static str,
    pub n: u64,
    pub q: usize,
    pub t: u64,
}

/// Ball-packing bound with packing radius `r = t`:
/// `floor(|S_{n,q}| / C(t+q-1, q-1))`.
///
/// The radius-`t` form packs balls that are pairwise disjoint once the code
/// distance reaches `2t+1`; see [`sphere_packing_bound_distance`] for the
/// generic distance form used by [`best_upper_bound`].
pub fn sphere_packing_bound(n: u64, q: usize, t: u64) -> BigUint {
    space_size(n, q) / min_ball_size(q, t)
}

/// Ball-packing bound in distance form: radius `r = floor((d-1)/2)` balls
/// around codewords at pairwise distance at least `d` are disjoint, so
/// `|C| <= floor(|S_{n,q}| / C(r+q-1, q-1))`.
pub fn sphere_packing_bound_distance(n: u64, q: usize, d: u64) -> BigUint {
    let r = if d == 0 { 0 } else { (d - 1) / 2 };
    space_size(n, q) / min_ball_size(q, r)
}

/// Smallest radius-`r` ball in `S_{n,q}`, attained at a corner of the
/// simplex: `C(r+q-1, q-1)`.
fn min_ball_size(q: usize, r: u64) -> BigUint {
    binomial(r + q as u64 - 1, q as u64 - 1)
}

/// Projection bound `|C| <= |S_{n-t,q}|`: distinct codewords cannot reach a
/// common output of size `n-t`, so the output space caps the code size.
pub fn projection_bound(n: u64, q: usize, t: u64) -> Result<BigUint> {
    if t > n {
        return Err(Error::NotApplicable(format!(
            "projection needs t <= n, got t={t}, n={n}"
        )));
    }
    Ok(space_size(n - t, q))
}

/// Exact value of `S_q(n, n-1)`: supports of distinct codewords must be
/// pairwise disjoint, and the constant-word code attains `q`.
pub fn extremal_exact_k1(_n: u64, q: usize) -> u64 {
    q as u64
}

/// Exact value of `S_q(n, n-2)` for `q` in `{2,3}` and `n >= 4`: every word
/// then has a symbol of multiplicity at least 2, which it cannot share, and
/// the constant-word code attains `q`.
pub fn extremal_exact_k2_smallq(n: u64, q: usize) -> Result<u64> {
    if !(q == 2 || q == 3) || n < 4 {
        return Err(Error::NotApplicable(format!(
            "exact t=n-2 value needs q in {{2,3}} and n >= 4, got q={q}, n={n}"
        )));
    }
    Ok(q as u64)
}

/// Reiman-type bound for `t = n-2`: `floor(q(n-1)/(n-q))`, from a 4-cycle-free
/// incidence graph between symbol copies and codewords. Vacuous unless `n > q`.
pub fn reiman_bound_k2(n: u64, q: usize) -> Result<BigUint> {
    let q = q as u64;
    if n <= q {
        return Err(Error::NotApplicable(format!(
            "Reiman-type bound needs n > q, got n={n}, q={q}"
        )));
    }
    let value = (q as u128) * ((n - 1) as u128) / ((n - q) as u128);
    Ok(BigUint::from(value))
}

/// Bound for `t = n-3`: `floor(q^2 (n-2) / ((n-1) - q))` for `n >= q+2`,
/// obtained by reducing one shared symbol and reapplying the girth-6 incidence
/// argument.
pub fn k3_bound(n: u64, q: usize) -> Result<BigUint> {
    let q = q as u64;
    if n < q + 2 {
        return Err(Error::NotApplicable(format!(
            "t=n-3 bound needs n >= q+2, got n={n}, q={q}"
        )));
    }
    let value = (q as u128) * (q as u128) * ((n - 2) as u128) / ((n - 1 - q) as u128);
    Ok(BigUint::from(value))
}

/// Recursive puncturing bound `S_q(n,t) <= q^(n-t)`: dropping one symbol from
/// every codeword reduces `(n, k)` to `(n-1, k-1)` at a factor of `q`.
pub fn recursive_puncturing_bound(n: u64, q: usize, t: u64) -> Result<BigUint> {
    if t >= n {
        return Err(Error::NotApplicable(format!(
            "puncturing bound needs t < n, got t={t}, n={n}"
        )));
    }
    let k: u32 = (n - t).try_into().map_err(|_| {
        Error::InvalidParameter(format!("exponent n-t = {} too large", n - t))
    })?;
    Ok(BigUint::from(q).pow(k))
}

/// Closed-form binary value `floor((n+1)/(t+1))`: binary words are determined
/// by their weight, and the congruence classes mod `t+1` realize this size.
pub fn binary_exact(n: u64, t: u64) -> u64 {
    (n + 1) / (t + 1)
}

/// Lower and upper bounds on `S_3(n,1)`: the largest sum-mod-3 class gives
/// `ceil(C(n+2,2)/3)` by pigeonhole, the projection bound gives `C(n+1,2)`.
pub fn ternary_single_deletion_bounds(n: u64) -> (BigUint, BigUint) {
    let space = space_size(n, 3);
    let lower = (space + BigUint::from(2u32)) / BigUint::from(3u32);
    let upper = space_size(n.saturating_sub(1), 3);
    (lower, upper)
}

/// Every bound at `(n, q, t)`, applicable or not. Order is fixed so reports
/// are stable.
pub fn all_bounds(n: u64, q: usize, t: u64) -> Vec<BoundReport> {
    let report = |name, value: Option<BigUint>, applicability| BoundReport {
        name,
        value,
        applicability,
        n,
        q,
        t,
    };
    vec![
        report(
            "sphere_packing",
            Some(sphere_packing_bound(n, q, t)),
            "radius-t ball packing (codes of distance >= 2t+1)",
        ),
        report(
            "sphere_packing_distance",
            Some(sphere_packing_bound_distance(n, q, t + 1)),
            "ball packing at the correction distance d = t+1",
        ),
        report(
            "projection",
            projection_bound(n, q, t).ok(),
            "t <= n",
        ),
        report(
            "extremal_exact_k1",
            (t + 1 == n).then(|| BigUint::from(extremal_exact_k1(n, q))),
            "t = n-1 (exact)",
        ),
        report(
            "extremal_exact_k2_smallq",
            (t + 2 == n)
                .then(|| extremal_exact_k2_smallq(n, q).ok())
                .flatten()
                .map(BigUint::from),
            "t = n-2, q in {2,3}, n >= 4 (exact)",
        ),
        report(
            "reiman",
            (t + 2 == n).then(|| reiman_bound_k2(n, q).ok()).flatten(),
            "t = n-2, n > q",
        ),
        report(
            "k3",
            (t + 3 == n).then(|| k3_bound(n, q).ok()).flatten(),
            "t = n-3, n >= q+2",
        ),
        report(
            "recursive_puncturing",
            recursive_puncturing_bound(n, q, t).ok(),
            "t < n",
        ),
        report(
            "binary_exact",
            (q == 2 && t >= 1).then(|| BigUint::from(binary_exact(n, t))),
            "q = 2 closed form",
        ),
    ]
}

/// The bounds [`best_upper_bound`] aggregates: those valid for every code
/// correcting up to `t` deletions (minimum distance `t+1`). The radius-`t`
/// packing form and the binary closed form are reported by [`all_bounds`] but
/// not aggregated, since classes of the congruence constructions exceed them
/// whenever the division leaves a remainder.
pub fn valid_upper_bounds(n: u64, q: usize, t: u64) -> Result<Vec<BoundReport>> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "codes need q >= 2, got {q}"
        )));
    }
    if n < 1 || t > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= n and t <= n, got n={n}, t={t}"
        )));
    }
    let report = |name, value: BigUint, applicability| BoundReport {
        name,
        value: Some(value),
        applicability,
        n,
        q,
        t,
    };
    let mut out = Vec::new();
    if t + 1 == n {
        out.push(report(
            "extremal_exact_k1",
            BigUint::from(extremal_exact_k1(n, q)),
            "t = n-1 (exact)",
        ));
    }
    if t + 2 == n {
        if let Ok(v) = extremal_exact_k2_smallq(n, q) {
            out.push(report(
                "extremal_exact_k2_smallq",
                BigUint::from(v),
                "t = n-2, q in {2,3}, n >= 4 (exact)",
            ));
        }
        if let Ok(v) = reiman_bound_k2(n, q) {
            out.push(report("reiman", v, "t = n-2, n > q"));
        }
    }
    if t + 3 == n {
        if let Ok(v) = k3_bound(n, q) {
            out.push(report("k3", v, "t = n-3, n >= q+2"));
        }
    }
    if let Ok(v) = projection_bound(n, q, t) {
        out.push(report("projection", v, "t <= n"));
    }
    out.push(report(
        "sphere_packing_distance",
        sphere_packing_bound_distance(n, q, t + 1),
        "ball packing at the correction distance d = t+1",
    ));
    if let Ok(v) = recursive_puncturing_bound(n, q, t) {
        out.push(report("recursive_puncturing", v, "t < n"));
    }
    Ok(out)
}

/// The smallest applicable valid upper bound at `(n, q, t)`; ties go to the
/// earlier entry (exact values first).
pub fn best_upper_bound(n: u64, q: usize, t: u64) -> Result<BoundReport> {
    let candidates = valid_upper_bounds(n, q, t)?;
    Ok(candidates
        .into_iter()
        .min_by(|a, b| a.value.cmp(&b.value))
        .expect("at least the projection bound applies"))
}
