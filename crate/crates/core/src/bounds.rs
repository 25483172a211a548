//! Explicit arithmetic bounds: the `q`, `t` quotients, the shared
//! `q_param` shape, factor partitions, and the inequalities they satisfy.
//!
//! Binary logarithms of rationals are compared exactly with big integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("l(n, S) of an empty sequence")]
    EmptyQs,
    #[error("{0}")]
    Precondition(String),
    #[error("2^{0} - 2 overflows 64 bits")]
    Overflow(u32),
    #[error("m + 1 = {actual} but 6k + r + 2k(2^s - 2) = {expected}")]
    LengthMismatch { actual: u64, expected: u64 },
}

pub fn q(m: u64) -> u64 {
    m / 6
}

pub fn t(n: u64) -> u64 {
    n / 4
}

/// `floor(log₂(num / den))` for positive integers.
pub fn floor_log2_ratio(num: u64, den: u64) -> i64 {
    assert!(num > 0 && den > 0, "logarithm of a non-positive ratio");
    let (p, d) = (BigUint::from(num), BigUint::from(den));
    let mut a = p.bits() as i64 - d.bits() as i64;
    // 2^a <= p/d < 2^(a+2) at this point; step down if 2^a overshoots.
    if !pow2_le_ratio(a, &p, &d) {
        a -= 1;
    }
    debug_assert!(pow2_le_ratio(a, &p, &d) && !pow2_le_ratio(a + 1, &p, &d));
    a
}

/// `2^a ≤ p / d`.
fn pow2_le_ratio(a: i64, p: &BigUint, d: &BigUint) -> bool {
    if a >= 0 {
        d << (a as u64) <= *p
    } else {
        *d <= p << ((-a) as u64)
    }
}

/// `a > log₂(p / d)`, i.e. `2^a > p / d`.
pub fn exceeds_log2(a: i64, num: u64, den: u64) -> bool {
    assert!(num > 0 && den > 0, "logarithm of a non-positive ratio");
    let (p, d) = (BigUint::from(num), BigUint::from(den));
    if a >= 0 {
        d << (a as u64) > p
    } else {
        d > p << ((-a) as u64)
    }
}

/// `q(n+1)` if `n < 6k`, otherwise `k + floor(log₂((n + 1 − 6k) / 6))`. May be negative.
pub fn q_param(n: u64, k: u64) -> i64 {
    assert!(k >= 1, "q_param needs k >= 1");
    if n < 6 * k {
        q(n + 1) as i64
    } else {
        k as i64 + floor_log2_ratio(n + 1 - 6 * k, 6)
    }
}

/// Factors grouped into blocks with pairwise-disjoint generator sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPartition {
    pub factors: Vec<BTreeSet<u32>>,
    /// 0-based factor indices, each block sorted, blocks ordered by first member.
    pub blocks: Vec<Vec<usize>>,
}

impl FactorPartition {
    pub fn block_generators(&self, block: usize) -> BTreeSet<u32> {
        self.blocks[block].iter().flat_map(|&i| self.factors[i].iter().copied()).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the share-a-generator graph, and the fewest generators in any block.
pub fn partition_k(factors: &[BTreeSet<u32>]) -> (FactorPartition, usize) {
    let mut parent: Vec<usize> = (0..factors.len()).collect();
    let mut first_seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, f) in factors.iter().enumerate() {
        for &g in f {
            match first_seen.get(&g) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    first_seen.insert(g, i);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..factors.len() {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    let partition = FactorPartition { factors: factors.to_vec(), blocks: blocks.into_values().collect() };
    let k = (0..partition.blocks.len()).map(|b| partition.block_generators(b).len()).min().unwrap_or(0);
    (partition, k)
}

/// `min(q_i) − 1`.
pub fn l_n_s(qs: &[i64]) -> Result<i64, BoundsError> {
    qs.iter().min().map(|m| m - 1).ok_or(BoundsError::EmptyQs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCheck {
    pub k: u64,
    pub q_param: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub n: u64,
    /// `q(n+1)`, compared against `(n − 5) / 6`.
    pub q_next: u64,
    pub q_next_holds: bool,
    /// `q_param(n, k) > log₂((n − 5) / 72)` for `1 ≤ k ≤ n/6`.
    pub per_k: Vec<KCheck>,
    /// Smallest of all the `q` values above, minus one.
    pub l_value: i64,
    /// `l_value > log₂((n − 5) / 144)`.
    pub l_holds: bool,
    /// `floor(log₂((n − 5) / 144))`, which grows without bound in `n`.
    pub l_log_floor: i64,
    pub all_hold: bool,
}

pub fn check_inequalities(n: u64) -> Result<InequalityReport, BoundsError> {
    if n < 6 {
        return Err(BoundsError::Precondition(format!("check_inequalities needs n >= 6, got {n}")));
    }
    let q_next = q(n + 1);
    let q_next_holds = Ratio::from_integer(q_next as i128) > Ratio::new((n - 5) as i128, 6);
    let per_k: Vec<KCheck> = (1..=n / 6)
        .map(|k| {
            let v = q_param(n, k);
            KCheck { k, q_param: v, holds: exceeds_log2(v, n - 5, 72) }
        })
        .collect();
    let l_value = per_k.iter().map(|c| c.q_param).chain([q_next as i64]).min().expect("nonempty") - 1;
    let l_holds = exceeds_log2(l_value, n - 5, 144);
    let all_hold = q_next_holds && l_holds && per_k.iter().all(|c| c.holds);
    Ok(InequalityReport {
        n,
        q_next,
        q_next_holds,
        per_k,
        l_value,
        l_holds,
        l_log_floor: floor_log2_ratio(n - 5, 144),
        all_hold,
    })
}

/// Lower bound on the length of a good arc.
pub fn good_arc_bound(m: u64, k: u64, s: u64, embedded: bool) -> i64 {
    let direct = m as i64 + 1 - s as i64;
    let other = if embedded {
        t(m + 1) as i64
    } else if m < 6 * k {
        q(m + 1) as i64
    } else {
        k as i64 + ((m - 6 * k) / 2) as i64
    };
    direct.max(other)
}

/// `s_y = 0` or `w_y / s_y ≥ 4/3`.
pub fn ratio_check(w_y: u64, s_y: u64) -> bool {
    s_y == 0 || 3 * w_y as u128 >= 4 * s_y as u128
}

/// `2^s − 2`.
pub fn conflict_max(s: u32) -> Result<u64, BoundsError> {
    if s == 0 {
        return Err(BoundsError::Precondition("conflict_max needs s >= 1".into()));
    }
    if s >= 64 {
        return Err(BoundsError::Overflow(s));
    }
    Ok((1u64 << s) - 2)
}

/// `6k + r + 2k(2^s − 2)`.
pub fn product_length(k: u64, r: u64, s: u32) -> Result<u64, BoundsError> {
    let c = conflict_max(s)?;
    2u64.checked_mul(k)
        .and_then(|x| x.checked_mul(c))
        .and_then(|x| x.checked_add(6 * k + r))
        .ok_or(BoundsError::Overflow(s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductBoundReport {
    pub m_plus_1: u64,
    /// `k + floor(r/2) + k(s − 2)`.
    pub count: u64,
    /// `(m + 1 − 6k) / 6`, whose binary logarithm the count must exceed.
    pub log_argument: (u64, u64),
    pub holds: bool,
}

pub fn product_bound_check(m: u64, k: u64, r: u64, s: u32) -> Result<ProductBoundReport, BoundsError> {
    if r <= 2 || s < 2 || k < 1 {
        return Err(BoundsError::Precondition(format!("product_bound_check needs r > 2, s >= 2, k >= 1 (got r={r}, s={s}, k={k})")));
    }
    let expected = product_length(k, r, s)?;
    if m + 1 != expected {
        return Err(BoundsError::LengthMismatch { actual: m + 1, expected });
    }
    let count = k + r / 2 + k * (s as u64 - 2);
    let num = m + 1 - 6 * k;
    let holds = exceeds_log2(count as i64, num, 6);
    Ok(ProductBoundReport { m_plus_1: m + 1, count, log_argument: (num, 6), holds })
}
