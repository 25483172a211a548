//! Letter-set families that trivialize a product of simple commutators.
//!
//! For factors `[y_1, …, y_{m+1}]`, the set `C_i` collects every letter
//! descended from entry `i` of any factor. Deleting the letters of any
//! nonempty union of the `C_i` and reducing leaves the empty word.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{delete_letters, insert_canceling_pair, EntrySequence, Letter, TaggedWord, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrivializerError {
    #[error("no factors given")]
    NoFactors,
    #[error("factor {index} has weight {weight}, expected {expected}")]
    UnequalWeights { index: usize, weight: usize, expected: usize },
    #[error("a family needs at least two sets, got {0}")]
    TooFewSets(usize),
    #[error("position {position} appears in sets {first} and {second}")]
    Overlap { position: usize, first: usize, second: usize },
    #[error("position {position} is outside a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("insertion failed: {0}")]
    Insertion(#[from] WordError),
    #[error("need k >= 1, got {0}")]
    NoAuxiliaryGenerators(u32),
    #[error("entry word of weight {0} is too short (need at least 3)")]
    WeightTooSmall(usize),
}

/// Pairwise-disjoint position sets in an unreduced word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LetterSetFamily {
    sets: Vec<BTreeSet<usize>>,
}

impl LetterSetFamily {
    pub fn new(sets: Vec<BTreeSet<usize>>, word_len: usize) -> Result<Self, TrivializerError> {
        if sets.len() < 2 {
            return Err(TrivializerError::TooFewSets(sets.len()));
        }
        let mut owner = std::collections::BTreeMap::new();
        for (i, s) in sets.iter().enumerate() {
            for &p in s {
                if p >= word_len {
                    return Err(TrivializerError::PositionOutOfRange { position: p, len: word_len });
                }
                if let Some(first) = owner.insert(p, i + 1) {
                    return Err(TrivializerError::Overlap { position: p, first, second: i + 1 });
                }
            }
        }
        Ok(LetterSetFamily { sets })
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Union of the sets selected by a bitmask.
    pub fn union(&self, mask: u64) -> BTreeSet<usize> {
        self.sets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, s)| s.iter().copied())
            .collect()
    }
}

/// Expand the factors, apply the insertions `(position, letter)` in order,
/// and collect the per-entry position sets.
pub fn build_letter_sets(
    factors: &[EntrySequence],
    insertions: &[(usize, Letter)],
) -> Result<(TaggedWord, LetterSetFamily), TrivializerError> {
    let first = factors.first().ok_or(TrivializerError::NoFactors)?;
    let weight = first.weight();
    if let Some((index, f)) = factors.iter().enumerate().find(|(_, f)| f.weight() != weight) {
        return Err(TrivializerError::UnequalWeights { index: index + 1, weight: f.weight(), expected: weight });
    }
    let mut w = TaggedWord::product(factors);
    for &(position, letter) in insertions {
        w = insert_canceling_pair(&w, position, letter)?;
    }
    let sets = (1..=weight).map(|i| w.positions_of_entry(i)).collect();
    let family = LetterSetFamily::new(sets, w.len())?;
    Ok((w, family))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub trivializes: bool,
    pub subfamilies_checked: u64,
    /// 1-based indices of the first subfamily whose deletion leaves a nontrivial word.
    pub failing_subfamily: Option<Vec<usize>>,
    pub leftover: Option<Word>,
}

/// Delete every nonempty subfamily in turn; stops at the first that does not reduce to empty.
pub fn verify_family(w: &TaggedWord, family: &LetterSetFamily) -> FamilyReport {
    let n = family.len();
    assert!(n < 64, "families of 64 or more sets are not enumerable");
    let mut checked = 0;
    for mask in 1u64..(1u64 << n) {
        checked += 1;
        let positions = family.union(mask);
        let rest = delete_letters(w, &positions).expect("family positions were validated against the word");
        if !rest.is_empty() {
            let failing = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            return FamilyReport {
                trivializes: false,
                subfamilies_checked: checked,
                failing_subfamily: Some(failing),
                leftover: Some(rest),
            };
        }
    }
    FamilyReport { trivializes: true, subfamilies_checked: checked, failing_subfamily: None, leftover: None }
}

/// Entry word with the parity pattern
/// `x₀, y₁, y₁, x₀, x₀, …, y_k, y_k, x₀, x₀, y₁, y₁, …, y_k, y_k`,
/// continued periodically and cut at weight `m + 1`. `x₀ = g1`, `y_j = g(j+1)`.
pub fn extremal_entry_word(k: u32, m: usize) -> Result<EntrySequence, TrivializerError> {
    if k == 0 {
        return Err(TrivializerError::NoAuxiliaryGenerators(k));
    }
    let weight = m + 1;
    if weight < 3 {
        return Err(TrivializerError::WeightTooSmall(weight));
    }
    let mut period = Vec::new();
    for j in 1..=k {
        period.extend([j + 1, j + 1, 1, 1]);
    }
    for j in 1..=k {
        period.extend([j + 1, j + 1]);
    }
    period.extend([1, 1]);
    let gens: Vec<u32> = std::iter::once(1).chain(period.iter().copied().cycle()).take(weight).collect();
    Ok(EntrySequence::from_generators(&gens).expect("weight is at least 3"))
}

/// Weight of one full pattern `x₀, (y_j y_j x₀ x₀)_j, (y_j y_j)_j`.
pub fn extremal_pattern_weight(k: u32) -> usize {
    6 * k as usize + 1
}
