//! Lower-central-series decompositions and membership in the lower central
//! series of a normal closure.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{self, LiePoly};
use crate::magnus::{expand, lcs_degree, Coeff, LcsDegree, Monomial};
use crate::word::{kill_generators, EntrySequence, Letter, Word};

/// At most this many monomials are tried as a single left-normed commutator before the Lyndon solve.
const SINGLE_COMMUTATOR_TRIES: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcsError {
    #[error("word has LCS degree {actual}, need at least {required}")]
    DegreeTooLow { actual: LcsDegree, required: usize },
    #[error("truncation degree {degree} is below the decomposition weight {weight}")]
    TruncationTooLow { degree: usize, weight: usize },
    #[error("decomposition weight must be at least 2, got {0}")]
    WeightTooLow(usize),
    #[error("word is not in the normal closure: killing the set leaves {0}")]
    NotInClosure(Word),
    #[error("killed generator set is empty")]
    EmptyKilledSet,
}

/// Degree-`m` Magnus coefficients of a word with LCS degree at least `m`.
pub fn lie_component(w: &Word, m: usize) -> Result<BTreeMap<Monomial, Coeff>, LcsError> {
    let deg = lcs_degree(w, m.saturating_sub(1));
    if m >= 1 && !deg.is_at_least(m) {
        return Err(LcsError::DegreeTooLow { actual: deg, required: m });
    }
    if m == 0 {
        return Ok(expand(w, 0).homogeneous_part(0));
    }
    Ok(expand(w, m).homogeneous_part(m))
}

/// One simple commutator factor with exponent ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorFactor {
    pub entries: EntrySequence,
    pub exponent: i8,
}

impl CommutatorFactor {
    pub fn to_word(&self) -> Word {
        let w = self.entries.to_word();
        if self.exponent < 0 {
            w.inverse()
        } else {
            w
        }
    }

    pub fn weight(&self) -> usize {
        self.entries.weight()
    }
}

impl fmt::Display for CommutatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent < 0 {
            write!(f, "{}^-1", self.entries)
        } else {
            write!(f, "{}", self.entries)
        }
    }
}

/// `original = factors[0] · factors[1] ⋯ · residual`, with the residual in `F^(valid_mod_degree + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorCombination {
    pub factors: Vec<CommutatorFactor>,
    pub residual: Word,
    pub valid_mod_degree: usize,
}

impl CommutatorCombination {
    pub fn product(&self) -> Word {
        self.factors.iter().fold(Word::empty(), |acc, f| acc.concat(&f.to_word()))
    }

    /// Product of factors followed by the residual.
    pub fn reconstruct(&self) -> Word {
        self.product().concat(&self.residual)
    }

    pub fn factors_of_weight(&self, weight: usize) -> impl Iterator<Item = &CommutatorFactor> {
        self.factors.iter().filter(move |f| f.weight() == weight)
    }

    /// Generators occurring in factors of the given weight.
    pub fn generators_at_weight(&self, weight: usize) -> Vec<BTreeSet<u32>> {
        self.factors_of_weight(weight).map(|f| f.entries.generators()).collect()
    }
}

fn to_lie_poly(slice: &BTreeMap<Monomial, Coeff>) -> LiePoly {
    slice.iter().map(|(m, &c)| (m.0.clone(), c)).collect()
}

fn scale_matches(target: &LiePoly, candidate: &LiePoly) -> Option<Coeff> {
    let (m, &c) = candidate.iter().next()?;
    let t = *target.get(m)?;
    if t % c != 0 {
        return None;
    }
    let lambda = t / c;
    (target.len() == candidate.len() && candidate.iter().all(|(m, &c)| target.get(m) == Some(&(c * lambda))))
        .then_some(lambda)
}

/// Left-normed combination whose expansion is `slice`.
fn solve_degree(slice: &LiePoly) -> LiePoly {
    let mut seen = BTreeSet::new();
    for m in slice.keys().take(SINGLE_COMMUTATOR_TRIES) {
        let mut seq = m.clone();
        if seq.len() >= 2 && seq[0] > seq[1] {
            seq.swap(0, 1);
        }
        if seq.len() >= 2 && seq[0] == seq[1] || !seen.insert(seq.clone()) {
            continue;
        }
        if let Some(lambda) = scale_matches(slice, &lie::left_normed_expansion(&seq)) {
            return LiePoly::from([(seq, lambda)]);
        }
    }
    let comb = lie::left_normed_combination(slice)
        .unwrap_or_else(|e| panic!("degree slice is not a Lie element (monomial {:?})", e.monomial));
    assert_eq!(&lie::expand_combination(&comb), slice, "left-normed solve does not reproduce the slice");
    comb
}

/// Peel off simple commutators of weight `m+1, m+2, …, D`.
///
/// Requires `lcs_degree(w) ≥ m + 1` and `D ≥ m + 1`. The factors multiply
/// out, together with the residual, to exactly `w`; the residual lies in
/// `F^(D+1)`.
pub fn decompose(w: &Word, m: usize, degree: usize) -> Result<CommutatorCombination, LcsError> {
    let weight = m + 1;
    if weight < 2 {
        return Err(LcsError::WeightTooLow(weight));
    }
    if degree < weight {
        return Err(LcsError::TruncationTooLow { degree, weight });
    }
    let deg = lcs_degree(w, m);
    if !deg.is_at_least(weight) {
        return Err(LcsError::DegreeTooLow { actual: deg, required: weight });
    }
    let mut factors = Vec::new();
    let mut remainder = w.clone();
    for d in weight..=degree {
        let slice = to_lie_poly(&expand(&remainder, d).homogeneous_part(d));
        if slice.is_empty() {
            continue;
        }
        let comb = solve_degree(&slice);
        let mut peeled = Word::empty();
        for (seq, c) in comb {
            let entries = EntrySequence::from_generators(&seq).expect("left-normed entries have weight >= 2");
            let exponent: i8 = if c < 0 { -1 } else { 1 };
            for _ in 0..c.unsigned_abs() {
                let f = CommutatorFactor { entries: entries.clone(), exponent };
                peeled = peeled.concat(&f.to_word());
                factors.push(f);
            }
        }
        remainder = peeled.inverse().concat(&remainder);
        assert!(
            lcs_degree(&remainder, d).is_at_least(d + 1),
            "peeling at degree {d} did not raise the LCS degree"
        );
    }
    Ok(CommutatorCombination { factors, residual: remainder, valid_mod_degree: degree })
}

/// Free generator `t · s · t⁻¹` of the normal closure of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchreierLetter {
    pub conjugator: Word,
    pub base: u32,
}

impl SchreierLetter {
    pub fn to_word(&self) -> Word {
        Word::generator(self.base).conjugate_by(&self.conjugator)
    }
}

impl Ord for SchreierLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conjugator
            .len()
            .cmp(&other.conjugator.len())
            .then_with(|| self.conjugator.letters().cmp(other.conjugator.letters()))
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for SchreierLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SchreierLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}|g{}>", self.conjugator, self.base)
    }
}

/// Reduced word in Schreier letters, as (letter, exponent ±1) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SchreierWord {
    letters: Vec<(SchreierLetter, i8)>,
}

impl SchreierWord {
    fn push(&mut self, letter: SchreierLetter, exponent: i8) {
        if let Some((last, e)) = self.letters.last() {
            if *last == letter && *e == -exponent {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((letter, exponent));
    }

    pub fn letters(&self) -> &[(SchreierLetter, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Distinct letters in canonical order.
    pub fn alphabet(&self) -> Vec<SchreierLetter> {
        self.letters.iter().map(|(l, _)| l.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Substitute `t s t⁻¹` for every letter.
    pub fn substitute(&self) -> Word {
        self.letters.iter().fold(Word::empty(), |acc, (l, e)| {
            let w = l.to_word();
            acc.concat(&if *e < 0 { w.inverse() } else { w })
        })
    }

    /// The same word over generators `1..=r`, numbered along [`Self::alphabet`].
    pub fn relabel(&self) -> (Word, Vec<SchreierLetter>) {
        let alphabet = self.alphabet();
        let index: BTreeMap<&SchreierLetter, u32> = alphabet.iter().zip(1..).collect();
        let w = Word::from_letters(self.letters.iter().map(|(l, e)| {
            Letter::new(index[l], *e > 0).expect("relabelled generators start at 1")
        }));
        (w, alphabet)
    }
}

impl fmt::Display for SchreierWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e < 0 {
                write!(f, "{l}^-1")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

/// Rewrite `w ∈ ⟨⟨S⟩⟩` in the Schreier generators for the transversal of
/// reduced words on the complement of `S`.
pub fn schreier_rewrite(w: &Word, killed: &BTreeSet<u32>) -> Result<SchreierWord, LcsError> {
    let image = kill_generators(w, killed);
    if !image.is_empty() {
        return Err(LcsError::NotInClosure(image));
    }
    let mut out = SchreierWord::default();
    let mut coset: Vec<Letter> = Vec::new();
    for &l in w.letters() {
        if killed.contains(&l.generator()) {
            let letter = SchreierLetter { conjugator: Word::from_letters(coset.iter().copied()), base: l.generator() };
            out.push(letter, if l.is_positive() { 1 } else { -1 });
        } else if coset.last() == Some(&l.inverse()) {
            coset.pop();
        } else {
            coset.push(l);
        }
    }
    debug_assert!(coset.is_empty());
    Ok(out)
}

/// LCS degree of `w` inside the normal closure of `S`, measured in the free
/// group on the Schreier letters that occur.
pub fn normal_closure_lcs_degree(w: &Word, killed: &BTreeSet<u32>, degree: usize) -> Result<LcsDegree, LcsError> {
    let (relabelled, _) = schreier_rewrite(w, killed)?.relabel();
    Ok(lcs_degree(&relabelled, degree))
}
