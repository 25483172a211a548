//! Free-group words over generators `g1, g2, ...`.
//!
//! A [`Word`] is always stored freely reduced, so two words are equal as
//! group elements exactly when they compare equal. [`TaggedWord`] is the one
//! place where unreduced letter sequences survive: it remembers, for every
//! letter of a commutator expansion, which entry (or inserted canceling pair)
//! produced it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::parse::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index must be at least 1")]
    ZeroGenerator,
    #[error("entry sequence needs at least two entries, got {0}")]
    ShortEntrySequence(usize),
    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}

/// A generator or its inverse. Stored as a nonzero signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, positive: bool) -> Result<Self, WordError> {
        if generator == 0 {
            return Err(WordError::ZeroGenerator);
        }
        let g = i32::try_from(generator).expect("generator index fits in i32");
        Ok(Letter(if positive { g } else { -g }))
    }

    /// `g^+1`. Panics on `g == 0`.
    pub fn pos(generator: u32) -> Self {
        Self::new(generator, true).expect("generator index must be at least 1")
    }

    /// `g^-1`. Panics on `g == 0`.
    pub fn neg(generator: u32) -> Self {
        Self::new(generator, false).expect("generator index must be at least 1")
    }

    pub fn from_signed(value: i64) -> Result<Self, WordError> {
        let generator = u32::try_from(value.unsigned_abs()).map_err(|_| WordError::ZeroGenerator)?;
        Self::new(generator, value > 0)
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn to_signed(self) -> i64 {
        i64::from(self.0)
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Same generator, sign replaced.
    pub fn with_generator(self, generator: u32) -> Self {
        Self::new(generator, self.is_positive()).expect("nonzero generator")
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.generator(), !self.is_positive()).cmp(&(other.generator(), !other.is_positive()))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "g{}", self.generator())
        } else {
            write!(f, "g{}^-1", self.generator())
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(g: u32) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    pub fn from_signed(values: &[i64]) -> Result<Self, WordError> {
        values.iter().map(|&v| Letter::from_signed(v)).collect::<Result<Vec<_>, _>>().map(Word::from_letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse()).concat(&other.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn generators(&self) -> BTreeSet<u32> {
        self.letters.iter().map(|l| l.generator()).collect()
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    /// Exponent sum of each generator (image in the abelianization).
    pub fn exponent_sum(&self, generator: u32) -> i64 {
        self.letters.iter().filter(|l| l.generator() == generator).map(|l| i64::from(l.sign())).sum()
    }

    /// Apply a generator relabeling letter by letter, then reduce.
    pub fn map_generators<F: Fn(u32) -> u32>(&self, f: F) -> Word {
        Word::from_letters(self.letters.iter().map(|l| l.with_generator(f(l.generator()))))
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_letters(s).map(Word::from_letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let letters = parse::parse_letters(&s).map_err(serde::de::Error::custom)?;
        match letters.as_slice() {
            [l] => Ok(*l),
            _ => Err(serde::de::Error::custom(format!("expected a single letter, got `{s}`"))),
        }
    }
}

pub fn reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

pub fn invert(w: &Word) -> Word {
    w.inverse()
}

/// `u · w · u⁻¹`.
pub fn conjugate(w: &Word, u: &Word) -> Word {
    w.conjugate_by(u)
}

/// Image of `w` under the quotient map killing every generator in `killed`.
///
/// The quotient of a free group by the normal closure of a subset of its
/// basis is free on the remaining generators, and the induced map just drops
/// killed letters.
pub fn kill_generators(w: &Word, killed: &BTreeSet<u32>) -> Word {
    Word::from_letters(w.letters().iter().copied().filter(|l| !killed.contains(&l.generator())))
}

/// Entries `y_1, ..., y_{m+1}` of a left-normed commutator `[[...[y_1, y_2], ...], y_{m+1}]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct EntrySequence(Vec<Letter>);

impl EntrySequence {
    pub fn new(entries: Vec<Letter>) -> Result<Self, WordError> {
        if entries.len() < 2 {
            return Err(WordError::ShortEntrySequence(entries.len()));
        }
        Ok(EntrySequence(entries))
    }

    pub fn from_generators(generators: &[u32]) -> Result<Self, WordError> {
        let letters = generators.iter().map(|&g| Letter::new(g, true)).collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn entries(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn generators(&self) -> BTreeSet<u32> {
        self.0.iter().map(|l| l.generator()).collect()
    }

    /// The reduced group element.
    pub fn to_word(&self) -> Word {
        let mut c = Word::from_letters([self.0[0]]);
        for &y in &self.0[1..] {
            c = c.commutator(&Word::from_letters([y]));
        }
        c
    }
}

impl TryFrom<Vec<Letter>> for EntrySequence {
    type Error = WordError;

    fn try_from(value: Vec<Letter>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<EntrySequence> for Vec<Letter> {
    fn from(value: EntrySequence) -> Self {
        value.0
    }
}

impl fmt::Display for EntrySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for EntrySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Where a letter of a tagged expansion came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Entry `entry` (1-based) of factor `factor` (0-based).
    Entry { factor: usize, entry: usize },
    /// One letter of the `pair`-th inserted canceling pair.
    Inserted { pair: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedLetter {
    pub letter: Letter,
    pub origin: Origin,
}

/// An unreduced letter sequence with per-letter provenance.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedWord {
    letters: Vec<TaggedLetter>,
}

impl TaggedWord {
    pub fn new(letters: Vec<TaggedLetter>) -> Self {
        TaggedWord { letters }
    }

    pub fn letters(&self) -> &[TaggedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn untagged(&self) -> Vec<Letter> {
        self.letters.iter().map(|t| t.letter).collect()
    }

    /// Strip tags and reduce.
    pub fn to_word(&self) -> Word {
        Word::from_letters(self.letters.iter().map(|t| t.letter))
    }

    /// Concatenated expansions of several commutators; factor `i` is tagged with `factor: i`.
    pub fn product(factors: &[EntrySequence]) -> Self {
        let mut letters = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            letters.extend(expand_commutator_tagged(f, i));
        }
        TaggedWord { letters }
    }

    fn next_pair_id(&self) -> usize {
        self.letters
            .iter()
            .filter_map(|t| match t.origin {
                Origin::Inserted { pair } => Some(pair + 1),
                Origin::Entry { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Positions whose origin is entry `entry` of any factor.
    pub fn positions_of_entry(&self, entry: usize) -> BTreeSet<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, t)| matches!(t.origin, Origin::Entry { entry: e, .. } if e == entry))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn inserted_positions(&self) -> BTreeSet<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, t)| matches!(t.origin, Origin::Inserted { .. }))
            .map(|(i, _)| i)
            .collect()
    }
}

fn expand_commutator_tagged(entries: &EntrySequence, factor: usize) -> Vec<TaggedLetter> {
    let tag = |entry: usize, letter: Letter| TaggedLetter { letter, origin: Origin::Entry { factor, entry } };
    let ys = entries.entries();
    let mut c = vec![tag(1, ys[0])];
    for (j, &y) in ys.iter().enumerate().skip(1) {
        let mut next = Vec::with_capacity(2 * c.len() + 2);
        next.extend_from_slice(&c);
        next.push(tag(j + 1, y));
        next.extend(c.iter().rev().map(|t| TaggedLetter { letter: t.letter.inverse(), origin: t.origin }));
        next.push(tag(j + 1, y.inverse()));
        c = next;
    }
    c
}

/// Unreduced expansion of `[y_1, ..., y_{m+1}]` with every letter tagged by its entry.
pub fn simple_commutator(entries: &EntrySequence) -> TaggedWord {
    TaggedWord { letters: expand_commutator_tagged(entries, 0) }
}

/// Insert `g g⁻¹` before `position`; the group element is unchanged.
pub fn insert_canceling_pair(w: &TaggedWord, position: usize, g: Letter) -> Result<TaggedWord, WordError> {
    if position > w.len() {
        return Err(WordError::PositionOutOfRange { position, len: w.len() });
    }
    let pair = w.next_pair_id();
    let origin = Origin::Inserted { pair };
    let mut letters = w.letters.clone();
    letters.splice(position..position, [TaggedLetter { letter: g, origin }, TaggedLetter { letter: g.inverse(), origin }]);
    Ok(TaggedWord { letters })
}

/// Delete the letters at `positions` (indices into the unreduced sequence), then reduce.
pub fn delete_letters(w: &TaggedWord, positions: &BTreeSet<usize>) -> Result<Word, WordError> {
    if let Some(&p) = positions.iter().next_back() {
        if p >= w.len() {
            return Err(WordError::PositionOutOfRange { position: p, len: w.len() });
        }
    }
    Ok(Word::from_letters(
        w.letters.iter().enumerate().filter(|(i, _)| !positions.contains(i)).map(|(_, t)| t.letter),
    ))
}

/// True iff no generator fills three or more consecutive entries (signs ignored).
pub fn successive_entry_check(entries: &EntrySequence) -> bool {
    entries
        .entries()
        .windows(3)
        .all(|w| !(w[0].generator() == w[1].generator() && w[1].generator() == w[2].generator()))
}
