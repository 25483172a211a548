//! Truncated non-commutative power series and the Magnus embedding.
//!
//! `x_i ↦ 1 + X_i`, `x_i⁻¹ ↦ 1 − X_i + X_i² − …`, truncated at a
//! caller-supplied degree `D`. A word lies in the `k`-th lower central term
//! of the free group iff its expansion minus 1 has no terms of degree `< k`.
//!
//! Series are stored densely over the sorted alphabet of symbols that occur,
//! with monomials of length `l` laid out in base-`r` order after all shorter
//! ones. That layout is also the canonical (degree, then lexicographic) order
//! used for serialization.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Letter, Word};

pub type Coeff = i128;

/// Dense tables larger than this are refused (they would not fit in memory anyway).
const MAX_DENSE_LEN: usize = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("truncation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("constant term is {0}, expected 1")]
    NonUnitConstant(Coeff),
    #[error("monomial of length {len} exceeds truncation degree {degree}")]
    MonomialTooLong { len: usize, degree: usize },
    #[error("truncation degree must be at least 1")]
    ZeroDegree,
    #[error("longitude system needs at least one component")]
    NoComponents,
    #[error("longitude {component} uses generator {generator} but the system has {count} components")]
    GeneratorOutOfRange { component: usize, generator: u32, count: usize },
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: u32, count: usize },
    #[error("Milnor invariants need a multi-index of length at least 2, got {0}")]
    IndexTooShort(usize),
}

/// A monomial `X_{i1} … X_{ik}`. Ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "X{g}")?;
        }
        Ok(())
    }
}

#[inline]
fn add_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("Magnus coefficient overflow")
}

#[inline]
fn mul_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("Magnus coefficient overflow")
}

/// Offsets of each length block in the dense table.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layout {
    rank: usize,
    degree: usize,
    /// `offsets[l]` is the start of length-`l` monomials; `offsets[degree + 1]` is the total size.
    offsets: Vec<usize>,
}

impl Layout {
    fn new(rank: usize, degree: usize) -> Self {
        let mut offsets = Vec::with_capacity(degree + 2);
        offsets.push(0);
        let mut block = 1usize;
        for _ in 0..=degree {
            let next = offsets.last().unwrap() + block;
            assert!(next <= MAX_DENSE_LEN, "truncated series over {rank} symbols at degree {degree} is too large");
            offsets.push(next);
            block = block.saturating_mul(rank.max(1));
            if rank == 0 {
                block = 0;
            }
        }
        Layout { rank, degree, offsets }
    }

    fn size(&self) -> usize {
        self.offsets[self.degree + 1]
    }

    fn block(&self, len: usize) -> std::ops::Range<usize> {
        self.offsets[len]..self.offsets[len + 1]
    }

    fn block_len(&self, len: usize) -> usize {
        self.offsets[len + 1] - self.offsets[len]
    }
}

/// Element of `Z⟨⟨X_1, …⟩⟩ / (degree > D)`.
#[derive(Clone)]
pub struct NCPolynomial {
    alphabet: Vec<u32>,
    layout: Layout,
    coeffs: Vec<Coeff>,
}

impl NCPolynomial {
    fn with_alphabet_zero(degree: usize, alphabet: Vec<u32>) -> Self {
        let layout = Layout::new(alphabet.len(), degree);
        let coeffs = vec![0; layout.size()];
        NCPolynomial { alphabet, layout, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::with_alphabet_zero(degree, Vec::new())
    }

    pub fn one(degree: usize) -> Self {
        let mut p = Self::zero(degree);
        p.coeffs[0] = 1;
        p
    }

    /// `1 + X_g`.
    pub fn generator(g: u32, degree: usize) -> Self {
        Self::from_terms(degree, [(vec![], 1), (vec![g], 1)]).expect("degree >= 1 for a generator image")
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, MagnusError>
    where
        I: IntoIterator<Item = (Vec<u32>, Coeff)>,
    {
        let terms: Vec<(Vec<u32>, Coeff)> = terms.into_iter().collect();
        let alphabet: BTreeSet<u32> = terms.iter().flat_map(|(m, _)| m.iter().copied()).collect();
        let mut p = Self::with_alphabet_zero(degree, alphabet.into_iter().collect());
        for (m, c) in terms {
            if m.len() > degree {
                return Err(MagnusError::MonomialTooLong { len: m.len(), degree });
            }
            let idx = p.index_of(&m).expect("symbol is in alphabet");
            p.coeffs[idx] = add_c(p.coeffs[idx], c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.layout.degree
    }

    fn index_of(&self, monomial: &[u32]) -> Option<usize> {
        if monomial.len() > self.layout.degree {
            return None;
        }
        let mut v = 0usize;
        for g in monomial {
            let p = self.alphabet.binary_search(g).ok()?;
            v = v * self.layout.rank + p;
        }
        Some(self.layout.offsets[monomial.len()] + v)
    }

    fn monomial_at(&self, len: usize, mut v: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for slot in out.iter_mut().rev() {
            *slot = self.alphabet[v % self.layout.rank];
            v /= self.layout.rank;
        }
        out
    }

    pub fn coefficient(&self, monomial: &[u32]) -> Coeff {
        self.index_of(monomial).map_or(0, |i| self.coeffs[i])
    }

    pub fn constant(&self) -> Coeff {
        self.coeffs[0]
    }

    /// Nonzero terms in canonical order (degree, then lexicographic).
    pub fn terms(&self) -> Vec<(Monomial, Coeff)> {
        let mut out = Vec::new();
        for len in 0..=self.layout.degree {
            let start = self.layout.offsets[len];
            for (v, &c) in self.coeffs[self.layout.block(len)].iter().enumerate() {
                if c != 0 {
                    out.push((Monomial(self.monomial_at(len, v)), c));
                }
            }
            let _ = start;
        }
        out
    }

    /// Nonzero coefficients of the degree-`d` part.
    pub fn homogeneous_part(&self, d: usize) -> BTreeMap<Monomial, Coeff> {
        if d > self.layout.degree {
            return BTreeMap::new();
        }
        self.coeffs[self.layout.block(d)]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (Monomial(self.monomial_at(d, v)), c))
            .collect()
    }

    /// Smallest `d ≥ 1` with a nonzero degree-`d` coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        (1..=self.layout.degree).find(|&d| self.coeffs[self.layout.block(d)].iter().any(|&c| c != 0))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Re-embed over a larger alphabet.
    fn over(&self, alphabet: &[u32]) -> NCPolynomial {
        if alphabet == self.alphabet.as_slice() {
            return self.clone();
        }
        let mut out = Self::with_alphabet_zero(self.layout.degree, alphabet.to_vec());
        for len in 0..=self.layout.degree {
            for (v, &c) in self.coeffs[self.layout.block(len)].iter().enumerate() {
                if c != 0 {
                    let m = self.monomial_at(len, v);
                    let idx = out.index_of(&m).expect("alphabet is a superset");
                    out.coeffs[idx] = c;
                }
            }
        }
        out
    }

    fn unify(a: &NCPolynomial, b: &NCPolynomial) -> Result<(NCPolynomial, NCPolynomial), MagnusError> {
        if a.layout.degree != b.layout.degree {
            return Err(MagnusError::DegreeMismatch(a.layout.degree, b.layout.degree));
        }
        if a.alphabet == b.alphabet {
            return Ok((a.clone(), b.clone()));
        }
        let alphabet: Vec<u32> =
            a.alphabet.iter().chain(b.alphabet.iter()).copied().collect::<BTreeSet<_>>().into_iter().collect();
        Ok((a.over(&alphabet), b.over(&alphabet)))
    }

    pub fn add(&self, other: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
        let (mut a, b) = Self::unify(self, other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x = add_c(*x, y);
        }
        Ok(a)
    }

    pub fn neg(&self) -> NCPolynomial {
        let mut a = self.clone();
        a.coeffs.iter_mut().for_each(|c| *c = -*c);
        a
    }

    pub fn sub(&self, other: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: Coeff) -> NCPolynomial {
        let mut a = self.clone();
        a.coeffs.iter_mut().for_each(|c| *c = mul_c(*c, k));
        a
    }

    pub fn mul(&self, other: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
        let (a, b) = Self::unify(self, other)?;
        let layout = &a.layout;
        let mut out = vec![0 as Coeff; layout.size()];
        for la in 0..=layout.degree {
            for lb in 0..=(layout.degree - la) {
                let rb = layout.block_len(lb);
                let out_off = layout.offsets[la + lb];
                let b_block = &b.coeffs[layout.block(lb)];
                for (ia, &ca) in a.coeffs[layout.block(la)].iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    let base = out_off + ia * rb;
                    for (ib, &cb) in b_block.iter().enumerate() {
                        if cb != 0 {
                            out[base + ib] = add_c(out[base + ib], mul_c(ca, cb));
                        }
                    }
                }
            }
        }
        Ok(NCPolynomial { alphabet: a.alphabet, layout: a.layout, coeffs: out })
    }

    /// Inverse of a series with constant term 1, via the geometric series in `1 − a`.
    pub fn inverse(&self) -> Result<NCPolynomial, MagnusError> {
        if self.constant() != 1 {
            return Err(MagnusError::NonUnitConstant(self.constant()));
        }
        // a = 1 + u, a⁻¹ = Σ (−u)^k; Horner form: 1 − u(1 − u(1 − …)).
        let mut minus_u = self.neg();
        minus_u.coeffs[0] = 0;
        let mut acc = NCPolynomial::one(self.degree()).over(&self.alphabet);
        for _ in 0..self.degree() {
            acc = minus_u.mul(&acc)?;
            acc.coeffs[0] = add_c(acc.coeffs[0], 1);
        }
        Ok(acc)
    }

    /// Right-multiply in place by the image of one letter.
    fn mul_letter_in_place(&mut self, letter: Letter) {
        let p = self
            .alphabet
            .binary_search(&letter.generator())
            .expect("letter generator must be in the series alphabet");
        let r = self.layout.rank;
        let d = self.layout.degree;
        if letter.is_positive() {
            // new[M·X_p] = old[M·X_p] + old[M]; walk lengths downward so sources are still old.
            for l in (0..d).rev() {
                let (src, dst) = (self.layout.offsets[l], self.layout.offsets[l + 1]);
                for i in 0..self.layout.block_len(l) {
                    let c = self.coeffs[src + i];
                    if c != 0 {
                        let t = dst + i * r + p;
                        self.coeffs[t] = add_c(self.coeffs[t], c);
                    }
                }
            }
        } else {
            // (1 + X_p)⁻¹: new[M·X_p] = old[M·X_p] − new[M]; walk lengths upward.
            for l in 0..d {
                let (src, dst) = (self.layout.offsets[l], self.layout.offsets[l + 1]);
                for i in 0..self.layout.block_len(l) {
                    let c = self.coeffs[src + i];
                    if c != 0 {
                        let t = dst + i * r + p;
                        self.coeffs[t] = add_c(self.coeffs[t], -c);
                    }
                }
            }
        }
    }
}

impl PartialEq for NCPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.layout.degree == other.layout.degree && self.terms() == other.terms()
    }
}

impl Eq for NCPolynomial {}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPolynomial(D={}; {})", self.degree(), self)
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Serialized form: `(monomial, coefficient)` pairs in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub degree: usize,
    pub terms: Vec<(Monomial, Coeff)>,
}

impl From<&NCPolynomial> for SeriesRepr {
    fn from(p: &NCPolynomial) -> Self {
        SeriesRepr { degree: p.degree(), terms: p.terms() }
    }
}

impl TryFrom<SeriesRepr> for NCPolynomial {
    type Error = MagnusError;

    fn try_from(r: SeriesRepr) -> Result<Self, Self::Error> {
        NCPolynomial::from_terms(r.degree, r.terms.into_iter().map(|(m, c)| (m.0, c)))
    }
}

pub fn nc_add(a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
    a.add(b)
}

pub fn nc_mul(a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
    a.mul(b)
}

pub fn nc_inverse(a: &NCPolynomial) -> Result<NCPolynomial, MagnusError> {
    a.inverse()
}

/// Magnus expansion of `w` over an alphabet containing all of its generators.
pub fn expand_over(w: &Word, degree: usize, alphabet: &[u32]) -> NCPolynomial {
    let mut p = NCPolynomial::one(degree).over(alphabet);
    for &l in w.letters() {
        p.mul_letter_in_place(l);
    }
    p
}

/// Magnus expansion of `w` truncated above `degree`.
pub fn expand(w: &Word, degree: usize) -> NCPolynomial {
    let alphabet: Vec<u32> = w.generators().into_iter().collect();
    expand_over(w, degree, &alphabet)
}

/// Lower-central-series degree of a word, as seen through a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LcsDegree {
    /// The word lies in `F^(d)` but not `F^(d+1)`.
    Exact(usize),
    /// No nonconstant term up to the given truncation degree.
    Exceeds(usize),
}

impl LcsDegree {
    /// `Exceeds(D)` counts as `D + 1`.
    pub fn lower_bound(self) -> usize {
        match self {
            LcsDegree::Exact(d) => d,
            LcsDegree::Exceeds(d) => d + 1,
        }
    }

    /// Membership in `F^(k)`, decidable when `k ≤ D + 1`.
    pub fn is_at_least(self, k: usize) -> bool {
        self.lower_bound() >= k
    }
}

impl fmt::Display for LcsDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsDegree::Exact(d) => write!(f, "{d}"),
            LcsDegree::Exceeds(d) => write!(f, "> {d}"),
        }
    }
}

/// Smallest degree with a nonzero non-constant Magnus coefficient, or
/// `Exceeds(D)` if there is none up to `D`.
///
/// Truncations are raised one degree at a time, so shallow words never pay
/// for the full table.
pub fn lcs_degree(w: &Word, degree: usize) -> LcsDegree {
    if w.is_empty() {
        return LcsDegree::Exceeds(degree);
    }
    let alphabet: Vec<u32> = w.generators().into_iter().collect();
    if alphabet.iter().any(|&g| w.exponent_sum(g) != 0) {
        return if degree >= 1 { LcsDegree::Exact(1) } else { LcsDegree::Exceeds(0) };
    }
    for d in 2..=degree {
        let p = expand_over(w, d, &alphabet);
        if p.coeffs[p.layout.block(d)].iter().any(|&c| c != 0) {
            return LcsDegree::Exact(d);
        }
    }
    LcsDegree::Exceeds(degree)
}

/// Coefficient of `X_{I}` in the Magnus expansion of `w`.
///
/// Computed by a direct sweep over the word that only tracks the prefixes of
/// `I`, so it shares no code with [`expand`].
pub fn fox_coefficient(w: &Word, index: &[u32], degree: usize) -> Result<Coeff, MagnusError> {
    if index.len() > degree {
        return Err(MagnusError::MonomialTooLong { len: index.len(), degree });
    }
    Ok(coefficient_sweep(w, index))
}

fn coefficient_sweep(w: &Word, index: &[u32]) -> Coeff {
    let k = index.len();
    let mut c = vec![0 as Coeff; k + 1];
    c[0] = 1;
    for &l in w.letters() {
        let g = l.generator();
        if l.is_positive() {
            for j in (1..=k).rev() {
                if index[j - 1] == g {
                    c[j] = add_c(c[j], c[j - 1]);
                }
            }
        } else {
            for j in 1..=k {
                if index[j - 1] == g {
                    c[j] = add_c(c[j], -c[j - 1]);
                }
            }
        }
    }
    c[k]
}

/// Longitude words of an `r`-component link, written in its meridian generators `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongitudeSystem {
    longitudes: Vec<Word>,
}

impl LongitudeSystem {
    pub fn new(longitudes: Vec<Word>) -> Result<Self, MagnusError> {
        if longitudes.is_empty() {
            return Err(MagnusError::NoComponents);
        }
        let count = longitudes.len();
        for (i, l) in longitudes.iter().enumerate() {
            let g = l.max_generator();
            if g as usize > count {
                return Err(MagnusError::GeneratorOutOfRange { component: i + 1, generator: g, count });
            }
        }
        Ok(LongitudeSystem { longitudes })
    }

    pub fn components(&self) -> usize {
        self.longitudes.len()
    }

    pub fn longitude(&self, component: usize) -> &Word {
        &self.longitudes[component - 1]
    }

    pub fn longitudes(&self) -> &[Word] {
        &self.longitudes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MilnorMode {
    /// The Magnus coefficient itself.
    #[default]
    Raw,
    /// Residue modulo the gcd of the invariants of the one-index deletions.
    Gcd,
}

fn check_index(sys: &LongitudeSystem, index: &[u32]) -> Result<(), MagnusError> {
    if index.len() < 2 {
        return Err(MagnusError::IndexTooShort(index.len()));
    }
    let count = sys.components();
    match index.iter().find(|&&i| i == 0 || i as usize > count) {
        Some(&bad) => Err(MagnusError::IndexOutOfRange { index: bad, count }),
        None => Ok(()),
    }
}

fn raw_milnor(sys: &LongitudeSystem, index: &[u32]) -> Coeff {
    let (last, front) = index.split_last().expect("index has length >= 2");
    coefficient_sweep(sys.longitude(*last as usize), front)
}

/// `μ(i₁ … i_k)`: coefficient of `X_{i₁} … X_{i_{k−1}}` in the longitude of component `i_k`.
pub fn milnor_invariant(sys: &LongitudeSystem, index: &[u32], mode: MilnorMode) -> Result<Coeff, MagnusError> {
    check_index(sys, index)?;
    let mu = raw_milnor(sys, index);
    match mode {
        MilnorMode::Raw => Ok(mu),
        MilnorMode::Gcd => {
            let modulus = milnor_indeterminacy(sys, index)?;
            Ok(if modulus == 0 { mu } else { mu.mod_floor(&modulus) })
        }
    }
}

/// gcd of the raw invariants obtained by deleting one index (0 when there are none).
pub fn milnor_indeterminacy(sys: &LongitudeSystem, index: &[u32]) -> Result<Coeff, MagnusError> {
    check_index(sys, index)?;
    if index.len() < 3 {
        return Ok(0);
    }
    let mut g: Coeff = 0;
    for skip in 0..index.len() {
        let sub: Vec<u32> = index.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        g = g.gcd(&raw_milnor(sys, &sub));
    }
    Ok(g)
}

/// True iff every raw `μ(I)` with `|I| ≤ n + 1` vanishes, decided through
/// the lower central series: every longitude must lie in `F^(n+1)`.
pub fn milnor_vanish_upto(sys: &LongitudeSystem, n: usize) -> bool {
    sys.longitudes.iter().all(|l| lcs_degree(l, n + 1).is_at_least(n + 1))
}

/// Same question as [`milnor_vanish_upto`], answered by enumerating every
/// multi-index of length `2..=n+1` and checking its coefficient.
pub fn milnor_vanish_upto_by_coefficients(sys: &LongitudeSystem, n: usize) -> bool {
    let r = sys.components() as u32;
    let mut prefix: Vec<u32> = Vec::new();
    // Depth-first over prefixes; a coefficient is tested for each last index.
    fn walk(sys: &LongitudeSystem, r: u32, n: usize, prefix: &mut Vec<u32>) -> bool {
        if !prefix.is_empty() {
            for last in 1..=r {
                if coefficient_sweep(sys.longitude(last as usize), prefix) != 0 {
                    return false;
                }
            }
        }
        if prefix.len() == n {
            return true;
        }
        for i in 1..=r {
            prefix.push(i);
            let ok = walk(sys, r, n, prefix);
            prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    walk(sys, r, n, &mut prefix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn poly(d: usize, terms: &[(&[u32], Coeff)]) -> NCPolynomial {
        NCPolynomial::from_terms(d, terms.iter().map(|(m, c)| (m.to_vec(), *c))).unwrap()
    }

    #[test]
    fn truncated_geometric_inverse() {
        let a = poly(2, &[(&[], 1), (&[1], 1)]);
        let b = poly(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]);
        assert!(nc_mul(&a, &b).unwrap().is_one());
    }

    #[test]
    fn product_of_two_generators() {
        let p = nc_mul(&NCPolynomial::generator(1, 2), &NCPolynomial::generator(2, 2)).unwrap();
        assert_eq!(p, poly(2, &[(&[], 1), (&[1], 1), (&[2], 1), (&[1, 2], 1)]));
    }

    #[test]
    fn inverse_of_one_plus_x_plus_y() {
        let a = poly(2, &[(&[], 1), (&[1], 1), (&[2], 1)]);
        let inv = nc_inverse(&a).unwrap();
        let expected =
            poly(2, &[(&[], 1), (&[1], -1), (&[2], -1), (&[1, 1], 1), (&[1, 2], 1), (&[2, 1], 1), (&[2, 2], 1)]);
        assert_eq!(inv, expected);
        assert!(nc_mul(&a, &inv).unwrap().is_one());
    }

    #[test]
    fn arithmetic_errors() {
        let a = NCPolynomial::one(2);
        let b = NCPolynomial::one(3);
        assert_eq!(nc_mul(&a, &b), Err(MagnusError::DegreeMismatch(2, 3)));
        assert_eq!(nc_add(&a, &b), Err(MagnusError::DegreeMismatch(2, 3)));
        assert_eq!(nc_inverse(&poly(2, &[(&[], 2)])), Err(MagnusError::NonUnitConstant(2)));
        assert!(matches!(NCPolynomial::from_terms(1, [(vec![1, 2], 1)]), Err(MagnusError::MonomialTooLong { .. })));
    }

    #[test]
    fn expansions() {
        assert_eq!(expand(&w("g1"), 3), poly(3, &[(&[], 1), (&[1], 1)]));
        assert_eq!(expand(&w("g1^-1"), 3), poly(3, &[(&[], 1), (&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1)]));
        assert_eq!(expand(&w("g1 g2 g1^-1 g2^-1"), 2), poly(2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)]));
        assert!(expand(&Word::empty(), 4).is_one());
    }

    #[test]
    fn degrees() {
        assert_eq!(lcs_degree(&w("g1 g2 g1^-1 g2^-1"), 4), LcsDegree::Exact(2));
        assert_eq!(lcs_degree(&w("g1"), 4), LcsDegree::Exact(1));
        let c3 = crate::word::EntrySequence::from_generators(&[1, 2, 3]).unwrap().to_word();
        assert_eq!(lcs_degree(&c3, 4), LcsDegree::Exact(3));
        assert_eq!(lcs_degree(&c3, 2), LcsDegree::Exceeds(2));
        assert_eq!(lcs_degree(&Word::empty(), 3), LcsDegree::Exceeds(3));
        assert!(LcsDegree::Exceeds(2).is_at_least(3));
        assert!(!LcsDegree::Exact(2).is_at_least(3));
    }

    #[test]
    fn fox_coefficients() {
        assert_eq!(fox_coefficient(&w("g1"), &[1], 1).unwrap(), 1);
        let c = w("g1 g2 g1^-1 g2^-1");
        assert_eq!(fox_coefficient(&c, &[1, 2], 2).unwrap(), 1);
        assert_eq!(fox_coefficient(&c, &[2, 1], 2).unwrap(), -1);
        assert_eq!(fox_coefficient(&Word::empty(), &[1, 2], 3).unwrap(), 0);
        assert!(fox_coefficient(&c, &[1, 2, 1], 2).is_err());
    }

    #[test]
    fn sweep_agrees_with_dense_expansion() {
        let word = w("g1 g2^-1 g1^-1 g3 g2 g2 g1^-1 g3^-1 g1");
        let p = expand(&word, 4);
        for (m, c) in p.terms() {
            assert_eq!(coefficient_sweep(&word, &m.0), c, "monomial {m}");
        }
        assert_eq!(coefficient_sweep(&word, &[3, 3, 3]), p.coefficient(&[3, 3, 3]));
    }

    fn hopf() -> LongitudeSystem {
        LongitudeSystem::new(vec![w("g2"), w("g1")]).unwrap()
    }

    fn borromean() -> LongitudeSystem {
        let c = |a: &str, b: &str| w(a).commutator(&w(b));
        LongitudeSystem::new(vec![c("g2", "g3"), c("g3", "g1"), c("g1", "g2")]).unwrap()
    }

    #[test]
    fn milnor_values() {
        assert_eq!(milnor_invariant(&hopf(), &[1, 2], MilnorMode::Raw).unwrap(), 1);
        let b = borromean();
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(milnor_invariant(&b, &[i, j], MilnorMode::Raw).unwrap(), 0);
            }
        }
        assert_eq!(milnor_invariant(&b, &[1, 2, 3], MilnorMode::Raw).unwrap(), 1);
        let trivial = LongitudeSystem::new(vec![Word::empty(); 3]).unwrap();
        assert_eq!(milnor_invariant(&trivial, &[1, 2, 3, 1], MilnorMode::Raw).unwrap(), 0);
    }

    #[test]
    fn milnor_gcd_mode() {
        // Longitude of component 3 is g1^2 g2: μ(13) = 2, μ(23) = 1, so the
        // indeterminacy of (1,2,3) is gcd(μ(23), μ(13), μ(12)) = 1.
        let sys = LongitudeSystem::new(vec![Word::empty(), Word::empty(), w("g1 g1 g2 g1")]).unwrap();
        assert_eq!(milnor_indeterminacy(&sys, &[1, 2, 3]).unwrap(), 1);
        assert_eq!(milnor_invariant(&sys, &[1, 2, 3], MilnorMode::Gcd).unwrap(), 0);
        let sys = LongitudeSystem::new(vec![Word::empty(), Word::empty(), w("g1 g1 g2 g2 g1 g1")]).unwrap();
        let raw = milnor_invariant(&sys, &[1, 2, 3], MilnorMode::Raw).unwrap();
        assert_eq!(milnor_indeterminacy(&sys, &[1, 2, 3]).unwrap(), 2);
        assert_eq!(milnor_invariant(&sys, &[1, 2, 3], MilnorMode::Gcd).unwrap(), raw.rem_euclid(2));
    }

    #[test]
    fn milnor_errors() {
        assert_eq!(LongitudeSystem::new(vec![]), Err(MagnusError::NoComponents));
        assert!(matches!(LongitudeSystem::new(vec![w("g3")]), Err(MagnusError::GeneratorOutOfRange { .. })));
        assert!(matches!(milnor_invariant(&hopf(), &[1, 3], MilnorMode::Raw), Err(MagnusError::IndexOutOfRange { .. })));
        assert!(matches!(milnor_invariant(&hopf(), &[1], MilnorMode::Raw), Err(MagnusError::IndexTooShort(1))));
    }

    #[test]
    fn vanishing() {
        let trivial = LongitudeSystem::new(vec![Word::empty(); 2]).unwrap();
        assert!(milnor_vanish_upto(&trivial, 5));
        assert!(!milnor_vanish_upto(&hopf(), 1));
        assert!(milnor_vanish_upto(&borromean(), 1));
        assert!(!milnor_vanish_upto(&borromean(), 2));
        for n in 1..=3 {
            assert_eq!(milnor_vanish_upto_by_coefficients(&borromean(), n), milnor_vanish_upto(&borromean(), n));
            assert_eq!(milnor_vanish_upto_by_coefficients(&hopf(), n), milnor_vanish_upto(&hopf(), n));
        }
    }

    #[test]
    fn display_and_repr() {
        let p = expand(&w("g1 g2 g1^-1 g2^-1"), 2);
        assert_eq!(p.to_string(), "1 + X1·X2 - X2·X1");
        let repr = SeriesRepr::from(&p);
        assert_eq!(NCPolynomial::try_from(repr).unwrap(), p);
    }
}
