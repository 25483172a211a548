//! Seifert-matrix invariants: Alexander polynomial, symmetrized forms and
//! their literal shape classes, and the canonical power series
//! `p(h) / Δ(e^h)` with `p(h) = (e^{h/2} − e^{−h/2}) / h`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("matrix is not {expected}x{expected}")]
    Shape { expected: usize },
    #[error("det(V - V^T) = {0}, expected 1")]
    NotUnimodularForm(i128),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("basis change has determinant {0}, expected ±1")]
    NotUnimodular(i128),
    #[error("blocks have mismatched sizes")]
    BlockSizes,
    #[error("Δ(1) = {0}, expected 1")]
    BadNormalization(i128),
    #[error("no value for subset {0:?}")]
    MissingSubset(Vec<u32>),
    #[error("arithmetic overflow")]
    Overflow,
}

fn check_square(m: &IntMatrix, size: usize) -> Result<(), SeifertError> {
    if m.len() != size || m.iter().any(|r| r.len() != size) {
        return Err(SeifertError::Shape { expected: size });
    }
    Ok(())
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Dense integer polynomial in `t`, lowest degree first.
type Poly = Vec<i128>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].checked_add(*c).expect("polynomial coefficient overflow");
    }
    poly_trim(out)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = x.checked_mul(*y).expect("polynomial coefficient overflow");
            out[i + j] = out[i + j].checked_add(p).expect("polynomial coefficient overflow");
        }
    }
    poly_trim(out)
}

fn poly_scale(a: &Poly, k: i128) -> Poly {
    poly_trim(a.iter().map(|c| c.checked_mul(k).expect("polynomial coefficient overflow")).collect())
}

/// Determinant of a matrix of polynomials by Laplace expansion over column subsets.
#[allow(clippy::needless_range_loop)]
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    assert!(n <= 20, "polynomial determinant of size {n} is not supported");
    let mut f: Vec<Poly> = vec![Vec::new(); 1 << n];
    f[0] = vec![1];
    for mask in 0usize..(1 << n) {
        if f[mask].is_empty() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in 0..n {
            if mask >> j & 1 == 1 || m[row][j].is_empty() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let term = poly_mul(&f[mask], &m[row][j]);
            let term = if above % 2 == 1 { poly_scale(&term, -1) } else { term };
            let target = mask | 1 << j;
            f[target] = poly_add(&f[target], &term);
        }
    }
    f[(1 << n) - 1].clone()
}

/// Integer determinant.
pub fn det(m: &IntMatrix) -> i128 {
    let pm: Vec<Vec<Poly>> = m.iter().map(|r| r.iter().map(|&x| poly_trim(vec![x as i128])).collect()).collect();
    poly_det(&pm).first().copied().unwrap_or(0)
}

/// `det(P − t·Q)` as a polynomial in `t`.
fn pencil_det(p: &IntMatrix, q: &IntMatrix) -> Poly {
    let n = p.len();
    let m: Vec<Vec<Poly>> =
        (0..n).map(|i| (0..n).map(|j| poly_trim(vec![p[i][j] as i128, -(q[i][j] as i128)])).collect()).collect();
    poly_det(&m)
}

/// Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    #[serde(rename = "min_exponent")]
    min_exp: i64,
    coefficients: Vec<i128>,
}

impl LaurentPolynomial {
    pub fn new(min_exp: i64, coefficients: Vec<i128>) -> Self {
        let mut p = LaurentPolynomial { min_exp, coefficients };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        LaurentPolynomial { min_exp: 0, coefficients: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPolynomial { min_exp: 0, coefficients: vec![1] }
    }

    fn normalize(&mut self) {
        while self.coefficients.last() == Some(&0) {
            self.coefficients.pop();
        }
        let lead = self.coefficients.iter().take_while(|&&c| c == 0).count();
        self.coefficients.drain(..lead);
        self.min_exp += lead as i64;
        if self.coefficients.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exp
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn coefficient(&self, exp: i64) -> i128 {
        let i = exp - self.min_exp;
        if i < 0 {
            return 0;
        }
        self.coefficients.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coefficients.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (self.min_exp + i as i64, c))
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coefficients.iter().sum()
    }

    /// `Δ(t) = Δ(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coefficient(-e) == c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentPolynomial::new(
            self.min_exp + other.min_exp,
            poly_mul(&self.coefficients, &other.coefficients),
        )
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let abs = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{abs}t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// A `2g × 2g` Seifert matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub genus: usize,
    pub matrix: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(genus: usize, matrix: IntMatrix) -> Result<Self, SeifertError> {
        check_square(&matrix, 2 * genus)?;
        Ok(SeifertMatrix { genus, matrix })
    }

    /// `det(V − Vᵀ)`.
    pub fn intersection_determinant(&self) -> i128 {
        let vt = transpose(&self.matrix);
        let d: IntMatrix =
            self.matrix.iter().zip(&vt).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect()).collect();
        det(&d)
    }
}

/// `t^{−g} det(V − t Vᵀ)`, symmetric with `Δ(1) = 1`.
pub fn alexander(v: &SeifertMatrix) -> Result<LaurentPolynomial, SeifertError> {
    check_square(&v.matrix, 2 * v.genus)?;
    let d = v.intersection_determinant();
    if d != 1 {
        return Err(SeifertError::NotUnimodularForm(d));
    }
    let p = pencil_det(&v.matrix, &transpose(&v.matrix));
    Ok(LaurentPolynomial::new(-(v.genus as i64), p))
}

/// `V + Vᵀ`.
pub fn symmetrize(v: &IntMatrix) -> IntMatrix {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| v[i][j] + v[j][i]).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum FormClass {
    /// Block diagonal with `J = [[0,1],[1,0]]` blocks.
    Elliptic,
    /// `[[0, P], [Pᵀ, R]]` with a zero `g × g` top-left block.
    Hyperbolic,
    /// `[[D_g, D], [D, T]]` with `D_g`, `D` diagonal.
    Parabolic { t_zero: bool },
    None,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClass::Elliptic => f.write_str("elliptic"),
            FormClass::Hyperbolic => f.write_str("hyperbolic"),
            FormClass::Parabolic { t_zero: true } => f.write_str("parabolic (T = 0)"),
            FormClass::Parabolic { t_zero: false } => f.write_str("parabolic"),
            FormClass::None => f.write_str("none"),
        }
    }
}

/// Literal shape test in the given basis, strongest class first.
#[allow(clippy::needless_range_loop)]
pub fn classify_form(m: &IntMatrix, genus: usize) -> Result<FormClass, SeifertError> {
    let n = 2 * genus;
    check_square(m, n)?;
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(SeifertError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let elliptic = (0..n).all(|i| (0..n).all(|j| m[i][j] == i64::from(i / 2 == j / 2 && i != j)));
    if elliptic {
        return Ok(FormClass::Elliptic);
    }
    let g = genus;
    if (0..g).all(|i| (0..g).all(|j| m[i][j] == 0)) {
        return Ok(FormClass::Hyperbolic);
    }
    let diagonal_block = |r0: usize, c0: usize| (0..g).all(|i| (0..g).all(|j| i == j || m[r0 + i][c0 + j] == 0));
    if diagonal_block(0, 0) && diagonal_block(0, g) {
        let t_zero = (g..n).all(|i| (g..n).all(|j| m[i][j] == 0));
        return Ok(FormClass::Parabolic { t_zero });
    }
    Ok(FormClass::None)
}

/// `U M Uᵀ` for unimodular `U`.
pub fn apply_basis_change(m: &IntMatrix, u: &IntMatrix) -> Result<IntMatrix, SeifertError> {
    let n = m.len();
    check_square(m, n)?;
    check_square(u, n)?;
    let d = det(u);
    if d != 1 && d != -1 {
        return Err(SeifertError::NotUnimodular(d));
    }
    let mul = |a: &IntMatrix, b: &IntMatrix| -> Result<IntMatrix, SeifertError> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).try_fold(0i64, |acc, k| {
                            a[i][k].checked_mul(b[k][j]).and_then(|p| acc.checked_add(p)).ok_or(SeifertError::Overflow)
                        })
                    })
                    .collect()
            })
            .collect()
    };
    mul(&mul(u, m)?, &transpose(u))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiBlockReport {
    /// `det(V − tVᵀ)` computed directly.
    pub direct: LaurentPolynomial,
    /// `(−1)^g det(A − tBᵀ) det(B − tAᵀ)`.
    pub factored: LaurentPolynomial,
    pub equal: bool,
}

/// Compare both sides of the determinant identity for `V = [[0, A], [B, Z]]`.
pub fn anti_block_determinant_check(a: &IntMatrix, b: &IntMatrix, z: &IntMatrix) -> Result<AntiBlockReport, SeifertError> {
    let g = a.len();
    for blk in [a, b, z] {
        check_square(blk, g).map_err(|_| SeifertError::BlockSizes)?;
    }
    let mut v = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..g {
        for j in 0..g {
            v[i][g + j] = a[i][j];
            v[g + i][j] = b[i][j];
            v[g + i][g + j] = z[i][j];
        }
    }
    let direct = pencil_det(&v, &transpose(&v));
    let left = pencil_det(a, &transpose(b));
    let right = pencil_det(b, &transpose(a));
    let sign = if g % 2 == 1 { -1 } else { 1 };
    let factored = poly_scale(&poly_mul(&left, &right), sign);
    let direct = LaurentPolynomial::new(0, direct);
    let factored = LaurentPolynomial::new(0, factored);
    let equal = direct == factored;
    Ok(AntiBlockReport { direct, factored, equal })
}

/// Power series in `h` with exact rational coefficients `c_0 … c_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub coefficients: Vec<BigRational>,
}

impl RationalSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> BigRational {
        self.coefficients.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `self / other`, assuming `other` has constant term 1.
    pub fn divide(&self, other: &RationalSeries) -> RationalSeries {
        assert!(other.coefficient(0).is_one(), "series division needs a unit constant term");
        let n = self.coefficients.len();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coefficient(k);
            for i in 1..=k {
                c -= other.coefficient(i) * &out[k - i];
            }
            out.push(c);
        }
        RationalSeries { coefficients: out }
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for i in 1..=n {
        let next = &out[i - 1] * BigInt::from(i);
        out.push(next);
    }
    out
}

/// `Δ(e^h)` through `h^N`: the `h^n` coefficient is `Σ_j c_j j^n / n!`.
pub fn exp_substitute(delta: &LaurentPolynomial, order: usize) -> RationalSeries {
    let fact = factorials(order);
    let coefficients = (0..=order)
        .map(|n| {
            let num: BigInt = delta.terms().map(|(e, c)| BigInt::from(c) * BigInt::from(e).pow(n as u32)).sum();
            BigRational::new(num, fact[n].clone())
        })
        .collect();
    RationalSeries { coefficients }
}

/// `(e^{h/2} − e^{−h/2}) / h` through `h^N`.
pub fn p_series(order: usize) -> RationalSeries {
    // e^{h/2} − e^{−h/2} = Σ_k (1 − (−1)^k) (1/2)^k h^k / k!; dividing by h shifts down one.
    let fact = factorials(order + 1);
    let coefficients = (0..=order)
        .map(|n| {
            let k = n + 1;
            if k % 2 == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(2), BigInt::from(2).pow(k as u32) * &fact[k])
            }
        })
        .collect();
    RationalSeries { coefficients }
}

/// Coefficients `v_0 … v_N` of `p(h) / Δ(e^h)`.
pub fn mmr_series(delta: &LaurentPolynomial, order: usize) -> Result<RationalSeries, SeifertError> {
    let at_one = delta.eval_at_one();
    if at_one != 1 {
        return Err(SeifertError::BadNormalization(at_one));
    }
    Ok(p_series(order).divide(&exp_substitute(delta, order)))
}

/// `Σ_C (−1)^{|C|} v(C)` over all subsets `C ⊆ {1, …, n+1}`.
pub fn alternating_sum(values: &BTreeMap<BTreeSet<u32>, BigRational>, n: u32) -> Result<BigRational, SeifertError> {
    let size = n + 1;
    assert!(size < 32, "alternating sums over more than 31 indices are not enumerable");
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << size) {
        let subset: BTreeSet<u32> = (0..size).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let v = values.get(&subset).ok_or_else(|| SeifertError::MissingSubset(subset.iter().copied().collect()))?;
        if subset.len().is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}
