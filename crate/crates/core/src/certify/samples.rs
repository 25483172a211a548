//! Synthetic certificates built so that their conditions hold by construction.

use super::{Certificate, Curve, Flag, Kind, Role, Sign, SCHEMA};
use crate::word::{EntrySequence, Word};

/// `[w_1, w_2, …, w_k]`, left-normed.
pub fn left_normed(words: &[Word]) -> Word {
    let (first, rest) = words.split_first().expect("a commutator needs at least one entry");
    rest.iter().fold(first.clone(), |acc, w| acc.commutator(w))
}

/// Simple commutator of weight `weight` alternating between generators `a` and `b`.
pub fn alternating_commutator(a: u32, b: u32, weight: usize) -> Word {
    let gens: Vec<u32> = (0..weight).map(|i| if i % 2 == 0 { a } else { b }).collect();
    EntrySequence::from_generators(&gens).expect("weight is at least 2").to_word()
}

/// Weight-6 commutator in the conjugates `x_1` and `y_1 x_1 y_1⁻¹`; lies in `𝒢_𝒜^(6)`.
pub fn closure_word_a() -> Word {
    let a0 = Word::generator(1);
    let a1 = a0.conjugate_by(&Word::generator(2));
    left_normed(&[a0.clone(), a1.clone(), a0.clone(), a0, a1.clone(), a1])
}

/// Weight-12 commutator `[y_1, x_1 y_1 x_1⁻¹, …]`; lies in `𝒢_ℬ^(12)`.
pub fn closure_word_b() -> Word {
    let b0 = Word::generator(2);
    let b1 = b0.conjugate_by(&Word::generator(1));
    let mut entries = vec![b0];
    entries.extend(std::iter::repeat_n(b1, 11));
    left_normed(&entries)
}

fn curve(name: &str, role: Role, index: u32) -> Curve {
    Curve::new(name, role, index)
}

fn certificate(genus: u32, n: u64, kind: Kind, curves: Vec<Curve>, asserted_flags: Vec<Flag>) -> Certificate {
    Certificate { schema: SCHEMA, genus, n, kind, curves, asserted_flags }
}

/// Smallest `m` with `q(m + 1) = q`.
pub fn depth_for_q(q: u64) -> u64 {
    if q == 0 {
        0
    } else {
        6 * q - 1
    }
}

/// `γ_i^+ = x_1 · c_i` for `i ≥ 2`, with `c_i` a weight-`(n+1)` commutator on pair `i`;
/// `γ_1^+` also carries a commutator on pair 2 when `g ≥ 2`.
pub fn hyperbolic(genus: u32, n: u64) -> Certificate {
    let weight = n as usize + 1;
    let curves = (1..=genus)
        .map(|i| {
            let own = alternating_commutator(2 * i - 1, 2 * i, weight);
            let w = match i {
                1 if genus >= 2 => own.concat(&alternating_commutator(4, 3, weight)),
                1 => own,
                _ => Word::generator(1).concat(&own),
            };
            let mut c = curve(&format!("gamma{i}"), Role::A, i);
            c.pushoff_plus = Some(w);
            c
        })
        .collect();
    certificate(genus, n, Kind::Hyperbolic, curves, vec![Flag::RegularSpine])
}

/// Genus 1, `n = 2`: `γ_A^+ ∈ 𝒢_𝒜^(6)` with `q = 1` and `γ_B^− ∈ 𝒢_ℬ^(12)` with `q = 2`.
pub fn elliptic() -> Certificate {
    let mut a = curve("gamma1", Role::A, 1);
    a.pushoff_plus = Some(closure_word_a());
    a.m = Some(5);
    let mut b = curve("beta1", Role::B, 1);
    b.pushoff_minus = Some(closure_word_b());
    b.m = Some(11);
    certificate(1, 2, Kind::Elliptic, vec![a, b], vec![Flag::GeometricallyUnrelated, Flag::RegularSpine])
}

/// Trivial pushoffs with depths split so that `q_A + q_B = n + 1`.
pub fn elliptic_trivial(genus: u32, n: u64) -> Certificate {
    let qa = n.div_ceil(2);
    let mut curves = Vec::new();
    for i in 1..=genus {
        let mut a = curve(&format!("gamma{i}"), Role::A, i);
        a.pushoff_plus = Some(Word::empty());
        a.m = Some(depth_for_q(qa));
        let mut b = curve(&format!("beta{i}"), Role::B, i);
        b.pushoff_minus = Some(Word::empty());
        b.m = Some(depth_for_q(n + 1 - qa));
        curves.extend([a, b]);
    }
    certificate(genus, n, Kind::Elliptic, curves, vec![Flag::GeometricallyUnrelated, Flag::RegularSpine])
}

fn parabolic_flags(s: u64) -> Vec<Flag> {
    vec![Flag::GeometricallyUnrelated, Flag::RegularSpine, Flag::Simplicity(s)]
}

/// Genus 1, `n = 2`, `s = 1`: `γ_B^+ ∈ 𝒢_ℬ^(12)` with `q = 2`.
pub fn parabolic() -> Certificate {
    let mut b = curve("beta1", Role::B, 1);
    b.pushoff_plus = Some(closure_word_b());
    b.m = Some(11);
    certificate(1, 2, Kind::Parabolic, vec![b], parabolic_flags(1))
}

/// `n = s`: no ℬ condition applies.
pub fn parabolic_vacuous(s: u64) -> Certificate {
    let mut b = curve("beta1", Role::B, 1);
    b.pushoff_plus = Some(Word::generator(2));
    b.m = Some(1);
    certificate(1, s, Kind::Parabolic, vec![b], parabolic_flags(s))
}

/// Trivial ℬ-pushoffs at the depth giving `q_B = n + 1 − s`.
pub fn parabolic_trivial(genus: u32, n: u64, s: u64) -> Certificate {
    let curves = (1..=genus)
        .map(|i| {
            let mut b = curve(&format!("beta{i}"), Role::B, i);
            b.pushoff_plus = Some(Word::empty());
            b.m = Some(depth_for_q(n + 1 - s));
            b
        })
        .collect();
    certificate(genus, n, Kind::Parabolic, curves, parabolic_flags(s))
}

#[allow(clippy::too_many_arguments)]
fn unknotted_pair(
    i: u32,
    x_power: Word,
    chi_a: (Word, u64),
    mu: (Word, u64),
    zeta: (Word, u64),
    chi_b: (Word, u64),
    sign: Sign,
) -> [Curve; 2] {
    let mut a = curve(&format!("gamma{i}"), Role::A, i);
    *a.pushoff_mut(sign) = Some(x_power.concat(&chi_a.0).concat(&mu.0));
    a.factors.insert("x_power".into(), x_power);
    a.factors.insert("chi".into(), chi_a.0);
    a.factors.insert("mu".into(), mu.0);
    a.m_factors.insert("chi".into(), chi_a.1);
    a.m_factors.insert("mu".into(), mu.1);
    let mut b = curve(&format!("beta{i}"), Role::B, i);
    *b.pushoff_mut(sign.opposite()) = Some(zeta.0.concat(&chi_b.0));
    b.factors.insert("zeta".into(), zeta.0);
    b.factors.insert("chi".into(), chi_b.0);
    b.m_factors.insert("zeta".into(), zeta.1);
    b.m_factors.insert("chi".into(), chi_b.1);
    [a, b]
}

fn unknotted_flags(s: u64) -> Vec<Flag> {
    vec![Flag::RegularSpine, Flag::Simplicity(s)]
}

/// Genus 1, `n = 2`, `s = 1`, with both `χ` factors nontrivial.
pub fn unknotted_essential() -> Certificate {
    let one = Word::empty;
    let curves = unknotted_pair(
        1,
        one(),
        (closure_word_a(), 5),
        (one(), depth_for_q(3)),
        (one(), depth_for_q(2)),
        (closure_word_b(), 11),
        Sign::Plus,
    );
    certificate(1, 2, Kind::Unknotted, curves.into(), unknotted_flags(1))
}

/// `χ = μ = ζ = 1`, `x^l = x_i`: the degenerate pattern at arbitrary `n`.
pub fn unknotted_degenerate(genus: u32, n: u64, s: u64) -> Certificate {
    let one = Word::empty;
    let target = n + 1;
    let qa = target / 2;
    let mut curves = Vec::new();
    for i in 1..=genus {
        curves.extend(unknotted_pair(
            i,
            Word::generator(2 * i - 1),
            (one(), depth_for_q(qa)),
            (one(), depth_for_q(target)),
            (one(), depth_for_q(target - s)),
            (one(), depth_for_q(target - qa)),
            Sign::Plus,
        ));
    }
    certificate(genus, n, Kind::Unknotted, curves, unknotted_flags(s))
}

/// All `2g` curves carry weight-`(n+1)` commutator pushoffs on both sides.
pub fn spine_link(genus: u32, n: u64) -> Certificate {
    let weight = n as usize + 1;
    let mut curves = Vec::new();
    for i in 1..=genus {
        let (x, y) = (2 * i - 1, 2 * i);
        let mut a = curve(&format!("gamma{i}"), Role::A, i);
        a.pushoff_plus = Some(alternating_commutator(x, y, weight));
        a.pushoff_minus = Some(alternating_commutator(y, x, weight));
        let mut b = curve(&format!("beta{i}"), Role::B, i);
        b.pushoff_plus = Some(alternating_commutator(y, x, weight));
        b.pushoff_minus = Some(alternating_commutator(x, y, weight));
        curves.extend([a, b]);
    }
    certificate(genus, n, Kind::Hyperbolic, curves, vec![Flag::AdmissibleSpine, Flag::RegularSpine])
}

/// The shipped example set as `(file stem, certificate)`.
pub fn shipped() -> Vec<(String, Certificate)> {
    let mut out = vec![
        ("hyperbolic-g1-n1".to_string(), hyperbolic(1, 1)),
        ("hyperbolic-g1-n5".to_string(), hyperbolic(1, 5)),
        ("hyperbolic-g2-n3".to_string(), hyperbolic(2, 3)),
        ("hyperbolic-g3-n2".to_string(), hyperbolic(3, 2)),
        ("hyperbolic-g3-n5".to_string(), hyperbolic(3, 5)),
        ("elliptic-g1-n2".to_string(), elliptic()),
        ("elliptic-g2-n4-trivial".to_string(), elliptic_trivial(2, 4)),
        ("parabolic-g1-n2".to_string(), parabolic()),
        ("parabolic-g1-n2-vacuous".to_string(), parabolic_vacuous(2)),
        ("parabolic-g1-n3-trivial".to_string(), parabolic_trivial(1, 3, 1)),
        ("unknotted-g1-n2".to_string(), unknotted_essential()),
        ("unknotted-g1-n4-degenerate".to_string(), unknotted_degenerate(1, 4, 1)),
        ("spine-link-g2-n3".to_string(), spine_link(2, 3)),
    ];
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
