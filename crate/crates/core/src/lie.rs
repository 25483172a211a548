//! Homogeneous Lie elements in the free associative algebra: Lyndon words,
//! their standard bracketings, and rewriting into left-normed brackets.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::magnus::Coeff;

/// Homogeneous polynomial, monomial → nonzero coefficient.
pub type LiePoly = BTreeMap<Vec<u32>, Coeff>;

fn add_term(p: &mut LiePoly, m: Vec<u32>, c: Coeff) {
    if c == 0 {
        return;
    }
    match p.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().checked_add(c).expect("Lie coefficient overflow");
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn add_scaled(acc: &mut LiePoly, p: &LiePoly, scale: Coeff) {
    for (m, &c) in p {
        add_term(acc, m.clone(), c.checked_mul(scale).expect("Lie coefficient overflow"));
    }
}

/// `ab − ba`.
pub fn bracket(a: &LiePoly, b: &LiePoly) -> LiePoly {
    let mut out = LiePoly::new();
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let c = ca.checked_mul(cb).expect("Lie coefficient overflow");
            let mut ab = ma.clone();
            ab.extend_from_slice(mb);
            add_term(&mut out, ab, c);
            let mut ba = mb.clone();
            ba.extend_from_slice(ma);
            add_term(&mut out, ba, -c);
        }
    }
    out
}

fn letter(a: u32) -> LiePoly {
    LiePoly::from([(vec![a], 1)])
}

/// Expansion of the left-normed bracket `[[…[a₁, a₂], …], a_k]`.
pub fn left_normed_expansion(seq: &[u32]) -> LiePoly {
    let mut it = seq.iter();
    let Some(&first) = it.next() else {
        return LiePoly::new();
    };
    let mut p = letter(first);
    for &a in it {
        p = bracket(&p, &letter(a));
    }
    p
}

pub fn is_lyndon(w: &[u32]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of exactly `len` letters over `alphabet`, in lexicographic order.
pub fn lyndon_words(alphabet: &[u32], len: usize) -> Vec<Vec<u32>> {
    let mut alpha = alphabet.to_vec();
    alpha.sort_unstable();
    alpha.dedup();
    let k = alpha.len();
    let mut out = Vec::new();
    if k == 0 || len == 0 {
        return out;
    }
    // Duval's generation over indices 0..k.
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.iter().map(|&i| alpha[i]).collect());
        }
        let m = w.len();
        while w.len() < len {
            let next = w[w.len() - m];
            w.push(next);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u32]) -> Option<(&[u32], &[u32])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieTree {
    Leaf(u32),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    /// Standard bracketing of a Lyndon word.
    pub fn lyndon(w: &[u32]) -> LieTree {
        assert!(is_lyndon(w), "standard bracketing needs a Lyndon word");
        match standard_factorization(w) {
            None => LieTree::Leaf(w[0]),
            Some((u, v)) => LieTree::Bracket(Box::new(LieTree::lyndon(u)), Box::new(LieTree::lyndon(v))),
        }
    }

    pub fn expand(&self) -> LiePoly {
        match self {
            LieTree::Leaf(a) => letter(*a),
            LieTree::Bracket(a, b) => bracket(&a.expand(), &b.expand()),
        }
    }

    /// Rewrite as an integer combination of left-normed brackets.
    pub fn left_normed(&self) -> LiePoly {
        match self {
            LieTree::Leaf(a) => letter(*a),
            LieTree::Bracket(a, b) => {
                let (la, lb) = (a.left_normed(), b.left_normed());
                let mut out = LiePoly::new();
                for (x, &cx) in &la {
                    for (y, &cy) in &lb {
                        add_scaled(&mut out, &bracket_left_normed(x, y), cx.checked_mul(cy).expect("Lie coefficient overflow"));
                    }
                }
                canonical(out)
            }
        }
    }
}

/// `[X, Y]` for left-normed `X`, `Y`, via `[X, [Y′, c]] = [[X, Y′], c] − [[X, c], Y′]`.
fn bracket_left_normed(x: &[u32], y: &[u32]) -> LiePoly {
    match y.split_last() {
        None => LiePoly::new(),
        Some((&c, [])) => {
            let mut s = x.to_vec();
            s.push(c);
            LiePoly::from([(s, 1)])
        }
        Some((&c, rest)) => {
            let mut out = LiePoly::new();
            for (mut s, k) in bracket_left_normed(x, rest) {
                s.push(c);
                add_term(&mut out, s, k);
            }
            let mut xc = x.to_vec();
            xc.push(c);
            add_scaled(&mut out, &bracket_left_normed(&xc, rest), -1);
            out
        }
    }
}

/// Drop `[a, a, …]` and order the first two entries.
fn canonical(p: LiePoly) -> LiePoly {
    let mut out = LiePoly::new();
    for (mut s, c) in p {
        if s.len() >= 2 {
            match s[0].cmp(&s[1]) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => {
                    s.swap(0, 1);
                    add_term(&mut out, s, -c);
                    continue;
                }
                std::cmp::Ordering::Less => {}
            }
        }
        add_term(&mut out, s, c);
    }
    out
}

/// The polynomial is not in the free Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotLie {
    pub monomial: Vec<u32>,
}

/// Coordinates in the Lyndon basis, by repeatedly cancelling the smallest monomial.
pub fn lyndon_coordinates(p: &LiePoly) -> Result<Vec<(Vec<u32>, Coeff)>, NotLie> {
    let mut rest = p.clone();
    let mut coords = Vec::new();
    while let Some((m, &c)) = rest.iter().next() {
        let m = m.clone();
        if !is_lyndon(&m) {
            return Err(NotLie { monomial: m });
        }
        add_scaled(&mut rest, &LieTree::lyndon(&m).expand(), -c);
        coords.push((m, c));
    }
    Ok(coords)
}

/// Integer combination of left-normed brackets whose expansion is `p`.
pub fn left_normed_combination(p: &LiePoly) -> Result<LiePoly, NotLie> {
    let mut out = LiePoly::new();
    for (m, c) in lyndon_coordinates(p)? {
        add_scaled(&mut out, &LieTree::lyndon(&m).left_normed(), c);
    }
    Ok(canonical(out))
}

/// Expansion of a left-normed combination.
pub fn expand_combination(comb: &LiePoly) -> LiePoly {
    let mut out = LiePoly::new();
    for (s, &c) in comb {
        add_scaled(&mut out, &left_normed_expansion(s), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: usize) -> i64 {
        let (mut n, mut k, mut sign) = (n, 2, 1);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                sign = -sign;
            }
            k += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    }

    fn necklace_count(r: i64, n: usize) -> i64 {
        let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * r.pow((n / d) as u32)).sum();
        s / n as i64
    }

    #[test]
    fn lyndon_counts_match_necklace_formula() {
        for r in 1..=3u32 {
            let alpha: Vec<u32> = (1..=r).collect();
            for n in 1..=7 {
                let ws = lyndon_words(&alpha, n);
                assert_eq!(ws.len() as i64, necklace_count(r as i64, n), "r={r} n={n}");
                assert!(ws.iter().all(|w| is_lyndon(w)));
                assert!(ws.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn lyndon_membership() {
        assert!(is_lyndon(&[1, 2]));
        assert!(is_lyndon(&[1, 1, 2]));
        assert!(is_lyndon(&[1, 2, 1, 2, 2]));
        assert!(!is_lyndon(&[2, 1]));
        assert!(!is_lyndon(&[1, 2, 1, 2]));
        assert!(!is_lyndon(&[1, 1]));
    }

    #[test]
    fn standard_bracketing_is_triangular() {
        for w in lyndon_words(&[1, 2, 3], 5) {
            let p = LieTree::lyndon(&w).expand();
            let (first, &c) = p.iter().next().unwrap();
            assert_eq!((first, c), (&w, 1));
        }
    }

    #[test]
    fn left_normed_rewrite_preserves_expansion() {
        for w in lyndon_words(&[1, 2, 3], 5) {
            let tree = LieTree::lyndon(&w);
            assert_eq!(expand_combination(&tree.left_normed()), tree.expand(), "{w:?}");
        }
    }

    #[test]
    fn commutator_coordinates() {
        let p = left_normed_expansion(&[2, 1]);
        assert_eq!(lyndon_coordinates(&p).unwrap(), vec![(vec![1, 2], -1)]);
        assert_eq!(left_normed_combination(&p).unwrap(), LiePoly::from([(vec![1, 2], -1)]));
        let not_lie = LiePoly::from([(vec![1, 2], 1)]);
        assert_eq!(lyndon_coordinates(&not_lie), Err(NotLie { monomial: vec![2, 1] }));
        let not_lie = LiePoly::from([(vec![2, 1], 1)]);
        assert_eq!(lyndon_coordinates(&not_lie), Err(NotLie { monomial: vec![2, 1] }));
    }
}
