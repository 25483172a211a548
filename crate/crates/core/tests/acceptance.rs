//! Acceptance gate: one line per criterion with its verdict and wall time.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntriv::bounds::{check_inequalities, conflict_max, l_n_s, product_bound_check, q, q_param, t};
use ntriv::certify::samples;
use ntriv::certify::{certify, lemma61_translate, spine_link_pipeline, Certificate, CertifyError, Lemma61, Sign, Verdict};
use ntriv::lcs::{decompose, normal_closure_lcs_degree, schreier_rewrite};
use ntriv::magnus::{expand_over, milnor_invariant, milnor_vanish_upto, nc_mul, LongitudeSystem, MilnorMode};
use ntriv::seifert::{alexander, anti_block_determinant_check, mmr_series, LaurentPolynomial, SeifertMatrix};
use ntriv::trivializer::{build_letter_sets, verify_family};
use ntriv::word::{simple_commutator, successive_entry_check, EntrySequence, Letter, Word};
use ntriv::{lcs_degree, LcsDegree, NCPolynomial};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, alphabet: u32) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| random_letter(rng, alphabet)))
}

fn random_letter(rng: &mut ChaCha8Rng, alphabet: u32) -> Letter {
    Letter::new(rng.gen_range(1..=alphabet), rng.gen_bool(0.5)).unwrap()
}

fn c1_magnus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let alphabet = [1, 2, 3, 4];
    let one = NCPolynomial::one(6);
    for i in 0..500 {
        let (u, v) = (random_word(&mut rng, 12, 4), random_word(&mut rng, 12, 4));
        let (eu, ev) = (expand_over(&u, 6, &alphabet), expand_over(&v, 6, &alphabet));
        let euv = expand_over(&u.concat(&v), 6, &alphabet);
        ensure(euv == nc_mul(&eu, &ev).unwrap(), || format!("pair {i}: expand(uv) != expand(u) expand(v)"))?;
        let inv = expand_over(&u.inverse(), 6, &alphabet);
        ensure(nc_mul(&eu, &inv).unwrap() == one, || format!("pair {i}: expand(w) expand(w^-1) != 1"))?;
    }
    Ok("500 pairs".into())
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn c2_lcs_weight() -> Outcome {
    let mut count = 0;
    for weight in 2..=6u32 {
        for p in permutations(weight) {
            let w = EntrySequence::from_generators(&p).unwrap().to_word();
            let d = lcs_degree(&w, weight as usize);
            ensure(d == LcsDegree::Exact(weight as usize), || format!("{p:?}: degree {d}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} commutators"))
}

fn all_entry_sequences(weight: usize) -> Vec<EntrySequence> {
    let letters: Vec<Letter> = (1..=3).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = vec![vec![]];
    for _ in 0..weight {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out.into_iter().filter_map(|e| EntrySequence::new(e).ok()).filter(successive_entry_check).collect()
}

fn c3_trivializer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut families = 0u64;
    for weight in 2..=4 {
        let pool = all_entry_sequences(weight);
        let expected = (1u64 << weight) - 1;
        let mut check = |factors: &[EntrySequence], insertions: &[(usize, Letter)]| -> Result<(), String> {
            let (w, fam) = build_letter_sets(factors, insertions).map_err(|e| e.to_string())?;
            let r = verify_family(&w, &fam);
            families += 1;
            ensure(r.trivializes && r.subfamilies_checked == expected, || {
                format!("factors {factors:?} insertions {insertions:?}: {r:?}")
            })
        };
        for e in &pool {
            check(std::slice::from_ref(e), &[])?;
            for pos in 0..=simple_commutator(e).len() {
                check(std::slice::from_ref(e), &[(pos, Letter::pos(1 + pos as u32 % 3))])?;
            }
        }
        for _ in 0..3000 {
            let count = rng.gen_range(2..=3);
            let factors: Vec<EntrySequence> = (0..count).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
            let mut len: usize = factors.iter().map(|f| simple_commutator(f).len()).sum();
            let mut insertions = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                insertions.push((rng.gen_range(0..=len), random_letter(&mut rng, 3)));
                len += 2;
            }
            check(&factors, &insertions)?;
        }
    }
    Ok(format!("{families} families"))
}

fn c4_decompose() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let mut w = Word::empty();
        for _ in 0..rng.gen_range(1..=3) {
            let entries: Vec<Letter> = (0..3).map(|_| random_letter(&mut rng, 3)).collect();
            let c = EntrySequence::new(entries).unwrap().to_word();
            let conj = random_word(&mut rng, 4, 3);
            let c = if rng.gen_bool(0.5) { c } else { c.inverse() };
            w = w.concat(&c.conjugate_by(&conj));
        }
        ensure(lcs_degree(&w, 3).is_at_least(3), || format!("element {i} is not in F^(3)"))?;
        let comb = decompose(&w, 2, 5).map_err(|e| format!("element {i}: {e}"))?;
        ensure(comb.reconstruct() == w, || format!("element {i}: reconstruction differs"))?;
        let d = lcs_degree(&comb.residual, 5);
        ensure(d == LcsDegree::Exceeds(5), || format!("element {i}: residual degree {d}"))?;
    }
    Ok("200 elements".into())
}

fn c5_schreier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let all: BTreeSet<u32> = (1..=4).collect();
    for i in 0..200 {
        let s: Vec<u32> = {
            let a = rng.gen_range(1..=4);
            let b = loop {
                let b = rng.gen_range(1..=4);
                if b != a {
                    break b;
                }
            };
            vec![a, b]
        };
        let mut w = Word::empty();
        for _ in 0..rng.gen_range(1..=4) {
            let g = Word::generator(s[rng.gen_range(0..2)]).pow(if rng.gen_bool(0.5) { 1 } else { -1 });
            w = w.concat(&g.conjugate_by(&random_word(&mut rng, 4, 4)));
        }
        let killed: BTreeSet<u32> = s.iter().copied().collect();
        let rewritten = schreier_rewrite(&w, &killed).map_err(|e| format!("word {i}: {e}"))?;
        ensure(rewritten.substitute() == w, || format!("word {i}: substitution round-trip failed"))?;
        let closure = normal_closure_lcs_degree(&w, &all, 5).map_err(|e| e.to_string())?;
        ensure(closure == lcs_degree(&w, 5), || format!("word {i}: {closure} vs {}", lcs_degree(&w, 5)))?;
    }
    Ok("200 words".into())
}

/// Coefficient of `X_{i_1} ⋯ X_{i_k}` in the Magnus expansion, by recursion over letters.
fn hand_coefficient(letters: &[Letter], index: &[u32]) -> i128 {
    match (letters.split_first(), index.is_empty()) {
        (_, true) => 1,
        (None, false) => 0,
        (Some((l, rest)), false) => {
            let mut total = hand_coefficient(rest, index);
            let mut sign = 1;
            for take in 1..=index.len() {
                if index[take - 1] != l.generator() || (l.is_positive() && take > 1) {
                    break;
                }
                if !l.is_positive() {
                    sign = -sign;
                }
                total += sign * hand_coefficient(rest, &index[take..]);
            }
            total
        }
    }
}

fn c6_milnor() -> Outcome {
    let hopf = LongitudeSystem::new(vec![Word::generator(2), Word::generator(1)]).unwrap();
    let mu12 = milnor_invariant(&hopf, &[1, 2], MilnorMode::Raw).map_err(|e| e.to_string())?;
    let oracle = hand_coefficient(hopf.longitude(2).letters(), &[1]);
    ensure(mu12 == 1 && oracle == 1, || format!("Hopf mu(12) = {mu12}, oracle {oracle}"))?;
    let g = Word::generator;
    let borromean = LongitudeSystem::new(vec![g(2).commutator(&g(3)), g(3).commutator(&g(1)), g(1).commutator(&g(2))]).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            let mu = milnor_invariant(&borromean, &[i, j], MilnorMode::Raw).unwrap();
            let oracle = hand_coefficient(borromean.longitude(j as usize).letters(), &[i]);
            ensure(mu == 0 && oracle == 0, || format!("mu({i}{j}) = {mu}, oracle {oracle}"))?;
        }
    }
    let mu123 = milnor_invariant(&borromean, &[1, 2, 3], MilnorMode::Raw).unwrap();
    let oracle = hand_coefficient(borromean.longitude(3).letters(), &[1, 2]);
    ensure(mu123.abs() == 1 && mu123 == oracle, || format!("mu(123) = {mu123}, oracle {oracle}"))?;
    Ok(format!("mu(12) = {mu12}, mu(123) = {mu123}"))
}

fn c7_alexander() -> Outcome {
    let lp = |min: i64, c: &[i128]| LaurentPolynomial::new(min, c.to_vec());
    let cases = [
        (vec![vec![-1, 1], vec![0, -1]], lp(-1, &[1, -1, 1])),
        (vec![vec![1, 1], vec![0, -1]], lp(-1, &[-1, 3, -1])),
    ];
    for (m, want) in cases {
        let d = alexander(&SeifertMatrix::new(1, m.clone()).unwrap()).map_err(|e| e.to_string())?;
        ensure(d == want, || format!("{m:?}: {d}"))?;
    }
    for k in -5..=5 {
        let d = alexander(&SeifertMatrix::new(1, vec![vec![0, 1], vec![0, k]]).unwrap()).map_err(|e| e.to_string())?;
        ensure(d.is_one(), || format!("[[0,1],[0,{k}]]: {d}"))?;
    }
    Ok("trefoil, figure-eight, 11 doubles".into())
}

/// `det(V − tVᵀ)` by permutation expansion, as coefficients of `t⁰, t¹, …`.
fn leibniz_pencil(v: &[Vec<i64>]) -> Vec<i128> {
    let n = v.len();
    let mut total = vec![0i128; n + 1];
    let perms = permutations(n as u32);
    for p in perms {
        let p: Vec<usize> = p.iter().map(|&x| x as usize - 1).collect();
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut poly = vec![1i128];
        for (i, &j) in p.iter().enumerate() {
            let (c0, c1) = (v[i][j] as i128, -(v[j][i] as i128));
            let mut next = vec![0i128; poly.len() + 1];
            for (e, &c) in poly.iter().enumerate() {
                next[e] += c * c0;
                next[e + 1] += c * c1;
            }
            poly = next;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        for (e, c) in poly.into_iter().enumerate() {
            total[e] += sign * c;
        }
    }
    total
}

fn c8_anti_block() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let g = rng.gen_range(1..=3);
        let mut block = || -> Vec<Vec<i64>> { (0..g).map(|_| (0..g).map(|_| rng.gen_range(-3..=3)).collect()).collect() };
        let (a, b, z) = (block(), block(), block());
        let r = anti_block_determinant_check(&a, &b, &z).map_err(|e| e.to_string())?;
        let mut v = vec![vec![0i64; 2 * g]; 2 * g];
        for r in 0..g {
            for c in 0..g {
                v[r][g + c] = a[r][c];
                v[g + r][c] = b[r][c];
                v[g + r][g + c] = z[r][c];
            }
        }
        let oracle = LaurentPolynomial::new(0, leibniz_pencil(&v));
        ensure(r.equal && r.direct == oracle && r.factored == oracle, || format!("matrix {i}: {r:?} vs {oracle}"))?;
    }
    Ok("100 block matrices".into())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * rat(k, 1))
}

/// `p(h) / Δ(e^h)` by long division of independently expanded series.
fn mmr_oracle(delta: &LaurentPolynomial, order: usize) -> Vec<BigRational> {
    let p: Vec<BigRational> = (0..=order as u32)
        .map(|k| if k % 2 == 1 { BigRational::zero() } else { rat(1, 1 << k) / factorial(k + 1) })
        .collect();
    let d: Vec<BigRational> = (0..=order as u32)
        .map(|n| {
            delta
                .terms()
                .map(|(e, c)| rat(c as i64, 1) * rat(e, 1).pow(n as i32))
                .fold(BigRational::zero(), |a, b| a + b)
                / factorial(n)
        })
        .collect();
    let mut out: Vec<BigRational> = Vec::new();
    for n in 0..=order {
        let mut c = p[n].clone();
        for k in 0..n {
            c -= &out[k] * &d[n - k];
        }
        out.push(c / &d[0]);
    }
    out
}

fn c9_mmr() -> Outcome {
    let one = mmr_series(&LaurentPolynomial::one(), 4).map_err(|e| e.to_string())?;
    for k in 0..=4u32 {
        let oracle = if k % 2 == 1 { BigRational::zero() } else { rat(1, 1 << k) / factorial(k + 1) };
        ensure(one.coefficient(k as usize) == oracle, || format!("h^{k}: {} vs {oracle}", one.coefficient(k as usize)))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let half: Vec<i128> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-4..=4)).collect();
        let c0 = 1 - 2 * half.iter().sum::<i128>();
        let mut coeffs: Vec<i128> = half.iter().rev().copied().collect();
        coeffs.push(c0);
        coeffs.extend(half.iter().copied());
        let delta = LaurentPolynomial::new(-(half.len() as i64), coeffs);
        let s = mmr_series(&delta, 4).map_err(|e| e.to_string())?;
        ensure(s.coefficient(1).is_zero(), || format!("polynomial {i} ({delta}): v1 = {}", s.coefficient(1)))?;
        let oracle = mmr_oracle(&delta, 4);
        ensure((0..=4).all(|k| s.coefficient(k) == oracle[k]), || format!("polynomial {i} ({delta}) differs from oracle"))?;
    }
    let trefoil = LaurentPolynomial::new(-1, vec![1, -1, 1]);
    let v2 = mmr_series(&trefoil, 2).map_err(|e| e.to_string())?.coefficient(2);
    ensure(v2 == rat(-23, 24) && mmr_oracle(&trefoil, 2)[2] == v2, || format!("trefoil v2 = {v2}"))?;
    Ok(format!("h^4 term {}, trefoil v2 = {v2}", one.coefficient(4)))
}

fn c10_bounds() -> Outcome {
    for n in 0..=400u64 {
        ensure(q(n) * 6 <= n && (q(n) + 1) * 6 > n, || format!("q({n})"))?;
        ensure(t(n) * 4 <= n && (t(n) + 1) * 4 > n, || format!("t({n})"))?;
        for k in 1..=(n / 6 + 1) {
            let oracle = if n < 6 * k {
                q(n + 1) as i64
            } else {
                let ratio = (n + 1 - 6 * k) as f64;
                // largest e with 6·2^e ≤ n+1−6k, found by doubling
                let mut e = -4i64;
                while 6.0 * 2f64.powi(e as i32 + 1) <= ratio {
                    e += 1;
                }
                k as i64 + e
            };
            ensure(q_param(n, k) == oracle, || format!("q_param({n}, {k}) = {} vs {oracle}", q_param(n, k)))?;
        }
    }
    ensure(l_n_s(&[3, 5, 4]) == Ok(2) && l_n_s(&[1]) == Ok(0) && l_n_s(&[7, 7]) == Ok(6), || "l_n_s examples".into())?;
    for n in 6..=200 {
        let r = check_inequalities(n).map_err(|e| e.to_string())?;
        ensure(r.all_hold, || format!("inequalities fail at n = {n}"))?;
    }
    ensure(
        conflict_max(1) == Ok(0) && conflict_max(2) == Ok(2) && conflict_max(3) == Ok(6),
        || "conflict_max table".into(),
    )?;
    for (k, r, s, m_plus_1, count, num) in [(1, 4, 2, 14, 3, 8), (1, 3, 3, 21, 3, 15), (2, 3, 2, 23, 3, 11)] {
        let rep = product_bound_check(m_plus_1 - 1, k, r, s).map_err(|e| e.to_string())?;
        ensure(
            rep.holds && rep.count == count && rep.log_argument == (num, 6) && rep.m_plus_1 == m_plus_1,
            || format!("scenario k={k} r={r} s={s}: {rep:?}"),
        )?;
    }
    Ok("n <= 400, inequalities on [6, 200], 3 scenarios".into())
}

fn mutate(cert: &Certificate, rng: &mut ChaCha8Rng) -> Option<Certificate> {
    let mut out = cert.clone();
    let targets: Vec<(usize, Sign)> = out
        .curves
        .iter()
        .enumerate()
        .flat_map(|(i, c)| [Sign::Plus, Sign::Minus].into_iter().filter(|&s| c.pushoff(s).is_some_and(|w| !w.is_empty())).map(move |s| (i, s)))
        .collect();
    let (ci, sign) = targets[rng.gen_range(0..targets.len())];
    let slot = out.curves[ci].pushoff_mut(sign);
    let mut letters = slot.as_ref().unwrap().letters().to_vec();
    let pos = rng.gen_range(0..letters.len());
    if rng.gen_bool(0.5) {
        letters.remove(pos);
    } else {
        let old = letters[pos];
        letters[pos] = loop {
            let l = random_letter(rng, 2 * cert.genus);
            if l != old {
                break l;
            }
        };
    }
    *slot = Some(Word::from_letters(letters));
    Some(out)
}

fn c11_certificates() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/certificates");
    let mut shipped = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let cert = Certificate::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let r = certify(&cert);
        ensure(r.verdict == Verdict::Valid, || format!("{}: {}", path.display(), r.verdict))?;
        shipped.push((path, cert));
    }
    for kind in ["hyperbolic", "elliptic", "parabolic", "unknotted"] {
        ensure(shipped.iter().any(|(_, c)| c.kind.to_string() == kind), || format!("no shipped {kind} certificate"))?;
    }
    let pool: Vec<&Certificate> = shipped
        .iter()
        .map(|(_, c)| c)
        .filter(|c| {
            let vacuous = c.simplicity().is_some_and(|s| c.n <= s);
            let trivial = c.curves.iter().any(|cv| cv.pushoff_plus.iter().chain(&cv.pushoff_minus).any(|w| w.is_empty()));
            let both_sides = c.curves.iter().any(|cv| cv.pushoff_plus.is_some() && cv.pushoff_minus.is_some());
            !vacuous && !trivial && !both_sides
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut flipped = 0;
    let total = 100;
    for _ in 0..total {
        let source = pool[rng.gen_range(0..pool.len())];
        let mutant = mutate(source, &mut rng).expect("pool words are nonempty");
        let killed = match Certificate::from_json(&mutant.to_json()) {
            Err(_) => true,
            Ok(m) => certify(&m).verdict != Verdict::Valid,
        };
        flipped += killed as usize;
    }
    ensure(flipped * 100 >= 95 * total, || format!("only {flipped}/{total} mutants flipped"))?;
    Ok(format!("{} shipped valid, {flipped}/{total} mutants flipped over a pool of {}", shipped.len(), pool.len()))
}

fn c12_translations() -> Outcome {
    let mut sources: Vec<(Certificate, Lemma61)> = vec![(samples::elliptic(), Lemma61::EllipticToHyperbolic)];
    for g in 1..=3 {
        for n in [2, 4, 6, 8] {
            sources.push((samples::elliptic_trivial(g, n), Lemma61::EllipticToHyperbolic));
        }
        for s in 1..=2 {
            for n in (s + 2)..=(s + 5) {
                sources.push((samples::parabolic_trivial(g, n, s), Lemma61::ParabolicToHyperbolic));
            }
            for n in [4, 6, 8] {
                if n > s + 2 {
                    sources.push((samples::unknotted_degenerate(g, n, s), Lemma61::UnknottedShift));
                }
            }
        }
        sources.push((samples::hyperbolic(g, 3), Lemma61::Identity));
    }
    for (cert, lemma) in &sources {
        ensure(certify(cert).verdict == Verdict::Valid, || format!("{lemma} source g={} n={} is not valid", cert.genus, cert.n))?;
        let t = lemma61_translate(cert, *lemma).map_err(|e| format!("{lemma} g={} n={}: {e}", cert.genus, cert.n))?;
        ensure(t.report.verdict == Verdict::Valid, || format!("{lemma} g={} n={}: target {}", cert.genus, cert.n, t.report.verdict))?;
    }
    let guards = [
        (samples::parabolic_trivial(1, 2, 1), Lemma61::ParabolicToHyperbolic),
        (samples::parabolic(), Lemma61::ParabolicToHyperbolic),
        (samples::parabolic_vacuous(3), Lemma61::ParabolicToHyperbolic),
        (samples::elliptic_trivial(1, 3), Lemma61::EllipticToHyperbolic),
        (samples::unknotted_degenerate(1, 3, 1), Lemma61::UnknottedShift),
        (samples::unknotted_degenerate(1, 4, 3), Lemma61::UnknottedShift),
        (samples::hyperbolic(1, 2), Lemma61::EllipticToHyperbolic),
    ];
    for (cert, lemma) in &guards {
        let r = lemma61_translate(cert, *lemma);
        ensure(matches!(r, Err(CertifyError::Guard(_))), || format!("{lemma} on {} n={}: expected a guard error", cert.kind, cert.n))?;
    }
    Ok(format!("{} sources re-verified, {} guards rejected", sources.len(), guards.len()))
}

fn c13_pipeline() -> Outcome {
    for g in 1..=3u32 {
        for n in 1..=4u64 {
            let cert = samples::spine_link(g, n);
            let signs = vec![Sign::Plus; 2 * g as usize];
            let r = spine_link_pipeline(&cert, &signs, n, None).map_err(|e| e.to_string())?;
            ensure(r.vanish_lcs && r.agree && r.l_n_s.is_some(), || format!("g={g} n={n}: {r:?}"))?;
            let sys = LongitudeSystem::new(
                cert.curves.iter().map(|c| c.pushoff_plus.clone().unwrap()).collect::<Vec<_>>(),
            )
            .unwrap();
            ensure(milnor_vanish_upto(&sys, n as usize), || format!("g={g} n={n}: milnor_vanish_upto false"))?;
            let mut bad = cert.clone();
            bad.curves[0].pushoff_plus = Some(Word::generator(2));
            let r = spine_link_pipeline(&bad, &signs, 1, None).map_err(|e| e.to_string())?;
            ensure(!r.vanish_lcs && !r.vanish_coefficients, || format!("g={g}: single generator passed length 2"))?;
        }
    }
    Ok("g <= 3, n <= 4".into())
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 13] = [
        ("magnus expansion is multiplicative", c1_magnus, Duration::from_secs(10)),
        ("simple commutators realize their weight", c2_lcs_weight, Duration::from_secs(5)),
        ("trivializer families are exhaustive", c3_trivializer, Duration::from_secs(60)),
        ("decomposition residuals vanish to degree 5", c4_decompose, Duration::from_secs(60)),
        ("schreier rewriting is consistent", c5_schreier, Duration::from_secs(30)),
        ("milnor invariants of hopf and borromean systems", c6_milnor, Duration::from_secs(1)),
        ("alexander polynomials from seifert matrices", c7_alexander, Duration::from_secs(1)),
        ("anti-block determinant identity", c8_anti_block, Duration::from_secs(10)),
        ("melvin-morton-rozansky series", c9_mmr, Duration::from_secs(5)),
        ("bound functions and inequalities", c10_bounds, Duration::from_secs(1)),
        ("shipped certificates and mutation testing", c11_certificates, Duration::from_secs(120)),
        ("certificate translations", c12_translations, Duration::from_secs(30)),
        ("spine link pipeline", c13_pipeline, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded {:.0?} limit", limit)),
            Err(e) => ("FAIL", e),
        };
        failed += (status == "FAIL") as usize;
        println!("criterion {:>2} {status} {name} [{:.2}s / {}s]: {detail}", i + 1, elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
