use std::collections::BTreeSet;

use super::{Certificate, CertificateReport, CertifyError, Curve, Flag, Kind, Quantity, Role, Sign};
use crate::bounds::{l_n_s, partition_k, q, q_param};
use crate::lcs::{decompose, schreier_rewrite};
use crate::magnus::{lcs_degree, LcsDegree};
use crate::word::{kill_generators, Word};

/// Generators of the first `i − 1` pairs, `{x_1, y_1, …, x_{i−1}, y_{i−1}}`.
pub(crate) fn pairs_below(i: u32) -> BTreeSet<u32> {
    (1..2 * i - 1).collect()
}

/// `w ∈ F^(m+1)`, with the degree seen at truncation `m`.
pub(crate) fn free_membership(w: &Word, m: u64) -> (LcsDegree, bool) {
    let d = lcs_degree(w, m as usize);
    (d, d.is_at_least(m as usize + 1))
}

/// `(k, q)` from the weight-`(m+1)` factors of a word already known to lie in `F^(m+1)`.
pub(crate) fn q_of(w: &Word, m: u64) -> (Option<usize>, i64) {
    if m == 0 {
        return (None, q(1) as i64);
    }
    let comb = decompose(w, m as usize, m as usize + 1).expect("membership was checked before decomposing");
    let sets = comb.generators_at_weight(m as usize + 1);
    if sets.is_empty() {
        return (None, q(m + 1) as i64);
    }
    let (_, k) = partition_k(&sets);
    (Some(k), q_param(m, k as u64))
}

/// `q` of `w` in `π_killed^(m+1)`, or `None` when the membership fails.
pub(crate) fn quotient_q(w: &Word, killed: &BTreeSet<u32>, m: u64) -> Option<i64> {
    let image = kill_generators(w, killed);
    free_membership(&image, m).1.then(|| q_of(&image, m).1)
}

/// `q` of `w` in the `(m+1)`-st term of the normal closure of `killed`, or `None`.
pub(crate) fn closure_q(w: &Word, killed: &BTreeSet<u32>, m: u64) -> Option<i64> {
    let (relabelled, _) = schreier_rewrite(w, killed).ok()?.relabel();
    free_membership(&relabelled, m).1.then(|| q_of(&relabelled, m).1)
}

pub(super) fn validate_kind(cert: &Certificate) -> Result<(), CertifyError> {
    let bad = |m: String| Err(CertifyError::Malformed(m));
    let need_all = |role: Role| -> Result<(), CertifyError> {
        match (1..=cert.genus).find(|&i| cert.curve(role, i).is_none()) {
            Some(i) => bad(format!("{} certificate needs a {role}-curve with index {i}", cert.kind)),
            None => Ok(()),
        }
    };
    let need_pushoff = |c: &Curve| -> Result<(), CertifyError> {
        if c.pushoff_plus.is_none() && c.pushoff_minus.is_none() {
            return bad(format!("curve `{}` has no pushoff word", c.name));
        }
        Ok(())
    };
    let need_pair = |a: &Curve| -> Result<&Curve, CertifyError> {
        let b = cert
            .partner_of(a)
            .ok_or_else(|| CertifyError::Malformed(format!("curve `{}` has no B partner", a.name)))?;
        if b.role != Role::B {
            return Err(CertifyError::Malformed(format!("partner of `{}` is not a B-curve", a.name)));
        }
        if ![Sign::Plus, Sign::Minus].iter().any(|&e| a.pushoff(e).is_some() && b.pushoff(e.opposite()).is_some()) {
            return Err(CertifyError::Malformed(format!(
                "curves `{}` and `{}` lack opposite pushoffs (gamma_A^e with gamma_B^-e)",
                a.name, b.name
            )));
        }
        Ok(b)
    };
    match cert.kind {
        Kind::Hyperbolic => {
            need_all(Role::A)?;
            cert.curves_of(Role::A).into_iter().try_for_each(need_pushoff)
        }
        Kind::Elliptic => {
            need_all(Role::A)?;
            need_all(Role::B)?;
            for a in cert.curves_of(Role::A) {
                let b = need_pair(a)?;
                for c in [a, b] {
                    if c.m.is_none() {
                        return bad(format!("curve `{}` needs m", c.name));
                    }
                }
            }
            Ok(())
        }
        Kind::Parabolic => {
            need_all(Role::B)?;
            for b in cert.curves_of(Role::B) {
                need_pushoff(b)?;
                if b.m.is_none() {
                    return bad(format!("curve `{}` needs m", b.name));
                }
            }
            Ok(())
        }
        Kind::Unknotted => {
            need_all(Role::A)?;
            for a in cert.curves_of(Role::A) {
                let b = need_pair(a)?;
                for (c, factors, depths) in [(a, &super::A_FACTORS[..], &super::A_DEPTHS[..]), (b, &super::B_FACTORS[..], &super::B_DEPTHS[..])] {
                    if let Some(f) = factors.iter().find(|f| !c.factors.contains_key(**f)) {
                        return bad(format!("curve `{}` needs factor `{f}`", c.name));
                    }
                    if let Some(f) = depths.iter().find(|f| !c.m_factors.contains_key(**f)) {
                        return bad(format!("curve `{}` needs m_factors entry `{f}`", c.name));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Membership of `w` in `π_killed^(m+1)`, recording the check and the quantity.
#[allow(clippy::too_many_arguments)]
fn quotient_quantity(
    rep: &mut CertificateReport,
    subject: &str,
    name: &str,
    sign: Option<Sign>,
    w: &Word,
    killed: &BTreeSet<u32>,
    m: u64,
    group: &str,
) -> Option<i64> {
    let image = kill_generators(w, killed);
    let (degree, ok) = free_membership(&image, m);
    rep.check(&format!("{name} in {group}^(m+1)"), subject, ok, format!("degree {degree}, need >= {}", m + 1));
    if !ok {
        return None;
    }
    let (k, qv) = q_of(&image, m);
    rep.quantities.push(Quantity { subject: subject.into(), name: name.into(), sign, depth: m, degree, k, q: Some(qv) });
    Some(qv)
}

/// Membership of `w` in the `(m+1)`-st term of the normal closure of `killed`.
#[allow(clippy::too_many_arguments)]
fn closure_quantity(
    rep: &mut CertificateReport,
    subject: &str,
    name: &str,
    sign: Option<Sign>,
    w: &Word,
    killed: &BTreeSet<u32>,
    m: u64,
    group: &str,
) -> Option<i64> {
    let condition = format!("{name} in {group}^(m+1)");
    let rewritten = match schreier_rewrite(w, killed) {
        Ok(s) => s,
        Err(e) => {
            rep.error(&condition, subject, e.to_string());
            return None;
        }
    };
    let (relabelled, alphabet) = rewritten.relabel();
    let (degree, ok) = free_membership(&relabelled, m);
    rep.check(
        &condition,
        subject,
        ok,
        format!("degree {degree} over {} Schreier letters, need >= {}", alphabet.len(), m + 1),
    );
    if !ok {
        return None;
    }
    let (k, qv) = q_of(&relabelled, m);
    rep.quantities.push(Quantity { subject: subject.into(), name: name.into(), sign, depth: m, degree, k, q: Some(qv) });
    Some(qv)
}

/// Run `attempt` for each sign that has data and keep the best outcome.
fn best_attempt<F>(cert: &Certificate, rep: &mut CertificateReport, subject: &str, signs: &[Sign], mut attempt: F)
where
    F: FnMut(&mut CertificateReport, Sign),
{
    let mut best: Option<(usize, Sign, CertificateReport)> = None;
    for &sign in signs {
        let mut scratch = CertificateReport::new(cert);
        attempt(&mut scratch, sign);
        let failures = scratch.failures().count();
        if best.as_ref().is_none_or(|(f, _, _)| failures < *f) {
            best = Some((failures, sign, scratch));
        }
        if failures == 0 {
            break;
        }
    }
    if let Some((_, sign, scratch)) = best {
        if signs.len() > 1 {
            rep.notes.push(format!("{subject}: used epsilon = {}", sign.symbol()));
        }
        rep.verified.extend(scratch.verified);
        rep.quantities.extend(scratch.quantities);
        rep.notes.extend(scratch.notes);
    }
}

fn available_signs(a: &Curve, b: &Curve) -> Vec<Sign> {
    [Sign::Plus, Sign::Minus].into_iter().filter(|&e| a.pushoff(e).is_some() && b.pushoff(e.opposite()).is_some()).collect()
}

fn trivial_conclusion(rep: &mut CertificateReport) {
    rep.finish();
    if rep.verdict == super::Verdict::Valid {
        rep.conclusion =
            Some(format!("K is {n}-trivial: all Vassiliev invariants of order <= {n} vanish", n = rep.n));
    }
}

fn require_n_above_one(rep: &mut CertificateReport) {
    let n = rep.n;
    rep.check("n > 1", "certificate", n > 1, format!("n = {n}"));
}

/// Either pushoff of each 𝒜-curve, with the earlier pairs killed, lies in the `(n+1)`-st term.
pub fn certify_hyperbolic(cert: &Certificate) -> CertificateReport {
    let mut rep = CertificateReport::new(cert);
    rep.require_flag("regular-spine", cert.has_flag(Flag::RegularSpine));
    let n = cert.n;
    let mut qs = Vec::new();
    for c in cert.curves_of(Role::A) {
        let killed = pairs_below(c.index);
        let mut chosen = None;
        let mut seen = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            if let Some(p) = c.pushoff(sign) {
                let w = kill_generators(p, &killed);
                let (d, ok) = free_membership(&w, n);
                seen.push(format!("gamma^{} has degree {d}", sign.symbol()));
                if ok && chosen.is_none() {
                    chosen = Some((sign, w, d));
                }
            }
        }
        let condition = format!("gamma in pi_A{}^(n+1)", c.index - 1);
        match chosen {
            Some((sign, w, degree)) => {
                rep.check(&condition, &c.name, true, format!("gamma^{} has degree {degree}, need >= {}", sign.symbol(), n + 1));
                let (k, qv) = q_of(&w, n);
                rep.quantities.push(Quantity {
                    subject: c.name.clone(),
                    name: "gamma".into(),
                    sign: Some(sign),
                    depth: n,
                    degree,
                    k,
                    q: Some(qv),
                });
                qs.push(qv);
            }
            None => rep.check(&condition, &c.name, false, format!("{}, need >= {}", seen.join("; "), n + 1)),
        }
    }
    rep.finish();
    if rep.failures().next().is_none() {
        rep.l_n_s = l_n_s(&qs).ok();
    }
    if rep.verdict == super::Verdict::Valid {
        rep.conclusion = Some(match rep.l_n_s {
            Some(l) if l >= 1 => format!("K is at least {l}-trivial: all Vassiliev invariants of order <= {l} vanish"),
            Some(l) => format!("l(n, S) = {l}: the triviality bound is vacuous at this n"),
            None => "genus 0: K bounds a disk and is the unknot".into(),
        });
    }
    rep
}

/// Paired 𝒜/ℬ memberships in the normal closures with `q_A + q_B = n + 1`.
pub fn certify_elliptic(cert: &Certificate) -> CertificateReport {
    let mut rep = CertificateReport::new(cert);
    rep.require_flag("regular-spine", cert.has_flag(Flag::RegularSpine));
    rep.require_flag("geometrically-unrelated", cert.has_flag(Flag::GeometricallyUnrelated));
    require_n_above_one(&mut rep);
    let n = cert.n as i64;
    let (s_a, s_b) = (cert.half_basis_generators(Role::A), cert.half_basis_generators(Role::B));
    for a in cert.curves_of(Role::A) {
        let b = cert.partner_of(a).expect("validated pairing");
        let subject = format!("{}/{}", a.name, b.name);
        best_attempt(cert, &mut rep, &subject, &available_signs(a, b), |r, e| {
            let wa = a.pushoff(e).expect("sign was filtered");
            let wb = b.pushoff(e.opposite()).expect("sign was filtered");
            let qa = closure_quantity(r, &a.name, "gamma", Some(e), wa, &s_a, a.m.expect("validated"), "G_A");
            let qb = closure_quantity(r, &b.name, "gamma", Some(e.opposite()), wb, &s_b, b.m.expect("validated"), "G_B");
            if let (Some(qa), Some(qb)) = (qa, qb) {
                r.check("q_A + q_B = n+1", &subject, qa + qb == n + 1, format!("{qa} + {qb} vs {}", n + 1));
            }
        });
    }
    trivial_conclusion(&mut rep);
    rep
}

/// ℬ-memberships with `q_B + s = n + 1`, required only when `n > s`.
pub fn certify_parabolic(cert: &Certificate) -> CertificateReport {
    let mut rep = CertificateReport::new(cert);
    rep.require_flag("regular-spine", cert.has_flag(Flag::RegularSpine));
    rep.require_flag("geometrically-unrelated", cert.has_flag(Flag::GeometricallyUnrelated));
    let s = cert.simplicity();
    rep.require_flag("simplicity=s", s.is_some());
    require_n_above_one(&mut rep);
    let n = cert.n;
    match s {
        None => rep.notes.push("simplicity not asserted: the B-curve conditions cannot be located".into()),
        Some(s) if n <= s => rep.notes.push(format!("n = {n} <= s = {s}: no B-curve condition applies")),
        Some(s) => {
            let s_b = cert.half_basis_generators(Role::B);
            for b in cert.curves_of(Role::B) {
                let signs: Vec<Sign> = [Sign::Plus, Sign::Minus].into_iter().filter(|&e| b.pushoff(e).is_some()).collect();
                best_attempt(cert, &mut rep, &b.name, &signs, |r, e| {
                    let w = b.pushoff(e).expect("sign was filtered");
                    if let Some(qb) = closure_quantity(r, &b.name, "gamma", Some(e), w, &s_b, b.m.expect("validated"), "G_B") {
                        let target = (n + 1) as i64;
                        r.check("q_B + s = n+1", &b.name, qb + s as i64 == target, format!("{qb} + {s} vs {target}"));
                    }
                });
            }
        }
    }
    trivial_conclusion(&mut rep);
    rep
}

fn is_power_of(w: &Word, generator: u32) -> bool {
    let letters = w.letters();
    letters.iter().all(|l| l.generator() == generator) && letters.windows(2).all(|p| p[0] == p[1])
}

/// Factorizations `γ_A^ε = x^l χ_A μ_A`, `γ_B^{−ε} = ζ_B χ_B` and conditions (a)–(d).
pub fn certify_unknotted(cert: &Certificate) -> CertificateReport {
    let mut rep = CertificateReport::new(cert);
    rep.require_flag("regular-spine", cert.has_flag(Flag::RegularSpine));
    let s = cert.simplicity();
    rep.require_flag("simplicity=s", s.is_some());
    require_n_above_one(&mut rep);
    let n = cert.n as i64;
    let (s_a, s_b) = (cert.half_basis_generators(Role::A), cert.half_basis_generators(Role::B));
    for a in cert.curves_of(Role::A) {
        let b = cert.partner_of(a).expect("validated pairing");
        let subject = format!("{}/{}", a.name, b.name);
        let fa = |k: &str| &a.factors[k];
        let fb = |k: &str| &b.factors[k];
        let (xl, chi_a, mu, zeta, chi_b) = (fa("x_power"), fa("chi"), fa("mu"), fb("zeta"), fb("chi"));
        best_attempt(cert, &mut rep, &subject, &available_signs(a, b), |r, e| {
            let ga = a.pushoff(e).expect("sign was filtered");
            let gb = b.pushoff(e.opposite()).expect("sign was filtered");
            let prod_a = xl.concat(chi_a).concat(mu);
            r.check("gamma_A = x^l chi_A mu_A", &a.name, &prod_a == ga, format!("product {prod_a} vs gamma^{} {ga}", e.symbol()));
            let prod_b = zeta.concat(chi_b);
            r.check(
                "gamma_B = zeta_B chi_B",
                &b.name,
                &prod_b == gb,
                format!("product {prod_b} vs gamma^{} {gb}", e.opposite().symbol()),
            );
            let x = a.dual_generator();
            r.check("x_power is a power of x_A", &a.name, is_power_of(xl, x), format!("{xl} vs powers of g{x}"));

            let m_mu = a.m_factors["mu"];
            let killed = pairs_below(a.index);
            let group = format!("pi_A{}", a.index - 1);
            if let Some(q_mu) = quotient_quantity(r, &a.name, "mu", Some(e), mu, &killed, m_mu, &group) {
                r.check("(a) q_mu = n+1", &a.name, q_mu == n + 1, format!("{q_mu} vs {}", n + 1));
            }

            let qa = closure_quantity(r, &a.name, "chi", Some(e), chi_a, &s_a, a.m_factors["chi"], "G_A");
            let qb = closure_quantity(r, &b.name, "chi", Some(e.opposite()), chi_b, &s_b, b.m_factors["chi"], "G_B");
            if let (Some(qa), Some(qb)) = (qa, qb) {
                r.check("(b) q_chiA + q_chiB = n+1", &subject, qa + qb == n + 1, format!("{qa} + {qb} vs {}", n + 1));
            }

            let (ca, cb, z, xp, m1) = (chi_a.is_empty(), chi_b.is_empty(), zeta.is_empty(), xl.is_empty(), mu.is_empty());
            let either = (ca && cb) || (!ca && !cb && ((z && xp) || (!xp && !z)));
            let essential = !ca && !cb;
            let iff = essential == (z && m1 && xp);
            r.check(
                "(c) exclusion pattern",
                &subject,
                either && iff,
                format!(
                    "chi_A {}, chi_B {}, zeta {}, x^l {}, mu {}",
                    trivial_word(ca),
                    trivial_word(cb),
                    trivial_word(z),
                    trivial_word(xp),
                    trivial_word(m1)
                ),
            );

            let q_zeta = closure_quantity(r, &b.name, "zeta", Some(e.opposite()), zeta, &s_b, b.m_factors["zeta"], "G_B");
            if let (Some(qz), Some(s)) = (q_zeta, s) {
                r.check("(d) q_zeta + s = n+1", &b.name, qz + s as i64 == n + 1, format!("{qz} + {s} vs {}", n + 1));
            }
        });
    }
    rep.notes.push("(a) is checked as written, q_mu = n+1, while the hyperbolic bound l(n, S) uses q - 1".into());
    trivial_conclusion(&mut rep);
    rep
}

fn trivial_word(is_empty: bool) -> &'static str {
    if is_empty {
        "= 1"
    } else {
        "!= 1"
    }
}

/// Verify a certificate according to its declared kind.
pub fn certify(cert: &Certificate) -> CertificateReport {
    match cert.kind {
        Kind::Hyperbolic => certify_hyperbolic(cert),
        Kind::Elliptic => certify_elliptic(cert),
        Kind::Parabolic => certify_parabolic(cert),
        Kind::Unknotted => certify_unknotted(cert),
    }
}
