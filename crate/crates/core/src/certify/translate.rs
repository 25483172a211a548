use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checks::{certify, closure_q, pairs_below, quotient_q};
use super::{Certificate, CertificateReport, CertifyError, Curve, Flag, Kind, Role, Sign, Verdict};
use crate::word::Word;

/// The certificate implications between kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma61 {
    /// `2n`-elliptic to `n`-hyperbolic.
    EllipticToHyperbolic,
    /// `n`-parabolic with `n > s + 1` to `(n − s − 1)`-hyperbolic.
    ParabolicToHyperbolic,
    /// `N`-unknotted with `N` even and `N > s + 1` to `(N − s − 1)`-unknotted.
    UnknottedShift,
    /// Re-emit the certificate unchanged.
    Identity,
}

impl Lemma61 {
    /// The non-trivial translation whose source is `kind`.
    pub fn for_kind(kind: Kind) -> Option<Lemma61> {
        match kind {
            Kind::Elliptic => Some(Lemma61::EllipticToHyperbolic),
            Kind::Parabolic => Some(Lemma61::ParabolicToHyperbolic),
            Kind::Unknotted => Some(Lemma61::UnknottedShift),
            Kind::Hyperbolic => None,
        }
    }

    fn source_kind(self) -> Option<Kind> {
        match self {
            Lemma61::EllipticToHyperbolic => Some(Kind::Elliptic),
            Lemma61::ParabolicToHyperbolic => Some(Kind::Parabolic),
            Lemma61::UnknottedShift => Some(Kind::Unknotted),
            Lemma61::Identity => None,
        }
    }
}

impl fmt::Display for Lemma61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma61::EllipticToHyperbolic => "elliptic-to-hyperbolic",
            Lemma61::ParabolicToHyperbolic => "parabolic-to-hyperbolic",
            Lemma61::UnknottedShift => "unknotted-shift",
            Lemma61::Identity => "identity",
        })
    }
}

impl FromStr for Lemma61 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "elliptic-to-hyperbolic" => Ok(Lemma61::EllipticToHyperbolic),
            "parabolic-to-hyperbolic" => Ok(Lemma61::ParabolicToHyperbolic),
            "unknotted-shift" => Ok(Lemma61::UnknottedShift),
            "identity" => Ok(Lemma61::Identity),
            _ => Err(format!("unknown translation `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translation {
    pub lemma: Lemma61,
    pub source_report: CertificateReport,
    pub certificate: Certificate,
    pub report: CertificateReport,
}

/// Translate a valid certificate along one implication and re-verify the result.
pub fn lemma61_translate(cert: &Certificate, lemma: Lemma61) -> Result<Translation, CertifyError> {
    if let Some(kind) = lemma.source_kind() {
        if cert.kind != kind {
            return Err(CertifyError::Guard(format!("{lemma} needs a {kind} certificate, got {}", cert.kind)));
        }
    }
    let s = cert.simplicity();
    match (lemma, s) {
        (Lemma61::EllipticToHyperbolic | Lemma61::UnknottedShift, _) if !cert.n.is_multiple_of(2) => {
            return Err(CertifyError::Guard(format!("n = {} is not even", cert.n)));
        }
        (Lemma61::ParabolicToHyperbolic | Lemma61::UnknottedShift, Some(s)) if cert.n <= s + 1 => {
            return Err(CertifyError::Guard(format!("n = {} does not exceed s + 1 = {}", cert.n, s + 1)));
        }
        (Lemma61::UnknottedShift, Some(s)) if cert.n - s - 1 <= 1 => {
            return Err(CertifyError::Guard(format!("target n - s - 1 = {} is not above 1", cert.n - s - 1)));
        }
        _ => {}
    }
    let source_report = certify(cert);
    if source_report.verdict != Verdict::Valid {
        return Err(CertifyError::SourceNotValid(source_report.verdict));
    }
    let certificate = match lemma {
        Lemma61::Identity => cert.clone(),
        Lemma61::EllipticToHyperbolic => elliptic_to_hyperbolic(cert, &source_report)?,
        Lemma61::ParabolicToHyperbolic => parabolic_to_hyperbolic(cert, &source_report)?,
        Lemma61::UnknottedShift => unknotted_shift(cert)?,
    };
    certificate.validate()?;
    let report = certify(&certificate);
    Ok(Translation { lemma, source_report, certificate, report })
}

/// Swap `x_i ↔ y_i` for every `i` in `swapped`.
fn swap_pairs(w: &Word, swapped: &BTreeSet<u32>) -> Word {
    w.map_generators(|g| {
        let i = g.div_ceil(2);
        match (swapped.contains(&i), g % 2) {
            (false, _) => g,
            (true, 1) => g + 1,
            (true, _) => g - 1,
        }
    })
}

/// The gamma quantity of `curve` with `q ≥ target`, if any.
fn strong_sign(report: &CertificateReport, curve: &Curve, target: i64) -> Option<Sign> {
    report
        .quantities
        .iter()
        .find(|q| q.subject == curve.name && q.name == "gamma" && q.q.is_some_and(|v| v >= target))
        .and_then(|q| q.sign)
}

fn hyperbolic_target(cert: &Certificate, n: u64, chosen: Vec<(u32, &Curve, Sign)>) -> Certificate {
    let swapped: BTreeSet<u32> = chosen.iter().filter(|(_, c, _)| c.role == Role::B).map(|(i, _, _)| *i).collect();
    let curves = chosen
        .into_iter()
        .map(|(i, c, sign)| {
            let mut out = Curve::new(c.name.clone(), Role::A, i);
            *out.pushoff_mut(sign) = c.pushoff(sign).map(|w| swap_pairs(w, &swapped));
            out
        })
        .collect();
    let asserted_flags = cert.asserted_flags.iter().copied().filter(|f| *f == Flag::RegularSpine).collect();
    Certificate { schema: cert.schema, genus: cert.genus, n, kind: Kind::Hyperbolic, curves, asserted_flags }
}

fn elliptic_to_hyperbolic(cert: &Certificate, source: &CertificateReport) -> Result<Certificate, CertifyError> {
    let n = cert.n / 2;
    let target = n as i64 + 1;
    let mut chosen = Vec::new();
    for a in cert.curves_of(Role::A) {
        let b = cert.partner_of(a).expect("validated pairing");
        let pick = [a, b].into_iter().find_map(|c| strong_sign(source, c, target).map(|s| (c, s)));
        match pick {
            Some((c, sign)) => chosen.push((a.index, c, sign)),
            None => {
                return Err(CertifyError::NoTranslation(format!(
                    "neither `{}` nor `{}` has q >= {target}",
                    a.name, b.name
                )))
            }
        }
    }
    chosen.sort_by_key(|(i, _, _)| *i);
    Ok(hyperbolic_target(cert, n, chosen))
}

fn parabolic_to_hyperbolic(cert: &Certificate, source: &CertificateReport) -> Result<Certificate, CertifyError> {
    let s = cert.simplicity().expect("a valid parabolic certificate asserts s");
    let n = cert.n - s - 1;
    let target = n as i64 + 1;
    let mut chosen = Vec::new();
    for b in cert.curves_of(Role::B) {
        match strong_sign(source, b, target) {
            Some(sign) => chosen.push((b.index, b, sign)),
            None => return Err(CertifyError::NoTranslation(format!("`{}` has no q >= {target}", b.name))),
        }
    }
    Ok(hyperbolic_target(cert, n, chosen))
}

/// Smallest-first search for `m' ≤ bound` with `q(m') = target`.
fn find_depth(bound: u64, target: i64, q_at: impl Fn(u64) -> Option<i64>) -> Option<u64> {
    (0..=bound).find(|&m| q_at(m) == Some(target))
}

fn unknotted_shift(cert: &Certificate) -> Result<Certificate, CertifyError> {
    let s = cert.simplicity().expect("a valid unknotted certificate asserts s");
    let n = cert.n - s - 1;
    let target = n as i64 + 1;
    let (s_a, s_b) = (cert.half_basis_generators(Role::A), cert.half_basis_generators(Role::B));
    let mut out = cert.clone();
    out.n = n;
    let none = |what: String| CertifyError::NoTranslation(what);
    for a in cert.curves_of(Role::A) {
        let b = cert.partner_of(a).expect("validated pairing");
        let killed = pairs_below(a.index);
        let mu = &a.factors["mu"];
        let m_mu = find_depth(a.m_factors["mu"], target, |m| quotient_q(mu, &killed, m))
            .ok_or_else(|| none(format!("no depth gives q_mu = {target} for `{}`", a.name)))?;
        let (chi_a, chi_b) = (&a.factors["chi"], &b.factors["chi"]);
        let chi = (0..=a.m_factors["chi"])
            .filter_map(|ma| closure_q(chi_a, &s_a, ma).map(|qa| (ma, qa)))
            .find_map(|(ma, qa)| find_depth(b.m_factors["chi"], target - qa, |m| closure_q(chi_b, &s_b, m)).map(|mb| (ma, mb)))
            .ok_or_else(|| none(format!("no depths give q_chiA + q_chiB = {target} for `{}`", a.name)))?;
        let zeta = &b.factors["zeta"];
        let m_zeta = find_depth(b.m_factors["zeta"], target - s as i64, |m| closure_q(zeta, &s_b, m))
            .ok_or_else(|| none(format!("no depth gives q_zeta = {} for `{}`", target - s as i64, b.name)))?;
        let (an, bn) = (a.name.clone(), b.name.clone());
        for c in out.curves.iter_mut() {
            if c.name == an {
                c.m_factors.insert("mu".into(), m_mu);
                c.m_factors.insert("chi".into(), chi.0);
            } else if c.name == bn {
                c.m_factors.insert("chi".into(), chi.1);
                c.m_factors.insert("zeta".into(), m_zeta);
            }
        }
    }
    Ok(out)
}
