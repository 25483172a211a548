use serde::{Deserialize, Serialize};

use super::checks::certify_hyperbolic;
use super::{Certificate, CertifyError, Curve, Flag, Kind, Role, Sign, Verdict, SCHEMA};
use crate::magnus::{lcs_degree, milnor_vanish_upto, milnor_vanish_upto_by_coefficients, LcsDegree, LongitudeSystem};
use crate::word::Word;

/// The slice-depth variant: vanishing through length `2d` read at `n = 2d − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceConclusion {
    pub depth: u64,
    pub n: u64,
    pub vanish: bool,
    pub l_value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: u32,
    pub n: u64,
    pub signs: String,
    /// Every longitude lies in `F^(n+1)`.
    pub vanish_lcs: bool,
    /// Every Magnus coefficient of length `≤ n` is zero.
    pub vanish_coefficients: bool,
    pub agree: bool,
    pub longitude_degrees: Vec<LcsDegree>,
    pub l_n_s: Option<i64>,
    pub conclusion: Option<String>,
    pub slice: Option<SliceConclusion>,
    pub admissible_asserted: bool,
    pub verdict: Verdict,
}

/// The spine link `L^ε̄`: component `j` is the pushoff of the curve dual to generator `j`.
fn spine_longitudes<'a>(cert: &'a Certificate, signs: &[Sign]) -> Result<Vec<(&'a Curve, Sign, Word)>, CertifyError> {
    let components = 2 * cert.genus as usize;
    if signs.len() != components {
        return Err(CertifyError::Malformed(format!(
            "{} signs given for a spine link with {components} components",
            signs.len()
        )));
    }
    let mut out = Vec::with_capacity(components);
    for (j, &sign) in signs.iter().enumerate() {
        let index = j as u32 / 2 + 1;
        let role = if j % 2 == 0 { Role::A } else { Role::B };
        let curve = cert
            .curve(role, index)
            .ok_or_else(|| CertifyError::Malformed(format!("no {role}-curve with index {index}")))?;
        let w = curve.pushoff(sign).ok_or_else(|| {
            CertifyError::Malformed(format!("curve `{}` has no pushoff for sign {}", curve.name, sign.symbol()))
        })?;
        out.push((curve, sign, w.clone()));
    }
    Ok(out)
}

/// `l(n, S)` of the hyperbolic certificate formed by the 𝒜-pushoffs of the spine link.
fn l_value(cert: &Certificate, link: &[(&Curve, Sign, Word)], n: u64) -> Option<i64> {
    let curves = link
        .iter()
        .filter(|(c, _, _)| c.role == Role::A)
        .map(|(c, sign, w)| {
            let mut out = Curve::new(c.name.clone(), Role::A, c.index);
            *out.pushoff_mut(*sign) = Some(w.clone());
            out
        })
        .collect();
    let derived = Certificate {
        schema: SCHEMA,
        genus: cert.genus,
        n,
        kind: Kind::Hyperbolic,
        curves,
        asserted_flags: vec![Flag::RegularSpine],
    };
    certify_hyperbolic(&derived).l_n_s
}

/// Milnor vanishing of the spine link through length `n + 1`, and the resulting triviality bound.
pub fn spine_link_pipeline(
    cert: &Certificate,
    signs: &[Sign],
    n: u64,
    slice_depth: Option<u64>,
) -> Result<PipelineReport, CertifyError> {
    let link = spine_longitudes(cert, signs)?;
    let admissible_asserted = cert.has_flag(Flag::AdmissibleSpine);
    let longitudes: Vec<Word> = link.iter().map(|(_, _, w)| w.clone()).collect();
    let longitude_degrees = longitudes.iter().map(|w| lcs_degree(w, n as usize + 1)).collect();
    let (vanish_lcs, vanish_coefficients) = if longitudes.is_empty() {
        (true, true)
    } else {
        let sys = LongitudeSystem::new(longitudes).map_err(|e| CertifyError::Malformed(e.to_string()))?;
        (milnor_vanish_upto(&sys, n as usize), milnor_vanish_upto_by_coefficients(&sys, n as usize))
    };
    let l_n_s = if vanish_lcs { l_value(cert, &link, n) } else { None };
    let slice = slice_depth.map(|d| {
        let n_slice = (2 * d).saturating_sub(1);
        let vanish = link.iter().all(|(_, _, w)| lcs_degree(w, n_slice as usize + 1).is_at_least(n_slice as usize + 1));
        SliceConclusion { depth: d, n: n_slice, vanish, l_value: if vanish { l_value(cert, &link, n_slice) } else { None } }
    });
    let verdict = if !vanish_lcs {
        Verdict::Invalid
    } else if !admissible_asserted {
        Verdict::NotCheckable
    } else {
        Verdict::Valid
    };
    let conclusion = (verdict == Verdict::Valid).then(|| match l_n_s {
        Some(l) if l >= 1 => format!("Vassiliev invariants of order <= {l} vanish for K"),
        Some(l) => format!("l(n, S) = {l}: the triviality bound is vacuous at this n"),
        None => "genus 0: K is the unknot".into(),
    });
    Ok(PipelineReport {
        schema: SCHEMA,
        n,
        signs: signs.iter().map(|s| s.symbol()).collect(),
        vanish_lcs,
        vanish_coefficients,
        agree: vanish_lcs == vanish_coefficients,
        longitude_degrees,
        l_n_s,
        conclusion,
        slice,
        admissible_asserted,
        verdict,
    })
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl std::fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "spine link {} at n = {}: {}", self.signs, self.n, self.verdict)?;
        let degrees: Vec<String> = self.longitude_degrees.iter().map(|d| d.to_string()).collect();
        writeln!(f, "longitude degrees: {}", degrees.join(", "))?;
        writeln!(f, "Milnor invariants of length <= {} vanish: {}", self.n + 1, self.vanish_lcs)?;
        writeln!(f, "coefficient enumeration agrees: {}", self.agree)?;
        writeln!(f, "admissible spine asserted: {}", self.admissible_asserted)?;
        if let Some(l) = self.l_n_s {
            writeln!(f, "l(n, S) = {l}")?;
        }
        if let Some(c) = &self.conclusion {
            writeln!(f, "conclusion: {c}")?;
        }
        if let Some(s) = &self.slice {
            let l = s.l_value.map_or("-".to_string(), |l| l.to_string());
            writeln!(f, "slice depth {}: vanishing through length {} is {}, l = {l}", s.depth, s.n + 1, s.vanish)?;
        }
        Ok(())
    }
}
