//! Certificate documents and their verification.
//!
//! A certificate describes a genus-`g` regular Seifert surface through the
//! words of its basis-curve pushoffs in `π = F(x_1, y_1, …, x_g, y_g)`, with
//! `x_i = g(2i−1)` dual to the `i`-th 𝒜-curve and `y_i = g(2i)` dual to the
//! `i`-th ℬ-curve. Algebraic conditions are verified; geometric ones are
//! carried as asserted flags and reported separately.

mod checks;
mod pipeline;
mod translate;

pub mod samples;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::magnus::LcsDegree;
use crate::word::Word;

pub use checks::{certify, certify_elliptic, certify_hyperbolic, certify_parabolic, certify_unknotted};
pub use pipeline::{spine_link_pipeline, PipelineReport, SliceConclusion};
pub use translate::{lemma61_translate, Lemma61, Translation};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("source certificate is {0}, translation needs a valid one")]
    SourceNotValid(Verdict),
    #[error("hypothesis violated: {0}")]
    Guard(String),
    #[error("no parameters satisfy the translated conditions: {0}")]
    NoTranslation(String),
}

impl CertifyError {
    /// Process exit code for a failed run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CertifyError::Syntax { .. } | CertifyError::Malformed(_) => 2,
            CertifyError::SourceNotValid(v) => v.exit_code(),
            CertifyError::Guard(_) | CertifyError::NoTranslation(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Unknotted,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Hyperbolic => "hyperbolic",
            Kind::Elliptic => "elliptic",
            Kind::Parabolic => "parabolic",
            Kind::Unknotted => "unknotted",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hyperbolic" => Ok(Kind::Hyperbolic),
            "elliptic" => Ok(Kind::Elliptic),
            "parabolic" => Ok(Kind::Parabolic),
            "unknotted" => Ok(Kind::Unknotted),
            _ => Err(format!("unknown certificate kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    A,
    B,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::A => Role::B,
            Role::B => Role::A,
        }
    }

    /// Generator dual to the curve of this role at `index`.
    pub fn dual_generator(self, index: u32) -> u32 {
        match self {
            Role::A => 2 * index - 1,
            Role::B => 2 * index,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::A => "A",
            Role::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Parse a sign string such as `+-+-`.
    pub fn parse_sequence(s: &str) -> Result<Vec<Sign>, String> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(format!("sign `{c}` is not + or -")),
            })
            .collect()
    }
}

/// Geometric conditions that word data cannot decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    GeometricallyUnrelated,
    RegularSpine,
    AdmissibleSpine,
    Simplicity(u64),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::GeometricallyUnrelated => f.write_str("geometrically-unrelated"),
            Flag::RegularSpine => f.write_str("regular-spine"),
            Flag::AdmissibleSpine => f.write_str("admissible-spine"),
            Flag::Simplicity(s) => write!(f, "simplicity={s}"),
        }
    }
}

impl FromStr for Flag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "geometrically-unrelated" => Ok(Flag::GeometricallyUnrelated),
            "regular-spine" => Ok(Flag::RegularSpine),
            "admissible-spine" => Ok(Flag::AdmissibleSpine),
            _ => match s.strip_prefix("simplicity=") {
                Some(v) => match v.parse::<u64>() {
                    Ok(s) if s >= 1 => Ok(Flag::Simplicity(s)),
                    _ => Err(format!("simplicity must be a positive integer, got `{v}`")),
                },
                None => Err(format!("unknown asserted flag `{s}`")),
            },
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Flag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Factor names allowed on each role.
pub const A_FACTORS: [&str; 3] = ["x_power", "chi", "mu"];
pub const B_FACTORS: [&str; 2] = ["zeta", "chi"];
pub const A_DEPTHS: [&str; 2] = ["mu", "chi"];
pub const B_DEPTHS: [&str; 2] = ["chi", "zeta"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub name: String,
    pub role: Role,
    pub index: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pushoff_plus: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pushoff_minus: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub factors: BTreeMap<String, Word>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub m_factors: BTreeMap<String, u64>,
}

impl Curve {
    pub fn new(name: impl Into<String>, role: Role, index: u32) -> Self {
        Curve {
            name: name.into(),
            role,
            index,
            pushoff_plus: None,
            pushoff_minus: None,
            partner: None,
            m: None,
            factors: BTreeMap::new(),
            m_factors: BTreeMap::new(),
        }
    }

    pub fn pushoff(&self, sign: Sign) -> Option<&Word> {
        match sign {
            Sign::Plus => self.pushoff_plus.as_ref(),
            Sign::Minus => self.pushoff_minus.as_ref(),
        }
    }

    pub fn pushoff_mut(&mut self, sign: Sign) -> &mut Option<Word> {
        match sign {
            Sign::Plus => &mut self.pushoff_plus,
            Sign::Minus => &mut self.pushoff_minus,
        }
    }

    pub fn dual_generator(&self) -> u32 {
        self.role.dual_generator(self.index)
    }

    /// Every word carried by the curve.
    pub fn words(&self) -> impl Iterator<Item = (String, &Word)> {
        let p = self.pushoff_plus.iter().map(|w| ("pushoff_plus".to_string(), w));
        let m = self.pushoff_minus.iter().map(|w| ("pushoff_minus".to_string(), w));
        let f = self.factors.iter().map(|(k, w)| (format!("factors.{k}"), w));
        p.chain(m).chain(f)
    }

    pub fn map_words(&mut self, f: impl Fn(&Word) -> Word) {
        for w in [&mut self.pushoff_plus, &mut self.pushoff_minus].into_iter().flatten() {
            *w = f(w);
        }
        for w in self.factors.values_mut() {
            *w = f(w);
        }
    }
}

fn schema_one() -> u32 {
    SCHEMA
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub genus: u32,
    pub n: u64,
    pub kind: Kind,
    #[serde(default)]
    pub curves: Vec<Curve>,
    #[serde(default)]
    pub asserted_flags: Vec<Flag>,
}

impl Certificate {
    /// Parse and validate a JSON certificate.
    pub fn from_json(text: &str) -> Result<Certificate, CertifyError> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| CertifyError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cert.validate()?;
        Ok(cert)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn curve(&self, role: Role, index: u32) -> Option<&Curve> {
        self.curves.iter().find(|c| c.role == role && c.index == index)
    }

    pub fn curve_named(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Explicit partner, or the opposite-role curve with the same index.
    pub fn partner_of(&self, curve: &Curve) -> Option<&Curve> {
        match &curve.partner {
            Some(name) => self.curve_named(name),
            None => self.curve(curve.role.opposite(), curve.index),
        }
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.asserted_flags.contains(&flag)
    }

    pub fn simplicity(&self) -> Option<u64> {
        self.asserted_flags.iter().find_map(|f| match f {
            Flag::Simplicity(s) => Some(*s),
            _ => None,
        })
    }

    /// Curves of one role in index order.
    pub fn curves_of(&self, role: Role) -> Vec<&Curve> {
        let mut out: Vec<&Curve> = self.curves.iter().filter(|c| c.role == role).collect();
        out.sort_by_key(|c| c.index);
        out
    }

    /// Generators `x_i` (role A) or `y_i` (role B) for every index.
    pub fn half_basis_generators(&self, role: Role) -> BTreeSet<u32> {
        (1..=self.genus).map(|i| role.dual_generator(i)).collect()
    }

    /// Structural checks that do not depend on the algebra.
    pub fn validate(&self) -> Result<(), CertifyError> {
        let bad = |m: String| Err(CertifyError::Malformed(m));
        if self.schema != SCHEMA {
            return bad(format!("unsupported schema {}", self.schema));
        }
        let max_gen = 2 * self.genus;
        let mut names = BTreeSet::new();
        let mut slots = BTreeSet::new();
        for (ci, c) in self.curves.iter().enumerate() {
            if c.name.is_empty() {
                return bad(format!("curves[{ci}] has an empty name"));
            }
            if !names.insert(c.name.as_str()) {
                return bad(format!("curve name `{}` is used twice", c.name));
            }
            if c.index == 0 || c.index > self.genus {
                return bad(format!("curve `{}` has index {} outside 1..={}", c.name, c.index, self.genus));
            }
            if !slots.insert((c.role, c.index)) {
                return bad(format!("two {}-curves have index {}", c.role, c.index));
            }
            for (field, w) in c.words() {
                if w.max_generator() > max_gen {
                    return bad(format!(
                        "curve `{}` {field} uses g{} but genus {} has generators g1..g{max_gen}",
                        c.name,
                        w.max_generator(),
                        self.genus
                    ));
                }
            }
            let (factor_keys, depth_keys): (&[&str], &[&str]) = match c.role {
                Role::A => (&A_FACTORS, &A_DEPTHS),
                Role::B => (&B_FACTORS, &B_DEPTHS),
            };
            if let Some(k) = c.factors.keys().find(|k| !factor_keys.contains(&k.as_str())) {
                return bad(format!("curve `{}` has unknown factor `{k}` for role {}", c.name, c.role));
            }
            if let Some(k) = c.m_factors.keys().find(|k| !depth_keys.contains(&k.as_str())) {
                return bad(format!("curve `{}` has unknown m_factors entry `{k}` for role {}", c.name, c.role));
            }
        }
        for c in &self.curves {
            if let Some(p) = &c.partner {
                match self.curve_named(p) {
                    None => return bad(format!("curve `{}` names unknown partner `{p}`", c.name)),
                    Some(q) if q.role == c.role => {
                        return bad(format!("curve `{}` is paired with `{p}` of the same role", c.name))
                    }
                    Some(_) => {}
                }
            }
        }
        if self.asserted_flags.iter().filter(|f| matches!(f, Flag::Simplicity(_))).count() > 1 {
            return bad("more than one simplicity flag".into());
        }
        checks::validate_kind(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
    NotCheckable,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Valid => 0,
            Verdict::Invalid => 1,
            Verdict::NotCheckable => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::NotCheckable => "not checkable from words",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Error,
}

/// One verified (algebraic) condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub condition: String,
    pub subject: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// One asserted (geometric) condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagStatus {
    pub flag: String,
    pub present: bool,
}

/// A computed depth and `q`-value for one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantity {
    pub subject: String,
    pub name: String,
    pub sign: Option<Sign>,
    /// The `m` with the word claimed in the `(m+1)`-st term.
    pub depth: u64,
    pub degree: LcsDegree,
    /// Fewest generators in a block of the factor partition; `None` when no factors occur.
    pub k: Option<usize>,
    pub q: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: u32,
    pub kind: Kind,
    pub genus: u32,
    pub n: u64,
    pub verdict: Verdict,
    pub verified: Vec<Check>,
    pub asserted: Vec<FlagStatus>,
    pub quantities: Vec<Quantity>,
    pub l_n_s: Option<i64>,
    pub conclusion: Option<String>,
    pub notes: Vec<String>,
}

impl CertificateReport {
    fn new(cert: &Certificate) -> Self {
        CertificateReport {
            schema: SCHEMA,
            kind: cert.kind,
            genus: cert.genus,
            n: cert.n,
            verdict: Verdict::Valid,
            verified: Vec::new(),
            asserted: Vec::new(),
            quantities: Vec::new(),
            l_n_s: None,
            conclusion: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, condition: &str, subject: &str, passed: bool, detail: impl Into<String>) {
        let status = if passed { CheckStatus::Passed } else { CheckStatus::Failed };
        self.verified.push(Check { condition: condition.into(), subject: subject.into(), status, detail: detail.into() });
    }

    fn error(&mut self, condition: &str, subject: &str, detail: impl Into<String>) {
        self.verified.push(Check {
            condition: condition.into(),
            subject: subject.into(),
            status: CheckStatus::Error,
            detail: detail.into(),
        });
    }

    fn require_flag(&mut self, flag: &str, present: bool) {
        self.asserted.push(FlagStatus { flag: flag.into(), present });
    }

    fn finish(&mut self) {
        self.verdict = if self.verified.iter().any(|c| c.status != CheckStatus::Passed) {
            Verdict::Invalid
        } else if self.asserted.iter().any(|f| !f.present) {
            Verdict::NotCheckable
        } else {
            Verdict::Valid
        };
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.verified.iter().filter(|c| c.status != CheckStatus::Passed)
    }

    pub fn quantity(&self, subject: &str, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.subject == subject && q.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-{} certificate, genus {}: {}", self.n, self.kind, self.genus, self.verdict)?;
        if !self.verified.is_empty() {
            writeln!(f, "verified:")?;
            for c in &self.verified {
                let mark = match c.status {
                    CheckStatus::Passed => "ok  ",
                    CheckStatus::Failed => "FAIL",
                    CheckStatus::Error => "ERR ",
                };
                writeln!(f, "  {mark} {} [{}] {}", c.condition, c.subject, c.detail)?;
            }
        }
        if !self.asserted.is_empty() {
            writeln!(f, "asserted:")?;
            for a in &self.asserted {
                writeln!(f, "  {} {}", if a.present { "yes " } else { "MISSING" }, a.flag)?;
            }
        }
        if !self.quantities.is_empty() {
            writeln!(f, "quantities:")?;
            for q in &self.quantities {
                let sign = q.sign.map(|s| s.symbol().to_string()).unwrap_or_default();
                let k = q.k.map_or("inf".to_string(), |k| k.to_string());
                let qv = q.q.map_or("-".to_string(), |v| v.to_string());
                writeln!(f, "  {}{sign} {}: m={} degree {} k={k} q={qv}", q.subject, q.name, q.depth, q.degree)?;
            }
        }
        if let Some(l) = self.l_n_s {
            writeln!(f, "l(n, S) = {l}")?;
        }
        if let Some(c) = &self.conclusion {
            writeln!(f, "conclusion: {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
