//! Word, series, matrix and bounds subcommands.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::json;

use ntriv::bounds;
use ntriv::lcs::{decompose, normal_closure_lcs_degree, schreier_rewrite, CommutatorCombination};
use ntriv::magnus::{
    expand, fox_coefficient, lcs_degree, milnor_indeterminacy, milnor_invariant, milnor_vanish_upto,
    milnor_vanish_upto_by_coefficients, Coeff, LcsDegree, LongitudeSystem, MilnorMode, SeriesRepr,
};
use ntriv::parse::ParseError;
use ntriv::seifert::{self, FormClass, IntMatrix, LaurentPolynomial, SeifertMatrix};
use ntriv::trivializer::{build_letter_sets, extremal_entry_word, verify_family, FamilyReport, LetterSetFamily};
use ntriv::word::{kill_generators, TaggedWord, Word};

use crate::input::{self, Input};
use crate::{render, BoundsCmd, Cli, CliError, Command, Format, MagnusCmd, MilnorCmd, Mode, Outcome, Report};
use crate::{SchreierCmd, TrivializeCmd, WordCmd};

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn ok(text: String) -> Result<Outcome, CliError> {
    Ok(Outcome { text, code: 0 })
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn word_text(w: &Word) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.to_string()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WordResult {
    pub word: Word,
    pub length: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KillResult {
    pub killed: Vec<u32>,
    pub word: Word,
    pub length: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DegreeResult {
    pub truncation: usize,
    pub lcs_degree: LcsDegree,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FoxResult {
    pub index: Vec<u32>,
    pub truncation: usize,
    pub coefficient: Coeff,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SchreierResult {
    pub killed: Vec<u32>,
    pub truncation: usize,
    pub lcs_degree: LcsDegree,
    pub rewritten: String,
    pub alphabet: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BuildResult {
    pub word: TaggedWord,
    pub reduced: Word,
    pub family: LetterSetFamily,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyResult {
    pub sets: usize,
    pub word_length: usize,
    pub report: FamilyReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MilnorResult {
    pub index: Vec<u32>,
    pub mode: MilnorMode,
    pub value: Coeff,
    pub indeterminacy: Coeff,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VanishResult {
    pub n: usize,
    pub vanish_lcs: bool,
    pub vanish_coefficients: bool,
    pub longitude_degrees: Vec<LcsDegree>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlexanderResult {
    pub genus: usize,
    pub polynomial: String,
    pub laurent: LaurentPolynomial,
    pub symmetric: bool,
    pub at_one: i128,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub genus: usize,
    pub matrix: IntMatrix,
    pub class: String,
    pub form: FormClass,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MmrResult {
    pub delta: String,
    pub laurent: LaurentPolynomial,
    pub order: usize,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AltsumResult {
    pub n: u32,
    pub subsets: usize,
    pub value: String,
}

fn degree_text(d: &LcsDegree) -> String {
    d.to_string()
}

pub fn run(cli: &Cli, command: &Command) -> Result<Outcome, CliError> {
    let d = cli.degree as usize;
    let f = cli.format;
    match command {
        Command::Word(cmd) => word_cmd(f, cmd),
        Command::Magnus(cmd) => magnus_cmd(f, d, cmd),
        Command::Decompose { m, input } => {
            let w = input::word(&input::read_opt(input)?)?;
            let comb = decompose(&w, *m, d).map_err(invalid)?;
            ok(render(f, "decompose", comb, decompose_text))
        }
        Command::Schreier(SchreierCmd::Degree { killed, input }) => {
            let killed: BTreeSet<u32> = input::index_list("--killed", killed)?.into_iter().collect();
            let w = input::word(&input::read_opt(input)?)?;
            let rewritten = schreier_rewrite(&w, &killed).map_err(invalid)?;
            let degree = normal_closure_lcs_degree(&w, &killed, d).map_err(invalid)?;
            let result = SchreierResult {
                killed: killed.into_iter().collect(),
                truncation: d,
                lcs_degree: degree,
                rewritten: rewritten.to_string(),
                alphabet: rewritten.alphabet().iter().map(|l| l.to_string()).collect(),
            };
            ok(render(f, "schreier degree", result, |r| degree_text(&r.lcs_degree)))
        }
        Command::Trivialize(cmd) => trivialize_cmd(f, cmd),
        Command::Milnor(cmd) => milnor_cmd(f, cli.mode, cmd),
        Command::Alexander { input } => {
            let (genus, m) = input::matrix(&input::read_opt(input)?)?;
            let v = SeifertMatrix::new(genus, m).map_err(invalid)?;
            let delta = seifert::alexander(&v).map_err(invalid)?;
            let result = AlexanderResult {
                genus,
                polynomial: delta.to_string(),
                symmetric: delta.is_symmetric(),
                at_one: delta.eval_at_one(),
                laurent: delta,
            };
            ok(render(f, "alexander", result, |r| r.polynomial.clone()))
        }
        Command::Classify { seifert: sym, basis, input } => {
            let (genus, mut m) = input::matrix(&input::read_opt(input)?)?;
            if *sym {
                m = seifert::symmetrize(&m);
            }
            if let Some(path) = basis {
                let (_, u) = input::matrix(&Input::read(Some(path))?)?;
                m = seifert::apply_basis_change(&m, &u).map_err(invalid)?;
            }
            let form = seifert::classify_form(&m, genus).map_err(invalid)?;
            let result = ClassifyResult { genus, matrix: m, class: form.to_string(), form };
            ok(render(f, "classify", result, |r| r.class.clone()))
        }
        Command::Mmr { order, matrix, input } => {
            let input = input::read_opt(input)?;
            let delta = if *matrix {
                let (genus, m) = input::matrix(&input)?;
                seifert::alexander(&SeifertMatrix::new(genus, m).map_err(invalid)?).map_err(invalid)?
            } else {
                input::laurent(&input)?
            };
            let series = seifert::mmr_series(&delta, *order).map_err(invalid)?;
            let result = MmrResult {
                delta: delta.to_string(),
                laurent: delta,
                order: *order,
                coefficients: series.coefficients.iter().map(|c| c.to_string()).collect(),
            };
            ok(render(f, "mmr", result, |r| format!("({})", r.coefficients.join(", "))))
        }
        Command::Bounds(cmd) => bounds_cmd(f, cmd),
        Command::Altsum { n, input } => {
            if *n >= 31 {
                return Err(invalid(format!("n = {n} gives too many subsets to enumerate")));
            }
            let values = input::subset_values(&input::read_opt(input)?)?;
            let sum = seifert::alternating_sum(&values, *n).map_err(invalid)?;
            let result = AltsumResult { n: *n, subsets: values.len(), value: sum.to_string() };
            ok(render(f, "altsum", result, |r| r.value.clone()))
        }
        Command::Certify { .. } | Command::Translate { .. } | Command::Pipeline(_) => {
            unreachable!("certificate commands are dispatched in main")
        }
    }
}

fn word_cmd(f: Format, cmd: &WordCmd) -> Result<Outcome, CliError> {
    let human = |r: &WordResult| word_text(&r.word);
    match cmd {
        WordCmd::Reduce { input } => {
            let w = input::word(&input::read_opt(input)?)?;
            ok(render(f, "word reduce", WordResult { length: w.len(), word: w }, human))
        }
        WordCmd::Commutator { input } => {
            let ws = input::words(&input::read_opt(input)?)?;
            let Some((first, rest)) = ws.split_first() else {
                return Err(invalid("word commutator needs at least one word"));
            };
            let w = rest.iter().fold(first.clone(), |acc, v| acc.commutator(v));
            ok(render(f, "word commutator", WordResult { length: w.len(), word: w }, human))
        }
        WordCmd::Kill { generators, input } => {
            let killed: BTreeSet<u32> = input::index_list("--generators", generators)?.into_iter().collect();
            let w = kill_generators(&input::word(&input::read_opt(input)?)?, &killed);
            let result = KillResult { killed: killed.into_iter().collect(), length: w.len(), word: w };
            ok(render(f, "word kill", result, |r| word_text(&r.word)))
        }
    }
}

fn magnus_cmd(f: Format, d: usize, cmd: &MagnusCmd) -> Result<Outcome, CliError> {
    match cmd {
        MagnusCmd::Expand { input } => {
            let w = input::word(&input::read_opt(input)?)?;
            let p = expand(&w, d);
            ok(render(f, "magnus expand", SeriesRepr::from(&p), |_| p.to_string()))
        }
        MagnusCmd::Degree { input } => {
            let w = input::word(&input::read_opt(input)?)?;
            let result = DegreeResult { truncation: d, lcs_degree: lcs_degree(&w, d) };
            ok(render(f, "magnus degree", result, |r| degree_text(&r.lcs_degree)))
        }
        MagnusCmd::Fox { index, input } => {
            let index = input::index_list("--index", index)?;
            let w = input::word(&input::read_opt(input)?)?;
            let coefficient = fox_coefficient(&w, &index, d).map_err(invalid)?;
            let result = FoxResult { index, truncation: d, coefficient };
            ok(render(f, "magnus fox", result, |r| r.coefficient.to_string()))
        }
    }
}

fn decompose_text(c: &CommutatorCombination) -> String {
    let mut lines: Vec<String> = c.factors.iter().map(|x| format!("weight {}: {x}", x.weight())).collect();
    lines.push(format!("residual: {}", word_text(&c.residual)));
    lines.push(format!("valid modulo degree {}", c.valid_mod_degree));
    lines.join("\n")
}

fn trivialize_cmd(f: Format, cmd: &TrivializeCmd) -> Result<Outcome, CliError> {
    match cmd {
        TrivializeCmd::Build { extremal, m, input } => {
            let (factors, insertions) = match (extremal, m) {
                (Some(k), Some(m)) => (vec![extremal_entry_word(*k, *m).map_err(invalid)?], Vec::new()),
                _ => input::factors(&input::read_opt(input)?)?,
            };
            let (w, family) = build_letter_sets(&factors, &insertions).map_err(invalid)?;
            let result = BuildResult { reduced: w.to_word(), word: w, family };
            ok(render(f, "trivialize build", result, build_text))
        }
        TrivializeCmd::Verify { input } => {
            let input = input::read_opt(input)?;
            let (w, family) = if input.text.trim_start().starts_with('{') {
                let r: Report<BuildResult> = serde_json::from_str(&input.text)
                    .map_err(|e| input.error(ParseError::new(e.line(), e.column(), e.to_string())))?;
                (r.result.word, r.result.family)
            } else {
                let (factors, insertions) = input::factors(&input)?;
                build_letter_sets(&factors, &insertions).map_err(invalid)?
            };
            let family = LetterSetFamily::new(family.sets().to_vec(), w.len()).map_err(invalid)?;
            let report = verify_family(&w, &family);
            let code = if report.trivializes { 0 } else { 1 };
            let result = VerifyResult { sets: family.len(), word_length: w.len(), report };
            let text = render(f, "trivialize verify", result, |r| match &r.report.failing_subfamily {
                None => format!("trivializes: all {} subfamily deletions give the empty word", r.report.subfamilies_checked),
                Some(sub) => {
                    let left = r.report.leftover.as_ref().map_or(String::new(), word_text);
                    format!("does not trivialize: deleting sets {{{}}} leaves {left}", join(sub, ", "))
                }
            });
            Ok(Outcome { text, code })
        }
    }
}

fn build_text(r: &BuildResult) -> String {
    let letters: Vec<String> = r.word.untagged().iter().map(|l| l.to_string()).collect();
    let mut lines = vec![format!("word: {} (length {})", letters.join(" "), letters.len())];
    lines.push(format!("reduced: {}", word_text(&r.reduced)));
    for (i, s) in r.family.sets().iter().enumerate() {
        let positions: Vec<usize> = s.iter().copied().collect();
        lines.push(format!("set {}: {{{}}}", i + 1, join(&positions, ", ")));
    }
    lines.join("\n")
}

fn milnor_cmd(f: Format, mode: Mode, cmd: &MilnorCmd) -> Result<Outcome, CliError> {
    match cmd {
        MilnorCmd::Invariant { index, input } => {
            let index = input::index_list("--index", index)?;
            let sys = LongitudeSystem::new(input::words(&input::read_opt(input)?)?).map_err(invalid)?;
            let mode = match mode {
                Mode::Raw => MilnorMode::Raw,
                Mode::Gcd => MilnorMode::Gcd,
            };
            let value = milnor_invariant(&sys, &index, mode).map_err(invalid)?;
            let indeterminacy = milnor_indeterminacy(&sys, &index).map_err(invalid)?;
            let result = MilnorResult { index, mode, value, indeterminacy };
            ok(render(f, "milnor invariant", result, |r| r.value.to_string()))
        }
        MilnorCmd::Vanish { n, input } => {
            let sys = LongitudeSystem::new(input::words(&input::read_opt(input)?)?).map_err(invalid)?;
            let result = VanishResult {
                n: *n,
                vanish_lcs: milnor_vanish_upto(&sys, *n),
                vanish_coefficients: milnor_vanish_upto_by_coefficients(&sys, *n),
                longitude_degrees: sys.longitudes().iter().map(|l| lcs_degree(l, n + 1)).collect(),
            };
            let code = if result.vanish_lcs { 0 } else { 1 };
            let text = render(f, "milnor vanish", result, |r| {
                format!("{} (longitude degrees: {})", r.vanish_lcs, join(&r.longitude_degrees, ", "))
            });
            Ok(Outcome { text, code })
        }
    }
}

fn ratio(num: u64, den: u64) -> String {
    Ratio::new(num, den).to_string()
}

fn bounds_cmd(f: Format, cmd: &BoundsCmd) -> Result<Outcome, CliError> {
    let (name, value) = match cmd {
        BoundsCmd::Q { m } => ("q", json!({ "m": m, "value": bounds::q(*m) })),
        BoundsCmd::T { n } => ("t", json!({ "n": n, "value": bounds::t(*n) })),
        BoundsCmd::QParam { n, k } => {
            if *k == 0 {
                return Err(invalid("q-param needs k >= 1"));
            }
            ("q-param", json!({ "n": n, "k": k, "value": bounds::q_param(*n, *k) }))
        }
        BoundsCmd::PartitionK { sets } => {
            let sets = sets
                .iter()
                .map(|s| input::index_list("partition-k", s).map(|v| v.into_iter().collect::<BTreeSet<u32>>()))
                .collect::<Result<Vec<_>, _>>()?;
            let (partition, k) = bounds::partition_k(&sets);
            ("partition-k", json!({ "partition": partition, "value": k }))
        }
        BoundsCmd::LnS { qs } => ("l-n-s", json!({ "qs": qs, "value": bounds::l_n_s(qs).map_err(invalid)? })),
        BoundsCmd::Inequalities { n } => {
            let report = bounds::check_inequalities(*n).map_err(invalid)?;
            let all = report.all_hold;
            let ratios = json!({
                "q_next": ratio(n - 5, 6),
                "per_k": ratio(n - 5, 72),
                "l": ratio(n - 5, 144),
            });
            ("inequalities", json!({ "report": report, "ratios": ratios, "value": all }))
        }
        BoundsCmd::GoodArc { m, k, s, embedded } => (
            "good-arc",
            json!({ "m": m, "k": k, "s": s, "embedded": embedded, "value": bounds::good_arc_bound(*m, *k, *s, *embedded) }),
        ),
        BoundsCmd::Ratio { w_y, s_y } => ("ratio", json!({ "w_y": w_y, "s_y": s_y, "value": bounds::ratio_check(*w_y, *s_y) })),
        BoundsCmd::ConflictMax { s } => ("conflict-max", json!({ "s": s, "value": bounds::conflict_max(*s).map_err(invalid)? })),
        BoundsCmd::ProductLength { k, r, s } => (
            "product-length",
            json!({ "k": k, "r": r, "s": s, "value": bounds::product_length(*k, *r, *s).map_err(invalid)? }),
        ),
        BoundsCmd::ProductBound { m, k, r, s } => {
            let report = bounds::product_bound_check(*m, *k, *r, *s).map_err(invalid)?;
            let arg = ratio(report.log_argument.0, report.log_argument.1);
            let holds = report.holds;
            ("product-bound", json!({ "report": report, "log_argument": arg, "value": holds }))
        }
        BoundsCmd::FloorLog2 { num, den } => {
            if *num == 0 || *den == 0 {
                return Err(invalid("floor-log2 needs a positive ratio"));
            }
            ("floor-log2", json!({ "ratio": ratio(*num, *den), "value": bounds::floor_log2_ratio(*num, *den) }))
        }
        BoundsCmd::ExceedsLog2 { a, num, den } => {
            if *num == 0 || *den == 0 {
                return Err(invalid("exceeds-log2 needs a positive ratio"));
            }
            ("exceeds-log2", json!({ "a": a, "ratio": ratio(*num, *den), "value": bounds::exceeds_log2(*a, *num, *den) }))
        }
    };
    let command = format!("bounds {name}");
    ok(render(f, &command, value, |v| match &v["value"] {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }))
}
