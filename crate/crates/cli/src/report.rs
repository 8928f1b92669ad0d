//! Command results, rendered either as text or as JSON. The JSON shape is
//! fixed by `schema/report.schema.json`.

use std::fmt::Write;

use serde::Serialize;

/// Exit status for a property that holds.
pub const EXIT_HOLDS: i32 = 0;
/// Exit status for a property that fails; a witness is reported.
pub const EXIT_FAILS: i32 = 1;
/// Exit status for parse, usage and input errors.
pub const EXIT_ERROR: i32 = 2;
/// Exit status when a bound was reached before an answer.
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => EXIT_HOLDS,
            Outcome::Fails => EXIT_FAILS,
            Outcome::Unknown => EXIT_UNKNOWN,
        }
    }
}

/// The property a decision command tests, with its wording.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Zero,
    Equal,
    Commutative,
    Consistent,
    Solvable,
}

impl Property {
    fn phrase(self, outcome: Outcome) -> &'static str {
        match (self, outcome) {
            (_, Outcome::Unknown) => "unknown within the given limits",
            (Property::Zero, Outcome::Holds) => "zero",
            (Property::Zero, Outcome::Fails) => "not zero",
            (Property::Equal, Outcome::Holds) => "equal",
            (Property::Equal, Outcome::Fails) => "not equal",
            (Property::Commutative, Outcome::Holds) => "commutative",
            (Property::Commutative, Outcome::Fails) => "not commutative",
            (Property::Consistent, Outcome::Holds) => "consistent",
            (Property::Consistent, Outcome::Fails) => "inconsistent",
            (Property::Solvable, Outcome::Holds) => "solvable",
            (Property::Solvable, Outcome::Fails) => "unsolvable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessReport {
    /// A word with a nonzero coefficient.
    Word { word: Vec<String>, coefficient: String },
    /// A word on which two series differ.
    Difference { word: Vec<String>, left: String, right: String },
    /// Parikh-equivalent words with different coefficients.
    Pair { u: Vec<String>, fu: String, v: Vec<String>, fv: String },
    /// Two lattice paths to `endpoint`, listed step by step, on which `unknown` differs.
    Paths { unknown: String, endpoint: Vec<usize>, u: Vec<String>, fu: String, v: Vec<String>, fv: String },
}

fn word_text(w: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.join(" ")
    }
}

impl WitnessReport {
    fn render(&self) -> String {
        match self {
            WitnessReport::Word { word, coefficient } => format!("{} ↦ {coefficient}", word_text(word)),
            WitnessReport::Difference { word, left, right } => format!("{} ↦ {left} (left), {right} (right)", word_text(word)),
            WitnessReport::Pair { u, fu, v, fv } => format!("{} ↦ {fu}, {} ↦ {fv}", word_text(u), word_text(v)),
            WitnessReport::Paths { unknown, endpoint, u, fu, v, fv } => {
                let point: Vec<String> = endpoint.iter().map(|n| n.to_string()).collect();
                format!("{unknown}({}) along {} ↦ {fu}, along {} ↦ {fv}", point.join(", "), word_text(u), word_text(v))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub name: String,
    pub property: Property,
    pub outcome: Outcome,
    pub witness: Option<WitnessReport>,
    pub stabilization_index: Option<usize>,
    pub failed_check: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Coefficient {
    pub word: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffReport {
    pub name: String,
    pub word: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncateReport {
    pub name: String,
    pub len: usize,
    /// Nonzero coefficients in shortlex order.
    pub coefficients: Vec<Coefficient>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `f(n)` of a polyrec system.
    Value,
    /// Coefficient of `xⁿ/n!` of a CDA solution.
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub name: String,
    pub unknown: String,
    pub point: Vec<usize>,
    pub value: String,
    pub convention: Convention,
    /// False when `--allow-inconsistent-eval` skipped the solvability check.
    pub consistency_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assignment {
    pub unknown: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Emitted {
    /// A definition in the input language.
    Text { text: String },
    /// The section of a one-dimensional system.
    Constant { values: Vec<Assignment> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmitReport {
    pub name: String,
    #[serde(flatten)]
    pub emitted: Emitted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyMode {
    Exists,
    Forall,
    Member,
    Ideal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarietyReport {
    pub name: String,
    pub mode: VarietyMode,
    pub max_depth: usize,
    pub answer: Answer,
    /// Reduced basis of the ideal of commutativity polynomials (`ideal` mode).
    pub ideal: Option<Vec<String>>,
    /// Least word length whose differences generate that ideal.
    pub depth: Option<usize>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    CheckZero(Decision),
    CheckEqual(Decision),
    CheckCommutative(Decision),
    PolyrecConsistent(Decision),
    CdaSolvable(Decision),
    Coeff(CoeffReport),
    Truncate(TruncateReport),
    Eval(EvalReport),
    Section(EmitReport),
    Diagonal(EmitReport),
    Variety(VarietyReport),
    Convert(EmitReport),
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::CheckZero(d)
            | Report::CheckEqual(d)
            | Report::CheckCommutative(d)
            | Report::PolyrecConsistent(d)
            | Report::CdaSolvable(d) => d.outcome.exit_code(),
            Report::Variety(v) => match v.answer {
                Answer::Yes => EXIT_HOLDS,
                Answer::No => EXIT_FAILS,
                Answer::Unknown => EXIT_UNKNOWN,
            },
            _ => EXIT_HOLDS,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::CheckZero(d)
            | Report::CheckEqual(d)
            | Report::CheckCommutative(d)
            | Report::PolyrecConsistent(d)
            | Report::CdaSolvable(d) => {
                writeln!(out, "{}: {}", d.name, d.property.phrase(d.outcome)).unwrap();
                if let Some(w) = &d.witness {
                    writeln!(out, "witness: {}", w.render()).unwrap();
                }
                if let Some(c) = &d.failed_check {
                    writeln!(out, "failed check: {c}").unwrap();
                }
                if let Some(n) = d.stabilization_index {
                    writeln!(out, "stabilization index: {n}").unwrap();
                }
                writeln!(out, "time: {:.3} ms", d.elapsed_ms).unwrap();
            }
            Report::Coeff(c) => {
                writeln!(out, "{} ↦ {}", word_text(&c.word), c.coefficient).unwrap();
            }
            Report::Truncate(t) => {
                if t.coefficients.is_empty() {
                    writeln!(out, "all coefficients up to length {} are zero", t.len).unwrap();
                }
                for c in &t.coefficients {
                    writeln!(out, "{} ↦ {}", word_text(&c.word), c.coefficient).unwrap();
                }
            }
            Report::Eval(e) => {
                let point: Vec<String> = e.point.iter().map(|n| n.to_string()).collect();
                writeln!(out, "{}({}) = {}", e.unknown, point.join(", "), e.value).unwrap();
                if e.convention == Convention::Exponential {
                    writeln!(out, "coefficient of x^n/n!; multiply by n! for the ordinary coefficient").unwrap();
                }
                if !e.consistency_checked {
                    writeln!(out, "note: consistency was not checked; the value follows the canonical path").unwrap();
                }
            }
            Report::Section(r) | Report::Diagonal(r) | Report::Convert(r) => match &r.emitted {
                Emitted::Text { text } => out.push_str(text),
                Emitted::Constant { values } => {
                    let parts: Vec<String> = values.iter().map(|a| format!("{} = {}", a.unknown, a.value)).collect();
                    writeln!(out, "constant {{ {} }}", parts.join(", ")).unwrap();
                }
            },
            Report::Variety(v) => {
                let answer = match v.answer {
                    Answer::Yes => "yes",
                    Answer::No => "no",
                    Answer::Unknown => "unknown",
                };
                if v.answer == Answer::Unknown {
                    writeln!(out, "{}: unknown within depth {}", v.name, v.max_depth).unwrap();
                } else if v.mode == VarietyMode::Ideal {
                    writeln!(out, "{}: stable", v.name).unwrap();
                } else {
                    writeln!(out, "{}: {answer}", v.name).unwrap();
                }
                if let Some(ideal) = &v.ideal {
                    writeln!(out, "ideal: ⟨{}⟩", ideal.join(", ")).unwrap();
                }
                if let Some(n) = v.depth {
                    writeln!(out, "generated by words of length ≤ {n}").unwrap();
                } else if v.mode == VarietyMode::Ideal && v.answer == Answer::Yes {
                    writeln!(out, "not generated by words of length ≤ {}", v.max_depth).unwrap();
                }
                writeln!(out, "time: {:.3} ms", v.elapsed_ms).unwrap();
            }
        }
        out
    }
}
