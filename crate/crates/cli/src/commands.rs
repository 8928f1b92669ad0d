//! Command-line arguments and their dispatch to the core procedures.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parikh::apps::{self, AppsError, Section, SystemVerdict};
use parikh::automata::{to_polynomial_automaton, AutomatonError, PolynomialAutomaton};
use parikh::decide::{commutativity_within, equality_within, zeroness_within, Check, Limits};
use parikh::varieties::{self, Stabilization, VarietyError};
use parikh::{MixedAutomaton, Polynomial, Rational, Verdict, Witness, Word};
use thiserror::Error;

use crate::report::{
    Answer, Assignment, CoeffReport, Coefficient, Convention, Decision, EmitReport, Emitted, EvalReport, Outcome, Property, Report,
    TruncateReport, VarietyMode, VarietyReport, WitnessReport,
};
use crate::syntax::{self, parse_expression, CdaDefinition, Definition, Document, LookupError, ParseError};

#[derive(Debug, Parser)]
#[command(name = "parikh", version, about = "Decide zeroness, equality and commutativity of series recognised by polynomial automata")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A file and the definition in it to use.
#[derive(Debug, Args)]
pub struct Target {
    pub file: PathBuf,
    /// Definition to use; defaults to the only one in the file.
    #[arg(long)]
    pub name: Option<String>,
}

/// An automaton with a start configuration.
#[derive(Debug, Args)]
pub struct Configured {
    #[command(flatten)]
    pub target: Target,
    /// Start configuration as a polynomial over the nonterminals; defaults to the first nonterminal.
    #[arg(long, allow_hyphen_values = true)]
    pub config: Option<String>,
}

#[derive(Debug, Args)]
pub struct Bounds {
    /// Give up (exit 3) past this ideal chain level.
    #[arg(long)]
    pub max_level: Option<usize>,
    /// Give up (exit 3) once a configuration or chain generator exceeds this degree.
    #[arg(long)]
    pub max_degree: Option<u64>,
}

impl Bounds {
    fn limits(&self) -> Limits {
        Limits { max_level: self.max_level, max_degree: self.max_degree }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exists,
    Forall,
    Member,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    PolynomialAutomaton,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is the series of the configuration zero?
    CheckZero {
        #[command(flatten)]
        input: Configured,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Do two automata recognise the same series?
    CheckEqual {
        #[command(flatten)]
        input: Configured,
        /// Second automaton; defaults to the one named by --name.
        #[arg(long)]
        other: Option<String>,
        /// File holding the second automaton; defaults to the first file.
        #[arg(long)]
        other_file: Option<PathBuf>,
        /// Start configuration of the second automaton.
        #[arg(long, allow_hyphen_values = true)]
        other_config: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Is the series commutative?
    CheckCommutative {
        #[command(flatten)]
        input: Configured,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Coefficient of one word.
    Coeff {
        #[command(flatten)]
        input: Configured,
        /// Letters separated by commas; empty for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// All nonzero coefficients up to a length.
    Truncate {
        #[command(flatten)]
        input: Configured,
        #[arg(long)]
        len: usize,
    },
    /// Does a polyrec system have a solution?
    PolyrecConsistent {
        #[command(flatten)]
        target: Target,
    },
    /// Does a CDA system have a power series solution?
    CdaSolvable {
        #[command(flatten)]
        target: Target,
    },
    /// Value of a polyrec solution, or Taylor coefficient of a CDA solution, at a point.
    Eval {
        #[command(flatten)]
        target: Target,
        /// Coordinates separated by commas.
        #[arg(long)]
        point: String,
        /// Unknown to report; defaults to the first.
        #[arg(long)]
        unknown: Option<String>,
        /// Evaluate along the canonical path without checking for a solution.
        #[arg(long)]
        allow_inconsistent_eval: bool,
    },
    /// Fix one coordinate of a polyrec system.
    Section {
        #[command(flatten)]
        target: Target,
        /// Coordinate to fix, counted from 1.
        #[arg(long)]
        coord: usize,
        #[arg(long)]
        value: usize,
    },
    /// Merge two coordinates of a polyrec system.
    Diagonal {
        #[command(flatten)]
        target: Target,
        /// Two coordinates counted from 1, separated by a comma.
        #[arg(long)]
        coords: String,
    },
    /// Commutativity over all output vectors.
    Variety {
        #[command(flatten)]
        input: Configured,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Chain level budget; at least 2.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Output vector for --mode member, separated by commas.
        #[arg(long, allow_hyphen_values = true)]
        output: Option<String>,
    },
    /// Rewrite a Hadamard automaton in another form.
    Convert {
        #[command(flatten)]
        input: Configured,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("in {what}: {source}")]
    Argument { what: &'static str, source: ParseError },
    #[error(transparent)]
    Lookup(#[from] LookupError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Apps(#[from] AppsError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    syntax::parse(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn letters(a: &MixedAutomaton) -> Vec<String> {
    a.letter_names().iter().map(|s| s.to_string()).collect()
}

fn word_names(w: &Word, names: &[String]) -> Vec<String> {
    w.letters().iter().map(|&l| names[l].clone()).collect()
}

fn coordinate_names(dims: usize) -> Vec<String> {
    (1..=dims).map(|j| format!("a{j}")).collect()
}

struct Loaded {
    name: String,
    automaton: MixedAutomaton,
    config: Polynomial,
}

fn configuration(a: &MixedAutomaton, config: Option<&str>) -> Result<Polynomial, CliError> {
    match config {
        Some(text) => parse_expression(text, a.nonterminals()).map_err(|source| CliError::Argument { what: "--config", source }),
        None if a.dimension() == 0 => Err(CliError::Usage("the automaton has no nonterminals; pass --config".into())),
        None => Ok(a.nonterminal(0)),
    }
}

fn load_configured(input: &Configured) -> Result<Loaded, CliError> {
    let doc = load(&input.target.file)?;
    let (name, a) = doc.automaton(input.target.name.as_deref())?;
    let config = configuration(a, input.config.as_deref())?;
    Ok(Loaded { name: name.to_string(), automaton: a.clone(), config })
}

fn parse_word(a: &MixedAutomaton, text: &str) -> Result<Word, CliError> {
    let parts: Vec<&str> = text.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty() && *s != "ε").collect();
    Ok(a.word(&parts)?)
}

fn parse_naturals(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("{what}: `{s}` is not a natural number"))))
        .collect()
}

fn parse_rationals(text: &str, what: &'static str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_expression(s.trim(), &[]).map(|p| p.constant_term()).map_err(|source| CliError::Argument { what, source }))
        .collect()
}

fn check_name(c: Check, names: &[String]) -> String {
    match c {
        Check::Swap(a, b) => format!("swap {} {}", names[a], names[b]),
        Check::Rotate(a) => format!("rotate {}", names[a]),
    }
}

fn decision(name: &str, property: Property, verdict: Option<Verdict>, names: &[String], start: Instant) -> Decision {
    let elapsed_ms = elapsed_ms(start);
    let Some(v) = verdict else {
        return Decision {
            name: name.to_string(),
            property,
            outcome: Outcome::Unknown,
            witness: None,
            stabilization_index: None,
            failed_check: None,
            elapsed_ms,
        };
    };
    let witness = v.witness.map(|w| match w {
        Witness::Word { word, coefficient } => WitnessReport::Word { word: word_names(&word, names), coefficient: coefficient.to_string() },
        Witness::Pair(p) => {
            WitnessReport::Pair { u: word_names(&p.u, names), fu: p.fu.to_string(), v: word_names(&p.v, names), fv: p.fv.to_string() }
        }
    });
    Decision {
        name: name.to_string(),
        property,
        outcome: if v.holds { Outcome::Holds } else { Outcome::Fails },
        witness,
        stabilization_index: v.stabilization_index,
        failed_check: v.failed_check.map(|c| check_name(c, names)),
        elapsed_ms,
    }
}

fn system_decision(name: &str, property: Property, v: SystemVerdict, unknowns: &[String], dims: usize, start: Instant) -> Decision {
    let names = coordinate_names(dims);
    let witness = v.witness.map(|w| {
        let (u, v) = w.steps();
        WitnessReport::Paths {
            unknown: unknowns[w.unknown].clone(),
            endpoint: w.endpoint(dims),
            u: word_names(&u, &names),
            fu: w.pair.fu.to_string(),
            v: word_names(&v, &names),
            fv: w.pair.fv.to_string(),
        }
    });
    Decision {
        name: name.to_string(),
        property,
        outcome: if v.holds { Outcome::Holds } else { Outcome::Fails },
        witness,
        stabilization_index: v.stabilization_index,
        failed_check: None,
        elapsed_ms: elapsed_ms(start),
    }
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::CheckZero { input, bounds } => {
            let l = load_configured(input)?;
            let start = Instant::now();
            let v = zeroness_within(&l.automaton, &l.config, &bounds.limits())?;
            Ok(Report::CheckZero(decision(&l.name, Property::Zero, v, &letters(&l.automaton), start)))
        }
        Command::CheckEqual { input, other, other_file, other_config, bounds } => {
            check_equal(input, other, other_file, other_config, bounds)
        }
        Command::CheckCommutative { input, bounds } => {
            let l = load_configured(input)?;
            let start = Instant::now();
            let v = commutativity_within(&l.automaton, &l.config, &bounds.limits())?;
            Ok(Report::CheckCommutative(decision(&l.name, Property::Commutative, v, &letters(&l.automaton), start)))
        }
        Command::Coeff { input, word } => {
            let l = load_configured(input)?;
            let w = parse_word(&l.automaton, word)?;
            let c = l.automaton.coefficient(&l.config, &w)?;
            Ok(Report::Coeff(CoeffReport { name: l.name, word: word_names(&w, &letters(&l.automaton)), coefficient: c.to_string() }))
        }
        Command::Truncate { input, len } => {
            let l = load_configured(input)?;
            let t = l.automaton.truncate(&l.config, *len)?;
            let names = letters(&l.automaton);
            let mut support: Vec<(&Word, &Rational)> = t.support().collect();
            support.sort_by(|x, y| x.0.cmp(y.0));
            let coefficients =
                support.into_iter().map(|(w, c)| Coefficient { word: word_names(w, &names), coefficient: c.to_string() }).collect();
            Ok(Report::Truncate(TruncateReport { name: l.name, len: *len, coefficients }))
        }
        Command::PolyrecConsistent { target } => {
            let doc = load(&target.file)?;
            let (name, s) = doc.polyrec(target.name.as_deref())?;
            let start = Instant::now();
            let v = apps::polyrec_consistent(s)?;
            Ok(Report::PolyrecConsistent(system_decision(name, Property::Consistent, v, s.unknowns(), s.dims(), start)))
        }
        Command::CdaSolvable { target } => {
            let doc = load(&target.file)?;
            let (name, c) = doc.cda(target.name.as_deref())?;
            let s = &c.system;
            let start = Instant::now();
            let v = apps::cda_solvable(s)?;
            Ok(Report::CdaSolvable(system_decision(name, Property::Solvable, v, s.unknowns(), s.dims(), start)))
        }
        Command::Eval { target, point, unknown, allow_inconsistent_eval } => {
            eval(target, point, unknown.as_deref(), *allow_inconsistent_eval)
        }
        Command::Section { target, coord, value } => {
            let doc = load(&target.file)?;
            let (name, s) = doc.polyrec(target.name.as_deref())?;
            let j = coordinate(*coord, s.dims())?;
            let emitted = match apps::section(s, j, *value)? {
                Section::System(t) => Emitted::Text { text: syntax::printer::polyrec(&format!("{name}_section_{coord}_{value}"), &t) },
                Section::Constant(values) => Emitted::Constant {
                    values: s.unknowns().iter().zip(values).map(|(u, v)| Assignment { unknown: u.clone(), value: v.to_string() }).collect(),
                },
            };
            Ok(Report::Section(EmitReport { name: name.to_string(), emitted }))
        }
        Command::Diagonal { target, coords } => {
            let doc = load(&target.file)?;
            let (name, s) = doc.polyrec(target.name.as_deref())?;
            let pair = parse_naturals(coords, "--coords")?;
            let [first, second] = pair[..] else {
                return Err(CliError::Usage(format!("--coords needs two coordinates, got {}", pair.len())));
            };
            let t = apps::diagonal(s, coordinate(first, s.dims())?, coordinate(second, s.dims())?)?;
            let text = syntax::printer::polyrec(&format!("{name}_diagonal_{first}_{second}"), &t);
            Ok(Report::Diagonal(EmitReport { name: name.to_string(), emitted: Emitted::Text { text } }))
        }
        Command::Variety { input, mode, depth, output } => variety(input, *mode, *depth, output.as_deref()),
        Command::Convert { input, to: ConvertTarget::PolynomialAutomaton } => {
            let l = load_configured(input)?;
            let p = to_polynomial_automaton(&l.automaton, &l.config)?;
            Ok(Report::Convert(EmitReport {
                name: l.name.clone(),
                emitted: Emitted::Text { text: polynomial_automaton_text(&l.name, &p) },
            }))
        }
    }
}

/// A 1-based coordinate from the command line as a 0-based index.
fn coordinate(j: usize, dims: usize) -> Result<usize, CliError> {
    if (1..=dims).contains(&j) {
        Ok(j - 1)
    } else {
        Err(CliError::Usage(format!("coordinate {j} is outside 1..{dims}")))
    }
}

fn check_equal(
    input: &Configured,
    other: &Option<String>,
    other_file: &Option<PathBuf>,
    other_config: &Option<String>,
    bounds: &Bounds,
) -> Result<Report, CliError> {
    let left = load_configured(input)?;
    let doc = load(other_file.as_deref().unwrap_or(&input.target.file))?;
    let (right_name, b) = doc.automaton(other.as_deref().or(input.target.name.as_deref()))?;
    let beta = match other_config {
        Some(text) => parse_expression(text, b.nonterminals()).map_err(|source| CliError::Argument { what: "--other-config", source })?,
        None => configuration(b, None)?,
    };
    let start = Instant::now();
    let v = equality_within(&left.automaton, &left.config, b, &beta, &bounds.limits())?;
    let names = letters(&left.automaton);
    let name = format!("{} = {right_name}", left.name);
    let mut report = decision(&name, Property::Equal, v.clone(), &names, start);
    if let Some(Verdict { witness: Some(Witness::Word { word, .. }), .. }) = v {
        report.witness = Some(WitnessReport::Difference {
            word: word_names(&word, &names),
            left: left.automaton.coefficient(&left.config, &word)?.to_string(),
            right: b.coefficient(&beta, &word)?.to_string(),
        });
    }
    Ok(Report::CheckEqual(report))
}

fn eval(target: &Target, point: &str, unknown: Option<&str>, allow: bool) -> Result<Report, CliError> {
    let doc = load(&target.file)?;
    let item = doc.item(target.name.as_deref())?;
    let point = parse_naturals(point, "--point")?;
    let pick = |unknowns: &[String]| -> Result<usize, CliError> {
        match unknown {
            None => Ok(0),
            Some(u) => unknowns.iter().position(|n| n == u).ok_or_else(|| CliError::Usage(format!("no unknown named `{u}`"))),
        }
    };
    let (unknowns, value, convention) = match &item.definition {
        Definition::Polyrec(s) => {
            let i = pick(s.unknowns())?;
            (s.unknowns(), apps::evaluate_point(s, &point, i, allow)?, Convention::Value)
        }
        Definition::Cda(CdaDefinition { system, .. }) => {
            let i = pick(system.unknowns())?;
            (system.unknowns(), apps::taylor_coefficient(system, &point, i, allow)?, Convention::Exponential)
        }
        Definition::Automaton(_) => {
            return Err(LookupError::WrongKind { name: item.name.clone(), found: "automaton", expected: "polyrec or cda system" }.into())
        }
    };
    Ok(Report::Eval(EvalReport {
        name: item.name.clone(),
        unknown: unknowns[pick(unknowns)?].clone(),
        point,
        value: value.to_string(),
        convention,
        consistency_checked: !allow,
    }))
}

fn variety(input: &Configured, mode: ModeArg, depth: usize, output: Option<&str>) -> Result<Report, CliError> {
    let l = load_configured(input)?;
    let (a, alpha) = (&l.automaton, &l.config);
    let start = Instant::now();
    let to_answer = |x: varieties::Answer| match x {
        varieties::Answer::Yes => Answer::Yes,
        varieties::Answer::No => Answer::No,
        varieties::Answer::Unknown => Answer::Unknown,
    };
    let (mode, answer, ideal, found_depth) = match mode {
        ModeArg::Exists => (VarietyMode::Exists, to_answer(varieties::exists_commutative_output(a, alpha, depth)?), None, None),
        ModeArg::Forall => (VarietyMode::Forall, to_answer(varieties::all_outputs_commutative(a, alpha, depth)?), None, None),
        ModeArg::Member => {
            let text = output.ok_or_else(|| CliError::Usage("--mode member needs --output".into()))?;
            let f = parse_rationals(text, "--output")?;
            (VarietyMode::Member, to_answer(varieties::output_membership(a, alpha, &f, depth)?), None, None)
        }
        ModeArg::Ideal => match varieties::stabilize(a, alpha, depth)? {
            Stabilization::Stable(s) => {
                let basis = s.ideal.basis().iter().map(|g| g.display_with(a.nonterminals()).to_string()).collect();
                (VarietyMode::Ideal, Answer::Yes, Some(basis), s.depth())
            }
            Stabilization::Unknown { .. } => (VarietyMode::Ideal, Answer::Unknown, None, None),
        },
    };
    Ok(Report::Variety(VarietyReport {
        name: l.name,
        mode,
        max_depth: depth,
        answer,
        ideal,
        depth: found_depth,
        elapsed_ms: elapsed_ms(start),
    }))
}

fn polynomial_automaton_text(name: &str, p: &PolynomialAutomaton) -> String {
    let mut out = format!("# reading w gives the coefficient of the reverse of w in {name}\npolynomial-automaton {name} {{\n");
    out.push_str(&format!("  letters {{ {} }}\n", p.letters.join(", ")));
    out.push_str(&format!("  variables {{ {} }}\n", p.variables.join(", ")));
    let init: Vec<String> = p.variables.iter().zip(&p.initial).map(|(v, c)| format!("{v} = {c}")).collect();
    out.push_str(&format!("  initial {{ {} }}\n", init.join(", ")));
    for (l, row) in p.letters.iter().zip(&p.updates) {
        for (v, q) in p.variables.iter().zip(row) {
            out.push_str(&format!("  update {l} {v} = {}\n", q.display_with(&p.variables)));
        }
    }
    out.push_str(&format!("  output {}\n}}\n", p.output.display_with(&p.variables)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use parikh::{catalog, int, rat};

    #[test]
    fn words_from_arguments() {
        let a = catalog::square_and_complement(int(2));
        assert_eq!(parse_word(&a, "a1,a2").unwrap(), Word(vec![0, 1]));
        assert_eq!(parse_word(&a, "a2 a2").unwrap(), Word(vec![1, 1]));
        assert_eq!(parse_word(&a, "").unwrap(), Word::empty());
        assert_eq!(parse_word(&a, "ε").unwrap(), Word::empty());
        assert!(parse_word(&a, "a3").is_err());
    }

    #[test]
    fn numeric_arguments() {
        assert_eq!(parse_naturals("1, 2,3", "--point").unwrap(), vec![1, 2, 3]);
        assert!(parse_naturals("1,-2", "--point").is_err());
        assert_eq!(parse_rationals("-1,5/2", "--output").unwrap(), vec![int(-1), rat(5, 2)]);
        assert!(parse_rationals("x", "--output").is_err());
        assert_eq!(coordinate(1, 2).unwrap(), 0);
        assert!(coordinate(0, 2).is_err());
        assert!(coordinate(3, 2).is_err());
    }

    #[test]
    fn default_configuration_is_the_first_nonterminal() {
        let a = catalog::binomial_shuffle();
        assert_eq!(configuration(&a, None).unwrap(), a.nonterminal(0));
        assert_eq!(configuration(&a, Some("X2*X3")).unwrap(), &a.nonterminal(1) * &a.nonterminal(2));
        assert!(matches!(configuration(&a, Some("X4")), Err(CliError::Argument { what: "--config", .. })));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
