use std::fmt::Write;

use parikh::apps::PolyrecSystem;
use parikh::{MixedAutomaton, Polynomial, Rational};

use super::{CdaDefinition, Definition, Document};

/// Canonical text of `doc`: every letter carries its mode and every
/// equation is written out.
pub fn print(doc: &Document) -> String {
    let blocks: Vec<String> = doc
        .items
        .iter()
        .map(|item| match &item.definition {
            Definition::Automaton(a) => automaton(&item.name, a),
            Definition::Polyrec(s) => polyrec(&item.name, s),
            Definition::Cda(c) => cda(&item.name, c),
        })
        .collect();
    blocks.join("\n")
}

fn assignments(names: &[String], values: &[Rational]) -> String {
    let parts: Vec<String> = names.iter().zip(values).map(|(n, v)| format!("{n} = {v}")).collect();
    format!("{{ {} }}", parts.join(", "))
}

fn poly(p: &Polynomial, names: &[String]) -> String {
    p.display_with(names).to_string()
}

pub fn automaton(name: &str, a: &MixedAutomaton) -> String {
    let mut out = format!("automaton {name} {{\n");
    let letters: Vec<String> = a.letters().iter().map(|l| format!("{}: {}", l.name, l.mode)).collect();
    writeln!(out, "  alphabet {{ {} }}", letters.join(", ")).unwrap();
    writeln!(out, "  nonterminals {{ {} }}", a.nonterminals().join(", ")).unwrap();
    writeln!(out, "  output {}", assignments(a.nonterminals(), a.output())).unwrap();
    for (l, spec) in a.letters().iter().enumerate() {
        for (i, nt) in a.nonterminals().iter().enumerate() {
            writeln!(out, "  delta {} {nt} = {}", spec.name, poly(a.delta(l, i), a.nonterminals())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn polyrec(name: &str, s: &PolyrecSystem) -> String {
    let mut out = format!("polyrec {name} {{\n");
    writeln!(out, "  dims {}", s.dims()).unwrap();
    writeln!(out, "  unknowns {{ {} }}", s.unknowns().join(", ")).unwrap();
    writeln!(out, "  init {}", assignments(s.unknowns(), s.init())).unwrap();
    for j in 0..s.dims() {
        for (i, u) in s.unknowns().iter().enumerate() {
            writeln!(out, "  shift {} {u} = {}", j + 1, poly(s.rule(j, i), s.unknowns())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn cda(name: &str, c: &CdaDefinition) -> String {
    let s = &c.system;
    let declared = &s.unknowns()[..c.declared()];
    let mut out = format!("cda {name} {{\n");
    writeln!(out, "  dims {}", s.dims()).unwrap();
    writeln!(out, "  unknowns {{ {} }}", declared.join(", ")).unwrap();
    for &j in &c.vars {
        writeln!(out, "  var x{}", j + 1).unwrap();
    }
    writeln!(out, "  init {}", assignments(declared, &s.init()[..c.declared()])).unwrap();
    for j in 0..s.dims() {
        for (i, u) in declared.iter().enumerate() {
            writeln!(out, "  d {} {u} = {}", j + 1, poly(s.rule(j, i), s.unknowns())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
