//! The input language: named automaton, polyrec and cda definitions.
//!
//! [`parse`] turns text into a [`Document`] of validated core objects and
//! [`print`] writes one back in canonical form. Equality of documents ignores
//! source positions, so `parse(print(d)) == d`.

mod lexer;
mod parser;
pub mod printer;

use parikh::apps::{CdaSystem, PolyrecSystem};
use parikh::MixedAutomaton;
use thiserror::Error;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_expression};
pub use printer::print;

/// Source position of a token or definition; `line` and `column` are 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: undeclared symbol `{name}`")]
    Undeclared { name: String, line: usize, column: usize },
    #[error("{line}:{column}: duplicate definition of `{name}`")]
    Duplicate { name: String, line: usize, column: usize },
    #[error("{line}:{column}: exponent must be a nonnegative integer literal")]
    Exponent { line: usize, column: usize },
    #[error("{line}:{column}: {message}")]
    Invalid { line: usize, column: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::Undeclared { line, column, .. }
            | ParseError::Duplicate { line, column, .. }
            | ParseError::Exponent { line, column }
            | ParseError::Invalid { line, column, .. } => (*line, *column),
        }
    }
}

/// A CDA system as written: `system` has the declared unknowns followed by
/// one unknown per `var` declaration, whose coordinates are in `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct CdaDefinition {
    pub system: CdaSystem,
    pub vars: Vec<usize>,
}

impl CdaDefinition {
    /// Number of unknowns declared in the `unknowns` block.
    pub fn declared(&self) -> usize {
        self.system.unknowns().len() - self.vars.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Automaton(MixedAutomaton),
    Polyrec(PolyrecSystem),
    Cda(CdaDefinition),
}

impl Definition {
    pub fn kind(&self) -> &'static str {
        match self {
            Definition::Automaton(_) => "automaton",
            Definition::Polyrec(_) => "polyrec",
            Definition::Cda(_) => "cda",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Item {
    pub name: String,
    pub span: Span,
    pub definition: Definition,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.definition == other.definition
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LookupError {
    #[error("no definition named `{0}`")]
    NotFound(String),
    #[error("the file is empty")]
    Empty,
    #[error("the file holds several definitions ({0}); choose one with --name")]
    Ambiguous(String),
    #[error("`{name}` has kind {found}, expected {expected}")]
    WrongKind { name: String, found: &'static str, expected: &'static str },
}

impl Document {
    /// The item called `name`, or the sole item when `name` is `None`.
    pub fn item(&self, name: Option<&str>) -> Result<&Item, LookupError> {
        match name {
            Some(n) => self.items.iter().find(|i| i.name == n).ok_or_else(|| LookupError::NotFound(n.to_string())),
            None => match self.items.as_slice() {
                [] => Err(LookupError::Empty),
                [only] => Ok(only),
                many => Err(LookupError::Ambiguous(many.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", "))),
            },
        }
    }

    pub fn automaton(&self, name: Option<&str>) -> Result<(&str, &MixedAutomaton), LookupError> {
        let item = self.item(name)?;
        match &item.definition {
            Definition::Automaton(a) => Ok((&item.name, a)),
            other => Err(wrong_kind(item, other, "automaton")),
        }
    }

    pub fn polyrec(&self, name: Option<&str>) -> Result<(&str, &PolyrecSystem), LookupError> {
        let item = self.item(name)?;
        match &item.definition {
            Definition::Polyrec(s) => Ok((&item.name, s)),
            other => Err(wrong_kind(item, other, "polyrec system")),
        }
    }

    pub fn cda(&self, name: Option<&str>) -> Result<(&str, &CdaDefinition), LookupError> {
        let item = self.item(name)?;
        match &item.definition {
            Definition::Cda(s) => Ok((&item.name, s)),
            other => Err(wrong_kind(item, other, "cda system")),
        }
    }
}

fn wrong_kind(item: &Item, found: &Definition, expected: &'static str) -> LookupError {
    LookupError::WrongKind { name: item.name.clone(), found: found.kind(), expected }
}
