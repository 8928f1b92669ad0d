//! Polyrec difference systems and CDA differential systems, decided through
//! their companion automata over the coordinate alphabet `a1..ad`.

mod cda;
mod polyrec;

pub use cda::{cda_solvable, taylor_coefficient, CdaSystem};
pub use polyrec::{diagonal, evaluate_point, polyrec_consistent, section, PolyrecSystem, Section};

use thiserror::Error;

use crate::algebra::{Polynomial, Rational};
use crate::automata::{AutomatonError, LetterSpec, MixedAutomaton, ProductMode};
use crate::decide::{commutativity, Witness};
use crate::oracle::{parikh, Word, WordPair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AppsError {
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("coordinate {coordinate} out of range for a {dims}-dimensional system")]
    CoordinateOutOfRange { coordinate: usize, dims: usize },
    #[error("unknown index {unknown} out of range ({count} unknowns)")]
    UnknownOutOfRange { unknown: usize, count: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("diagonal needs two distinct coordinates, got {0} twice")]
    SameCoordinate(usize),
    #[error("system has no solution: {unknown} differs along the paths {u} and {v}; values would depend on the path")]
    PathDependent { unknown: String, u: String, v: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Two lattice paths to the same point on which an unknown disagrees.
/// `pair` holds words of the companion automaton; letter `j` is a unit step
/// along `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathWitness {
    pub unknown: usize,
    pub pair: WordPair,
    /// Mode of the companion automaton.
    pub mode: ProductMode,
}

impl PathWitness {
    pub fn endpoint(&self, dims: usize) -> Vec<usize> {
        parikh(&self.pair.u, dims)
    }

    /// Both paths with their steps in the order they are taken. Shifts act
    /// by substitution, so a polyrec word lists its steps last to first;
    /// derivatives are taken in reading order.
    pub fn steps(&self) -> (Word, Word) {
        match self.mode {
            ProductMode::Hadamard => (self.pair.u.reversed(), self.pair.v.reversed()),
            _ => (self.pair.u.clone(), self.pair.v.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemVerdict {
    pub holds: bool,
    pub witness: Option<PathWitness>,
    pub stabilization_index: Option<usize>,
}

/// Shared shape of polyrec and CDA systems: `rules[j][i]` is the equation
/// for unknown `i` along coordinate `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equations {
    unknowns: Vec<String>,
    rules: Vec<Vec<Polynomial>>,
    init: Vec<Rational>,
}

impl Equations {
    fn new(unknowns: Vec<String>, rules: Vec<Vec<Polynomial>>, init: Vec<Rational>) -> Result<Self, AppsError> {
        let k = unknowns.len();
        if rules.is_empty() {
            return Err(AppsError::Malformed("at least one coordinate is required".into()));
        }
        if init.len() != k {
            return Err(AppsError::Malformed(format!("{} initial values for {k} unknowns", init.len())));
        }
        for (j, row) in rules.iter().enumerate() {
            if row.len() != k {
                return Err(AppsError::Malformed(format!("coordinate {} has {} equations, expected {k}", j + 1, row.len())));
            }
            if let Some(p) = row.iter().find(|p| p.used_arity() > k) {
                return Err(AppsError::Malformed(format!("equation {p} mentions more than {k} unknowns")));
            }
        }
        let rules = rules.into_iter().map(|row| row.into_iter().map(|p| p.with_arity(k)).collect()).collect();
        Ok(Equations { unknowns, rules, init })
    }

    pub fn dims(&self) -> usize {
        self.rules.len()
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn unknown(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u == name)
    }

    pub fn rule(&self, coordinate: usize, unknown: usize) -> &Polynomial {
        &self.rules[coordinate][unknown]
    }

    pub fn rules(&self) -> &[Vec<Polynomial>] {
        &self.rules
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    fn companion(&self, mode: ProductMode) -> MixedAutomaton {
        let letters = (1..=self.dims()).map(|j| LetterSpec::new(format!("a{j}"), mode)).collect();
        MixedAutomaton::new(letters, self.unknowns.clone(), self.rules.clone(), self.init.clone()).expect("validated system")
    }

    fn check_unknown(&self, unknown: usize) -> Result<(), AppsError> {
        if unknown >= self.unknowns.len() {
            return Err(AppsError::UnknownOutOfRange { unknown, count: self.unknowns.len() });
        }
        Ok(())
    }

    fn check_coordinate(&self, coordinate: usize) -> Result<(), AppsError> {
        if coordinate >= self.dims() {
            return Err(AppsError::CoordinateOutOfRange { coordinate, dims: self.dims() });
        }
        Ok(())
    }

    fn canonical_path(&self, point: &[usize]) -> Result<Word, AppsError> {
        if point.len() != self.dims() {
            return Err(AppsError::PointDimension { expected: self.dims(), found: point.len() });
        }
        Ok(Word::from_powers(&point.iter().copied().enumerate().collect::<Vec<_>>()))
    }

    /// Commutativity of every component of the companion automaton.
    fn all_components_commutative(&self, mode: ProductMode) -> Result<SystemVerdict, AppsError> {
        let companion = self.companion(mode);
        let mut index = 0;
        for i in 0..self.unknowns.len() {
            let v = commutativity(&companion, &companion.nonterminal(i))?;
            if let Some(Witness::Pair(pair)) = v.witness {
                return Ok(SystemVerdict {
                    holds: false,
                    witness: Some(PathWitness { unknown: i, pair, mode }),
                    stabilization_index: None,
                });
            }
            index = index.max(v.stabilization_index.unwrap_or(0));
        }
        Ok(SystemVerdict { holds: true, witness: None, stabilization_index: Some(index) })
    }

    fn require_commutative(&self, mode: ProductMode) -> Result<(), AppsError> {
        let v = self.all_components_commutative(mode)?;
        match v.witness {
            None => Ok(()),
            Some(w) => {
                let names: Vec<String> = (1..=self.dims()).map(|j| format!("a{j}")).collect();
                let (u, v) = w.steps();
                let (u, v) = (u.display_with(&names).to_string(), v.display_with(&names).to_string());
                Err(AppsError::PathDependent { unknown: self.unknowns[w.unknown].clone(), u, v })
            }
        }
    }
}
