//! Mixed-product automata: per-letter product mode, polynomial transitions,
//! rational output. Pure Hadamard, shuffle and infiltration automata are the
//! uniform-mode cases.

mod constructions;
mod evaluation;
mod gadget;
mod polynomial_automaton;

pub use constructions::{disjoint_union, right_derivative_automaton, RightDerivative, Union};
pub use gadget::{shuffle_gadget, Gadget};
pub use polynomial_automaton::{from_polynomial_automaton, to_polynomial_automaton, PolynomialAutomaton};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{extend, Extension, Polynomial, Rational};
use crate::oracle::{Letter, TruncatedSeries, Word};

/// How a letter's left derivative acts on products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductMode {
    Hadamard,
    Shuffle,
    Infiltration,
}

impl ProductMode {
    pub fn extension(self) -> Extension {
        match self {
            ProductMode::Hadamard => Extension::Endomorphism,
            ProductMode::Shuffle => Extension::Derivation,
            ProductMode::Infiltration => Extension::SigmaDerivation,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductMode::Hadamard => "hadamard",
            ProductMode::Shuffle => "shuffle",
            ProductMode::Infiltration => "infiltration",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hadamard" => Some(ProductMode::Hadamard),
            "shuffle" => Some(ProductMode::Shuffle),
            "infiltration" => Some(ProductMode::Infiltration),
            _ => None,
        }
    }
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("unknown letter `{0}`")]
    UnknownSymbol(String),
    #[error("letter index {0} out of range")]
    LetterOutOfRange(Letter),
    #[error("configuration uses {found} variables but the automaton has {expected} nonterminals")]
    ConfigurationArity { expected: usize, found: usize },
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("alphabets or modes differ")]
    AlphabetMismatch,
    #[error("alphabets overlap on `{0}`")]
    OverlappingAlphabets(String),
    #[error("automaton mixes product modes; a uniform mode is required")]
    MixedModes,
    #[error("expected a {expected} automaton, found {found}")]
    WrongMode { expected: ProductMode, found: ProductMode },
}

/// A letter with its product mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LetterSpec {
    pub name: String,
    pub mode: ProductMode,
}

impl LetterSpec {
    pub fn new(name: impl Into<String>, mode: ProductMode) -> Self {
        LetterSpec { name: name.into(), mode }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedAutomaton {
    letters: Vec<LetterSpec>,
    nonterminals: Vec<String>,
    /// `delta[a][i]` is the image of nonterminal `i` under letter `a`.
    delta: Vec<Vec<Polynomial>>,
    output: Vec<Rational>,
}

impl MixedAutomaton {
    pub fn new(
        letters: Vec<LetterSpec>,
        nonterminals: Vec<String>,
        delta: Vec<Vec<Polynomial>>,
        output: Vec<Rational>,
    ) -> Result<Self, AutomatonError> {
        let k = nonterminals.len();
        if delta.len() != letters.len() {
            return Err(AutomatonError::Malformed(format!("{} transition rows for {} letters", delta.len(), letters.len())));
        }
        if output.len() != k {
            return Err(AutomatonError::Malformed(format!("{} outputs for {k} nonterminals", output.len())));
        }
        for (a, row) in delta.iter().enumerate() {
            if row.len() != k {
                return Err(AutomatonError::Malformed(format!("letter {} has {} transitions, expected {k}", letters[a].name, row.len())));
            }
            if let Some(p) = row.iter().find(|p| p.used_arity() > k) {
                return Err(AutomatonError::Malformed(format!("transition {p} uses more than {k} nonterminals")));
            }
        }
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].iter().any(|m| m.name == l.name) {
                return Err(AutomatonError::Malformed(format!("duplicate letter `{}`", l.name)));
            }
        }
        let delta = delta.into_iter().map(|row| row.into_iter().map(|p| p.with_arity(k)).collect()).collect();
        Ok(MixedAutomaton { letters, nonterminals, delta, output })
    }

    /// Automaton whose letters all share `mode`.
    pub fn uniform(
        mode: ProductMode,
        letters: &[&str],
        nonterminals: &[&str],
        delta: Vec<Vec<Polynomial>>,
        output: Vec<Rational>,
    ) -> Result<Self, AutomatonError> {
        Self::new(
            letters.iter().map(|l| LetterSpec::new(*l, mode)).collect(),
            nonterminals.iter().map(|s| s.to_string()).collect(),
            delta,
            output,
        )
    }

    pub fn letters(&self) -> &[LetterSpec] {
        &self.letters
    }

    pub fn letter_names(&self) -> Vec<&str> {
        self.letters.iter().map(|l| l.name.as_str()).collect()
    }

    pub fn alphabet_size(&self) -> usize {
        self.letters.len()
    }

    pub fn modes(&self) -> Vec<ProductMode> {
        self.letters.iter().map(|l| l.mode).collect()
    }

    pub fn mode(&self, a: Letter) -> ProductMode {
        self.letters[a].mode
    }

    /// The shared mode of all letters; `None` for an empty alphabet.
    pub fn uniform_mode(&self) -> Result<Option<ProductMode>, AutomatonError> {
        let Some(first) = self.letters.first() else {
            return Ok(None);
        };
        if self.letters.iter().all(|l| l.mode == first.mode) {
            Ok(Some(first.mode))
        } else {
            Err(AutomatonError::MixedModes)
        }
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn dimension(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn output(&self) -> &[Rational] {
        &self.output
    }

    pub fn delta(&self, a: Letter, i: usize) -> &Polynomial {
        &self.delta[a][i]
    }

    pub fn transitions(&self, a: Letter) -> &[Polynomial] {
        &self.delta[a]
    }

    pub fn letter(&self, name: &str) -> Result<Letter, AutomatonError> {
        self.letters.iter().position(|l| l.name == name).ok_or_else(|| AutomatonError::UnknownSymbol(name.to_string()))
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, AutomatonError> {
        names.iter().map(|n| self.letter(n)).collect::<Result<Vec<_>, _>>().map(Word)
    }

    pub fn nonterminal(&self, i: usize) -> Polynomial {
        Polynomial::var(i, self.dimension())
    }

    /// Same transitions with a different output vector.
    pub fn with_output(&self, output: Vec<Rational>) -> Result<Self, AutomatonError> {
        Self::new(self.letters.clone(), self.nonterminals.clone(), self.delta.clone(), output)
    }

    /// Adds letters whose transitions are all zero.
    pub fn with_extra_letters(&self, extra: &[LetterSpec]) -> Result<Self, AutomatonError> {
        let k = self.dimension();
        let mut letters = self.letters.clone();
        let mut delta = self.delta.clone();
        for l in extra {
            letters.push(l.clone());
            delta.push(vec![Polynomial::zero(k); k]);
        }
        Self::new(letters, self.nonterminals.clone(), delta, self.output.clone())
    }

    fn check_config(&self, alpha: &Polynomial) -> Result<(), AutomatonError> {
        if alpha.used_arity() > self.dimension() {
            return Err(AutomatonError::ConfigurationArity { expected: self.dimension(), found: alpha.used_arity() });
        }
        Ok(())
    }

    fn check_letter(&self, a: Letter) -> Result<(), AutomatonError> {
        if a >= self.letters.len() {
            return Err(AutomatonError::LetterOutOfRange(a));
        }
        Ok(())
    }

    /// `Δₐ α`, extending the generator images by the letter's mode.
    pub fn step(&self, alpha: &Polynomial, a: Letter) -> Result<Polynomial, AutomatonError> {
        self.check_letter(a)?;
        self.check_config(alpha)?;
        Ok(self.step_unchecked(alpha, a))
    }

    pub(crate) fn step_unchecked(&self, alpha: &Polynomial, a: Letter) -> Polynomial {
        extend(self.letters[a].mode.extension(), &self.delta[a], alpha).with_arity(self.dimension().max(alpha.arity()))
    }

    /// `Δ_w α`; the first letter of `w` is applied first.
    pub fn run(&self, alpha: &Polynomial, w: &Word) -> Result<Polynomial, AutomatonError> {
        self.check_config(alpha)?;
        let mut cur = alpha.clone();
        for &a in w.letters() {
            self.check_letter(a)?;
            if cur.is_zero() {
                break;
            }
            cur = self.step_unchecked(&cur, a);
        }
        Ok(cur)
    }

    /// `F(α)`.
    pub fn evaluate_output(&self, alpha: &Polynomial) -> Rational {
        alpha.evaluate_unchecked(&self.output)
    }

    /// `⟦α⟧_w = F(Δ_w α)`.
    pub fn coefficient(&self, alpha: &Polynomial, w: &Word) -> Result<Rational, AutomatonError> {
        self.check_config(alpha)?;
        if let Some(&a) = w.letters().iter().find(|&&a| a >= self.alphabet_size()) {
            return Err(AutomatonError::LetterOutOfRange(a));
        }
        if self.marker_count(w) <= NUMERIC_MARKER_LIMIT {
            Ok(self.coefficient_numeric(alpha, w))
        } else {
            Ok(self.evaluate_output(&self.run(alpha, w)?))
        }
    }

    /// Coefficients of all words up to `max_len`.
    pub fn truncate(&self, alpha: &Polynomial, max_len: usize) -> Result<TruncatedSeries, AutomatonError> {
        self.check_config(alpha)?;
        if max_len <= NUMERIC_MARKER_LIMIT {
            Ok(self.truncate_numeric(alpha, max_len))
        } else {
            Ok(self.truncate_symbolic(alpha, max_len))
        }
    }

    /// Breadth-first symbolic runs with steps memoised per configuration.
    pub(crate) fn truncate_symbolic(&self, alpha: &Polynomial, max_len: usize) -> TruncatedSeries {
        let n = self.alphabet_size();
        let mut out = TruncatedSeries::zero(n, max_len);
        let mut cache: HashMap<(Polynomial, Letter), Polynomial> = HashMap::new();
        let mut layer = vec![(Word::empty(), alpha.clone())];
        for depth in 0..=max_len {
            let mut next = Vec::new();
            for (w, cfg) in layer {
                out.add_to(w.clone(), self.evaluate_output(&cfg));
                if depth == max_len || cfg.is_zero() {
                    continue;
                }
                for a in 0..n {
                    let succ = cache.entry((cfg.clone(), a)).or_insert_with(|| self.step_unchecked(&cfg, a)).clone();
                    next.push((w.push(a), succ));
                }
            }
            layer = next;
        }
        out
    }
}

/// Above this many interleaving letters in a word, symbolic runs are used:
/// the numeric method works in an algebra of dimension `2^markers`.
const NUMERIC_MARKER_LIMIT: usize = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::catalog;

    #[test]
    fn hadamard_runs_first_letter_first() {
        let a = catalog::square_and_complement(int(2));
        let x = a.nonterminal(0);
        let one = Polynomial::one(1);
        let a1 = a.letter("a1").unwrap();
        let a2 = a.letter("a2").unwrap();
        assert_eq!(a.step(&x, a2).unwrap(), &one - &x.pow(2));
        let w = a.word(&["a1", "a2"]).unwrap();
        assert_eq!(a.run(&x, &w).unwrap(), (&one - &x.pow(2)).pow(2));
        assert_eq!(a.coefficient(&x, &w).unwrap(), int(9));
        assert_eq!(a.coefficient(&x, &Word(vec![a2, a1])).unwrap(), int(-15));
        assert_eq!(a.coefficient(&x, &Word::empty()).unwrap(), int(2));
    }

    #[test]
    fn binomial_shuffle_steps() {
        let b = catalog::binomial_shuffle();
        let x = |i| b.nonterminal(i);
        let one = Polynomial::one(3);
        let cfg = &x(0) * &(&one + &x(2));
        let a2 = b.letter("a2").unwrap();
        let expected = &(&(&x(0) * &x(1)) * &(&one + &x(2))) + &x(0);
        assert_eq!(b.step(&cfg, a2).unwrap(), expected);
        assert!(b.step(&one, a2).unwrap().is_zero());
        let w = b.word(&["a1", "a2"]).unwrap();
        assert_eq!(b.coefficient(&x(0), &w).unwrap(), int(1));
        let t = b.truncate(&x(0), 3).unwrap();
        assert_eq!(t.coeff(&b.word(&["a1", "a1", "a2"]).unwrap()), int(2));
    }

    #[test]
    fn zero_output_truncates_to_zero() {
        let a = catalog::commuting_powers(int(0));
        assert!(a.truncate(&a.nonterminal(0), 4).unwrap().is_zero());
        let z = catalog::square_and_complement(int(3));
        assert!(z.truncate(&Polynomial::zero(1), 3).unwrap().is_zero());
    }

    #[test]
    fn single_word_automaton_truncates_to_its_word() {
        let ab = catalog::single_word(&["a", "b"], &[0, 1], ProductMode::Hadamard);
        let t = ab.truncate(&ab.nonterminal(0), 3).unwrap();
        let expected = TruncatedSeries::from_coeffs(2, 3, [(Word(vec![0, 1]), int(1))]);
        assert_eq!(t, expected);
    }

    #[test]
    fn errors() {
        let a = catalog::square_and_complement(int(2));
        assert!(matches!(a.letter("zz"), Err(AutomatonError::UnknownSymbol(_))));
        assert!(a.step(&a.nonterminal(0), 5).is_err());
        assert!(a.step(&Polynomial::var(1, 2), 0).is_err());
        assert!(MixedAutomaton::uniform(ProductMode::Shuffle, &["a"], &["X"], vec![], vec![int(1)]).is_err());
    }
}
