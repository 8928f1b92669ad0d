use crate::algebra::{Polynomial, Rational};
use crate::oracle::Word;

use super::{AutomatonError, LetterSpec, MixedAutomaton, ProductMode};

/// A state vector in `Q^k` updated by polynomial maps; reading `w` from the
/// initial state and applying `output` gives the coefficient of `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialAutomaton {
    pub letters: Vec<String>,
    pub variables: Vec<String>,
    pub initial: Vec<Rational>,
    /// `updates[a][i]` is the new value of coordinate `i` after reading `a`.
    pub updates: Vec<Vec<Polynomial>>,
    pub output: Polynomial,
}

impl PolynomialAutomaton {
    pub fn dimension(&self) -> usize {
        self.initial.len()
    }

    pub fn state_after(&self, w: &Word) -> Result<Vec<Rational>, AutomatonError> {
        let mut state = self.initial.clone();
        for &a in w.letters() {
            let update = self.updates.get(a).ok_or(AutomatonError::LetterOutOfRange(a))?;
            state = update.iter().map(|p| p.evaluate_unchecked(&state)).collect();
        }
        Ok(state)
    }

    pub fn coefficient(&self, w: &Word) -> Result<Rational, AutomatonError> {
        Ok(self.output.evaluate_unchecked(&self.state_after(w)?))
    }
}

/// Reading `w` in the result equals reading `reverse(w)` in `a` from `alpha`.
pub fn to_polynomial_automaton(a: &MixedAutomaton, alpha: &Polynomial) -> Result<PolynomialAutomaton, AutomatonError> {
    if let Some(mode) = a.uniform_mode()? {
        if mode != ProductMode::Hadamard {
            return Err(AutomatonError::WrongMode { expected: ProductMode::Hadamard, found: mode });
        }
    }
    if alpha.used_arity() > a.dimension() {
        return Err(AutomatonError::ConfigurationArity { expected: a.dimension(), found: alpha.used_arity() });
    }
    Ok(PolynomialAutomaton {
        letters: a.letter_names().iter().map(|s| s.to_string()).collect(),
        variables: a.nonterminals().to_vec(),
        initial: a.output().to_vec(),
        updates: (0..a.alphabet_size()).map(|l| a.transitions(l).to_vec()).collect(),
        output: alpha.clone().with_arity(a.dimension()),
    })
}

/// Inverse of [`to_polynomial_automaton`]: a Hadamard automaton and configuration.
pub fn from_polynomial_automaton(p: &PolynomialAutomaton) -> Result<(MixedAutomaton, Polynomial), AutomatonError> {
    let a = MixedAutomaton::new(
        p.letters.iter().map(|l| LetterSpec::new(l.clone(), ProductMode::Hadamard)).collect(),
        p.variables.clone(),
        p.updates.clone(),
        p.initial.clone(),
    )?;
    let alpha = p.output.clone().with_arity(a.dimension());
    Ok((a, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::catalog;
    use crate::oracle::words_up_to;

    #[test]
    fn reversal_on_square_and_complement() {
        let a = catalog::square_and_complement(int(2));
        let p = to_polynomial_automaton(&a, &a.nonterminal(0)).unwrap();
        let w = a.word(&["a1", "a2"]).unwrap();
        assert_eq!(p.coefficient(&w).unwrap(), int(-15));
        assert_eq!(a.coefficient(&a.nonterminal(0), &w).unwrap(), int(9));
        for w in words_up_to(2, 4) {
            assert_eq!(p.coefficient(&w).unwrap(), a.coefficient(&a.nonterminal(0), &w.reversed()).unwrap());
        }
    }

    #[test]
    fn round_trip() {
        let a = catalog::square_and_complement(int(3));
        let p = to_polynomial_automaton(&a, &a.nonterminal(0)).unwrap();
        let (b, beta) = from_polynomial_automaton(&p).unwrap();
        assert_eq!(b, a);
        assert_eq!(a.truncate(&a.nonterminal(0), 4).unwrap(), b.truncate(&beta, 4).unwrap());
    }

    #[test]
    fn rejects_shuffle_automata() {
        let b = catalog::binomial_shuffle();
        assert!(to_polynomial_automaton(&b, &b.nonterminal(0)).is_err());
    }
}
