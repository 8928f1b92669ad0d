use crate::algebra::{extend, Polynomial};
use crate::oracle::Letter;

use super::{AutomatonError, MixedAutomaton};

/// Two automata over the same alphabet side by side; the left nonterminals
/// come first.
#[derive(Clone, Debug)]
pub struct Union {
    pub automaton: MixedAutomaton,
    left_dimension: usize,
}

impl Union {
    pub fn embed_left(&self, alpha: &Polynomial) -> Polynomial {
        alpha.clone().with_arity(self.automaton.dimension())
    }

    pub fn embed_right(&self, beta: &Polynomial) -> Polynomial {
        beta.shifted(self.left_dimension, self.automaton.dimension())
    }
}

pub fn disjoint_union(left: &MixedAutomaton, right: &MixedAutomaton) -> Result<Union, AutomatonError> {
    if left.letters != right.letters {
        return Err(AutomatonError::AlphabetMismatch);
    }
    let (k, l) = (left.dimension(), right.dimension());
    let n = k + l;
    let mut names = left.nonterminals.clone();
    for name in &right.nonterminals {
        names.push(fresh_name(&names, name));
    }
    let delta = (0..left.alphabet_size())
        .map(|a| {
            let mut row: Vec<Polynomial> = left.delta[a].iter().map(|p| p.clone().with_arity(n)).collect();
            row.extend(right.delta[a].iter().map(|p| p.shifted(k, n)));
            row
        })
        .collect();
    let mut output = left.output.clone();
    output.extend(right.output.iter().cloned());
    let automaton = MixedAutomaton::new(left.letters.clone(), names, delta, output)?;
    Ok(Union { automaton, left_dimension: k })
}

pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (2..).map(|i| format!("{base}_{i}")).find(|c| !taken.iter().any(|t| t == c)).unwrap()
}

/// Automaton with nonterminals `X_1..X_k, Y_1..Y_k` where `⟦Y_i⟧` is the
/// right derivative of `⟦X_i⟧` by `letter`.
#[derive(Clone, Debug)]
pub struct RightDerivative {
    pub automaton: MixedAutomaton,
    pub letter: Letter,
    base_dimension: usize,
}

impl RightDerivative {
    /// Configuration over `X ∪ Y` whose series is the right derivative of `⟦alpha⟧`.
    pub fn represent(&self, alpha: &Polynomial) -> Polynomial {
        let k = self.base_dimension;
        represent(self.automaton.mode(self.letter), k, alpha)
    }

    pub fn embed(&self, alpha: &Polynomial) -> Polynomial {
        alpha.clone().with_arity(self.automaton.dimension())
    }
}

/// Endomorphism, derivation or σ-derivation sending `X_i` to `Y_i = X_{k+i}`.
fn represent(mode: super::ProductMode, k: usize, alpha: &Polynomial) -> Polynomial {
    let ys: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(k + i, 2 * k)).collect();
    extend(mode.extension(), &ys, alpha).with_arity(2 * k)
}

pub fn right_derivative_automaton(a: &MixedAutomaton, letter: Letter) -> Result<RightDerivative, AutomatonError> {
    if letter >= a.alphabet_size() {
        return Err(AutomatonError::LetterOutOfRange(letter));
    }
    let k = a.dimension();
    let mode = a.mode(letter);
    let mut names = a.nonterminals.clone();
    for name in &a.nonterminals {
        let base = format!("{name}_r{}", a.letters[letter].name);
        names.push(fresh_name(&names, &base));
    }
    let delta = (0..a.alphabet_size())
        .map(|b| {
            let mut row: Vec<Polynomial> = a.delta[b].iter().map(|p| p.clone().with_arity(2 * k)).collect();
            row.extend(a.delta[b].iter().map(|p| represent(mode, k, p)));
            row
        })
        .collect();
    let mut output = a.output.clone();
    output.extend(a.delta[letter].iter().map(|p| a.evaluate_output(p)));
    let automaton = MixedAutomaton::new(a.letters.clone(), names, delta, output)?;
    Ok(RightDerivative { automaton, letter, base_dimension: k })
}
