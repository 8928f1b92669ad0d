use crate::algebra::Polynomial;

use super::constructions::fresh_name;
use super::{AutomatonError, LetterSpec, MixedAutomaton, ProductMode};

/// An automaton and a configuration recognising a shuffle product.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub automaton: MixedAutomaton,
    pub configuration: Polynomial,
}

/// Recognises `⟦alpha⟧ ⧢ ⟦beta⟧` for automata over disjoint alphabets that
/// share one uniform mode.
///
/// Over disjoint alphabets the shuffle is the tensor product
/// `(f ⧢ g)(w) = f(w|Σ) · g(w|Γ)`. Each side is embedded into the joint
/// alphabet by letting the other side's letters act neutrally: as the
/// identity in Hadamard mode (the embedding `f ↦ f ⊗ 𝟙`) and as zero in the
/// interleaving modes (`f ↦ f ⊗ ε`). The product configuration then
/// recognises the tensor product, since shuffle and infiltration coincide on
/// disjoint alphabets and `(f ⊗ 𝟙) ⊙ (𝟙 ⊗ g) = f ⊗ g`.
pub fn shuffle_gadget(a: &MixedAutomaton, alpha: &Polynomial, b: &MixedAutomaton, beta: &Polynomial) -> Result<Gadget, AutomatonError> {
    if let Some(l) = a.letters.iter().find(|l| b.letters.iter().any(|m| m.name == l.name)) {
        return Err(AutomatonError::OverlappingAlphabets(l.name.clone()));
    }
    let mode = match (a.uniform_mode()?, b.uniform_mode()?) {
        (Some(x), Some(y)) if x != y => return Err(AutomatonError::WrongMode { expected: x, found: y }),
        (Some(x), _) | (None, Some(x)) => x,
        (None, None) => ProductMode::Shuffle,
    };
    for (p, aut) in [(alpha, a), (beta, b)] {
        if p.used_arity() > aut.dimension() {
            return Err(AutomatonError::ConfigurationArity { expected: aut.dimension(), found: p.used_arity() });
        }
    }

    let (k, l) = (a.dimension(), b.dimension());
    let n = k + l;
    let neutral = |i: usize| match mode {
        ProductMode::Hadamard => Polynomial::var(i, n),
        _ => Polynomial::zero(n),
    };
    let mut letters: Vec<LetterSpec> = a.letters.iter().map(|x| LetterSpec::new(x.name.clone(), mode)).collect();
    letters.extend(b.letters.iter().map(|x| LetterSpec::new(x.name.clone(), mode)));
    let mut names = a.nonterminals.clone();
    for name in &b.nonterminals {
        names.push(fresh_name(&names, name));
    }
    let mut delta = Vec::with_capacity(letters.len());
    for row in &a.delta {
        let mut r: Vec<Polynomial> = row.iter().map(|p| p.clone().with_arity(n)).collect();
        r.extend((k..n).map(neutral));
        delta.push(r);
    }
    for row in &b.delta {
        let mut r: Vec<Polynomial> = (0..k).map(neutral).collect();
        r.extend(row.iter().map(|p| p.shifted(k, n)));
        delta.push(r);
    }
    let mut output = a.output.clone();
    output.extend(b.output.iter().cloned());
    let automaton = MixedAutomaton::new(letters, names, delta, output)?;
    let configuration = &alpha.clone().with_arity(n) * &beta.shifted(k, n);
    Ok(Gadget { automaton, configuration })
}
