//! Zeroness, equality and commutativity of automaton series.
//!
//! Zeroness follows the ascending ideal chain `I_n = ⟨Δ_w α : |w| ≤ n⟩`.
//! Each extension rule satisfies a twisted Leibniz law
//! (endomorphism `Δ(βg) = Δβ·Δg`, derivation `Δβ·g + β·Δg`,
//! σ-derivation `Δβ·g + (β + Δβ)·Δg`), so `I + ⟨Δ(G)⟩` does not depend on
//! the generating set `G` of `I`. Hence `I_{n+1} = I_n + ⟨Δₐ g⟩` where `g`
//! ranges over the basis elements that are new at level `n` only. Once `I_N = I_{N+1}`
//! the chain is constant, every `Δ_w α` lies in `I_N`, and the series is zero
//! iff the coefficients of all words of length at most `N` vanish.

use std::collections::HashSet;

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};
use crate::automata::{disjoint_union, right_derivative_automaton, AutomatonError, MixedAutomaton};
use crate::groebner::GroebnerBasis;
use crate::oracle::{Letter, Word, WordPair};

/// Evidence for a negative verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A word with a nonzero coefficient.
    Word { word: Word, coefficient: Rational },
    /// Parikh-equivalent words with different coefficients.
    Pair(WordPair),
}

/// Which commutativity equation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// `∂ₐ∂_b f = ∂_b∂ₐ f`.
    Swap(Letter, Letter),
    /// `∂ₐ f = f ∂ₐ`.
    Rotate(Letter),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Level at which the ideal chain stabilised; for commutativity the
    /// largest level over all checks. `None` when a witness was found first.
    pub stabilization_index: Option<usize>,
    pub failed_check: Option<Check>,
}

impl Verdict {
    fn holds(n: usize) -> Self {
        Verdict { holds: true, witness: None, stabilization_index: Some(n), failed_check: None }
    }

    fn fails(witness: Witness) -> Self {
        Verdict { holds: false, witness: Some(witness), stabilization_index: None, failed_check: None }
    }
}

/// Optional resource limits. A decision that would exceed them is reported
/// as undecided instead of running on; the defaults impose none.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Largest chain level to compute.
    pub max_level: Option<usize>,
    /// Largest total degree of any configuration or chain generator.
    pub max_degree: Option<u64>,
}

impl Limits {
    fn level_ok(&self, level: usize) -> bool {
        self.max_level.is_none_or(|m| level <= m)
    }

    fn degree_ok(&self, p: &Polynomial) -> bool {
        self.max_degree.is_none_or(|m| p.total_degree().unwrap_or(0) <= m)
    }
}

/// Ideal chain state: `basis` generates `I_level`, `frontier` holds the basis
/// elements that are new at `level`.
#[derive(Clone, Debug)]
pub struct IdealChain<'a> {
    automaton: &'a MixedAutomaton,
    basis: GroebnerBasis,
    level: usize,
    frontier: Vec<Polynomial>,
    stable: bool,
}

impl<'a> IdealChain<'a> {
    pub fn new(automaton: &'a MixedAutomaton, alpha: &Polynomial) -> Result<Self, AutomatonError> {
        let k = automaton.dimension();
        if alpha.used_arity() > k {
            return Err(AutomatonError::ConfigurationArity { expected: k, found: alpha.used_arity() });
        }
        let alpha = alpha.clone().with_arity(k);
        let basis = GroebnerBasis::grevlex(std::slice::from_ref(&alpha), k);
        let frontier = basis.basis();
        Ok(IdealChain { automaton, basis, level: 0, frontier, stable: false })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Computes `I_{level+1}`. Returns `true` if the ideal grew; once it does
    /// not, the chain is stable and `level` is its stabilisation index.
    pub fn advance(&mut self) -> bool {
        self.try_advance(None).expect("no degree limit")
    }

    /// Like [`advance`](Self::advance), but leaves the chain unchanged and
    /// returns `None` if a new generator would exceed `max_degree`.
    pub fn try_advance(&mut self, max_degree: Option<u64>) -> Option<bool> {
        if self.stable {
            return Some(false);
        }
        let mut fresh = Vec::new();
        if !self.basis.contains_one() {
            for g in &self.frontier {
                for a in 0..self.automaton.alphabet_size() {
                    let d = self.automaton.step_unchecked(g, a);
                    let r = self.basis.normal_form(&d).expect("chain arity");
                    if !r.is_zero() {
                        if max_degree.is_some_and(|m| r.total_degree().unwrap_or(0) > m) {
                            return None;
                        }
                        fresh.push(r);
                    }
                }
            }
        }
        if fresh.is_empty() {
            self.stable = true;
            return Some(false);
        }
        let old: HashSet<Polynomial> = self.basis.basis().into_iter().collect();
        self.basis = self.basis.extend_within(&fresh, max_degree)?;
        self.frontier = self.basis.basis().into_iter().filter(|g| !old.contains(g)).collect();
        self.level += 1;
        Some(true)
    }

    /// Advances until stable or until `max_level` is reached.
    pub fn stabilize(&mut self, max_level: Option<usize>) -> Option<usize> {
        while !self.stable {
            if max_level.is_some_and(|m| self.level >= m) {
                return None;
            }
            self.advance();
        }
        Some(self.level)
    }
}

/// Decides whether `⟦alpha⟧` is the zero series.
///
/// Words are checked level by level in shortlex order while the chain is
/// advanced, so a nonzero series is reported with its shortlex-least
/// nonzero word, possibly before the chain stabilises.
pub fn zeroness(automaton: &MixedAutomaton, alpha: &Polynomial) -> Result<Verdict, AutomatonError> {
    zeroness_within(automaton, alpha, &Limits::default()).map(|v| v.expect("no limits"))
}

/// [`zeroness`] under `limits`; `None` when they are exceeded first.
pub fn zeroness_within(automaton: &MixedAutomaton, alpha: &Polynomial, limits: &Limits) -> Result<Option<Verdict>, AutomatonError> {
    let mut chain = IdealChain::new(automaton, alpha)?;
    let alpha = alpha.clone().with_arity(automaton.dimension());
    if !limits.degree_ok(&alpha) {
        return Ok(None);
    }
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut layer: Vec<(Word, Polynomial)> = Vec::new();
    if !alpha.is_zero() {
        seen.insert(alpha.clone());
        layer.push((Word::empty(), alpha));
    }
    loop {
        for (w, cfg) in &layer {
            let c = automaton.evaluate_output(cfg);
            if !c.is_zero() {
                return Ok(Some(Verdict::fails(Witness::Word { word: w.clone(), coefficient: c })));
            }
        }
        if !limits.level_ok(chain.level() + 1) {
            return Ok(None);
        }
        match chain.try_advance(limits.max_degree) {
            None => return Ok(None),
            Some(false) => return Ok(Some(Verdict::holds(chain.level()))),
            Some(true) => {}
        }
        let mut next = Vec::new();
        for (w, cfg) in &layer {
            for a in 0..automaton.alphabet_size() {
                let succ = automaton.step_unchecked(cfg, a);
                if !succ.is_zero() && seen.insert(succ.clone()) {
                    if !limits.degree_ok(&succ) {
                        return Ok(None);
                    }
                    next.push((w.push(a), succ));
                }
            }
        }
        layer = next;
    }
}

/// Decides `⟦alpha⟧_A = ⟦beta⟧_B` for automata over the same alphabet.
pub fn equality(a: &MixedAutomaton, alpha: &Polynomial, b: &MixedAutomaton, beta: &Polynomial) -> Result<Verdict, AutomatonError> {
    equality_within(a, alpha, b, beta, &Limits::default()).map(|v| v.expect("no limits"))
}

/// [`equality`] under `limits`.
pub fn equality_within(
    a: &MixedAutomaton,
    alpha: &Polynomial,
    b: &MixedAutomaton,
    beta: &Polynomial,
    limits: &Limits,
) -> Result<Option<Verdict>, AutomatonError> {
    for (p, aut) in [(alpha, a), (beta, b)] {
        if p.used_arity() > aut.dimension() {
            return Err(AutomatonError::ConfigurationArity { expected: aut.dimension(), found: p.used_arity() });
        }
    }
    let u = disjoint_union(a, b)?;
    zeroness_within(&u.automaton, &(&u.embed_left(alpha) - &u.embed_right(beta)), limits)
}

/// Decides whether `⟦alpha⟧` is commutative via the swap equations for each
/// pair of distinct letters and the rotate equation for each letter.
pub fn commutativity(automaton: &MixedAutomaton, alpha: &Polynomial) -> Result<Verdict, AutomatonError> {
    commutativity_within(automaton, alpha, &Limits::default()).map(|v| v.expect("no limits"))
}

/// [`commutativity`] under `limits`, applied to each swap and rotate check.
pub fn commutativity_within(automaton: &MixedAutomaton, alpha: &Polynomial, limits: &Limits) -> Result<Option<Verdict>, AutomatonError> {
    let k = automaton.dimension();
    if alpha.used_arity() > k {
        return Err(AutomatonError::ConfigurationArity { expected: k, found: alpha.used_arity() });
    }
    let n = automaton.alphabet_size();
    if n <= 1 {
        return Ok(Some(Verdict::holds(0)));
    }
    let mut index = 0;
    let pair_witness = |u: Word, v: Word| -> Result<Witness, AutomatonError> {
        let fu = automaton.coefficient(alpha, &u)?;
        let fv = automaton.coefficient(alpha, &v)?;
        Ok(Witness::Pair(WordPair { u, fu, v, fv }))
    };
    for a in 0..n {
        for b in a + 1..n {
            let da = automaton.step(alpha, a)?;
            let db = automaton.step(alpha, b)?;
            let swap = &automaton.step(&da, b)? - &automaton.step(&db, a)?;
            let Some(v) = zeroness_within(automaton, &swap, limits)? else { return Ok(None) };
            if let Some(Witness::Word { word, .. }) = &v.witness {
                let u = word.prepend(b).prepend(a);
                let w = word.prepend(a).prepend(b);
                return Ok(Some(Verdict { failed_check: Some(Check::Swap(a, b)), ..Verdict::fails(pair_witness(u, w)?) }));
            }
            index = index.max(v.stabilization_index.unwrap_or(0));
        }
    }
    for a in 0..n {
        let rd = right_derivative_automaton(automaton, a)?;
        let rotate = &rd.embed(&automaton.step(alpha, a)?) - &rd.represent(alpha);
        let Some(v) = zeroness_within(&rd.automaton, &rotate, limits)? else { return Ok(None) };
        if let Some(Witness::Word { word, .. }) = &v.witness {
            let u = word.prepend(a);
            let w = word.push(a);
            return Ok(Some(Verdict { failed_check: Some(Check::Rotate(a)), ..Verdict::fails(pair_witness(u, w)?) }));
        }
        index = index.max(v.stabilization_index.unwrap_or(0));
    }
    Ok(Some(Verdict::holds(index)))
}
