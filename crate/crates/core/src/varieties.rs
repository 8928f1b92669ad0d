//! Output vectors for which a configuration denotes a commutative series.
//!
//! With the transitions fixed and the output `F` left free, `⟦α⟧_F` is
//! commutative exactly when `F` is a common zero of
//! `P = {Δ_u α − Δ_v α : u ∼ v}`. The ideal of `P` is computed exactly as the
//! sum of two kinds of stabilised ideal chains:
//!
//! * swap chains of `Δ_{ab}α − Δ_{ba}α` for letters `a < b`, whose members
//!   are `Δ_{abw}α − Δ_{baw}α`;
//! * rotate chains of `Δₐα − Rₐ(α)` in the right-derivative automaton, pulled
//!   back along `Yᵢ ↦ ΔₐXᵢ`, whose members are `Δ_{aw}α − Δ_{wa}α`.
//!
//! Swaps and rotations connect any two Parikh-equivalent words, so these
//! generate the whole ideal of `P`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Polynomial, Rational};
use crate::automata::{right_derivative_automaton, AutomatonError, MixedAutomaton, RightDerivative};
use crate::decide::IdealChain;
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::oracle::{parikh, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VarietyError {
    #[error("depth budget must be at least 2, got {0}")]
    DepthTooSmall(usize),
    #[error("output vector has {found} entries, expected {expected}")]
    OutputArity { expected: usize, found: usize },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Differences `Δ_u α − Δ_v α` over Parikh-equivalent words of length at most
/// `depth`, each taken against the sorted representative of its class.
/// Differences already in the ideal of earlier ones are not stored.
#[derive(Clone, Debug)]
pub struct CommutativityIdeal {
    pub depth: usize,
    pub polynomials: Vec<Polynomial>,
    pub basis: GroebnerBasis,
}

struct DifferenceEnumerator<'a> {
    automaton: &'a MixedAutomaton,
    depth: usize,
    layer: Vec<(Word, Polynomial)>,
    seen: HashSet<Polynomial>,
    polynomials: Vec<Polynomial>,
    basis: GroebnerBasis,
}

impl<'a> DifferenceEnumerator<'a> {
    fn new(automaton: &'a MixedAutomaton, alpha: &Polynomial) -> Self {
        let k = automaton.dimension();
        DifferenceEnumerator {
            automaton,
            depth: 0,
            layer: vec![(Word::empty(), alpha.clone().with_arity(k))],
            seen: HashSet::new(),
            polynomials: Vec::new(),
            basis: GroebnerBasis::grevlex(&[], k),
        }
    }

    fn advance(&mut self) {
        let n = self.automaton.alphabet_size();
        let mut next = Vec::with_capacity(self.layer.len() * n);
        for (w, cfg) in &self.layer {
            for a in 0..n {
                next.push((w.push(a), self.automaton.step_unchecked(cfg, a)));
            }
        }
        // Words arrive in lexicographic order, so the first of each class is sorted.
        let mut representatives: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut fresh = Vec::new();
        for (idx, (w, cfg)) in next.iter().enumerate() {
            let class = parikh(w, n);
            match representatives.get(&class) {
                None => {
                    representatives.insert(class, idx);
                }
                Some(&rep) => {
                    let diff = cfg - &next[rep].1;
                    if !diff.is_zero() && self.seen.insert(diff.clone()) && !self.basis.contains_unchecked(&diff) {
                        fresh.push(diff);
                    }
                }
            }
        }
        if !fresh.is_empty() {
            self.basis = self.basis.extend(&fresh);
            self.polynomials.extend(fresh);
        }
        self.layer = next;
        self.depth += 1;
    }

    fn snapshot(&self) -> CommutativityIdeal {
        CommutativityIdeal { depth: self.depth, polynomials: self.polynomials.clone(), basis: self.basis.clone() }
    }
}

fn check_configuration(automaton: &MixedAutomaton, alpha: &Polynomial) -> Result<(), VarietyError> {
    let k = automaton.dimension();
    if alpha.used_arity() > k {
        return Err(AutomatonError::ConfigurationArity { expected: k, found: alpha.used_arity() }.into());
    }
    Ok(())
}

pub fn commutativity_polynomials(automaton: &MixedAutomaton, alpha: &Polynomial, depth: usize) -> Result<CommutativityIdeal, VarietyError> {
    check_configuration(automaton, alpha)?;
    let mut e = DifferenceEnumerator::new(automaton, alpha);
    while e.depth < depth {
        e.advance();
    }
    Ok(e.snapshot())
}

/// The exact ideal of all commutativity polynomials.
#[derive(Clone, Debug)]
pub struct StableIdeal {
    pub ideal: GroebnerBasis,
    /// Largest level any swap or rotate chain needed to stabilise.
    pub chain_levels: usize,
    /// Least `n` within the budget whose differences already generate the
    /// ideal, with those differences.
    pub commutativity: Option<CommutativityIdeal>,
}

impl StableIdeal {
    pub fn depth(&self) -> Option<usize> {
        self.commutativity.as_ref().map(|c| c.depth)
    }
}

#[derive(Clone, Debug)]
pub enum Stabilization {
    Stable(StableIdeal),
    /// Some chain did not stabilise within the budget.
    Unknown {
        max_depth: usize,
    },
}

enum ChainOutcome {
    Stable { ideal: GroebnerBasis, levels: usize },
    Decided,
    Exhausted,
}

/// Advances all swap and rotate chains in lockstep for at most `max_levels`
/// levels. `decided` sees the partial ideal after every level; as the partial
/// ideal only grows towards the full one, it may stop early on monotone facts.
fn run_chains(
    automaton: &MixedAutomaton,
    alpha: &Polynomial,
    max_levels: usize,
    mut decided: impl FnMut(&GroebnerBasis) -> bool,
) -> Result<ChainOutcome, VarietyError> {
    check_configuration(automaton, alpha)?;
    let k = automaton.dimension();
    let n = automaton.alphabet_size();
    let alpha = alpha.clone().with_arity(k);
    let derivatives: Vec<RightDerivative> = (0..n).map(|a| right_derivative_automaton(automaton, a)).collect::<Result<_, _>>()?;
    let first: Vec<Polynomial> = (0..n).map(|a| automaton.step_unchecked(&alpha, a)).collect();

    // Each chain with the images pulling its polynomials back to the `X` variables.
    let mut chains: Vec<(IdealChain<'_>, Option<Vec<Polynomial>>)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let swap = &automaton.step_unchecked(&first[a], b) - &automaton.step_unchecked(&first[b], a);
            chains.push((IdealChain::new(automaton, &swap)?, None));
        }
    }
    for (a, rd) in derivatives.iter().enumerate() {
        let rotate = &rd.embed(&first[a]) - &rd.represent(&alpha);
        let images: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(i, k)).chain(automaton.transitions(a).iter().cloned()).collect();
        chains.push((IdealChain::new(&rd.automaton, &rotate)?, Some(images)));
    }

    let partial = |chains: &[(IdealChain<'_>, Option<Vec<Polynomial>>)]| {
        let gens: Vec<Polynomial> = chains
            .iter()
            .flat_map(|(chain, images)| {
                chain.basis().basis().into_iter().map(move |g| match images {
                    Some(images) => g.substitute_unchecked(images),
                    None => g,
                })
            })
            .collect();
        GroebnerBasis::grevlex(&gens, k)
    };

    loop {
        let ideal = partial(&chains);
        if decided(&ideal) {
            return Ok(ChainOutcome::Decided);
        }
        if chains.iter().all(|(c, _)| c.is_stable()) {
            let levels = chains.iter().map(|(c, _)| c.level()).max().unwrap_or(0);
            return Ok(ChainOutcome::Stable { ideal, levels });
        }
        if chains.iter().any(|(c, _)| !c.is_stable() && c.level() >= max_levels) {
            return Ok(ChainOutcome::Exhausted);
        }
        for (chain, _) in &mut chains {
            chain.advance();
        }
    }
}

fn check_budget(max_depth: usize) -> Result<(), VarietyError> {
    if max_depth < 2 {
        return Err(VarietyError::DepthTooSmall(max_depth));
    }
    Ok(())
}

/// Computes the ideal of all commutativity polynomials, allowing each chain
/// `max_depth` levels, then searches for the least word length `n ≤ max_depth`
/// whose differences generate it.
pub fn stabilize(automaton: &MixedAutomaton, alpha: &Polynomial, max_depth: usize) -> Result<Stabilization, VarietyError> {
    check_budget(max_depth)?;
    let (ideal, chain_levels) = match run_chains(automaton, alpha, max_depth, |_| false)? {
        ChainOutcome::Stable { ideal, levels } => (ideal, levels),
        _ => return Ok(Stabilization::Unknown { max_depth }),
    };
    let mut e = DifferenceEnumerator::new(automaton, alpha);
    let commutativity = loop {
        if e.basis.contains_ideal(&ideal) {
            break Some(e.snapshot());
        }
        if e.depth >= max_depth {
            break None;
        }
        e.advance();
    };
    Ok(Stabilization::Stable(StableIdeal { ideal, chain_levels, commutativity }))
}

/// Whether some output vector over the complex numbers makes `⟦α⟧` commutative.
pub fn exists_commutative_output(automaton: &MixedAutomaton, alpha: &Polynomial, max_depth: usize) -> Result<Answer, VarietyError> {
    check_budget(max_depth)?;
    Ok(match run_chains(automaton, alpha, max_depth, GroebnerBasis::contains_one)? {
        ChainOutcome::Decided => Answer::No,
        ChainOutcome::Stable { .. } => Answer::Yes,
        ChainOutcome::Exhausted => Answer::Unknown,
    })
}

/// Whether every output vector makes `⟦α⟧` commutative.
pub fn all_outputs_commutative(automaton: &MixedAutomaton, alpha: &Polynomial, max_depth: usize) -> Result<Answer, VarietyError> {
    check_budget(max_depth)?;
    Ok(match run_chains(automaton, alpha, max_depth, |g| !g.is_zero_ideal())? {
        ChainOutcome::Decided => Answer::No,
        ChainOutcome::Stable { .. } => Answer::Yes,
        ChainOutcome::Exhausted => Answer::Unknown,
    })
}

/// Whether the rational output vector `output` makes `⟦α⟧` commutative.
pub fn output_membership(
    automaton: &MixedAutomaton,
    alpha: &Polynomial,
    output: &[Rational],
    max_depth: usize,
) -> Result<Answer, VarietyError> {
    check_budget(max_depth)?;
    if output.len() != automaton.dimension() {
        return Err(VarietyError::OutputArity { expected: automaton.dimension(), found: output.len() });
    }
    let violated = |g: &GroebnerBasis| g.basis().iter().any(|p| !p.evaluate_unchecked(output).is_zero());
    Ok(match run_chains(automaton, alpha, max_depth, violated)? {
        ChainOutcome::Decided => Answer::No,
        ChainOutcome::Stable { .. } => Answer::Yes,
        ChainOutcome::Exhausted => Answer::Unknown,
    })
}

/// Searches for a rational zero of the ideal by back-substitution on lex
/// bases: the last free variable is solved from a univariate element when one
/// exists and otherwise tried at a few small integers.
pub fn rational_point(ideal: &GroebnerBasis) -> Option<Vec<Rational>> {
    let k = ideal.arity();
    let mut point = vec![Rational::zero(); k];
    search(ideal.basis(), k, k, &mut point).then_some(point)
}

const FREE_TRIALS: [i64; 5] = [0, 1, -1, 2, -2];

fn search(gens: Vec<Polynomial>, arity: usize, remaining: usize, point: &mut [Rational]) -> bool {
    let lex = GroebnerBasis::new(&gens, MonomialOrder::lex(arity));
    if lex.contains_one() {
        return false;
    }
    if remaining == 0 {
        return lex.is_zero_ideal();
    }
    let var = remaining - 1;
    let basis = lex.basis();
    let candidates = match basis.iter().find(|p| !p.is_constant() && only_variable(p, var)) {
        Some(p) => rational_roots(&univariate_coefficients(p, var)),
        None => FREE_TRIALS.iter().map(|&c| Rational::from_integer(c.into())).collect(),
    };
    for r in candidates {
        let images: Vec<Polynomial> =
            (0..arity).map(|i| if i == var { Polynomial::constant(r.clone(), arity) } else { Polynomial::var(i, arity) }).collect();
        let reduced: Vec<Polynomial> = basis.iter().map(|p| p.substitute_unchecked(&images)).collect();
        point[var] = r;
        if search(reduced, arity, var, point) {
            return true;
        }
    }
    false
}

fn only_variable(p: &Polynomial, var: usize) -> bool {
    p.terms().all(|(m, _)| (0..m.support_len()).all(|i| i == var || m.exponent(i) == 0))
}

fn univariate_coefficients(p: &Polynomial, var: usize) -> Vec<Rational> {
    let degree = p.terms().map(|(m, _)| m.exponent(var) as usize).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(var) as usize] += c;
    }
    coeffs
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Rational roots in ascending order, by the rational root test. Roots whose
/// numerator or denominator bound exceeds the search limit are not found.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let scale: BigInt = coeffs.iter().fold(BigInt::one(), |acc, c| acc * c.denom());
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(scale.clone())).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let leading_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if leading_zeros == ints.len() {
        return roots;
    }
    if leading_zeros > 0 {
        roots.push(Rational::zero());
        ints.drain(..leading_zeros);
    }
    let (Some(low), Some(high)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
        return roots;
    };
    if ints.len() == 1 || low > ROOT_SEARCH_LIMIT || high > ROOT_SEARCH_LIMIT {
        return roots;
    }
    let evaluate = |x: &Rational| ints.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()));
    for p in divisors(low) {
        for q in divisors(high) {
            for sign in [1i64, -1] {
                let x = Rational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                if evaluate(&x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
