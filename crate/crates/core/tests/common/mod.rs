//! Random small automata and the property checks shared by the integration
//! suites and the acceptance target.

#![allow(dead_code)]

use parikh::algebra::{extend, Extension};
use parikh::automata::{right_derivative_automaton, shuffle_gadget, to_polynomial_automaton};
use parikh::decide::{commutativity_within, zeroness_within};
use parikh::oracle::{words_up_to, TruncatedSeries};
use parikh::{int, rat, LetterSpec, Limits, MixedAutomaton, Monomial, Polynomial, ProductMode, Rational, Witness, Word};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 200;
pub const WINDOW: usize = 4;

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-2i64..=2).prop_map(int)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d))
}

/// Up to three terms of total degree at most `max_degree` in `arity` variables.
pub fn polynomial(arity: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, arity), -2i64..=2), 0..=3).prop_map(move |terms| {
        Polynomial::from_terms(
            arity,
            terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_degree).map(|(e, c)| (Monomial::new(e), int(c))),
        )
    })
}

pub fn mode() -> impl Strategy<Value = ProductMode> {
    prop_oneof![Just(ProductMode::Hadamard), Just(ProductMode::Shuffle), Just(ProductMode::Infiltration)]
}

fn assemble(modes: Vec<ProductMode>, k: usize, delta: Vec<Vec<Polynomial>>, output: Vec<Rational>, prefix: &str) -> MixedAutomaton {
    let letters = modes.iter().enumerate().map(|(a, &m)| LetterSpec::new(format!("{prefix}{a}"), m)).collect();
    let names = (0..k).map(|i| format!("X{i}")).collect();
    MixedAutomaton::new(letters, names, delta, output).expect("generated automaton is well formed")
}

/// `k ≤ 3` nonterminals, `|Σ| ≤ 3` letters with independently chosen modes,
/// transitions of degree at most 2.
pub fn automaton() -> impl Strategy<Value = MixedAutomaton> {
    (1..=3usize, 1..=3usize).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(mode(), n),
            prop::collection::vec(prop::collection::vec(polynomial(k, 2), k), n),
            prop::collection::vec(small_int(), k),
        )
            .prop_map(move |(modes, delta, output)| assemble(modes, k, delta, output, "a"))
    })
}

/// Like [`automaton`] with one mode for every letter.
pub fn uniform_automaton(mode: ProductMode, prefix: &'static str) -> impl Strategy<Value = MixedAutomaton> {
    (1..=3usize, 1..=2usize).prop_flat_map(move |(k, n)| {
        (prop::collection::vec(prop::collection::vec(polynomial(k, 2), k), n), prop::collection::vec(small_int(), k))
            .prop_map(move |(delta, output)| assemble(vec![mode; n], k, delta, output, prefix))
    })
}

/// `k ≤ 2` nonterminals, `|Σ| ≤ 2` letters with mixed modes and affine
/// transitions. Affine maps never raise degrees, so every decision procedure
/// stays small on these.
pub fn affine_automaton() -> impl Strategy<Value = MixedAutomaton> {
    (1..=2usize, 1..=2usize).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(mode(), n),
            prop::collection::vec(prop::collection::vec(polynomial(k, 1), k), n),
            prop::collection::vec(small_int(), k),
        )
            .prop_map(move |(modes, delta, output)| assemble(modes, k, delta, output, "a"))
    })
}

/// An automaton with a configuration over its nonterminals.
pub fn instance() -> impl Strategy<Value = (MixedAutomaton, Polynomial)> {
    automaton().prop_flat_map(|a| {
        let k = a.dimension();
        (Just(a), polynomial(k, 2))
    })
}

/// Instances that tend to be commutative or zero: letters act by commuting
/// maps (powers of one variable, or the same map), outputs are often zero.
pub fn structured_instance() -> impl Strategy<Value = (MixedAutomaton, Polynomial)> {
    (1..=3usize, mode(), prop::collection::vec(1u32..=3, 1..=3), prop::bool::ANY, -1i64..=1).prop_map(|(k, m, powers, same, out)| {
        let n = powers.len();
        let delta: Vec<Vec<Polynomial>> = (0..n)
            .map(|a| {
                (0..k)
                    .map(|i| {
                        let x = Polynomial::var(i, k);
                        if same {
                            x.pow(powers[0])
                        } else {
                            x.pow(powers[a])
                        }
                    })
                    .collect()
            })
            .collect();
        let a = assemble(vec![m; n], k, delta, vec![int(out); k], "a");
        let alpha = Polynomial::var(0, k);
        (a, alpha)
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn check_sum_law(a: &MixedAutomaton, alpha: &Polynomial, beta: &Polynomial) -> Result<(), TestCaseError> {
    let lhs = a.truncate(&(alpha + beta), WINDOW).unwrap();
    let rhs = a.truncate(alpha, WINDOW).unwrap().add(&a.truncate(beta, WINDOW).unwrap()).unwrap();
    ensure(lhs == rhs, || "truncate(α+β) differs from the sum".into())
}

pub fn check_product_law(a: &MixedAutomaton, alpha: &Polynomial, beta: &Polynomial) -> Result<(), TestCaseError> {
    let lhs = a.truncate(&(alpha * beta), WINDOW).unwrap();
    let rhs = a.truncate(alpha, WINDOW).unwrap().product(&a.truncate(beta, WINDOW).unwrap(), &a.modes()).unwrap();
    ensure(lhs == rhs, || "truncate(α·β) differs from the product of truncations".into())
}

pub fn check_derivative_law(a: &MixedAutomaton, alpha: &Polynomial) -> Result<(), TestCaseError> {
    let whole = a.truncate(alpha, WINDOW).unwrap();
    for l in 0..a.alphabet_size() {
        let lhs = a.truncate(&a.step(alpha, l).unwrap(), WINDOW - 1).unwrap();
        ensure(lhs == whole.left_derivative(l).unwrap(), || format!("truncate(Δ_{l} α) is not the left derivative"))?;
    }
    Ok(())
}

/// The extension of each kind obeys its product rule on `beta · gamma`.
pub fn check_leibniz(images: &[Polynomial], beta: &Polynomial, gamma: &Polynomial) -> Result<(), TestCaseError> {
    for kind in [Extension::Endomorphism, Extension::Derivation, Extension::SigmaDerivation] {
        let d = |p: &Polynomial| extend(kind, images, p);
        let (db, dg) = (d(beta), d(gamma));
        let expected = match kind {
            Extension::Endomorphism => &db * &dg,
            Extension::Derivation => &(&db * gamma) + &(beta * &dg),
            Extension::SigmaDerivation => &(&(&db * gamma) + &(beta * &dg)) + &(&db * &dg),
        };
        ensure(d(&(beta * gamma)) == expected, || format!("{kind:?} product rule fails"))?;
    }
    Ok(())
}

pub fn check_right_derivative(a: &MixedAutomaton, alpha: &Polynomial) -> Result<(), TestCaseError> {
    let whole = a.truncate(alpha, WINDOW + 1).unwrap();
    for l in 0..a.alphabet_size() {
        let rd = right_derivative_automaton(a, l).unwrap();
        let lhs = rd.automaton.truncate(&rd.represent(alpha), WINDOW).unwrap();
        ensure(lhs == whole.right_derivative(l).unwrap().restrict(WINDOW), || {
            format!("right-derivative automaton for letter {l} disagrees with the oracle")
        })?;
    }
    Ok(())
}

pub fn check_gadget(a: &MixedAutomaton, alpha: &Polynomial, b: &MixedAutomaton, beta: &Polynomial) -> Result<(), TestCaseError> {
    let g = shuffle_gadget(a, alpha, b, beta).unwrap();
    let (s, t) = (a.alphabet_size(), b.alphabet_size());
    let ta = a.truncate(alpha, WINDOW).unwrap();
    let tb = b.truncate(beta, WINDOW).unwrap();
    let fa = TruncatedSeries::from_coeffs(s + t, WINDOW, ta.support().map(|(w, c)| (w.clone(), c.clone())));
    let fb = TruncatedSeries::from_coeffs(
        s + t,
        WINDOW,
        tb.support().map(|(w, c)| (Word(w.letters().iter().map(|x| x + s).collect()), c.clone())),
    );
    let expected = fa.shuffle(&fb).unwrap();
    ensure(g.automaton.truncate(&g.configuration, WINDOW).unwrap() == expected, || "gadget differs from the oracle shuffle".into())
}

pub fn check_conversion(a: &MixedAutomaton, alpha: &Polynomial) -> Result<(), TestCaseError> {
    let p = to_polynomial_automaton(a, alpha).unwrap();
    for w in words_up_to(a.alphabet_size(), WINDOW) {
        let lhs = p.coefficient(&w).unwrap();
        let rhs = a.coefficient(alpha, &w.reversed()).unwrap();
        ensure(lhs == rhs, || format!("conversion disagrees on {w:?}"))?;
    }
    Ok(())
}

/// Bounds that keep random instances fast; undecided cases are discarded.
pub const DECISION_LIMITS: Limits = Limits { max_level: Some(10), max_degree: Some(8) };

fn decided<T>(v: Option<T>) -> Result<T, TestCaseError> {
    v.ok_or_else(|| TestCaseError::reject("exceeds decision limits"))
}

/// Verdicts never contradict the oracle window of length 5.
pub fn check_decisions(a: &MixedAutomaton, alpha: &Polynomial) -> Result<(), TestCaseError> {
    let window = a.truncate(alpha, 5).unwrap();
    let z = decided(zeroness_within(a, alpha, &DECISION_LIMITS).unwrap())?;
    match &z.witness {
        Some(Witness::Word { word, coefficient }) => {
            ensure(!z.holds && *coefficient != int(0), || "zeroness witness with zero coefficient".into())?;
            ensure(a.coefficient(alpha, word).unwrap() == *coefficient, || "zeroness witness does not re-check".into())?;
        }
        Some(Witness::Pair(_)) => return Err(TestCaseError::fail("zeroness returned a pair")),
        None => ensure(z.holds && window.is_zero(), || "zero verdict contradicted by the window".into())?,
    }
    let c = decided(commutativity_within(a, alpha, &DECISION_LIMITS).unwrap())?;
    match &c.witness {
        Some(Witness::Pair(p)) => {
            ensure(!c.holds, || "witness on a positive verdict".into())?;
            ensure(parikh::oracle::parikh(&p.u, a.alphabet_size()) == parikh::oracle::parikh(&p.v, a.alphabet_size()), || {
                "witness words are not Parikh-equivalent".into()
            })?;
            ensure(p.fu != p.fv, || "witness coefficients agree".into())?;
            ensure(a.coefficient(alpha, &p.u).unwrap() == p.fu && a.coefficient(alpha, &p.v).unwrap() == p.fv, || {
                "witness coefficients do not re-check".into()
            })?;
        }
        Some(Witness::Word { .. }) => return Err(TestCaseError::fail("commutativity returned a single word")),
        None => ensure(c.holds && window.is_commutative(), || "commutative verdict contradicted by the window".into())?,
    }
    Ok(())
}
