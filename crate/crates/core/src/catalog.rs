//! Small automata used as worked examples in tests, benches and docs.

use crate::algebra::{int, Polynomial, Rational};
use crate::automata::{MixedAutomaton, ProductMode};

/// Hadamard automaton over `a1, a2` with one nonterminal `A`:
/// `a1: A ↦ A²`, `a2: A ↦ 1 − A²`, output `c`. Commutative iff `c ∈ {−1, 0, 1}`.
pub fn square_and_complement(c: Rational) -> MixedAutomaton {
    let a = Polynomial::var(0, 1);
    let delta = vec![vec![a.pow(2)], vec![&Polynomial::one(1) - &a.pow(2)]];
    MixedAutomaton::uniform(ProductMode::Hadamard, &["a1", "a2"], &["A"], delta, vec![c]).expect("well formed")
}

/// Hadamard automaton over `a1, a2`: `a1: A ↦ A³`, `a2: A ↦ A⁵`. The updates
/// commute, so every output gives a commutative series.
pub fn commuting_powers(c: Rational) -> MixedAutomaton {
    let a = Polynomial::var(0, 1);
    MixedAutomaton::uniform(ProductMode::Hadamard, &["a1", "a2"], &["A"], vec![vec![a.pow(3)], vec![a.pow(5)]], vec![c])
        .expect("well formed")
}

/// Shuffle automaton with `⟦X1⟧(w) = C(n, k)·k!` when `w = a1^n a2^k`.
pub fn binomial_shuffle() -> MixedAutomaton {
    let x = |i| Polynomial::var(i, 3);
    let one = Polynomial::one(3);
    let zero = Polynomial::zero(3);
    let delta = vec![vec![&x(0) * &(&one + &x(2)), one.clone(), zero.clone()], vec![&x(0) * &x(1), zero, one]];
    MixedAutomaton::uniform(ProductMode::Shuffle, &["a1", "a2"], &["X1", "X2", "X3"], delta, vec![int(1), int(0), int(0)])
        .expect("well formed")
}

/// Unary shuffle automaton `X ↦ X²`, `X(ε) = 1`, recognising `n!`.
pub fn factorial_shuffle() -> MixedAutomaton {
    let x = Polynomial::var(0, 1);
    MixedAutomaton::uniform(ProductMode::Shuffle, &["a"], &["X"], vec![vec![x.pow(2)]], vec![int(1)]).expect("well formed")
}

/// Linear automaton recognising `1·w` for `w` given as letter indices.
pub fn single_word(letters: &[&str], word: &[usize], mode: ProductMode) -> MixedAutomaton {
    let n = word.len() + 1;
    let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let delta = (0..letters.len())
        .map(|a| (0..n).map(|i| if i < word.len() && word[i] == a { Polynomial::var(i + 1, n) } else { Polynomial::zero(n) }).collect())
        .collect();
    let mut output = vec![int(0); n];
    output[n - 1] = int(1);
    MixedAutomaton::uniform(mode, letters, &names, delta, output).expect("well formed")
}

/// Hadamard automaton recognising `1·ε`.
pub fn epsilon_series(letters: &[&str]) -> MixedAutomaton {
    let delta = letters.iter().map(|_| vec![Polynomial::zero(1)]).collect();
    MixedAutomaton::uniform(ProductMode::Hadamard, letters, &["Z"], delta, vec![int(1)]).expect("well formed")
}

/// Unary Hadamard automaton with `Z ↦ ratio·Z`, so `⟦Z⟧(a^n) = init·ratioⁿ`.
pub fn single_letter_geometric(letter: &str, ratio: Rational, init: Rational) -> MixedAutomaton {
    let z = Polynomial::var(0, 1);
    MixedAutomaton::uniform(ProductMode::Hadamard, &[letter], &["Z"], vec![vec![z.scale(&ratio)]], vec![init]).expect("well formed")
}

/// Unary Hadamard automaton with `X ↦ X^e`.
pub fn single_letter_power(letter: &str, e: u32, init: Rational) -> MixedAutomaton {
    let x = Polynomial::var(0, 1);
    MixedAutomaton::uniform(ProductMode::Hadamard, &[letter], &["X"], vec![vec![x.pow(e)]], vec![init]).expect("well formed")
}

/// Fibonacci numbers as `⟦F⟧(aⁿ)` with `F ↦ F + G`, `G ↦ F`, `F(ε) = 0`, `G(ε) = 1`.
pub fn fibonacci_sum_form() -> MixedAutomaton {
    let (f, g) = (Polynomial::var(0, 2), Polynomial::var(1, 2));
    MixedAutomaton::uniform(ProductMode::Hadamard, &["a"], &["F", "G"], vec![vec![&f + &g, f]], vec![int(0), int(1)]).expect("well formed")
}

/// Fibonacci numbers as `⟦P⟧(aⁿ)` with `P ↦ Q`, `Q ↦ P + Q`, `P(ε) = 0`, `Q(ε) = 1`.
pub fn fibonacci_shift_form() -> MixedAutomaton {
    let (p, q) = (Polynomial::var(0, 2), Polynomial::var(1, 2));
    MixedAutomaton::uniform(ProductMode::Hadamard, &["a"], &["P", "Q"], vec![vec![q.clone(), &p + &q]], vec![int(0), int(1)])
        .expect("well formed")
}
