//! Workloads shared by the benchmarks.

use parikh::apps::PolyrecSystem;
use parikh::{catalog, int, MixedAutomaton, Polynomial};

/// The intro automaton with output `c` and its start configuration.
pub fn intro(c: i64) -> (MixedAutomaton, Polynomial) {
    let a = catalog::square_and_complement(int(c));
    let alpha = a.nonterminal(0);
    (a, alpha)
}

/// Both Fibonacci presentations with their start configurations.
pub fn fibonacci() -> [(MixedAutomaton, Polynomial); 2] {
    [catalog::fibonacci_sum_form(), catalog::fibonacci_shift_form()].map(|a| {
        let alpha = a.nonterminal(0);
        (a, alpha)
    })
}

/// `f ↦ f^p` along one coordinate and `f ↦ f^q` along the other.
pub fn powers(p: u32, q: u32, c: i64) -> PolyrecSystem {
    let f = Polynomial::var(0, 1);
    PolyrecSystem::new(vec!["f".into()], vec![vec![f.pow(p)], vec![f.pow(q)]], vec![int(c)]).expect("well formed")
}

/// Generators `x_i^2 - x_{i+1}` for `i < n`, closed by `x_n^2 - x_1`.
pub fn cyclic_squares(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| &Polynomial::var(i, n).pow(2) - &Polynomial::var((i + 1) % n, n)).collect()
}
