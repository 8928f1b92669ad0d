mod common;

use common::*;
use parikh::{MixedAutomaton, Polynomial, ProductMode};
use proptest::prelude::*;

fn pair_of_configurations() -> impl Strategy<Value = (MixedAutomaton, Polynomial, Polynomial)> {
    automaton().prop_flat_map(|a| {
        let k = a.dimension();
        (Just(a), polynomial(k, 2), polynomial(k, 2))
    })
}

fn gadget_inputs() -> impl Strategy<Value = (MixedAutomaton, Polynomial, MixedAutomaton, Polynomial)> {
    mode().prop_flat_map(|m| {
        (uniform_automaton(m, "a"), uniform_automaton(m, "b")).prop_flat_map(|(a, b)| {
            let (k, l) = (a.dimension(), b.dimension());
            (Just(a), polynomial(k, 1), Just(b), polynomial(l, 1))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn semantics_is_additive((a, alpha, beta) in pair_of_configurations()) {
        check_sum_law(&a, &alpha, &beta)?;
    }

    #[test]
    fn semantics_is_multiplicative((a, alpha, beta) in pair_of_configurations()) {
        check_product_law(&a, &alpha, &beta)?;
    }

    #[test]
    fn steps_are_left_derivatives((a, alpha) in instance()) {
        check_derivative_law(&a, &alpha)?;
    }

    #[test]
    fn twisted_leibniz_laws(
        images in prop::collection::vec(polynomial(3, 2), 3),
        beta in polynomial(3, 2),
        gamma in polynomial(3, 2),
    ) {
        check_leibniz(&images, &beta, &gamma)?;
    }

    #[test]
    fn right_derivative_automaton_matches_oracle((a, alpha) in instance()) {
        check_right_derivative(&a, &alpha)?;
    }

    #[test]
    fn gadget_matches_oracle_shuffle((a, alpha, b, beta) in gadget_inputs()) {
        check_gadget(&a, &alpha, &b, &beta)?;
    }

    #[test]
    fn conversion_reverses_words(
        (a, alpha) in uniform_automaton(ProductMode::Hadamard, "a").prop_flat_map(|a| {
            let k = a.dimension();
            (Just(a), polynomial(k, 2))
        })
    ) {
        check_conversion(&a, &alpha)?;
    }
}
