mod common;

use common::*;
use parikh::varieties::{
    all_outputs_commutative, commutativity_polynomials, exists_commutative_output, output_membership, rational_point, stabilize, Answer,
    Stabilization,
};
use parikh::{commutativity, int, MixedAutomaton, Polynomial};
use proptest::prelude::*;

const DEPTH: usize = 6;

fn affine_instance() -> impl Strategy<Value = (MixedAutomaton, Polynomial)> {
    affine_automaton().prop_flat_map(|a| {
        let k = a.dimension();
        (Just(a), polynomial(k, 2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn commutativity_ideals_ascend((a, alpha) in affine_instance()) {
        let mut previous = commutativity_polynomials(&a, &alpha, 0).unwrap();
        prop_assert!(previous.basis.is_zero_ideal());
        for n in 1..=4 {
            let next = commutativity_polynomials(&a, &alpha, n).unwrap();
            prop_assert!(next.basis.contains_ideal(&previous.basis), "depth {}", n);
            previous = next;
        }
    }

    #[test]
    fn stable_ideal_contains_every_difference((a, alpha) in affine_instance()) {
        let Stabilization::Stable(s) = stabilize(&a, &alpha, DEPTH).unwrap() else {
            return Err(TestCaseError::reject("not stable within the budget"));
        };
        prop_assert!(s.ideal.contains_ideal(&commutativity_polynomials(&a, &alpha, DEPTH + 1).unwrap().basis));
        if let Some(c) = &s.commutativity {
            prop_assert!(c.basis.ideal_eq(&s.ideal));
        }
    }

    #[test]
    fn answers_are_consistent((a, alpha) in affine_instance()) {
        let exists = exists_commutative_output(&a, &alpha, DEPTH).unwrap();
        let all = all_outputs_commutative(&a, &alpha, DEPTH).unwrap();
        prop_assume!(exists != Answer::Unknown && all != Answer::Unknown);
        prop_assert!(!(all == Answer::Yes && exists == Answer::No));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn membership_agrees_with_commutativity((a, alpha) in affine_instance(), output in prop::collection::vec(small_int(), 2)) {
        let output = output[..a.dimension()].to_vec();
        let member = output_membership(&a, &alpha, &output, DEPTH).unwrap();
        prop_assume!(member != Answer::Unknown);
        let verdict = commutativity(&a.with_output(output).unwrap(), &alpha).unwrap();
        prop_assert_eq!(member == Answer::Yes, verdict.holds);
    }

    #[test]
    fn rational_points_are_commutative_outputs((a, alpha) in affine_instance()) {
        prop_assume!(exists_commutative_output(&a, &alpha, DEPTH).unwrap() == Answer::Yes);
        let Stabilization::Stable(s) = stabilize(&a, &alpha, DEPTH).unwrap() else {
            return Err(TestCaseError::fail("exists answered yes without a stable ideal"));
        };
        let point = rational_point(&s.ideal);
        prop_assume!(point.is_some());
        let output = point.unwrap();
        prop_assert!(commutativity(&a.with_output(output.clone()).unwrap(), &alpha).unwrap().holds, "point {:?}", output);
    }
}

#[test]
fn intro_rational_point_is_commutative() {
    let a = parikh::catalog::square_and_complement(int(2));
    let Stabilization::Stable(s) = stabilize(&a, &a.nonterminal(0), DEPTH).unwrap() else { panic!("intro automaton stabilises") };
    let point = rational_point(&s.ideal).expect("the variety has rational points");
    assert!([int(-1), int(0), int(1)].contains(&point[0]));
    assert!(commutativity(&a.with_output(point).unwrap(), &a.nonterminal(0)).unwrap().holds);
}
