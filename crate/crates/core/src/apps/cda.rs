use std::ops::Deref;

use crate::algebra::{int, Polynomial, Rational};
use crate::automata::{MixedAutomaton, ProductMode};

use super::{AppsError, Equations, SystemVerdict};

/// Autonomous systems `∂_{xj} f_i = derivatives[j][i](f)` with `f(0) = init`.
///
/// Coefficients follow the exponential convention: the value at `n` is the
/// coefficient of `xⁿ/n!`; the ordinary coefficient is that divided by `n!`.
#[derive(Clone, Debug, PartialEq)]
pub struct CdaSystem(Equations);

impl CdaSystem {
    pub fn new(unknowns: Vec<String>, derivatives: Vec<Vec<Polynomial>>, init: Vec<Rational>) -> Result<Self, AppsError> {
        Equations::new(unknowns, derivatives, init).map(CdaSystem)
    }

    pub fn with_init(&self, init: Vec<Rational>) -> Result<Self, AppsError> {
        Self::new(self.0.unknowns.clone(), self.0.rules.clone(), init)
    }

    /// Adjoins an unknown standing for the variable `x_coordinate`
    /// (`∂_{x_coordinate} = 1`, other derivatives 0, initial value 0), so
    /// equations may mention it while the system stays autonomous.
    pub fn with_coordinate_unknown(&self, coordinate: usize, name: impl Into<String>) -> Result<Self, AppsError> {
        self.check_coordinate(coordinate)?;
        let k = self.0.unknowns.len() + 1;
        let mut unknowns = self.0.unknowns.clone();
        unknowns.push(name.into());
        let rules = self
            .0
            .rules
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let mut row: Vec<Polynomial> = row.iter().map(|p| p.clone().with_arity(k)).collect();
                row.push(if j == coordinate { Polynomial::one(k) } else { Polynomial::zero(k) });
                row
            })
            .collect();
        let mut init = self.0.init.clone();
        init.push(int(0));
        Self::new(unknowns, rules, init)
    }

    /// Shuffle automaton over `a1..ad` with `Δ_{aj} Xi = derivative_j,i` and output `init`.
    pub fn companion(&self) -> MixedAutomaton {
        self.0.companion(ProductMode::Shuffle)
    }
}

impl Deref for CdaSystem {
    type Target = Equations;

    fn deref(&self) -> &Equations {
        &self.0
    }
}

/// The system has a power-series solution iff every component of its
/// companion automaton is commutative.
pub fn cda_solvable(system: &CdaSystem) -> Result<SystemVerdict, AppsError> {
    system.all_components_commutative(ProductMode::Shuffle)
}

/// Coefficient of `xⁿ/n!` in `f_unknown`, read along the canonical path.
/// Fails on unsolvable systems unless `allow_unsolvable` is set.
pub fn taylor_coefficient(system: &CdaSystem, point: &[usize], unknown: usize, allow_unsolvable: bool) -> Result<Rational, AppsError> {
    system.check_unknown(unknown)?;
    let path = system.canonical_path(point)?;
    if !allow_unsolvable {
        system.require_commutative(ProductMode::Shuffle)?;
    }
    let companion = system.companion();
    Ok(companion.coefficient(&companion.nonterminal(unknown), &path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::catalog;

    fn binomial() -> CdaSystem {
        let x = |i| Polynomial::var(i, 3);
        let one = Polynomial::one(3);
        let zero = Polynomial::zero(3);
        CdaSystem::new(
            vec!["f1".into(), "f2".into(), "f3".into()],
            vec![vec![&x(0) * &(&one + &x(2)), one.clone(), zero.clone()], vec![&x(0) * &x(1), zero, one]],
            vec![int(1), int(0), int(0)],
        )
        .unwrap()
    }

    fn binom(n: usize, k: usize) -> i64 {
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
    }

    fn factorial(k: usize) -> i64 {
        (1..=k as i64).product()
    }

    #[test]
    fn companion_is_binomial_shuffle_automaton() {
        let a = binomial().companion();
        let b = catalog::binomial_shuffle();
        for l in 0..2 {
            assert_eq!(a.transitions(l), b.transitions(l));
        }
        assert_eq!(a.output(), b.output());
    }

    #[test]
    fn binomial_grid() {
        let s = binomial();
        assert!(cda_solvable(&s).unwrap().holds);
        for n in 0..=4 {
            for k in 0..=4 {
                let expected = if k <= n { binom(n, k) * factorial(k) } else { 0 };
                assert_eq!(taylor_coefficient(&s, &[n, k], 0, false).unwrap(), int(expected), "({n}, {k})");
            }
        }
    }

    #[test]
    fn unsolvable_system() {
        let g = Polynomial::var(1, 2);
        let one = Polynomial::one(2);
        let s =
            CdaSystem::new(vec!["f".into(), "g".into()], vec![vec![Polynomial::zero(2), one.clone()], vec![g, one]], vec![int(0), int(0)])
                .unwrap();
        for init in [[0, 0], [1, 0], [0, 1], [2, -3], [5, 7]] {
            let v = cda_solvable(&s.with_init(init.iter().map(|&c| int(c)).collect()).unwrap()).unwrap();
            assert!(!v.holds);
            let w = v.witness.unwrap();
            assert_ne!(w.pair.fu, w.pair.fv);
            assert_eq!(w.steps(), (w.pair.u.clone(), w.pair.v.clone()));
        }
        assert!(taylor_coefficient(&s, &[1, 1], 0, false).is_err());
        assert!(taylor_coefficient(&s, &[1, 1], 0, true).is_ok());
    }

    #[test]
    fn sensitivity_system() {
        let (f, g) = (Polynomial::var(0, 2), Polynomial::var(1, 2));
        let zero = Polynomial::zero(2);
        let s =
            CdaSystem::new(vec!["f".into(), "g".into()], vec![vec![&f + &g, zero.clone()], vec![zero, g]], vec![int(0), int(0)]).unwrap();
        for (fc, gc) in [(int(0), int(0)), (int(3), int(0)), (rat(1, 2), int(0)), (int(0), int(1)), (int(2), rat(-1, 3))] {
            let v = cda_solvable(&s.with_init(vec![fc.clone(), gc.clone()]).unwrap()).unwrap();
            assert_eq!(v.holds, gc == int(0), "init ({fc}, {gc})");
        }
    }

    #[test]
    fn derivative_law_on_grid() {
        let s = binomial();
        let a = s.companion();
        for n in 0..4 {
            for k in 0..4 {
                for j in 0..2 {
                    let mut next = [n, k];
                    next[j] += 1;
                    let w = crate::oracle::Word::from_powers(&[(0, n), (1, k)]);
                    for i in 0..3 {
                        let lhs = taylor_coefficient(&s, &next, i, false).unwrap();
                        let rhs = a.coefficient(s.rule(j, i), &w).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn coordinate_unknown() {
        let f = Polynomial::var(0, 1);
        let s = CdaSystem::new(vec!["f".into()], vec![vec![f]], vec![int(1)]).unwrap();
        let t = s.with_coordinate_unknown(0, "x1").unwrap();
        assert_eq!(t.unknowns(), &["f".to_string(), "x1".to_string()]);
        assert_eq!(taylor_coefficient(&t, &[1], 1, false).unwrap(), int(1));
        assert_eq!(taylor_coefficient(&t, &[2], 1, false).unwrap(), int(0));
        assert_eq!(taylor_coefficient(&t, &[3], 0, false).unwrap(), int(1));
    }
}
