use std::ops::Deref;

use crate::algebra::{Polynomial, Rational};
use crate::automata::{MixedAutomaton, ProductMode};

use super::{AppsError, Equations, SystemVerdict};

/// Multivariate sequences `f: ℕ^d → Q^k` with `f(n + e_j) = shift_j(f(n))`
/// and `f(0) = init`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyrecSystem(Equations);

impl PolyrecSystem {
    /// `shifts[j][i]` gives unknown `i` after one step along coordinate `j`.
    pub fn new(unknowns: Vec<String>, shifts: Vec<Vec<Polynomial>>, init: Vec<Rational>) -> Result<Self, AppsError> {
        Equations::new(unknowns, shifts, init).map(PolyrecSystem)
    }

    pub fn with_init(&self, init: Vec<Rational>) -> Result<Self, AppsError> {
        Self::new(self.0.unknowns.clone(), self.0.rules.clone(), init)
    }

    /// Hadamard automaton over `a1..ad` with `Δ_{aj} Xi = shift_j,i` and output `init`.
    pub fn companion(&self) -> MixedAutomaton {
        self.0.companion(ProductMode::Hadamard)
    }

    /// All unknowns at `point` along the canonical path `a1^n1 ⋯ ad^nd`.
    /// The last coordinate is stepped first.
    fn values_along_canonical_path(&self, point: &[usize]) -> Vec<Rational> {
        let mut state = self.0.init.clone();
        for j in (0..self.dims()).rev() {
            for _ in 0..point[j] {
                state = self.0.rules[j].iter().map(|p| p.evaluate_unchecked(&state)).collect();
            }
        }
        state
    }
}

impl Deref for PolyrecSystem {
    type Target = Equations;

    fn deref(&self) -> &Equations {
        &self.0
    }
}

/// The system has a solution iff every component of its companion automaton
/// is commutative.
pub fn polyrec_consistent(system: &PolyrecSystem) -> Result<SystemVerdict, AppsError> {
    system.all_components_commutative(ProductMode::Hadamard)
}

/// `f_unknown(point)` along the canonical path. Fails on inconsistent systems
/// unless `allow_inconsistent` is set.
pub fn evaluate_point(system: &PolyrecSystem, point: &[usize], unknown: usize, allow_inconsistent: bool) -> Result<Rational, AppsError> {
    system.check_unknown(unknown)?;
    system.canonical_path(point)?;
    if !allow_inconsistent {
        system.require_commutative(ProductMode::Hadamard)?;
    }
    Ok(system.values_along_canonical_path(point).swap_remove(unknown))
}

/// A section of a one-dimensional system is a constant vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Section {
    System(PolyrecSystem),
    Constant(Vec<Rational>),
}

/// Fixes coordinate `coordinate` to `value`.
pub fn section(system: &PolyrecSystem, coordinate: usize, value: usize) -> Result<Section, AppsError> {
    system.check_coordinate(coordinate)?;
    system.require_commutative(ProductMode::Hadamard)?;
    let mut point = vec![0; system.dims()];
    point[coordinate] = value;
    let init = system.values_along_canonical_path(&point);
    if system.dims() == 1 {
        return Ok(Section::Constant(init));
    }
    let mut shifts = system.rules().to_vec();
    shifts.remove(coordinate);
    Ok(Section::System(PolyrecSystem::new(system.unknowns().to_vec(), shifts, init)?))
}

/// Identifies coordinates `first` and `second`: the merged coordinate takes
/// the smaller index and shifts by `shift_second ∘ shift_first`. The result
/// describes the diagonal of the solution only when the system is consistent;
/// consistency is not checked here.
pub fn diagonal(system: &PolyrecSystem, first: usize, second: usize) -> Result<PolyrecSystem, AppsError> {
    system.check_coordinate(first)?;
    system.check_coordinate(second)?;
    if first == second {
        return Err(AppsError::SameCoordinate(first));
    }
    let inner = system.rules()[first].as_slice();
    let merged: Vec<Polynomial> = system.rules()[second].iter().map(|p| p.substitute_unchecked(inner)).collect();
    let mut shifts = system.rules().to_vec();
    shifts[first.min(second)] = merged;
    shifts.remove(first.max(second));
    PolyrecSystem::new(system.unknowns().to_vec(), shifts, system.init().to_vec())
}
