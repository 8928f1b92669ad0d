//! Coefficients computed numerically, without symbolic runs.
//!
//! Every letter acts as a ring endomorphism over `Q[t₁, t₂, …]`: a Hadamard
//! letter substitutes `X ↦ p`, an interleaving letter substitutes
//! `X ↦ X + t·p` with a fresh marker `t`, nilpotent (`t² = 0`) for shuffle
//! and idempotent (`t² = t`) for infiltration. For `q` free of `t` both give
//! `q(X + t·p) = q + t·Δq`, so `Δ_w α` is the coefficient of the product of
//! all markers in the composite substitution. The output map is a ring
//! homomorphism, so that coefficient is obtained by pushing the numeric
//! vector `F(X)` backwards through the word and evaluating `α` on it.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};
use crate::oracle::{TruncatedSeries, Word};

use super::{MixedAutomaton, ProductMode};

/// An element of the marker algebra, keyed by the set of markers as a bitmask.
#[derive(Clone, Debug, Default)]
struct Marked(BTreeMap<u64, Rational>);

impl Marked {
    fn constant(c: &Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c.clone());
        }
        Marked(m)
    }

    fn add_assign(&mut self, other: &Marked) {
        for (&k, c) in &other.0 {
            let e = self.0.entry(k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                self.0.remove(&k);
            }
        }
    }

    fn mul(&self, other: &Marked, nilpotent: u64) -> Marked {
        let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&s, a) in &self.0 {
            for (&t, b) in &other.0 {
                if s & t & nilpotent != 0 {
                    continue;
                }
                *out.entry(s | t).or_insert_with(Rational::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Marked(out)
    }

    /// Multiplies by the marker `bit`.
    fn mark(&self, bit: u64, nilpotent: u64) -> Marked {
        let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&s, c) in &self.0 {
            if s & bit != 0 && nilpotent & bit != 0 {
                continue;
            }
            *out.entry(s | bit).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Marked(out)
    }

    fn coefficient(&self, mask: u64) -> Rational {
        self.0.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }
}

fn evaluate(p: &Polynomial, point: &[Marked], nilpotent: u64) -> Marked {
    let mut powers: Vec<Vec<Marked>> = point.iter().map(|x| vec![Marked::constant(&Rational::from_integer(1.into())), x.clone()]).collect();
    let mut total = Marked::default();
    for (m, c) in p.terms() {
        let mut term = Marked::constant(c);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("nonempty").mul(&point[i], nilpotent);
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e as usize], nilpotent);
            if term.0.is_empty() {
                break;
            }
        }
        total.add_assign(&term);
    }
    total
}

/// `F(Δ_w X)` for a suffix `w`, with the markers it introduced.
#[derive(Clone)]
struct State {
    values: Vec<Marked>,
    marks: u64,
    nilpotent: u64,
}

impl MixedAutomaton {
    fn initial_state(&self) -> State {
        State { values: self.output.iter().map(Marked::constant).collect(), marks: 0, nilpotent: 0 }
    }

    /// State for `a·w` from the state for `w`. Markers are numbered in the
    /// order they are introduced.
    fn prepend(&self, state: &State, a: usize) -> State {
        let images: Vec<Marked> = self.delta[a].iter().map(|p| evaluate(p, &state.values, state.nilpotent)).collect();
        let bit = 1u64 << state.marks.count_ones();
        match self.letters[a].mode {
            ProductMode::Hadamard => State { values: images, ..state.clone() },
            mode => {
                let nilpotent = if mode == ProductMode::Shuffle { state.nilpotent | bit } else { state.nilpotent };
                let values = state
                    .values
                    .iter()
                    .zip(&images)
                    .map(|(v, p)| {
                        let mut v = v.clone();
                        v.add_assign(&p.mark(bit, nilpotent));
                        v
                    })
                    .collect();
                State { values, marks: state.marks | bit, nilpotent }
            }
        }
    }

    fn read_off(&self, alpha: &Polynomial, state: &State) -> Rational {
        evaluate(alpha, &state.values, state.nilpotent).coefficient(state.marks)
    }

    /// Number of markers a word would need; bounds the numeric method.
    pub(crate) fn marker_count(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&a| self.letters[a].mode != ProductMode::Hadamard).count()
    }

    pub(crate) fn coefficient_numeric(&self, alpha: &Polynomial, w: &Word) -> Rational {
        let mut state = self.initial_state();
        for &a in w.letters().iter().rev() {
            state = self.prepend(&state, a);
        }
        self.read_off(alpha, &state)
    }

    /// All coefficients up to `max_len`, sharing work between words with a
    /// common suffix.
    pub(crate) fn truncate_numeric(&self, alpha: &Polynomial, max_len: usize) -> TruncatedSeries {
        let n = self.alphabet_size();
        let mut out = TruncatedSeries::zero(n, max_len);
        let mut layer = vec![(Word::empty(), self.initial_state())];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, state) in layer {
                out.add_to(w.clone(), self.read_off(alpha, &state));
                if len < max_len {
                    for a in 0..n {
                        next.push((w.prepend(a), self.prepend(&state, a)));
                    }
                }
            }
            layer = next;
        }
        out
    }
}
