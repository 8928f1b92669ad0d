//! Exact decision procedures for commutativity of series recognised by
//! polynomial automata in Hadamard, shuffle, infiltration and mixed modes.
//!
//! Configurations are polynomials over the nonterminals, letters act on them
//! through extended transition maps, and the coefficient of a word is the
//! output applied to the configuration reached. Zeroness is decided with
//! ascending polynomial ideal chains; equality and commutativity reduce to it.

pub mod algebra;
pub mod apps;
pub mod automata;
pub mod catalog;
pub mod decide;
pub mod groebner;
pub mod oracle;
pub mod varieties;

pub use algebra::{int, rat, Monomial, Polynomial, Rational};
pub use automata::{LetterSpec, MixedAutomaton, ProductMode};
pub use decide::{commutativity, equality, zeroness, Limits, Verdict, Witness};
pub use groebner::GroebnerBasis;
pub use oracle::{Letter, TruncatedSeries, Word, WordPair};
