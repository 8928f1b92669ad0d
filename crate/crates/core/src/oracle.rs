//! Brute-force ground truth: series truncated to words of bounded length.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Rational;
use crate::automata::ProductMode;

/// Letter index into an alphabet.
pub type Letter = usize;

/// A finite word, ordered shortlex (length first, then lexicographic).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prepend(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `a^n` for each `(a, n)` in order.
    pub fn from_powers(powers: &[(Letter, usize)]) -> Word {
        Word(powers.iter().flat_map(|&(a, n)| std::iter::repeat_n(a, n)).collect())
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<&str> = self.word.0.iter().map(|&a| self.names[a].as_ref()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Letter counts of `w` over an alphabet of `alphabet` letters.
pub fn parikh(w: &Word, alphabet: usize) -> Vec<usize> {
    let mut counts = vec![0; alphabet];
    for &a in &w.0 {
        counts[a] += 1;
    }
    counts
}

/// All words of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer.iter().flat_map(|w| (0..alphabet).map(move |a| w.push(a))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Two Parikh-equivalent words with different coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPair {
    pub u: Word,
    pub fu: Rational,
    pub v: Word,
    pub fv: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("derivative of a series truncated at length 0")]
    EmptyWindow,
    #[error("letter {letter} outside an alphabet of size {size}")]
    UnknownLetter { letter: Letter, size: usize },
    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
}

/// Coefficients of all words of length at most `max_len`; absent means zero.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    alphabet: usize,
    max_len: usize,
    coeffs: BTreeMap<Word, Rational>,
}

impl TruncatedSeries {
    pub fn zero(alphabet: usize, max_len: usize) -> Self {
        TruncatedSeries { alphabet, max_len, coeffs: BTreeMap::new() }
    }

    /// Series with the given coefficients; words longer than `max_len` are dropped.
    pub fn from_coeffs(alphabet: usize, max_len: usize, coeffs: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut s = Self::zero(alphabet, max_len);
        for (w, c) in coeffs {
            s.add_to(w, c);
        }
        s
    }

    /// The all-ones series.
    pub fn ones(alphabet: usize, max_len: usize) -> Self {
        Self::from_coeffs(alphabet, max_len, words_up_to(alphabet, max_len).into_iter().map(|w| (w, Rational::from_integer(1.into()))))
    }

    /// `1·ε`.
    pub fn epsilon(alphabet: usize, max_len: usize) -> Self {
        Self::from_coeffs(alphabet, max_len, [(Word::empty(), Rational::from_integer(1.into()))])
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_to(&mut self, w: Word, c: Rational) {
        if w.len() > self.max_len || c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Nonzero coefficients in shortlex order.
    pub fn support(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn restrict(&self, max_len: usize) -> Self {
        let max_len = max_len.min(self.max_len);
        TruncatedSeries {
            alphabet: self.alphabet,
            max_len,
            coeffs: self.coeffs.iter().filter(|(w, _)| w.len() <= max_len).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    fn check_letter(&self, a: Letter) -> Result<(), OracleError> {
        if a >= self.alphabet {
            return Err(OracleError::UnknownLetter { letter: a, size: self.alphabet });
        }
        Ok(())
    }

    /// `[w] ∂ₐf = [a·w] f`.
    pub fn left_derivative(&self, a: Letter) -> Result<Self, OracleError> {
        self.check_letter(a)?;
        if self.max_len == 0 {
            return Err(OracleError::EmptyWindow);
        }
        let coeffs = self.coeffs.iter().filter(|(w, _)| w.0.first() == Some(&a)).map(|(w, c)| (Word(w.0[1..].to_vec()), c.clone()));
        Ok(Self::from_coeffs(self.alphabet, self.max_len - 1, coeffs))
    }

    /// `[w] f∂ₐ = [w·a] f`.
    pub fn right_derivative(&self, a: Letter) -> Result<Self, OracleError> {
        self.check_letter(a)?;
        if self.max_len == 0 {
            return Err(OracleError::EmptyWindow);
        }
        let coeffs =
            self.coeffs.iter().filter(|(w, _)| w.0.last() == Some(&a)).map(|(w, c)| (Word(w.0[..w.len() - 1].to_vec()), c.clone()));
        Ok(Self::from_coeffs(self.alphabet, self.max_len - 1, coeffs))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.alphabet, self.max_len, self.coeffs.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.check_alphabet(other)?;
        let mut out = self.restrict(other.max_len);
        for (w, c) in &other.coeffs {
            out.add_to(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OracleError> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    fn check_alphabet(&self, other: &Self) -> Result<(), OracleError> {
        if self.alphabet != other.alphabet {
            return Err(OracleError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        Ok(())
    }

    /// Product under the per-letter rule `modes[a]`, computed from the
    /// coinductive definition. The result is exact up to `min` of both bounds.
    pub fn product(&self, other: &Self, modes: &[ProductMode]) -> Result<Self, OracleError> {
        self.check_alphabet(other)?;
        if modes.len() != self.alphabet {
            return Err(OracleError::AlphabetMismatch(self.alphabet, modes.len()));
        }
        let max_len = self.max_len.min(other.max_len);
        let mut memo = HashMap::new();
        let mut out = Self::zero(self.alphabet, max_len);
        let empty = Word::empty();
        for w in words_up_to(self.alphabet, max_len) {
            let c = product_coeff(self, other, modes, &empty, &empty, &w.0, &mut memo);
            out.add_to(w, c);
        }
        Ok(out)
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self, OracleError> {
        self.product(other, &vec![ProductMode::Hadamard; self.alphabet])
    }

    pub fn shuffle(&self, other: &Self) -> Result<Self, OracleError> {
        self.product(other, &vec![ProductMode::Shuffle; self.alphabet])
    }

    pub fn infiltration(&self, other: &Self) -> Result<Self, OracleError> {
        self.product(other, &vec![ProductMode::Infiltration; self.alphabet])
    }

    /// First Parikh-equivalent pair (shortlex) with differing coefficients.
    pub fn commutativity_violation(&self) -> Option<WordPair> {
        let mut seen: HashMap<Vec<usize>, (Word, Rational)> = HashMap::new();
        for w in words_up_to(self.alphabet, self.max_len) {
            let c = self.coeff(&w);
            let key = parikh(&w, self.alphabet);
            match seen.get(&key) {
                Some((u, fu)) if *fu != c => {
                    return Some(WordPair { u: u.clone(), fu: fu.clone(), v: w, fv: c });
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (w, c));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }
}

/// Equality up to the smaller of the two bounds.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        let l = self.max_len.min(other.max_len);
        self.alphabet == other.alphabet && self.restrict(l).coeffs == other.restrict(l).coeffs
    }
}

type Memo = HashMap<(Vec<Letter>, Vec<Letter>, Vec<Letter>), Rational>;

/// `[w] (∂_u f ∥ ∂_v g)`.
fn product_coeff(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    modes: &[ProductMode],
    u: &Word,
    v: &Word,
    w: &[Letter],
    memo: &mut Memo,
) -> Rational {
    let Some((&a, rest)) = w.split_first() else {
        return f.coeff(u) * g.coeff(v);
    };
    let key = (u.0.clone(), v.0.clone(), w.to_vec());
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let (ua, va) = (u.push(a), v.push(a));
    let c = match modes[a] {
        ProductMode::Hadamard => product_coeff(f, g, modes, &ua, &va, rest, memo),
        ProductMode::Shuffle => product_coeff(f, g, modes, &ua, v, rest, memo) + product_coeff(f, g, modes, u, &va, rest, memo),
        ProductMode::Infiltration => {
            product_coeff(f, g, modes, &ua, v, rest, memo)
                + product_coeff(f, g, modes, u, &va, rest, memo)
                + product_coeff(f, g, modes, &ua, &va, rest, memo)
        }
    };
    memo.insert(key, c.clone());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    const A: Letter = 0;
    const B: Letter = 1;

    fn word(s: &str) -> Word {
        Word(s.bytes().map(|b| (b - b'a') as usize).collect())
    }

    fn series(terms: &[(&str, i64)], max_len: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(2, max_len, terms.iter().map(|(w, c)| (word(w), int(*c))))
    }

    #[test]
    fn shuffle_and_infiltration_of_ab_and_a() {
        let ab = series(&[("ab", 1)], 4);
        let a = series(&[("a", 1)], 4);
        assert_eq!(ab.shuffle(&a).unwrap(), series(&[("aab", 2), ("aba", 1)], 4));
        assert_eq!(ab.infiltration(&a).unwrap(), series(&[("aab", 2), ("aba", 1), ("ab", 1)], 4));
    }

    #[test]
    fn identities() {
        let f = series(&[("", 3), ("ab", 1), ("ba", -2), ("aab", 5)], 4);
        assert_eq!(f.hadamard(&TruncatedSeries::ones(2, 4)).unwrap(), f);
        assert_eq!(TruncatedSeries::epsilon(2, 4).shuffle(&f).unwrap(), f);
        assert_eq!(TruncatedSeries::epsilon(2, 4).infiltration(&f).unwrap(), f);
    }

    #[test]
    fn derivatives() {
        let eps = TruncatedSeries::epsilon(2, 3);
        assert!(eps.left_derivative(A).unwrap().is_zero());
        let ab = series(&[("ab", 1)], 3);
        assert_eq!(ab.left_derivative(A).unwrap(), series(&[("b", 1)], 2));
        assert_eq!(ab.right_derivative(B).unwrap(), series(&[("a", 1)], 2));
        assert_eq!(TruncatedSeries::zero(2, 0).left_derivative(A).unwrap_err(), OracleError::EmptyWindow);
    }

    #[test]
    fn parikh_vectors() {
        assert_eq!(parikh(&word("aab"), 2), vec![2, 1]);
        assert_eq!(parikh(&Word::empty(), 2), vec![0, 0]);
        let (u, v) = (word("ab"), word("bba"));
        let sum: Vec<usize> = parikh(&u, 2).iter().zip(parikh(&v, 2)).map(|(x, y)| x + y).collect();
        assert_eq!(parikh(&u.concat(&v), 2), sum);
    }

    #[test]
    fn commutativity_check() {
        let f = series(&[("ab", 9), ("ba", -15)], 3);
        let pair = f.commutativity_violation().unwrap();
        assert_eq!((pair.u, pair.fu, pair.v, pair.fv), (word("ab"), int(9), word("ba"), int(-15)));
        let unary = TruncatedSeries::from_coeffs(1, 5, (0..=5).map(|n| (Word(vec![0; n]), int(n as i64 * 7 - 3))));
        assert!(unary.is_commutative());
    }

    #[test]
    fn shortlex_order() {
        let mut ws = vec![word("b"), word("aa"), word(""), word("a")];
        ws.sort();
        assert_eq!(ws, vec![word(""), word("a"), word("b"), word("aa")]);
        assert_eq!(words_up_to(2, 2).len(), 7);
    }
}
