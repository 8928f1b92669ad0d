use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. Trailing zero exponents are stripped, so
/// equal monomials compare equal regardless of the arity they were built in.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Exponents without trailing zeros.
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// One past the largest variable index that occurs.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let e = (0..other.0.len()).map(|i| other.0[i] - self.exponent(i)).collect();
        Monomial::new(e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exponent(i).max(other.exponent(i))).collect();
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Lowers the exponent of variable `i` by one.
    pub fn without_one(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] -= 1;
        Monomial::new(e)
    }

    /// Moves variable `i` to `offset + i`.
    pub fn shifted(&self, offset: usize) -> Monomial {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut e = vec![0; offset];
        e.extend_from_slice(&self.0);
        Monomial(e)
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in (0..n).rev() {
                let (a, b) = (self.exponent(i), other.exponent(i));
                if a != b {
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

/// Graded reverse lexicographic order with X1 > X2 > ... .
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
