//! Exact rationals, multivariate polynomials, and the three ways a map on
//! generators extends to the whole polynomial ring.

mod monomial;
mod polynomial;

pub use monomial::Monomial;
pub use polynomial::Polynomial;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational in canonical form.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
}

/// How a generator map `X_i -> images[i]` is extended to all polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Ring endomorphism: substitution.
    Endomorphism,
    /// Derivation: `D(pq) = D(p) q + p D(q)`.
    Derivation,
    /// σ-derivation: `D(pq) = D(p) q + p D(q) + D(p) D(q)`, i.e. `p(X + images) - p`.
    SigmaDerivation,
}

/// A generator map together with the rule extending it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedMap {
    kind: Extension,
    images: Vec<Polynomial>,
}

impl ExtendedMap {
    pub fn new(kind: Extension, images: Vec<Polynomial>) -> Self {
        ExtendedMap { kind, images }
    }

    pub fn endomorphism(images: Vec<Polynomial>) -> Self {
        Self::new(Extension::Endomorphism, images)
    }

    pub fn derivation(images: Vec<Polynomial>) -> Self {
        Self::new(Extension::Derivation, images)
    }

    pub fn sigma_derivation(images: Vec<Polynomial>) -> Self {
        Self::new(Extension::SigmaDerivation, images)
    }

    pub fn kind(&self) -> Extension {
        self.kind
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if p.used_arity() > self.images.len() {
            return Err(AlgebraError::ArityMismatch { expected: self.images.len(), found: p.used_arity() });
        }
        Ok(extend(self.kind, &self.images, p))
    }
}

/// Applies the extension of `X_i -> images[i]` to `p`. Variables of `p`
/// beyond `images.len()` must not occur.
pub fn extend(kind: Extension, images: &[Polynomial], p: &Polynomial) -> Polynomial {
    let arity = images.iter().map(Polynomial::arity).max().unwrap_or(0).max(p.arity());
    match kind {
        Extension::Endomorphism => padded(p, images.len()).substitute_unchecked(images).with_arity(arity),
        Extension::Derivation => {
            let mut out = Polynomial::zero(arity);
            for (m, c) in p.terms() {
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 || images[i].is_zero() {
                        continue;
                    }
                    let coeff = c * int(e as i64);
                    out += images[i].mul_term(&m.without_one(i), &coeff);
                }
            }
            out
        }
        Extension::SigmaDerivation => {
            let n = images.len();
            let shifted: Vec<Polynomial> = images.iter().enumerate().map(|(i, img)| &Polynomial::var(i, arity.max(n)) + img).collect();
            let mut out = padded(p, n).substitute_unchecked(&shifted);
            out -= p;
            out.with_arity(arity)
        }
    }
}

fn padded(p: &Polynomial, arity: usize) -> Polynomial {
    if p.arity() == arity {
        p.clone()
    } else {
        p.clone().with_arity(arity)
    }
}
