//! Gröbner bases over Q: normal forms, Buchberger's algorithm, and the ideal
//! predicates built on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderKind {
    #[default]
    Grevlex,
    Lex,
}

/// A monomial order over a fixed number of variables, with X1 > X2 > ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub arity: usize,
}

impl MonomialOrder {
    pub fn grevlex(arity: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, arity }
    }

    pub fn lex(arity: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, arity }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => a.grevlex_cmp(b),
            OrderKind::Lex => a.lex_cmp(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("polynomial uses {found} variables but the basis has arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

/// Monomial tagged with the order it sorts by.
#[derive(Clone, PartialEq, Eq)]
struct Key(Monomial, OrderKind);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.1 {
            OrderKind::Grevlex => self.0.grevlex_cmp(&other.0),
            OrderKind::Lex => self.0.lex_cmp(&other.0),
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monic polynomial as terms sorted by descending order; `terms[0]` leads.
#[derive(Clone, Debug)]
struct Element {
    terms: Vec<(Monomial, Rational)>,
}

impl Element {
    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }
}

struct Workspace {
    order: OrderKind,
    arity: usize,
}

impl Workspace {
    fn polynomial(&self, e: &Element) -> Polynomial {
        Polynomial::from_terms(self.arity, e.terms.iter().cloned())
    }

    /// Full reduction of `terms` modulo `basis`, skipping index `skip`.
    fn reduce(&self, terms: impl IntoIterator<Item = (Monomial, Rational)>, basis: &[Element], skip: Option<usize>) -> Option<Element> {
        let mut work: BTreeMap<Key, Rational> = BTreeMap::new();
        for (m, c) in terms {
            add_into(&mut work, Key(m, self.order), c);
        }
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((Key(m, _), c)) = work.pop_last() {
            let divisor = basis.iter().enumerate().find(|(i, g)| Some(*i) != skip && g.lead().divides(&m));
            match divisor {
                Some((_, g)) => {
                    let q = g.lead().quotient_of(&m);
                    for (t, d) in &g.terms[1..] {
                        add_into(&mut work, Key(t.mul(&q), self.order), -(&c * d));
                    }
                }
                None => rem.push((m, c)),
            }
        }
        if rem.is_empty() {
            return None;
        }
        let inv = rem[0].1.recip();
        for t in &mut rem {
            t.1 = &t.1 * &inv;
        }
        Some(Element { terms: rem })
    }

    fn s_polynomial(&self, f: &Element, g: &Element) -> Vec<(Monomial, Rational)> {
        let l = f.lead().lcm(g.lead());
        let qf = f.lead().quotient_of(&l);
        let qg = g.lead().quotient_of(&l);
        let mut out: Vec<(Monomial, Rational)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
        out.extend(g.terms[1..].iter().map(|(m, c)| (m.mul(&qg), -c)));
        out
    }

    /// Buchberger completion. Elements of `known` are assumed to already form
    /// a Gröbner basis, so pairs among them are skipped. Gives up with `None`
    /// on an S-pair whose lcm exceeds `max_degree`.
    fn complete(&self, known: Vec<Element>, gens: &[Polynomial], max_degree: Option<u64>) -> Option<Vec<Element>> {
        let mut basis = known;
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let mut queue: Vec<(usize, usize)> = Vec::new();

        let add = |basis: &mut Vec<Element>, e: Element, pending: &mut HashSet<(usize, usize)>, queue: &mut Vec<(usize, usize)>| {
            let j = basis.len();
            for i in 0..j {
                pending.insert((i, j));
                queue.push((i, j));
            }
            basis.push(e);
        };

        for g in gens {
            if basis.iter().any(|e| e.lead().is_one()) {
                break;
            }
            let terms = g.terms().map(|(m, c)| (m.clone(), c.clone()));
            if let Some(e) = self.reduce(terms, &basis, None) {
                add(&mut basis, e, &mut pending, &mut queue);
            }
        }

        while !basis.iter().any(|e| e.lead().is_one()) {
            // Normal selection strategy: smallest lcm first, ties by index.
            let Some(pos) = (0..queue.len()).min_by(|&x, &y| {
                let (a, b) = queue[x];
                let (c, d) = queue[y];
                let la = Key(basis[a].lead().lcm(basis[b].lead()), self.order);
                let lc = Key(basis[c].lead().lcm(basis[d].lead()), self.order);
                la.cmp(&lc).then((a, b).cmp(&(c, d)))
            }) else {
                break;
            };
            let (i, j) = queue.swap_remove(pos);
            pending.remove(&(i, j));
            let (fi, fj) = (&basis[i], &basis[j]);
            if fi.lead().is_coprime(fj.lead()) {
                continue;
            }
            let l = fi.lead().lcm(fj.lead());
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].lead().divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            if max_degree.is_some_and(|m| l.degree() > m) {
                return None;
            }
            let s = self.s_polynomial(fi, fj);
            if let Some(e) = self.reduce(s, &basis, None) {
                add(&mut basis, e, &mut pending, &mut queue);
            }
        }
        Some(self.inter_reduce(basis))
    }

    fn inter_reduce(&self, basis: Vec<Element>) -> Vec<Element> {
        if let Some(unit) = basis.iter().find(|e| e.lead().is_one()) {
            return vec![unit.clone()];
        }
        let mut minimal: Vec<Element> = Vec::new();
        for (i, e) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(j, f)| j != i && f.lead().divides(e.lead()) && (f.lead() != e.lead() || j < i));
            if !redundant {
                minimal.push(e.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let e = self.reduce(minimal[i].terms.iter().cloned(), &minimal, Some(i)).expect("minimal basis element cannot reduce to zero");
            reduced.push(e);
        }
        let order = self.order;
        reduced.sort_by_key(|a| Key(a.lead().clone(), order));
        reduced
    }
}

fn add_into(work: &mut BTreeMap<Key, Rational>, k: Key, c: Rational) {
    if c.is_zero() {
        return;
    }
    match work.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by ascending leading
/// monomial. The zero ideal has an empty basis and the unit ideal is `{1}`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<Element>,
}

impl GroebnerBasis {
    pub fn new(gens: &[Polynomial], order: MonomialOrder) -> Self {
        let arity = gens.iter().map(Polynomial::used_arity).max().unwrap_or(0);
        let order = MonomialOrder { arity: order.arity.max(arity), ..order };
        let ws = Workspace { order: order.kind, arity: order.arity };
        GroebnerBasis { order, elements: ws.complete(Vec::new(), gens, None).expect("no degree bound") }
    }

    pub fn grevlex(gens: &[Polynomial], arity: usize) -> Self {
        Self::new(gens, MonomialOrder::grevlex(arity))
    }

    /// Basis of the ideal generated by `self` and `gens`.
    pub fn extend(&self, gens: &[Polynomial]) -> Self {
        self.extend_within(gens, None).expect("no degree bound")
    }

    /// Like [`extend`](Self::extend), but `None` once completion would need an
    /// S-pair of degree above `max_degree`. Under grevlex this bounds every
    /// intermediate polynomial.
    pub fn extend_within(&self, gens: &[Polynomial], max_degree: Option<u64>) -> Option<Self> {
        let arity = gens.iter().map(Polynomial::used_arity).max().unwrap_or(0).max(self.order.arity);
        let order = MonomialOrder { arity, ..self.order };
        let ws = self.workspace_for(arity);
        Some(GroebnerBasis { order, elements: ws.complete(self.elements.clone(), gens, max_degree)? })
    }

    fn workspace(&self) -> Workspace {
        self.workspace_for(self.order.arity)
    }

    fn workspace_for(&self, arity: usize) -> Workspace {
        Workspace { order: self.order.kind, arity }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.order.arity
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        let ws = self.workspace();
        self.elements.iter().map(|e| ws.polynomial(e)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_one(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lead().is_one()
    }

    fn check(&self, p: &Polynomial) -> Result<(), GroebnerError> {
        if p.used_arity() > self.order.arity {
            return Err(GroebnerError::ArityMismatch { expected: self.order.arity, found: p.used_arity() });
        }
        Ok(())
    }

    /// Remainder of `p` on division by the basis (not normalised to monic).
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        self.check(p)?;
        Ok(self.normal_form_unchecked(p))
    }

    fn normal_form_unchecked(&self, p: &Polynomial) -> Polynomial {
        let order = self.order.kind;
        let mut work: BTreeMap<Key, Rational> = BTreeMap::new();
        for (m, c) in p.terms() {
            work.insert(Key(m.clone(), order), c.clone());
        }
        let mut out = Polynomial::zero(self.order.arity.max(p.arity()));
        while let Some((Key(m, _), c)) = work.pop_last() {
            match self.elements.iter().find(|g| g.lead().divides(&m)) {
                Some(g) => {
                    let q = g.lead().quotient_of(&m);
                    for (t, d) in &g.terms[1..] {
                        add_into(&mut work, Key(t.mul(&q), order), -(&c * d));
                    }
                }
                None => out.add_term(m, c),
            }
        }
        out
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Membership without the arity check, for callers that built the basis
    /// over a superset of `p`'s variables.
    pub(crate) fn contains_unchecked(&self, p: &Polynomial) -> bool {
        if self.contains_one() {
            return true;
        }
        self.normal_form_unchecked(p).is_zero()
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> bool {
        other.basis().iter().all(|g| self.contains_unchecked(g))
    }

    pub fn ideal_eq(&self, other: &GroebnerBasis) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }
}

impl PartialEq for GroebnerBasis {
    /// Reduced bases are unique per order, so equal orders compare bases directly.
    fn eq(&self, other: &Self) -> bool {
        if self.order.kind == other.order.kind {
            self.basis() == other.basis()
        } else {
            self.ideal_eq(other)
        }
    }
}

pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::new(gens, order)
}

impl GroebnerBasis {
    /// Leading coefficient is one for every element; exposed for tests.
    #[doc(hidden)]
    pub fn is_monic(&self) -> bool {
        self.elements.iter().all(|e| e.terms[0].1.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn v(i: usize) -> Polynomial {
        Polynomial::var(i, 2)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(int(n), 2)
    }

    #[test]
    fn unit_and_zero_ideals() {
        let gb = GroebnerBasis::grevlex(&[v(0), &v(0) - &c(1)], 2);
        assert!(gb.contains_one());
        assert_eq!(gb.basis(), vec![c(1)]);
        let z = GroebnerBasis::grevlex(&[Polynomial::zero(2)], 2);
        assert!(z.is_zero_ideal());
        assert!(!z.contains_one());
    }

    #[test]
    fn single_generator_is_already_reduced() {
        let g = &v(0).pow(2) - &c(1);
        let gb = GroebnerBasis::grevlex(std::slice::from_ref(&g), 2);
        assert_eq!(gb.basis(), vec![g.clone()]);
        assert!(gb.normal_form(&g).unwrap().is_zero());
        let x = Polynomial::var(0, 1);
        let sq = GroebnerBasis::grevlex(&[x.pow(2)], 1);
        assert_eq!(sq.normal_form(&x).unwrap(), x);
    }

    #[test]
    fn cofactor_identity_example() {
        // variables (y, x) so that lex has y > x
        let (y, x) = (v(0), v(1));
        let gens = [&x.pow(2) - &c(1), &(&x * &y) - &c(1)];
        for order in [MonomialOrder::lex(2), MonomialOrder::grevlex(2)] {
            let gb = GroebnerBasis::new(&gens, order);
            assert!(gb.contains(&(&y.pow(2) - &c(1))).unwrap());
            assert!(gb.is_monic());
        }
        let lex = GroebnerBasis::new(&gens, MonomialOrder::lex(2));
        assert!(lex.basis().contains(&(&y - &x)));
    }

    #[test]
    fn scaling_and_membership() {
        let a = Polynomial::var(0, 1);
        let one = Polynomial::one(1);
        let g1 = GroebnerBasis::grevlex(std::slice::from_ref(&a), 1);
        let g2 = GroebnerBasis::grevlex(&[a.scale(&int(2))], 1);
        assert!(g1.ideal_eq(&g2));
        assert_eq!(g1, g2);
        let gen = (&a.pow(2) - &a.pow(4)).scale(&int(2));
        let gb = GroebnerBasis::grevlex(&[gen], 1);
        let target = (&a.pow(4) - &a.pow(8)).scale(&int(2));
        assert!(gb.contains(&target).unwrap());
        assert!(!gb.contains(&(&one + &a)).unwrap());
    }

    #[test]
    fn arity_is_checked() {
        let gb = GroebnerBasis::grevlex(&[Polynomial::var(0, 1)], 1);
        assert!(gb.normal_form(&Polynomial::var(1, 2)).is_err());
    }

    #[test]
    fn extend_matches_fresh_computation() {
        let (x, y) = (v(0), v(1));
        let base = GroebnerBasis::grevlex(&[&x.pow(2) - &y], 2);
        let ext = base.extend(&[&(&x * &y) - &c(1)]);
        let fresh = GroebnerBasis::grevlex(&[&x.pow(2) - &y, &(&x * &y) - &c(1)], 2);
        assert_eq!(ext, fresh);
    }

    #[test]
    fn extend_within_respects_the_degree_bound() {
        let (x, y) = (v(0), v(1));
        let base = GroebnerBasis::grevlex(&[&x.pow(2) - &y], 2);
        let gens = [&(&x * &y) - &c(1)];
        assert!(base.extend_within(&gens, Some(2)).is_none());
        assert_eq!(base.extend_within(&gens, Some(3)), Some(base.extend(&gens)));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let (x, y) = (v(0), v(1));
        let gb = GroebnerBasis::grevlex(&[&x.pow(2) - &y, &y.pow(2) - &x], 2);
        let p = &(&x.pow(3) * &y) + &y.pow(3);
        let r = gb.normal_form(&p).unwrap();
        assert_eq!(gb.normal_form(&r).unwrap(), r);
    }
}
