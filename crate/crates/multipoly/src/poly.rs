use crate::{PolyError, VarId};
use exact_arith::Ring;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A monomial: sorted (variable, exponent) pairs with positive exponents.
/// Orders by total degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial {
            degree: 1,
            factors: vec![(v, 1)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (VarId, u32)>) -> Monomial {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        let factors: Vec<_> = map.into_iter().filter(|(_, e)| *e > 0).collect();
        Monomial {
            degree: factors.iter().map(|f| f.1).sum(),
            factors,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by(|f| f.0.cmp(&v))
            .map(|k| self.factors[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    /// Partial degree in the variables selected by `pred`.
    pub fn degree_in(&self, pred: impl Fn(&VarId) -> bool) -> u32 {
        self.factors
            .iter()
            .filter(|f| pred(&f.0))
            .map(|f| f.1)
            .sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over `R`, optionally a power series truncated above
/// total degree D. The bound is part of the value: every operation keeps the
/// smaller of the operands' bounds and drops terms above it.
#[derive(Clone)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
    trunc: Option<u32>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms && self.trunc == other.trunc
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self}")?;
        if let Some(d) = self.trunc {
            write!(f, " + O(deg {})", d + 1)?;
        }
        write!(f, ")")
    }
}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R) -> Self {
        MultiPoly {
            ring,
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::constant(ring, one)
    }

    pub fn from_int(ring: R, n: i64) -> Self {
        let c = ring.from_i64(n);
        Self::constant(ring, c)
    }

    pub fn var(ring: R, v: VarId) -> Self {
        let one = ring.one();
        Self::monomial(ring, Monomial::var(v), one)
    }

    pub fn monomial(ring: R, m: Monomial, c: R::Elem) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    /// Imposes (or tightens) the truncation bound.
    pub fn truncated(mut self, d: u32) -> Self {
        let d = min_trunc(self.trunc, Some(d)).unwrap();
        self.trunc = Some(d);
        self.terms.retain(|m, _| m.degree() <= d);
        self
    }

    /// Forgets the truncation bound, keeping the stored terms.
    pub fn untruncated(mut self) -> Self {
        self.trunc = None;
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.trunc.is_some_and(|d| m.degree() > d) || self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Highest total degree present, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|f| f.0))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::DomainMismatch(
                format!("{:?}", self.ring),
                format!("{:?}", other.ring),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        if let Some(d) = other.trunc {
            out = out.truncated(d);
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let trunc = min_trunc(self.trunc, other.trunc);
        let mut out = Self {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
            trunc,
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if trunc.is_some_and(|d| m1.degree() + m2.degree() > d) {
                    // terms are sorted by degree, so the rest of this row is out too
                    break;
                }
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.ring.from_i64(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        acc.trunc = self.trunc;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()));
        Self::from_terms(self.ring.clone(), terms)
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter_terms(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|m, _| pred(m));
        out
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let mut out = Self {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
            trunc: None,
        };
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let rest = Monomial::from_factors(m.factors().iter().map(|&(w, k)| {
                if w == v {
                    (w, k - 1)
                } else {
                    (w, k)
                }
            }));
            out.add_term(rest, self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        out.trunc = self.trunc.map(|d| d.saturating_sub(1));
        out
    }

    /// Replaces variables by polynomials, truncating at `trunc` (and at the
    /// operands' own bounds). Variables missing from `sigma` are an error.
    pub fn substitute(
        &self,
        sigma: &BTreeMap<VarId, MultiPoly<R>>,
        trunc: Option<u32>,
    ) -> Result<Self, PolyError> {
        self.substitute_with(|v| sigma.get(&v).cloned(), trunc)
    }

    /// Like `substitute`, but variables the map does not know are kept.
    pub fn substitute_partial(
        &self,
        sigma: &BTreeMap<VarId, MultiPoly<R>>,
        trunc: Option<u32>,
    ) -> Self {
        let ring = self.ring.clone();
        self.substitute_with(
            |v| {
                Some(
                    sigma
                        .get(&v)
                        .cloned()
                        .unwrap_or_else(|| MultiPoly::var(ring.clone(), v)),
                )
            },
            trunc,
        )
        .expect("every variable is bound")
    }

    pub fn substitute_with(
        &self,
        image: impl Fn(VarId) -> Option<MultiPoly<R>>,
        trunc: Option<u32>,
    ) -> Result<Self, PolyError> {
        let trunc = min_trunc(self.trunc, trunc);
        let apply = |p: MultiPoly<R>| match trunc {
            Some(d) => p.truncated(d),
            None => p,
        };
        let mut images: BTreeMap<VarId, Vec<MultiPoly<R>>> = BTreeMap::new();
        for v in self.variables() {
            let img = image(v).ok_or_else(|| PolyError::UnboundVariable(v.to_string()))?;
            self.check(&img)?;
            images.insert(
                v,
                vec![apply(MultiPoly::one(self.ring.clone())), apply(img)],
            );
        }
        let mut out = apply(Self::zero(self.ring.clone()));
        for (m, c) in &self.terms {
            let mut term = apply(Self::constant(self.ring.clone(), c.clone()));
            for &(v, e) in m.factors() {
                let powers = images.get_mut(&v).unwrap();
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a point given as a function of the variables.
    pub fn eval(&self, point: impl Fn(VarId) -> Option<R::Elem>) -> Result<R::Elem, PolyError> {
        let ring = &self.ring;
        let mut acc = ring.zero();
        let mut cache: BTreeMap<VarId, R::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x =
                            point(v).ok_or_else(|| PolyError::UnboundVariable(v.to_string()))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t = ring.mul(&t, &ring.pow(&x, e as u64));
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn map_coeffs<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        let mut out = MultiPoly {
            ring: target,
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<S: Ring, E>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, E>,
    ) -> Result<MultiPoly<S>, E> {
        let mut out = MultiPoly {
            ring: target,
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Renames variables monomial by monomial (must be injective on the
    /// variables present, e.g. a level shift).
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Self {
        let mut out = Self {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (m, c) in &self.terms {
            let m2 = Monomial::from_factors(m.factors().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Serialization records: for each term, its (variable name, exponent)
    /// list and the formatted coefficient, in canonical term order.
    pub fn records(&self) -> Vec<(Vec<(String, u32)>, String)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                (
                    m.factors()
                        .iter()
                        .map(|(v, e)| (v.to_string(), *e))
                        .collect(),
                    self.ring.format(c),
                )
            })
            .collect()
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{}", self.ring.format(c))?;
            } else if self.ring.is_one(c) {
                write!(f, "{m}")?;
            } else {
                write!(f, "({})*{m}", self.ring.format(c))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<R: Ring> std::ops::$tr<&MultiPoly<R>> for &MultiPoly<R> {
            type Output = MultiPoly<R>;
            /// Panics when the coefficient rings differ; use the `try_`
            /// variant to get an error instead.
            fn $method(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
                self.$inner(rhs).expect("coefficient domains differ")
            }
        }
        impl<R: Ring> std::ops::$tr<MultiPoly<R>> for MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: MultiPoly<R>) -> MultiPoly<R> {
                self.$inner(&rhs).expect("coefficient domains differ")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<R: Ring> std::ops::Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        MultiPoly::neg(self)
    }
}

/// `f * g` with every term above total degree `d` discarded.
pub fn poly_mul_trunc<R: Ring>(
    f: &MultiPoly<R>,
    g: &MultiPoly<R>,
    d: u32,
) -> Result<MultiPoly<R>, PolyError> {
    f.clone().truncated(d).try_mul(g)
}

/// Ring descriptor whose elements are `MultiPoly<R>`; lets the generic
/// matrix code run over polynomial entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    pub trunc: Option<u32>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base, trunc: None }
    }

    pub fn truncated(base: R, d: u32) -> Self {
        PolyRing {
            base,
            trunc: Some(d),
        }
    }

    pub fn var(&self, v: VarId) -> MultiPoly<R> {
        self.wrap(MultiPoly::var(self.base.clone(), v))
    }

    fn wrap(&self, p: MultiPoly<R>) -> MultiPoly<R> {
        match self.trunc {
            Some(d) => p.truncated(d),
            None => p,
        }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R>;

    fn zero(&self) -> MultiPoly<R> {
        self.wrap(MultiPoly::zero(self.base.clone()))
    }
    fn one(&self) -> MultiPoly<R> {
        self.wrap(MultiPoly::one(self.base.clone()))
    }
    fn from_int(&self, n: &num_bigint::BigInt) -> MultiPoly<R> {
        self.wrap(MultiPoly::constant(
            self.base.clone(),
            self.base.from_int(n),
        ))
    }
    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a + b
    }
    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        a.neg()
    }
    fn sub(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a - b
    }
    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a * b
    }
    fn is_zero(&self, a: &MultiPoly<R>) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &MultiPoly<R>) -> bool {
        a.len() == 1 && a.is_constant() && self.base.is_one(&a.constant_term())
    }
    fn format(&self, a: &MultiPoly<R>) -> String {
        a.to_string()
    }
}
