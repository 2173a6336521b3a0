//! Sparse multivariate polynomials over a pluggable coefficient ring.
//!
//! The same engine carries `K[x1][x~]` (coefficients in [`UPoly`]),
//! `R_q[x~]` (coefficients in [`PqrElem`](crate::pqr::PqrElem)) and the
//! field-coefficient polynomials used by the Buchberger oracle.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::upoly::{Rational, UPoly};

/// Exponent vector. All monomials in one polynomial share the same arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Is `m` in the monomial ideal generated by `gens`?
pub fn monomial_ideal_member(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::GrLex => "grlex",
            OrderKind::GrevLex => "grevlex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(OrderKind::Lex),
            "grlex" => Some(OrderKind::GrLex),
            "grevlex" => Some(OrderKind::GrevLex),
            _ => None,
        }
    }
}

/// A monomial ordering together with a variable precedence. `precedence[0]`
/// is the index of the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Arc<[usize]>,
}

impl MonomialOrder {
    /// Variables ranked in index order: `x_0 > x_1 > ...`.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect::<Vec<_>>().into(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= seen.len() || seen[p] {
                return Err(Error::Precondition("precedence must be a permutation"));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder {
            kind,
            precedence: precedence.into(),
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in self.precedence.iter() {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::GrLex => a.degree().cmp(&b.degree()).then_with(|| self.cmp_lex(a, b)),
            OrderKind::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.precedence.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// The ring interface the polynomial engine needs from its coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coeff for UPoly {
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// A polynomial whose terms are kept sorted in strictly decreasing order
/// with respect to its monomial ordering. Zero coefficients are never stored.
#[derive(Clone)]
pub struct MPoly<C> {
    order: MonomialOrder,
    terms: Vec<(Monomial, C)>,
}

impl<C: PartialEq> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: fmt::Debug> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(order: &MonomialOrder) -> Self {
        MPoly {
            order: order.clone(),
            terms: Vec::new(),
        }
    }

    /// Collects like terms and sorts; zero coefficients are dropped.
    pub fn from_terms(order: &MonomialOrder, terms: Vec<(Monomial, C)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), order.nvars());
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly {
            order: order.clone(),
            terms: out,
        }
    }

    pub fn constant(order: &MonomialOrder, c: C) -> Self {
        Self::term(order, c, Monomial::one(order.nvars()))
    }

    pub fn term(order: &MonomialOrder, c: C, m: Monomial) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        MPoly {
            order: order.clone(),
            terms,
        }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support contained in `{1}`: zero or a ring constant.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient when `is_constant` holds and `self` is nonzero.
    pub fn constant_coeff(&self) -> Option<&C> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn lt(&self) -> Option<(&Monomial, &C)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn try_lt(&self) -> Result<(&Monomial, &C)> {
        self.lt().ok_or(Error::ZeroInput("leading term"))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&C> {
        self.terms
            .binary_search_by(|(t, _)| self.order.cmp(m, t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// `f - lt(f)`.
    pub fn tail(&self) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn leading_part(&self) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self.terms.iter().take(1).cloned().collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        debug_assert_eq!(self.order, other.order, "mixed monomial orders");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        b[j].1.neg()
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            let c = if negate_other { c.neg() } else { c.clone() };
            out.push((m.clone(), c));
        }
        MPoly {
            order: self.order.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    /// Multiply every coefficient by `c`. Terms that vanish (possible over
    /// rings with zero divisors) are dropped; monomial order is unaffected.
    pub fn scale(&self, c: &C) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let p = a.mul(c);
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    /// Multiply by the term `c * m`.
    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(t, a)| {
                    let p = a.mul(c);
                    (!p.is_zero()).then(|| (t.mul(m), p))
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero(&self.order);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (m.clone(), d))
                })
                .collect(),
        }
    }

    /// Re-sort under a different ordering on the same variables.
    pub fn with_order(&self, order: &MonomialOrder) -> Self {
        Self::from_terms(order, self.terms.clone())
    }

    /// Leading monomial of `self * other` would be `lm(self) * lm(other)`
    /// over a domain; this returns the product of leading monomials.
    pub fn lm_product(&self, other: &Self) -> Option<Monomial> {
        Some(self.lm()?.mul(other.lm()?))
    }
}

/// Leading monomials of a polynomial list (zeros skipped).
pub fn leading_monomials<C: Coeff>(polys: &[MPoly<C>]) -> Vec<Monomial> {
    polys.iter().filter_map(|p| p.lm().cloned()).collect()
}

/// View a polynomial in `n` variables whose *last* variable is `x1` as a
/// polynomial in the first `n - 1` variables with coefficients in `K[x1]`.
pub fn absorb_last_variable(f: &MPoly<Rational>, tilde_order: &MonomialOrder) -> MPoly<UPoly> {
    let n = f.nvars();
    assert!(n >= 1, "need at least the eliminant variable");
    assert_eq!(tilde_order.nvars(), n - 1);
    let mut grouped: Vec<(Monomial, Vec<(usize, Rational)>)> = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exps();
        let key = Monomial::new(e[..n - 1].to_vec());
        let d = e[n - 1] as usize;
        match grouped.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push((d, c.clone())),
            None => grouped.push((key, vec![(d, c.clone())])),
        }
    }
    let terms = grouped
        .into_iter()
        .map(|(m, parts)| {
            let deg = parts.iter().map(|(d, _)| *d).max().unwrap_or(0);
            let mut coeffs = vec![Rational::zero(); deg + 1];
            for (d, c) in parts {
                coeffs[d] += c;
            }
            (m, UPoly::from_coeffs(coeffs))
        })
        .collect();
    MPoly::from_terms(tilde_order, terms)
}

/// Inverse of [`absorb_last_variable`].
pub fn expand_last_variable(f: &MPoly<UPoly>, full_order: &MonomialOrder) -> MPoly<Rational> {
    assert_eq!(full_order.nvars(), f.nvars() + 1);
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        for (d, r) in c.terms() {
            let mut e = m.exps().to_vec();
            e.push(d as u32);
            terms.push((Monomial::new(e), r.clone()));
        }
    }
    MPoly::from_terms(full_order, terms)
}
