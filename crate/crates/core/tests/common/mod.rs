#![allow(dead_code)]

use proptest::prelude::*;

pub mod identities;

use pqrbasis::mpoly::{Coeff, MPoly, Monomial, MonomialOrder};
use pqrbasis::{PqrCtx, PqrElem, UPoly};

pub type RPoly = MPoly<UPoly>;
pub type QPoly = MPoly<PqrElem>;

/// Polynomials in `x > y` over `K[z]`.
pub fn order() -> MonomialOrder {
    MonomialOrder::lex(2)
}

pub fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-4i64..=4, 1..=max_len).prop_map(|v| UPoly::from_ints(&v))
}

pub fn nonzero_upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    upoly(max_len).prop_map(|u| if u.is_zero() { UPoly::one() } else { u })
}

pub fn monomial(max_exp: u32) -> impl Strategy<Value = Monomial> {
    (0..=max_exp, 0..=max_exp).prop_map(|(a, b)| Monomial::new(vec![a, b]))
}

pub fn nonconstant_monomial(max_exp: u32) -> impl Strategy<Value = Monomial> {
    monomial(max_exp).prop_map(|m| {
        if m.exps().iter().all(|e| *e == 0) {
            Monomial::new(vec![0, 1])
        } else {
            m
        }
    })
}

pub fn rpoly(max_terms: usize) -> impl Strategy<Value = RPoly> {
    prop::collection::vec((monomial(2), upoly(3)), 0..=max_terms)
        .prop_map(|terms| MPoly::from_terms(&order(), terms))
}

/// `lc * lm + (terms of tail below lm)`.
pub fn with_leading<C: Coeff>(lm: &Monomial, lc: C, tail: &MPoly<C>) -> MPoly<C> {
    let order = tail.order().clone();
    let mut terms: Vec<(Monomial, C)> = tail
        .terms()
        .iter()
        .filter(|(m, _)| order.cmp(m, lm) == std::cmp::Ordering::Less)
        .cloned()
        .collect();
    terms.push((lm.clone(), lc));
    MPoly::from_terms(&order, terms)
}

/// A polynomial outside `K[z]`.
pub fn nonconstant_rpoly(max_terms: usize) -> impl Strategy<Value = RPoly> {
    (nonconstant_monomial(2), nonzero_upoly(3), rpoly(max_terms))
        .prop_map(|(lm, lc, tail)| with_leading(&lm, lc, &tail))
}

pub fn rbasis(max_len: usize) -> impl Strategy<Value = Vec<RPoly>> {
    prop::collection::vec(nonconstant_rpoly(3), 1..=max_len)
}

/// Irreducible factors that moduli are built from.
pub fn primes() -> Vec<UPoly> {
    vec![UPoly::x(), UPoly::linear(-1), UPoly::from_ints(&[1, 0, 1])]
}

/// `z^a (z+1)^b (z^2+1)^c` of positive degree.
pub fn modulus() -> impl Strategy<Value = UPoly> {
    (0u32..=3, 0u32..=3, 0u32..=2).prop_map(|(a, b, c)| {
        let (a, b) = if a + b + c == 0 { (2, 1) } else { (a, b) };
        let p = primes();
        &(&p[0].pow(a) * &p[1].pow(b)) * &p[2].pow(c)
    })
}

pub fn elem(ctx: &PqrCtx, u: &UPoly) -> PqrElem {
    ctx.project(u)
}

pub fn nonzero_elem(ctx: &PqrCtx, u: &UPoly) -> PqrElem {
    let e = ctx.project(u);
    if e.is_zero() {
        ctx.one()
    } else {
        e
    }
}

/// A polynomial over `R_q` with the given leading monomial.
pub fn qpoly_with(ctx: &PqrCtx, lm: &Monomial, lc: &UPoly, tail: &RPoly) -> QPoly {
    with_leading(lm, nonzero_elem(ctx, lc), &ctx.project_poly(tail))
}

pub fn max_lm<'a, C: Coeff + 'a>(
    order: &MonomialOrder,
    polys: impl IntoIterator<Item = &'a MPoly<C>>,
) -> Option<Monomial> {
    polys
        .into_iter()
        .filter_map(|p| p.lm().cloned())
        .max_by(|a, b| order.cmp(a, b))
}
