//! Random zero-dimensional systems and membership probes for cross-checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{buchberger_capped, is_zero_dimensional, FieldPoly};
use crate::mpoly::{MPoly, Monomial, MonomialOrder, OrderKind};
use crate::upoly::{rat, Rational};

#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_degree: u32,
    pub coeff_bound: i64,
    pub max_terms: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            min_vars: 2,
            max_vars: 3,
            max_degree: 3,
            coeff_bound: 5,
            max_terms: 4,
        }
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

fn nonzero_coeff(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return rat(c);
        }
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, order: &MonomialOrder, p: &CorpusParams) -> FieldPoly {
    let pool = monomials_up_to(order.nvars(), p.max_degree);
    let k = rng.gen_range(2..=p.max_terms);
    let terms = pool
        .choose_multiple(rng, k)
        .map(|m| (m.clone(), nonzero_coeff(rng, p.coeff_bound)))
        .collect();
    MPoly::from_terms(order, terms)
}

/// Draws whose basis needs more S-polynomials than this are discarded.
pub const GENERATION_PAIR_CAP: usize = 200;

/// A system with as many generators as variables, redrawn until its reduced
/// lex basis is zero-dimensional and not the unit ideal.
pub fn random_system(rng: &mut ChaCha8Rng, p: &CorpusParams) -> Vec<FieldPoly> {
    random_system_with_basis(rng, p).0
}

/// As [`random_system`], also returning the reduced lex basis computed while
/// checking it.
pub fn random_system_with_basis(
    rng: &mut ChaCha8Rng,
    p: &CorpusParams,
) -> (Vec<FieldPoly>, Vec<FieldPoly>) {
    let n = rng.gen_range(p.min_vars..=p.max_vars);
    let order = MonomialOrder::new(OrderKind::Lex, n);
    loop {
        let gens: Vec<FieldPoly> = (0..n).map(|_| random_poly(rng, &order, p)).collect();
        if gens.iter().any(|g| g.is_constant()) {
            continue;
        }
        let Ok(gb) = buchberger_capped(&gens, GENERATION_PAIR_CAP) else {
            continue;
        };
        if gb.iter().all(|g| !g.is_constant()) && is_zero_dimensional(&gb) {
            return (gens, gb);
        }
    }
}

/// `sum h_k f_k` with small random cofactors.
pub fn random_member(rng: &mut ChaCha8Rng, gens: &[FieldPoly], p: &CorpusParams) -> FieldPoly {
    let order = gens[0].order().clone();
    let small = CorpusParams {
        max_degree: 2,
        max_terms: 3,
        ..*p
    };
    let mut acc = MPoly::zero(&order);
    for g in gens {
        if rng.gen_bool(0.8) {
            acc = acc.add(&random_poly(rng, &order, &small).mul(g));
        }
    }
    if acc.is_zero() {
        acc = gens[0].clone();
    }
    acc
}

/// A random polynomial, occasionally shifted from a member by a constant.
pub fn random_probe(rng: &mut ChaCha8Rng, gens: &[FieldPoly], p: &CorpusParams) -> FieldPoly {
    let order = gens[0].order().clone();
    if rng.gen_bool(0.5) {
        let shift = MPoly::constant(&order, nonzero_coeff(rng, 3));
        random_member(rng, gens, p).add(&shift)
    } else {
        let f = random_poly(rng, &order, p);
        if f.is_zero() {
            MPoly::constant(&order, rat(1))
        } else {
            f
        }
    }
}
