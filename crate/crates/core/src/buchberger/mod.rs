//! Classical Buchberger algorithm over `Q`, used as an independent oracle.

pub mod bench;
pub mod corpus;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, MonomialOrder};
use crate::upoly::{Rational, UPoly};

pub type FieldPoly = MPoly<Rational>;

fn monic(f: &FieldPoly) -> FieldPoly {
    match f.lc() {
        Some(c) if !c.is_one() => f.scale(&(Rational::one() / c)),
        _ => f.clone(),
    }
}

/// `x^eta (f / lt f - g / lt g)`.
pub fn spoly_field(f: &FieldPoly, g: &FieldPoly) -> Result<FieldPoly> {
    let (a, cf) = f.try_lt()?;
    let (b, cg) = g.try_lt()?;
    let eta = a.lcm(b);
    let one = Rational::one();
    Ok(f.mul_term(&(&one / cf), &eta.div(a).expect("lcm"))
        .sub(&g.mul_term(&(&one / cg), &eta.div(b).expect("lcm"))))
}

/// Full reduction of `f` modulo `basis` (all terms, lowest-index divisor).
pub fn normal_form(f: &FieldPoly, basis: &[FieldPoly]) -> FieldPoly {
    let lts: Vec<(Monomial, Rational)> = basis
        .iter()
        .filter_map(|b| b.lt().map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let order = f.order().clone();
    let mut h = f.clone();
    let mut done: Vec<(Monomial, Rational)> = Vec::new();
    while let Some(pos) = h
        .terms()
        .iter()
        .position(|(m, _)| lts.iter().any(|(l, _)| l.divides(m)))
    {
        // terms before pos are irreducible and stay so
        let mut terms = h.into_terms();
        let rest = terms.split_off(pos);
        done.extend(terms);
        h = MPoly::from_terms(&order, rest);
        let (m, c) = h
            .lt()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonempty");
        let j = lts
            .iter()
            .position(|(l, _)| l.divides(&m))
            .expect("reducible");
        let delta = m.div(&lts[j].0).expect("divides");
        h = h.sub(&basis[j].mul_term(&(&c / &lts[j].1), &delta));
    }
    done.extend(h.into_terms());
    MPoly::from_terms(&order, done)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update of the pair list and basis when `h` is added.
fn update(g: &[FieldPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = g[h].lm().expect("nonzero").clone();
    let mut c: Vec<Pair> = active
        .iter()
        .map(|&k| Pair {
            i: k,
            j: h,
            lcm: g[k].lm().expect("nonzero").lcm(&lh),
        })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let coprime = g[p.i].lm().expect("nonzero").is_coprime(&lh);
        let dominated = c.iter().chain(d.iter()).any(|o| o.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|p| !g[p.i].lm().expect("nonzero").is_coprime(&lh))
        .collect();
    pairs.retain(|p| {
        let li = g[p.i].lm().expect("nonzero").lcm(&lh);
        let lj = g[p.j].lm().expect("nonzero").lcm(&lh);
        !(lh.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });
    // keep one pair per lcm among the new ones
    let mut seen: Vec<Monomial> = Vec::new();
    for p in e {
        if !seen.contains(&p.lcm) {
            seen.push(p.lcm.clone());
            pairs.push(p);
        }
    }
    active.retain(|&k| !lh.divides(g[k].lm().expect("nonzero")));
    active.push(h);
}

/// Reduced (monic, inter-reduced) Groebner basis, sorted by decreasing
/// leading monomial.
pub fn buchberger_reduced(generators: &[FieldPoly]) -> Result<Vec<FieldPoly>> {
    buchberger_capped(generators, usize::MAX)
}

/// As [`buchberger_reduced`], giving up with [`Error::IterationCap`] after
/// `max_pairs` S-polynomial reductions.
pub fn buchberger_capped(generators: &[FieldPoly], max_pairs: usize) -> Result<Vec<FieldPoly>> {
    let order = generators.first().ok_or(Error::EmptyInput)?.order().clone();
    let mut g: Vec<FieldPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for f in generators {
        let r = normal_form(f, &active.iter().map(|&k| g[k].clone()).collect::<Vec<_>>());
        if r.is_zero() {
            continue;
        }
        g.push(monic(&r));
        let h = g.len() - 1;
        update(&g, &mut active, &mut pairs, h);
    }
    let mut done = 0usize;
    while !pairs.is_empty() {
        done += 1;
        if done > max_pairs {
            return Err(Error::IterationCap(max_pairs));
        }
        let k = (0..pairs.len())
            .min_by(|&x, &y| order.cmp(&pairs[x].lcm, &pairs[y].lcm).then(x.cmp(&y)))
            .expect("nonempty");
        let p = pairs.remove(k);
        let s = spoly_field(&g[p.i], &g[p.j])?;
        let basis: Vec<FieldPoly> = active.iter().map(|&k| g[k].clone()).collect();
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        g.push(monic(&r));
        let h = g.len() - 1;
        update(&g, &mut active, &mut pairs, h);
    }
    let minimal: Vec<FieldPoly> = active.iter().map(|&k| g[k].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, f) in minimal.iter().enumerate() {
        let others: Vec<FieldPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(monic(&normal_form(f, &others)));
    }
    reduced.sort_by(|a, b| order.cmp(b.lm().expect("nonzero"), a.lm().expect("nonzero")));
    Ok(reduced)
}

/// Every pairwise S-polynomial reduces to zero.
pub fn is_groebner(basis: &[FieldPoly]) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            match spoly_field(&basis[i], &basis[j]) {
                Ok(s) if normal_form(&s, basis).is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// Each variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(basis: &[FieldPoly]) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    let n = first.nvars();
    if basis.iter().any(|b| b.is_constant()) {
        return true;
    }
    (0..n).all(|v| {
        basis.iter().any(|b| {
            let e = b.lm().expect("nonzero").exps();
            e[v] > 0 && e.iter().enumerate().all(|(k, x)| k == v || *x == 0)
        })
    })
}

/// Lex order with the last variable least is required. Returns the reduced
/// basis and the monic eliminant (`1` for the unit ideal); fails with
/// [`Error::NotZeroDimensional`] when the elimination ideal is zero.
pub fn eliminant_oracle(generators: &[FieldPoly]) -> Result<(Vec<FieldPoly>, UPoly)> {
    let order = generators.first().ok_or(Error::EmptyInput)?.order().clone();
    let n = order.nvars();
    if order.kind() != crate::mpoly::OrderKind::Lex || order.precedence()[n - 1] != n - 1 {
        return Err(Error::Precondition(
            "eliminant oracle needs lex with the last variable least",
        ));
    }
    let gb = buchberger_reduced(generators)?;
    let chi = eliminant_of_basis(&gb)?;
    Ok((gb, chi))
}

/// The monic eliminant read off a reduced lex basis whose last variable is
/// least.
pub fn eliminant_of_basis(gb: &[FieldPoly]) -> Result<UPoly> {
    let n = gb.first().ok_or(Error::EmptyInput)?.nvars();
    if gb.iter().any(|b| b.is_constant()) {
        return Ok(UPoly::one());
    }
    // with lex and the eliminant variable least, I ∩ K[x1] is generated by
    // the univariate members of the reduced basis
    let uni = gb
        .iter()
        .find(|b| {
            b.terms()
                .iter()
                .all(|(m, _)| m.exps()[..n - 1].iter().all(|e| *e == 0))
        })
        .ok_or(Error::NotZeroDimensional)?;
    Ok(to_univariate(uni))
}

/// A polynomial involving only the last variable, as a `UPoly`.
pub fn to_univariate(f: &FieldPoly) -> UPoly {
    let n = f.nvars();
    let deg = f
        .terms()
        .iter()
        .map(|(m, _)| m.exps()[n - 1] as usize)
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in f.terms() {
        debug_assert!(m.exps()[..n - 1].iter().all(|e| *e == 0));
        coeffs[m.exps()[n - 1] as usize] = c.clone();
    }
    UPoly::from_coeffs(coeffs).monic()
}

/// Embed a univariate polynomial in the last variable.
pub fn from_univariate(u: &UPoly, order: &MonomialOrder) -> FieldPoly {
    let n = order.nvars();
    let terms = u
        .terms()
        .map(|(d, c)| {
            let mut e = vec![0; n];
            e[n - 1] = d as u32;
            (Monomial::new(e), c.clone())
        })
        .collect();
    MPoly::from_terms(order, terms)
}

/// Ideal membership via the reduced basis.
pub fn is_member(f: &FieldPoly, gb: &[FieldPoly]) -> bool {
    normal_form(f, gb).is_zero()
}
