//! Division identities and S-polynomial lemmas as exact polynomial
//! identities, each checked on randomized instances.

use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

use pqrbasis::mpoly::{MPoly, Monomial};
use pqrbasis::proper::{
    is_properly_reduced, proper_divide, proper_term_reduce, spoly_pqr, triangular_criterion_pqr,
};
use pqrbasis::pseudo::{
    is_pseudo_reduced, pseudo_divide, spoly, spoly_univariate, triangular_criterion,
};
use pqrbasis::upoly::{gcd_monic, lcm, multiplicity};
use pqrbasis::{PqrCtx, UPoly};

use super::*;

pub const CASES: u32 = 1000;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config())
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn div(a: &UPoly, b: &UPoly) -> UPoly {
    a.exact_div(b).expect("exact")
}

/// `lc f * lc g / lcm(lc f, lc g)`, the associate of the gcd matching the monic lcm.
fn paired_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    div(&(a * b), &lcm(a, b).unwrap())
}

fn tail<C: pqrbasis::mpoly::Coeff>(f: &MPoly<C>) -> MPoly<C> {
    f.tail()
}

fn mdiv(a: &Monomial, b: &Monomial) -> Monomial {
    a.div(b).expect("divides")
}

pub fn pseudo_division_expression_and_condition() -> Result<(), String> {
    run((rpoly(5), rbasis(3)), |(f, basis)| {
        let order = order();
        let d = pseudo_divide(&f, &basis).unwrap();
        prop_assert!(!d.multiplier.is_zero());
        let mut rhs = d.remainder.clone();
        for (q, b) in d.quotients.iter().zip(&basis) {
            rhs = rhs.add(&q.mul(b));
        }
        prop_assert_eq!(f.scale(&d.multiplier), rhs);
        prop_assert!(is_pseudo_reduced(&d.remainder, &basis));
        let products: Vec<_> = d
            .quotients
            .iter()
            .zip(&basis)
            .map(|(q, b)| q.mul(b))
            .collect();
        let top = max_lm(&order, products.iter().chain(std::iter::once(&d.remainder)));
        prop_assert_eq!(f.lm().cloned(), top);
        Ok(())
    })
}

pub fn proper_division_expression_and_condition() -> Result<(), String> {
    run(
        (
            modulus(),
            rpoly(5),
            prop::collection::vec((nonconstant_monomial(2), upoly(4), rpoly(3)), 1..=3),
        ),
        |(q, f, raw)| {
            let order = order();
            let ctx = PqrCtx::new(&q).unwrap();
            let f = ctx.project_poly(&f);
            let basis: Vec<QPoly> = raw
                .iter()
                .map(|(m, c, t)| qpoly_with(&ctx, m, c, t))
                .collect();
            let d = proper_divide(&f, &basis, &ctx).unwrap();
            prop_assert!(d.multiplier.is_unit());
            let mut rhs = d.remainder.clone();
            for (qj, b) in d.quotients.iter().zip(&basis) {
                rhs = rhs.add(&qj.mul(b));
            }
            prop_assert_eq!(f.scale(&d.multiplier), rhs);
            prop_assert!(is_properly_reduced(&d.remainder, &basis));
            let mut lms: Vec<Monomial> = d
                .quotients
                .iter()
                .zip(&basis)
                .filter_map(|(qj, b)| Some(qj.lm()?.mul(b.lm()?)))
                .collect();
            lms.extend(d.remainder.lm().cloned());
            let top = lms.into_iter().max_by(|a, b| order.cmp(a, b));
            prop_assert_eq!(f.lm().cloned(), top);
            Ok(())
        },
    )
}

pub fn proper_term_reduction_removes_the_term() -> Result<(), String> {
    run(
        (
            modulus(),
            nonconstant_rpoly(4),
            (nonconstant_monomial(1), upoly(4), rpoly(2)),
        ),
        |(q, f, (glm, glc, gt))| {
            let ctx = PqrCtx::new(&q).unwrap();
            let f = ctx.project_poly(&f);
            let g = qpoly_with(&ctx, &glm, &glc, &gt);
            let targets: Vec<Monomial> = f.support().filter(|m| glm.divides(m)).cloned().collect();
            for t in targets {
                let single = MPoly::term(f.order(), f.coeff_of(&t).unwrap().clone(), t.clone());
                let reducible = !is_properly_reduced(&single, std::slice::from_ref(&g));
                match proper_term_reduce(&f, &g, &t) {
                    Ok(r) => {
                        prop_assert!(reducible);
                        prop_assert!(r.mu.is_unit());
                        prop_assert!(r.h.coeff_of(&t).is_none());
                        let expect = f
                            .scale(&r.mu)
                            .sub(&g.mul_term(&r.quotient_coeff, &r.quotient_monomial));
                        prop_assert_eq!(r.h, expect);
                    }
                    Err(_) => prop_assert!(!reducible),
                }
            }
            Ok(())
        },
    )
}

pub fn special_spoly_essence() -> Result<(), String> {
    run((nonconstant_rpoly(4), nonzero_upoly(4)), |(f, g)| {
        let lf = f.lc().unwrap();
        let d = paired_gcd(lf, &g);
        let s = spoly_univariate(&f, &g).unwrap();
        prop_assert_eq!(s.scale(&d), tail(&f).scale(&g));
        Ok(())
    })
}

pub fn coprime_pair_reduction() -> Result<(), String> {
    run(
        (
            (1u32..=2, 1u32..=2),
            any::<bool>(),
            (nonzero_upoly(3), nonzero_upoly(3)),
            (rpoly(3), rpoly(3)),
        ),
        |((a, b), swap, (lf, lg), (tf, tg))| {
            let (ma, mb) = (Monomial::new(vec![a, 0]), Monomial::new(vec![0, b]));
            let (ma, mb) = if swap { (mb, ma) } else { (ma, mb) };
            let f = with_leading(&ma, lf.clone(), &tf);
            let g = with_leading(&mb, lg.clone(), &tg);
            let s = spoly(&f, &g).unwrap();
            let (f1, g1) = (tail(&f), tail(&g));
            let d = paired_gcd(&lf, &lg);
            prop_assert_eq!(s.scale(&d), f1.mul(&g).sub(&g1.mul(&f)));
            let order = order();
            let top = max_lm(&order, [&f1.mul(&g), &g1.mul(&f)]);
            prop_assert_eq!(s.lm().cloned(), top);
            Ok(())
        },
    )
}

pub fn triangle_identity() -> Result<(), String> {
    run(
        (
            nonconstant_rpoly(3),
            nonconstant_rpoly(3),
            (nonzero_upoly(3), rpoly(3), (0u32..=2, 0u32..=2)),
        ),
        |(f, g, (hlc, htail, cut))| {
            let gamma = f.lm().unwrap().lcm(g.lm().unwrap());
            let hm = Monomial::new(
                gamma
                    .exps()
                    .iter()
                    .zip([cut.0, cut.1])
                    .map(|(e, c)| e.saturating_sub(c))
                    .collect(),
            );
            prop_assume!(hm.exps().iter().any(|e| *e > 0));
            let h = with_leading(&hm, hlc, &htail);
            let (lf, lg, lh) = (f.lc().unwrap(), g.lc().unwrap(), h.lc().unwrap());
            let m = lcm(lf, lg).unwrap();
            let lambda = div(lh, &gcd_monic(&m, lh).unwrap());
            prop_assert_eq!(&lambda, &triangular_criterion(&f, &g, &h).unwrap());
            let (fl, gl, hl) = (f.lm().unwrap(), g.lm().unwrap(), hl_of(&h));
            let gfh = fl.lcm(&hl);
            let ggh = gl.lcm(&hl);
            let a = div(&(&lambda * &m), &lcm(lf, lh).unwrap());
            let b = div(&(&lambda * &m), &lcm(lg, lh).unwrap());
            let rhs = spoly(&f, &h)
                .unwrap()
                .mul_term(&a, &mdiv(&gamma, &gfh))
                .sub(&spoly(&g, &h).unwrap().mul_term(&b, &mdiv(&gamma, &ggh)));
            prop_assert_eq!(spoly(&f, &g).unwrap().scale(&lambda), rhs);
            Ok(())
        },
    )
}

pub fn syzygy_expansion() -> Result<(), String> {
    run(
        (
            (1usize..=3).prop_flat_map(|n| {
                (
                    nonconstant_monomial(2),
                    prop::collection::vec(nonzero_upoly(3), n),
                    prop::collection::vec(rpoly(3), n + 1),
                )
            }),
            0usize..3,
        ),
        |((alpha, lcs, tails), p_index)| {
            let mut lcs = lcs;
            let last = lcs.iter().fold(UPoly::zero(), |acc, l| &acc - l);
            prop_assume!(!last.is_zero());
            lcs.push(last);
            let fs: Vec<RPoly> = lcs
                .iter()
                .zip(&tails)
                .map(|(l, t)| with_leading(&alpha, l.clone(), t))
                .collect();
            check_syzygy(&fs, &alpha)?;
            // relabel so the last leading coefficient has the least multiplicity of p
            let p = &primes()[p_index];
            let k = (0..fs.len())
                .min_by_key(|&j| multiplicity(p, fs[j].lc().unwrap()).unwrap())
                .unwrap();
            let mut relabeled = fs.clone();
            let moved = relabeled.remove(k);
            relabeled.push(moved);
            let b = check_syzygy(&relabeled, &alpha)?;
            prop_assert_eq!(multiplicity(p, &b).unwrap(), 0);
            Ok(())
        },
    )
}

pub fn coprime_pair_reduction_pqr() -> Result<(), String> {
    run(
        (
            modulus(),
            (1u32..=2, 1u32..=2, any::<bool>()),
            (upoly(4), upoly(4)),
            (rpoly(3), rpoly(3)),
        ),
        |(q, (a, b, swap), (lf, lg), (tf, tg))| {
            let ctx = PqrCtx::new(&q).unwrap();
            let (ma, mb) = (Monomial::new(vec![a, 0]), Monomial::new(vec![0, b]));
            let (ma, mb) = if swap { (mb, ma) } else { (ma, mb) };
            let f = qpoly_with(&ctx, &ma, &lf, &tf);
            let g = qpoly_with(&ctx, &mb, &lg, &tg);
            let s = spoly_pqr(&f, &g).unwrap();
            let (l_f, l_g) = (
                f.lc().unwrap().lift().clone(),
                g.lc().unwrap().lift().clone(),
            );
            let d = ctx.project(&paired_gcd(&l_f, &l_g));
            let (f1, g1) = (tail(&f), tail(&g));
            prop_assert_eq!(s.scale(&d), f1.mul(&g).sub(&g1.mul(&f)));
            let lt_form = f1
                .mul(&MPoly::term(
                    &g.order().clone(),
                    g.lc().unwrap().clone(),
                    g.lm().unwrap().clone(),
                ))
                .sub(&g1.mul(&MPoly::term(
                    &f.order().clone(),
                    f.lc().unwrap().clone(),
                    f.lm().unwrap().clone(),
                )));
            prop_assert_eq!(s.scale(&d), lt_form);
            Ok(())
        },
    )
}

pub fn triangle_identity_pqr() -> Result<(), String> {
    run(
        (
            modulus(),
            (nonconstant_monomial(2), upoly(4), rpoly(3)),
            (nonconstant_monomial(2), upoly(4), rpoly(3)),
            (upoly(4), rpoly(3), (0u32..=2, 0u32..=2)),
        ),
        |(q, (fm, fc, ft), (gm, gc, gt), (hc, ht, cut))| {
            let ctx = PqrCtx::new(&q).unwrap();
            let f = qpoly_with(&ctx, &fm, &fc, &ft);
            let g = qpoly_with(&ctx, &gm, &gc, &gt);
            let gamma = fm.lcm(&gm);
            let hm = Monomial::new(
                gamma
                    .exps()
                    .iter()
                    .zip([cut.0, cut.1])
                    .map(|(e, c)| e.saturating_sub(c))
                    .collect(),
            );
            prop_assume!(hm.exps().iter().any(|e| *e > 0));
            let h = qpoly_with(&ctx, &hm, &hc, &ht);
            let (lf, lg, lh) = (
                f.lc().unwrap().lift().clone(),
                g.lc().unwrap().lift().clone(),
                h.lc().unwrap().lift().clone(),
            );
            let m = lcm(&lf, &lg).unwrap();
            let lam = div(&lh, &gcd_monic(&m, &lh).unwrap());
            let lambda = ctx.project(&lam);
            prop_assert_eq!(&lambda, &triangular_criterion_pqr(&f, &g, &h).unwrap());
            let a = ctx.project(&div(&(&lam * &m), &lcm(&lf, &lh).unwrap()));
            let b = ctx.project(&div(&(&lam * &m), &lcm(&lg, &lh).unwrap()));
            let rhs = spoly_pqr(&f, &h)
                .unwrap()
                .mul_term(&a, &mdiv(&gamma, &fm.lcm(&hm)))
                .sub(
                    &spoly_pqr(&g, &h)
                        .unwrap()
                        .mul_term(&b, &mdiv(&gamma, &gm.lcm(&hm))),
                );
            prop_assert_eq!(spoly_pqr(&f, &g).unwrap().scale(&lambda), rhs);
            Ok(())
        },
    )
}

pub fn syzygy_expansion_pqr() -> Result<(), String> {
    run(
        (
            modulus(),
            (1usize..=3).prop_flat_map(|n| {
                (
                    nonconstant_monomial(2),
                    prop::collection::vec(upoly(4), n),
                    prop::collection::vec(rpoly(3), n + 1),
                )
            }),
        ),
        |(q, (alpha, lcs, tails))| {
            let ctx = PqrCtx::new(&q).unwrap();
            let mut cs: Vec<_> = lcs.iter().map(|l| nonzero_elem(&ctx, l)).collect();
            let last = cs
                .iter()
                .fold(ctx.zero(), |acc, c| pqrbasis::mpoly::Coeff::sub(&acc, c));
            prop_assume!(!last.is_zero());
            cs.push(last);
            let fs: Vec<QPoly> = cs
                .iter()
                .zip(&tails)
                .map(|(c, t)| with_leading(&alpha, c.clone(), &ctx.project_poly(t)))
                .collect();
            check_syzygy_pqr(&ctx, &fs, &alpha)?;
            for p in primes().iter().filter(|p| p.divides(&q)) {
                let k = (0..fs.len())
                    .min_by_key(|&j| multiplicity(p, fs[j].lc().unwrap().lift()).unwrap())
                    .unwrap();
                let mut relabeled = fs.clone();
                let moved = relabeled.remove(k);
                relabeled.push(moved);
                let b = check_syzygy_pqr(&ctx, &relabeled, &alpha)?;
                prop_assert_eq!(multiplicity(p, b.lift()).unwrap(), 0);
            }
            Ok(())
        },
    )
}

pub type Check = fn() -> Result<(), String>;

pub const SUITE: &[(&str, Check)] = &[
    (
        "pseudo_division_expression_and_condition",
        pseudo_division_expression_and_condition,
    ),
    (
        "proper_division_expression_and_condition",
        proper_division_expression_and_condition,
    ),
    (
        "proper_term_reduction_removes_the_term",
        proper_term_reduction_removes_the_term,
    ),
    ("special_spoly_essence", special_spoly_essence),
    ("coprime_pair_reduction", coprime_pair_reduction),
    ("triangle_identity", triangle_identity),
    ("syzygy_expansion", syzygy_expansion),
    ("coprime_pair_reduction_pqr", coprime_pair_reduction_pqr),
    ("triangle_identity_pqr", triangle_identity_pqr),
    ("syzygy_expansion_pqr", syzygy_expansion_pqr),
];

fn hl_of(h: &RPoly) -> Monomial {
    h.lm().unwrap().clone()
}

/// Checks `b f = sum b_j S(f_j, f_s)` and returns `b`.
fn check_syzygy(fs: &[RPoly], alpha: &Monomial) -> Result<UPoly, TestCaseError> {
    let order = order();
    let f = fs.iter().fold(MPoly::zero(&order), |acc, p| acc.add(p));
    prop_assert!(f
        .lm()
        .is_none_or(|m| order.cmp(m, alpha) == std::cmp::Ordering::Less));
    let s = fs.len() - 1;
    let ls = fs[s].lc().unwrap();
    let ratios: Vec<UPoly> = fs[..s]
        .iter()
        .map(|fj| {
            let lj = fj.lc().unwrap();
            div(&lcm(lj, ls).unwrap(), lj)
        })
        .collect();
    let b = ratios
        .iter()
        .fold(UPoly::one(), |acc, r| lcm(&acc, r).unwrap());
    let mut rhs = MPoly::zero(&order);
    for fj in &fs[..s] {
        let bj = div(
            &(&b * fj.lc().unwrap()),
            &lcm(fj.lc().unwrap(), ls).unwrap(),
        );
        rhs = rhs.add(&spoly(fj, &fs[s]).unwrap().scale(&bj));
    }
    prop_assert_eq!(f.scale(&b), rhs);
    Ok(b)
}

fn check_syzygy_pqr(
    ctx: &PqrCtx,
    fs: &[QPoly],
    alpha: &Monomial,
) -> Result<pqrbasis::PqrElem, TestCaseError> {
    let order = order();
    let f = fs.iter().fold(MPoly::zero(&order), |acc, p| acc.add(p));
    prop_assert!(f
        .lm()
        .is_none_or(|m| order.cmp(m, alpha) == std::cmp::Ordering::Less));
    let s = fs.len() - 1;
    let ls = fs[s].lc().unwrap().lift().clone();
    let ms: Vec<UPoly> = fs[..s]
        .iter()
        .map(|fj| {
            let lj = fj.lc().unwrap().lift();
            div(&lcm(lj, &ls).unwrap(), lj)
        })
        .collect();
    let a = ms.iter().fold(UPoly::one(), |acc, r| lcm(&acc, r).unwrap());
    let mut rhs = MPoly::zero(&order);
    for (j, fj) in fs[..s].iter().enumerate() {
        let bj = ctx.project(&div(&a, &ms[j]));
        rhs = rhs.add(&spoly_pqr(fj, &fs[s]).unwrap().scale(&bj));
    }
    let b = ctx.project(&a);
    prop_assert_eq!(f.scale(&b), rhs);
    Ok(b)
}
