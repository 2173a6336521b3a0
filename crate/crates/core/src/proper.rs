//! Proper division over `R_q[x~]`, the S-polynomial forms with their
//! criteria, and the proper eliminant computation.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::mpoly::{Coeff, MPoly, Monomial, MonomialOrder};
use crate::pqr::{PqrCtx, PqrElem};
use crate::upoly::{gcd_monic, lcm, UPoly};

pub const DEFAULT_MAX_ITER: usize = 100_000;

type QPoly = MPoly<PqrElem>;

#[derive(Debug, Clone, PartialEq)]
pub struct ProperDivision {
    /// Always a unit.
    pub multiplier: PqrElem,
    pub quotients: Vec<QPoly>,
    pub remainder: QPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProperTermReduction {
    pub h: QPoly,
    pub mu: PqrElem,
    pub quotient_coeff: PqrElem,
    pub quotient_monomial: Monomial,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProperStats {
    pub pairs: usize,
    pub coprime_skips: usize,
    pub triangle_skips: usize,
    pub reductions: usize,
    pub modulus_spolys: usize,
    pub eliminant_spolys: usize,
    pub refinements: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProperResult {
    /// Standard representative: zero, one, or a proper zero divisor.
    pub e_q: PqrElem,
    pub basis: Vec<QPoly>,
    pub stats: ProperStats,
}

/// Interim multiplier `mu = sigma(lcm(l_a, l_g) / l_a)` and `m = sigma(lcm / l_g)`.
fn multipliers(ctx: &PqrCtx, la: &UPoly, lg: &UPoly) -> Result<(PqrElem, PqrElem)> {
    let l = lcm(la, lg)?;
    Ok((
        ctx.project(&l.exact_div(la)?),
        ctx.project(&l.exact_div(lg)?),
    ))
}

/// Whether the term `c x^a` can be properly reduced by `g`.
fn reducible_by(c: &PqrElem, m: &Monomial, g: &QPoly) -> bool {
    let Some((lm, lc)) = g.lt() else {
        return false;
    };
    if !lm.divides(m) {
        return false;
    }
    let l = lcm(c.lift(), lc.lift()).expect("nonzero");
    c.ctx()
        .project(&l.exact_div(c.lift()).expect("lcm"))
        .is_unit()
}

pub fn proper_term_reduce(f: &QPoly, g: &QPoly, target: &Monomial) -> Result<ProperTermReduction> {
    let (lm_g, lc_g) = g.try_lt()?;
    if g.is_constant() {
        return Err(Error::Precondition("reduction by an element of R_q"));
    }
    let c = f
        .coeff_of(target)
        .ok_or(Error::NotReducible("target monomial is not in the support"))?;
    let delta = target.div(lm_g).ok_or(Error::NotReducible(
        "target not divisible by the leading monomial",
    ))?;
    let (mu, m) = multipliers(c.ctx(), c.lift(), lc_g.lift())?;
    if !mu.is_unit() {
        return Err(Error::NotReducible("interim multiplier is not a unit"));
    }
    let h = f.scale(&mu).sub(&g.mul_term(&m, &delta));
    debug_assert!(h.coeff_of(target).is_none());
    Ok(ProperTermReduction {
        h,
        mu,
        quotient_coeff: m,
        quotient_monomial: delta,
    })
}

/// Division data for one basis element: `lc g = t w` with `t` monic and
/// built from prime factors of `q`, and `w` a unit.
///
/// `c x^a` is properly reducible by `g` exactly when `lm g | x^a` and
/// `t | iota(c)`; the reduction `f - (c/t) w^-1 x^delta g` equals `mu^-1`
/// times the interim-multiplier form, so no rescaling of `f` is needed.
pub(crate) struct Divisor {
    lm: Monomial,
    t: UPoly,
    w_inv: PqrElem,
}

impl Divisor {
    pub(crate) fn new(g: &QPoly) -> Result<Self> {
        if g.is_constant() {
            return Err(Error::Precondition("proper division by an element of R_q"));
        }
        let (lm, lc) = g.try_lt()?;
        let q = lc.ctx().modulus();
        let mut t = UPoly::one();
        let mut rest = lc.lift().clone();
        loop {
            let d = gcd_monic(&rest, q)?;
            if d.is_constant() {
                break;
            }
            rest = rest.exact_div(&d)?;
            t = &t * &d;
        }
        Ok(Divisor {
            lm: lm.clone(),
            t,
            w_inv: lc.ctx().project(&rest).inverse()?,
        })
    }

    fn reduces(&self, c: &PqrElem, m: &Monomial) -> bool {
        self.lm.divides(m) && (self.t.is_one() || self.t.divides(c.lift()))
    }

    fn quotient(&self, c: &PqrElem) -> Result<PqrElem> {
        if self.t.is_one() {
            return Ok(c.mul(&self.w_inv));
        }
        Ok(c.ctx()
            .project(&c.lift().exact_div(&self.t)?)
            .mul(&self.w_inv))
    }
}

fn find_reducible(
    f: &QPoly,
    divs: &[Divisor],
    below: Option<&Monomial>,
    order: &MonomialOrder,
) -> Option<(Monomial, usize)> {
    for (m, c) in f.terms() {
        if below.is_some_and(|b| order.cmp(m, b) != Ordering::Less) {
            continue;
        }
        if let Some(j) = divs.iter().position(|d| d.reduces(c, m)) {
            return Some((m.clone(), j));
        }
    }
    None
}

pub fn is_properly_reduced(f: &QPoly, basis: &[QPoly]) -> bool {
    f.terms()
        .iter()
        .all(|(m, c)| !basis.iter().any(|g| reducible_by(c, m, g)))
}

/// Reduce the largest properly reducible term with the lowest-index divisor
/// until none is left. Terms above the cursor never change, so one
/// descending pass suffices.
pub(crate) fn divide_with(
    f: &QPoly,
    basis: &[QPoly],
    divs: &[Divisor],
    ctx: &PqrCtx,
    track: bool,
) -> Result<ProperDivision> {
    let order = f.order().clone();
    let mut h = f.clone();
    let mut quotients = if track {
        vec![MPoly::zero(&order); basis.len()]
    } else {
        Vec::new()
    };
    let mut below: Option<Monomial> = None;
    while let Some((m, j)) = find_reducible(&h, divs, below.as_ref(), &order) {
        let c = h.coeff_of(&m).expect("in support").clone();
        let u = divs[j].quotient(&c)?;
        let delta = m.div(&divs[j].lm).expect("divides");
        h = h.sub(&basis[j].mul_term(&u, &delta));
        debug_assert!(h.coeff_of(&m).is_none());
        if track {
            quotients[j] = quotients[j].add(&MPoly::term(&order, u, delta));
        }
        below = Some(m);
    }
    Ok(ProperDivision {
        multiplier: ctx.one(),
        quotients,
        remainder: h,
    })
}

fn divide(f: &QPoly, basis: &[QPoly], ctx: &PqrCtx, track: bool) -> Result<ProperDivision> {
    let divs = basis.iter().map(Divisor::new).collect::<Result<Vec<_>>>()?;
    divide_with(f, basis, &divs, ctx, track)
}

pub fn proper_divide(f: &QPoly, basis: &[QPoly], ctx: &PqrCtx) -> Result<ProperDivision> {
    divide(f, basis, ctx, true)
}

pub fn proper_remainder(f: &QPoly, basis: &[QPoly], ctx: &PqrCtx) -> Result<ProperDivision> {
    divide(f, basis, ctx, false)
}

/// The S-polynomial forms over `R_q`.
#[derive(Debug, Clone, Copy)]
pub enum SPolyPartner<'a> {
    Poly(&'a QPoly),
    /// A non-unit, nonzero constant of `R_q`.
    Constant(&'a PqrElem),
    /// The modulus `q` itself.
    Modulus,
}

/// `S(f, g) = m_f x^{gamma-alpha} f - m_g x^{gamma-beta} g`.
pub fn spoly_pqr(f: &QPoly, g: &QPoly) -> Result<QPoly> {
    if f.is_constant() || g.is_constant() {
        return Err(Error::Precondition("S-polynomial of an element of R_q"));
    }
    let (a, cf) = f.try_lt()?;
    let (b, cg) = g.try_lt()?;
    let (mf, mg) = multipliers(cf.ctx(), cf.lift(), cg.lift())?;
    let gamma = a.lcm(b);
    Ok(f.mul_term(&mf, &gamma.div(a).expect("lcm"))
        .sub(&g.mul_term(&mg, &gamma.div(b).expect("lcm"))))
}

/// `S(f, e) = sigma(l_e / gcd(l_f, l_e)) (f - lt f)` for a zero divisor `e`.
pub fn spoly_pqr_constant(f: &QPoly, e: &PqrElem) -> Result<QPoly> {
    if f.is_constant() {
        return Err(Error::Precondition("S-polynomial of an element of R_q"));
    }
    if !e.is_zero_divisor() {
        return Err(Error::Precondition(
            "constant partner must be a nonzero zero divisor",
        ));
    }
    let (_, cf) = f.try_lt()?;
    let d = gcd_monic(cf.lift(), e.lift())?;
    Ok(f.tail().scale(&e.ctx().project(&e.lift().exact_div(&d)?)))
}

/// `S(f, q) = n_f (f - lt f)` with `n_f = sigma(lcm(l_f, q) / l_f)`.
pub fn spoly_pqr_modulus(f: &QPoly) -> Result<QPoly> {
    let (_, cf) = f.try_lt()?;
    if f.is_constant() || !cf.is_zero_divisor() {
        return Err(Error::Precondition(
            "leading coefficient must be a zero divisor",
        ));
    }
    let ctx = cf.ctx();
    let nf = ctx.project(&lcm(cf.lift(), ctx.modulus())?.exact_div(cf.lift())?);
    Ok(f.tail().scale(&nf))
}

pub fn spoly_pqr_with(f: &QPoly, partner: SPolyPartner<'_>) -> Result<QPoly> {
    match partner {
        SPolyPartner::Poly(g) => spoly_pqr(f, g),
        SPolyPartner::Constant(e) => spoly_pqr_constant(f, e),
        SPolyPartner::Modulus => spoly_pqr_modulus(f),
    }
}

/// `sigma(gcd(l_f, l_g))` for coprime leading monomials.
pub fn coprime_criterion_pqr(f: &QPoly, g: &QPoly) -> Result<PqrElem> {
    let (a, cf) = f.try_lt()?;
    let (b, cg) = g.try_lt()?;
    if !a.is_coprime(b) {
        return Err(Error::Precondition("leading monomials are not coprime"));
    }
    Ok(cf.ctx().project(&gcd_monic(cf.lift(), cg.lift())?))
}

/// `sigma(l_h / gcd(lcm(l_f, l_g), l_h))`.
pub fn triangular_criterion_pqr(f: &QPoly, g: &QPoly, h: &QPoly) -> Result<PqrElem> {
    let (a, cf) = f.try_lt()?;
    let (b, cg) = g.try_lt()?;
    let (c, ch) = h.try_lt()?;
    if !c.divides(&a.lcm(b)) {
        return Err(Error::Precondition(
            "lcm of leading monomials not in <lm h>",
        ));
    }
    let m = lcm(cf.lift(), cg.lift())?;
    let d = gcd_monic(&m, ch.lift())?;
    Ok(cf.ctx().project(&ch.lift().exact_div(&d)?))
}

/// Scale by `w^-1`, where `lc = t w` with `t` the monic `q`-part, so that the
/// leading coefficient becomes `t` itself.
fn normalize(r: QPoly) -> Result<(QPoly, Divisor)> {
    let d = Divisor::new(&r)?;
    if d.w_inv.lift().is_one() {
        return Ok((r, d));
    }
    let r = r.scale(&d.w_inv);
    let d = Divisor {
        w_inv: r.lc().expect("nonzero").ctx().one(),
        ..d
    };
    Ok((r, d))
}

enum Work {
    Pair(usize, usize),
    Ready(QPoly),
}

struct Pending {
    key: Monomial,
    seq: usize,
    work: Work,
}

enum Outcome {
    Continue,
    Unit,
}

struct State<'a> {
    ctx: &'a PqrCtx,
    order: MonomialOrder,
    f: Vec<QPoly>,
    divs: Vec<Divisor>,
    e: PqrElem,
    queue: Vec<Pending>,
    seq: usize,
    open: HashSet<(usize, usize)>,
    beheaded: HashSet<usize>,
    associates: HashSet<(usize, UPoly)>,
    stats: ProperStats,
    max_iter: usize,
}

impl State<'_> {
    fn push(&mut self, key: Monomial, s: QPoly) {
        if s.is_zero() {
            return;
        }
        self.queue.push(Pending {
            key,
            seq: self.seq,
            work: Work::Ready(s),
        });
        self.seq += 1;
    }

    /// Coprime criterion at creation; other pairs are queued.
    fn consider(&mut self, i: usize, j: usize) -> Result<()> {
        self.stats.pairs += 1;
        let (a, b) = (
            self.f[i].lm().expect("nonzero"),
            self.f[j].lm().expect("nonzero"),
        );
        let gamma = a.lcm(b);
        if a.is_coprime(b) && coprime_criterion_pqr(&self.f[i], &self.f[j])?.is_unit() {
            self.stats.coprime_skips += 1;
            return Ok(());
        }
        self.open.insert((i, j));
        self.queue.push(Pending {
            key: gamma,
            seq: self.seq,
            work: Work::Pair(i, j),
        });
        self.seq += 1;
        Ok(())
    }

    /// Triangular criterion with a unit `lambda`, against elements whose
    /// pairs with `f_i` and `f_j` are no longer pending.
    fn triangle_skip(&mut self, i: usize, j: usize, gamma: &Monomial) -> Result<bool> {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        for k in 0..self.f.len() {
            if k == i
                || k == j
                || self.open.contains(&key(i, k))
                || self.open.contains(&key(j, k))
                || !self.f[k].lm().expect("nonzero").divides(gamma)
            {
                continue;
            }
            // lambda is a unit iff the q-part of l_k divides lcm(l_i, l_j)
            let m = lcm(&self.divs[i].t, &self.divs[j].t)?;
            if self.divs[k].t.divides(&m) {
                self.stats.triangle_skips += 1;
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn pop(&mut self) -> Option<Pending> {
        let order = &self.order;
        let best = self
            .queue
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| order.cmp(&x.key, &y.key).then(x.seq.cmp(&y.seq)))
            .map(|(k, _)| k)?;
        let p = self.queue.swap_remove(best);
        if let Work::Pair(i, j) = p.work {
            self.open.remove(&(i, j));
        }
        Some(p)
    }

    /// Fold a nonzero constant of `R_q` into `e`.
    fn absorb_constant(&mut self, r: &PqrElem) -> Result<Outcome> {
        if r.is_unit() {
            return Ok(Outcome::Unit);
        }
        let q = self.ctx.modulus();
        if self.e.is_zero() {
            self.e = self.ctx.project(&gcd_monic(r.lift(), q)?);
            self.stats.refinements += 1;
        } else {
            let d = self.ctx.project(&gcd_monic(r.lift(), self.e.lift())?);
            let ge = gcd_monic(self.e.lift(), q)?;
            if !ge.divides(d.lift()) {
                debug_assert!({
                    let gd = gcd_monic(d.lift(), q).expect("nonzero");
                    !ge.divides(&gd) && gd.divides(&ge)
                });
                self.e = d;
                self.stats.refinements += 1;
            }
        }
        if self.e.is_unit() {
            return Ok(Outcome::Unit);
        }
        Ok(Outcome::Continue)
    }

    fn adjoin(&mut self, r: QPoly) -> Result<()> {
        let (r, d) = normalize(r)?;
        self.divs.push(d);
        self.f.push(r);
        let n = self.f.len() - 1;
        for i in 0..n {
            self.consider(i, n)?;
        }
        Ok(())
    }

    fn process(&mut self) -> Result<Outcome> {
        while let Some(p) = self.pop() {
            let s = match p.work {
                Work::Ready(s) => s,
                Work::Pair(i, j) => {
                    if self.triangle_skip(i, j, &p.key)? {
                        continue;
                    }
                    spoly_pqr(&self.f[i], &self.f[j])?
                }
            };
            if s.is_zero() {
                continue;
            }
            self.stats.reductions += 1;
            if self.stats.reductions > self.max_iter {
                return Err(Error::IterationCap(self.max_iter));
            }
            let div = divide_with(&s, &self.f, &self.divs, self.ctx, false)?;
            let r = div.remainder;
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                let c = r.constant_coeff().expect("constant").clone();
                if let Outcome::Unit = self.absorb_constant(&c)? {
                    return Ok(Outcome::Unit);
                }
            } else {
                self.adjoin(r)?;
            }
        }
        Ok(Outcome::Continue)
    }

    /// Enqueue the special S-polynomials; returns whether any was added.
    fn special(&mut self) -> Result<bool> {
        let before = self.seq;
        for k in 0..self.f.len() {
            let lc = self.f[k].lc().expect("nonzero").clone();
            if !lc.is_zero_divisor() {
                continue;
            }
            let key = self.f[k].lm().expect("nonzero").clone();
            if self.e.is_zero() {
                if self.beheaded.insert(k) {
                    self.stats.modulus_spolys += 1;
                    let s = spoly_pqr_modulus(&self.f[k])?;
                    self.push(key, s);
                }
            } else {
                let d = self.ctx.project(&gcd_monic(lc.lift(), self.e.lift())?);
                if !d.is_zero_divisor() {
                    continue;
                }
                let tag = (k, self.e.standard_rep()?.lift().clone());
                if self.associates.insert(tag) {
                    self.stats.eliminant_spolys += 1;
                    let s = spoly_pqr_constant(&self.f[k], &self.e)?;
                    self.push(key, s);
                }
            }
        }
        Ok(self.seq != before)
    }
}

/// Proper eliminant and proper basis of the ideal generated by `generators`
/// in `R_q[x~]`.
///
/// Zero generators are dropped; a unit constant makes the ideal trivial;
/// other constants are folded into the eliminant before the main loop.
pub fn proper_eliminant(
    generators: &[QPoly],
    ctx: &PqrCtx,
    max_iter: usize,
) -> Result<ProperResult> {
    let order = generators.first().ok_or(Error::EmptyInput)?.order().clone();
    let mut st = State {
        ctx,
        order,
        f: Vec::new(),
        divs: Vec::new(),
        e: ctx.zero(),
        queue: Vec::new(),
        seq: 0,
        open: HashSet::new(),
        beheaded: HashSet::new(),
        associates: HashSet::new(),
        stats: ProperStats::default(),
        max_iter,
    };
    let unit = |st: State<'_>| ProperResult {
        e_q: ctx.one(),
        basis: st.f,
        stats: st.stats,
    };
    for g in generators {
        if g.is_zero() {
            continue;
        }
        if let Some(c) = g.lc() {
            assert!(c.ctx().same(ctx), "mixed quotient ring contexts");
        }
        if g.is_constant() {
            let c = g.constant_coeff().expect("constant").clone();
            if let Outcome::Unit = st.absorb_constant(&c)? {
                return Ok(unit(st));
            }
        } else {
            let (g, d) = normalize(g.clone())?;
            st.divs.push(d);
            st.f.push(g);
        }
    }
    if st.f.is_empty() && st.e.is_zero() {
        return Err(Error::EmptyInput);
    }
    for j in 1..st.f.len() {
        for i in 0..j {
            st.consider(i, j)?;
        }
    }
    loop {
        if let Outcome::Unit = st.process()? {
            return Ok(unit(st));
        }
        if !st.special()? {
            break;
        }
    }
    let e_q = if st.e.is_zero() {
        st.e.clone()
    } else {
        st.e.standard_rep()?
    };
    Ok(ProperResult {
        e_q,
        basis: st.f,
        stats: st.stats,
    })
}
