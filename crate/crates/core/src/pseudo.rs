//! Pseudo-division over `K[x1]`, S-polynomials with their criteria, and the
//! pseudo-eliminant computation.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, MonomialOrder};
use crate::upoly::{gcd_monic, lcm, UPoly};

/// `lambda * f = sum q_j b_j + r`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoDivision {
    pub multiplier: UPoly,
    pub quotients: Vec<MPoly<UPoly>>,
    pub remainder: MPoly<UPoly>,
}

/// One term pseudo-reduction `h = mu f - (c x^delta) g`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermReduction {
    pub h: MPoly<UPoly>,
    pub mu: UPoly,
    pub quotient_coeff: UPoly,
    pub quotient_monomial: Monomial,
}

/// Counters gathered while running [`pseudo_eliminant`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PseudoStats {
    pub pairs: usize,
    pub coprime_skips: usize,
    pub triangle_skips: usize,
    pub reductions: usize,
    pub zero_remainders: usize,
    pub multiplier_events: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoResult {
    /// Monic; `1` when the ideal is trivial.
    pub chi_eps: UPoly,
    pub basis: Vec<MPoly<UPoly>>,
    /// Monic and non-constant, in insertion order; each one contributes an
    /// irreducible factor not dividing the earlier ones.
    pub multipliers: Vec<UPoly>,
    pub trivial: bool,
    pub stats: PseudoStats,
}

fn lt_of(f: &MPoly<UPoly>) -> Result<(&Monomial, &UPoly)> {
    f.try_lt()
}

/// Pseudo-reduce the term of `f` at `target` by `g`.
///
/// With the monic `m = lcm(c, lc g)` the interim multiplier is `mu = m / c`
/// and the quotient coefficient `m / lc g`.
pub fn term_pseudo_reduce(
    f: &MPoly<UPoly>,
    g: &MPoly<UPoly>,
    target: &Monomial,
) -> Result<TermReduction> {
    let (lm_g, lc_g) = lt_of(g)?;
    let c = f
        .coeff_of(target)
        .ok_or(Error::NotReducible("target monomial is not in the support"))?;
    let delta = target.div(lm_g).ok_or(Error::NotReducible(
        "target not divisible by the leading monomial",
    ))?;
    let m = lcm(c, lc_g)?;
    let mu = m.exact_div(c)?;
    let qc = m.exact_div(lc_g)?;
    let h = f.scale(&mu).sub(&g.mul_term(&qc, &delta));
    debug_assert!(h.coeff_of(target).is_none());
    Ok(TermReduction {
        h,
        mu,
        quotient_coeff: qc,
        quotient_monomial: delta,
    })
}

/// Largest monomial of `f` (strictly below `below` when given) lying in
/// `<lm(B)>`, with the lowest-index divisor.
fn next_reducible(
    f: &MPoly<UPoly>,
    lms: &[Monomial],
    below: Option<&Monomial>,
    order: &MonomialOrder,
) -> Option<(Monomial, usize)> {
    for (m, _) in f.terms() {
        if let Some(b) = below {
            if order.cmp(m, b) != std::cmp::Ordering::Less {
                continue;
            }
        }
        if let Some(j) = lms.iter().position(|l| l.divides(m)) {
            return Some((m.clone(), j));
        }
    }
    None
}

fn divide(f: &MPoly<UPoly>, basis: &[MPoly<UPoly>], track: bool) -> Result<PseudoDivision> {
    if basis.iter().any(|b| b.is_constant()) {
        return Err(Error::Precondition(
            "pseudo-division by an element of K[x1]",
        ));
    }
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|b| b.lm().cloned().expect("nonzero"))
        .collect();
    let order = f.order().clone();
    let mut h = f.clone();
    let mut lambda = UPoly::one();
    let mut quotients = if track {
        vec![MPoly::zero(&order); basis.len()]
    } else {
        Vec::new()
    };
    let mut below: Option<Monomial> = None;
    while let Some((m, j)) = next_reducible(&h, &lms, below.as_ref(), &order) {
        let step = term_pseudo_reduce(&h, &basis[j], &m)?;
        if track {
            for q in quotients.iter_mut() {
                *q = q.scale(&step.mu);
            }
            let t = MPoly::term(&order, step.quotient_coeff, step.quotient_monomial);
            quotients[j] = quotients[j].add(&t);
        }
        lambda = &lambda * &step.mu;
        h = step.h;
        below = Some(m);
    }
    Ok(PseudoDivision {
        multiplier: lambda,
        quotients,
        remainder: h,
    })
}

/// Full pseudo-division, tracking quotients.
pub fn pseudo_divide(f: &MPoly<UPoly>, basis: &[MPoly<UPoly>]) -> Result<PseudoDivision> {
    divide(f, basis, true)
}

/// Pseudo-division without quotient bookkeeping (`quotients` is empty).
pub fn pseudo_remainder(f: &MPoly<UPoly>, basis: &[MPoly<UPoly>]) -> Result<PseudoDivision> {
    divide(f, basis, false)
}

pub fn is_pseudo_reduced(f: &MPoly<UPoly>, basis: &[MPoly<UPoly>]) -> bool {
    let lms: Vec<Monomial> = basis.iter().filter_map(|b| b.lm().cloned()).collect();
    f.support().all(|m| !lms.iter().any(|l| l.divides(m)))
}

/// `S(f, g) = (m / lc f) x^{gamma-alpha} f - (m / lc g) x^{gamma-beta} g`
/// with the monic `m = lcm(lc f, lc g)`.
pub fn spoly(f: &MPoly<UPoly>, g: &MPoly<UPoly>) -> Result<MPoly<UPoly>> {
    if f.is_constant() || g.is_constant() {
        return Err(Error::Precondition("S-polynomial of an element of K[x1]"));
    }
    let (a, lf) = lt_of(f)?;
    let (b, lg) = lt_of(g)?;
    let gamma = a.lcm(b);
    let m = lcm(lf, lg)?;
    let mf = m.exact_div(lf)?;
    let mg = m.exact_div(lg)?;
    let s = f
        .mul_term(&mf, &gamma.div(a).expect("lcm"))
        .sub(&g.mul_term(&mg, &gamma.div(b).expect("lcm")));
    Ok(s)
}

/// `S(f, g)` for `g` in `K[x1]`: `(m / lc f) (f - lt f)` with `m = lcm(lc f, g)`.
pub fn spoly_univariate(f: &MPoly<UPoly>, g: &UPoly) -> Result<MPoly<UPoly>> {
    if f.is_constant() {
        return Err(Error::Precondition("S-polynomial of an element of K[x1]"));
    }
    if g.is_zero() {
        return Err(Error::ZeroInput("univariate S-polynomial partner"));
    }
    let (_, lf) = lt_of(f)?;
    Ok(f.tail().scale(&lcm(lf, g)?.exact_div(lf)?))
}

/// `gcd(lc f, lc g)` for a pair with coprime leading monomials.
pub fn coprime_criterion(f: &MPoly<UPoly>, g: &MPoly<UPoly>) -> Result<UPoly> {
    let (a, lf) = lt_of(f)?;
    let (b, lg) = lt_of(g)?;
    if !a.is_coprime(b) {
        return Err(Error::Precondition("leading monomials are not coprime"));
    }
    gcd_monic(lf, lg)
}

/// `lc(h) / gcd(lcm(lc f, lc g), lc h)`, provided `lcm(lm f, lm g)` lies in `<lm h>`.
pub fn triangular_criterion(f: &MPoly<UPoly>, g: &MPoly<UPoly>, h: &MPoly<UPoly>) -> Result<UPoly> {
    let (a, lf) = lt_of(f)?;
    let (b, lg) = lt_of(g)?;
    let (c, lh) = lt_of(h)?;
    if !c.divides(&a.lcm(b)) {
        return Err(Error::Precondition(
            "lcm of leading monomials not in <lm h>",
        ));
    }
    let m = lcm(lf, lg)?;
    lh.exact_div(&gcd_monic(&m, lh)?)
}

/// Scale by a constant of `K` so that the leading coefficient is monic.
fn normalize(r: MPoly<UPoly>) -> MPoly<UPoly> {
    match r.lc() {
        Some(c) if !c.is_monic() => {
            let s = UPoly::constant(num_traits::Inv::inv(c.leading_coeff()));
            r.scale(&s)
        }
        _ => r,
    }
}

struct Pending {
    lcm: Monomial,
    seq: usize,
    i: usize,
    j: usize,
}

struct State {
    order: MonomialOrder,
    g: Vec<MPoly<UPoly>>,
    lambda: Vec<UPoly>,
    queue: Vec<Pending>,
    seq: usize,
    open: HashSet<(usize, usize)>,
    stats: PseudoStats,
}

impl State {
    /// Multipliers only matter through their irreducible factors, so one
    /// whose squarefree part already divides the product of `Lambda` is
    /// not recorded.
    fn add_multiplier(&mut self, p: &UPoly) {
        if p.is_zero() || p.is_constant() {
            return;
        }
        self.stats.multiplier_events += 1;
        let p = p.monic();
        let radical = p
            .exact_div(&gcd_monic(&p, &p.derivative()).expect("nonzero"))
            .expect("gcd divides");
        let mut rest = radical;
        for l in &self.lambda {
            let g = gcd_monic(&rest, l).expect("nonzero");
            rest = rest.exact_div(&g).expect("gcd divides");
            if rest.is_constant() {
                return;
            }
        }
        self.lambda.push(p);
    }

    /// Coprime criterion at creation; other pairs are queued.
    fn consider(&mut self, i: usize, j: usize) -> Result<()> {
        self.stats.pairs += 1;
        let (f, g) = (&self.g[i], &self.g[j]);
        let (a, b) = (f.lm().expect("nonzero"), g.lm().expect("nonzero"));
        if a.is_coprime(b) {
            let d = coprime_criterion(f, g)?;
            self.add_multiplier(&d);
            self.stats.coprime_skips += 1;
            return Ok(());
        }
        self.open.insert((i, j));
        self.queue.push(Pending {
            lcm: a.lcm(b),
            seq: self.seq,
            i,
            j,
        });
        self.seq += 1;
        Ok(())
    }

    /// Triangular criterion for a popped pair: some `h` with `lm h` dividing
    /// the lcm whose pairs with `f` and `g` are no longer pending.
    fn triangle_skip(&mut self, p: &Pending) -> Result<bool> {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        for k in 0..self.g.len() {
            if k == p.i
                || k == p.j
                || self.open.contains(&key(p.i, k))
                || self.open.contains(&key(p.j, k))
                || !self.g[k].lm().expect("nonzero").divides(&p.lcm)
            {
                continue;
            }
            let lam = triangular_criterion(&self.g[p.i], &self.g[p.j], &self.g[k])?;
            self.add_multiplier(&lam);
            self.stats.triangle_skips += 1;
            return Ok(true);
        }
        Ok(false)
    }

    fn pop(&mut self) -> Option<Pending> {
        let order = &self.order;
        let best = self
            .queue
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| order.cmp(&x.lcm, &y.lcm).then(x.seq.cmp(&y.seq)))
            .map(|(k, _)| k)?;
        let p = self.queue.swap_remove(best);
        self.open.remove(&(p.i, p.j));
        Some(p)
    }
}

/// Compute a pseudo-eliminant, pseudo-basis and multiplier set.
///
/// Generators are polynomials in `x~` over `K[x1]`; those lying in `K[x1]`
/// seed the univariate candidate. The queue is processed by increasing
/// `lcm(lm f, lm g)`, ties broken by creation order.
pub fn pseudo_eliminant(generators: &[MPoly<UPoly>]) -> Result<PseudoResult> {
    let order = generators.first().ok_or(Error::EmptyInput)?.order().clone();
    let mut f0 = UPoly::zero();
    let mut g = Vec::new();
    for p in generators {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            let c = p.constant_coeff().expect("constant");
            f0 = gcd_monic(c, &f0)?;
        } else {
            g.push(normalize(p.clone()));
        }
    }
    if g.is_empty() && f0.is_zero() {
        return Err(Error::EmptyInput);
    }
    let trivial = |basis, multipliers, stats| PseudoResult {
        chi_eps: UPoly::one(),
        basis,
        multipliers,
        trivial: true,
        stats,
    };
    if !f0.is_zero() && f0.is_constant() {
        return Ok(trivial(g, Vec::new(), PseudoStats::default()));
    }

    let mut st = State {
        order,
        g,
        lambda: Vec::new(),
        queue: Vec::new(),
        seq: 0,
        open: HashSet::new(),
        stats: PseudoStats::default(),
    };
    for j in 1..st.g.len() {
        for i in 0..j {
            st.consider(i, j)?;
        }
    }
    while let Some(p) = st.pop() {
        if st.triangle_skip(&p)? {
            continue;
        }
        let s = spoly(&st.g[p.i], &st.g[p.j])?;
        let div = pseudo_remainder(&s, &st.g)?;
        st.stats.reductions += 1;
        st.add_multiplier(&div.multiplier);
        let r = div.remainder;
        if r.is_zero() {
            st.stats.zero_remainders += 1;
        } else if !r.is_constant() {
            debug_assert!(is_pseudo_reduced(&r, &st.g));
            st.g.push(normalize(r));
            let n = st.g.len() - 1;
            for i in 0..n {
                st.consider(i, n)?;
            }
        } else {
            let c = r.constant_coeff().expect("constant");
            if c.is_constant() {
                let State {
                    g, lambda, stats, ..
                } = st;
                return Ok(trivial(g, lambda, stats));
            }
            f0 = gcd_monic(c, &f0)?;
        }
    }
    if f0.is_zero() {
        return Err(Error::NotZeroDimensional);
    }
    let lcs: Vec<UPoly> =
        st.g.iter()
            .map(|f| f.lc().expect("nonzero").clone())
            .collect();
    for lc in &lcs {
        st.add_multiplier(&gcd_monic(lc, &f0)?);
    }
    Ok(PseudoResult {
        chi_eps: f0,
        basis: st.g,
        multipliers: st.lambda,
        trivial: false,
        stats: st.stats,
    })
}
