//! Operation counts for one S-polynomial in `(K[z])[x, y]`: the single-gcd
//! construction against the Euclidean chain a field Buchberger run walks
//! through on the leading coefficients.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mpoly::{MPoly, Monomial, MonomialOrder};
use crate::upoly::{rat, xgcd, Rational, UPoly};

type Poly = MPoly<UPoly>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub gcd_calls: u64,
    pub mults: u64,
    pub adds: u64,
    pub max_coeff_bits: u64,
}

fn bits(c: &Rational) -> u64 {
    c.numer().bits() + c.denom().bits()
}

fn nnz(u: &UPoly) -> u64 {
    u.terms().count() as u64
}

impl OpCounter {
    fn see(&mut self, u: &UPoly) {
        for (_, c) in u.terms() {
            self.max_coeff_bits = self.max_coeff_bits.max(bits(c));
        }
    }

    fn see_poly(&mut self, f: &Poly) {
        for (_, c) in f.terms() {
            self.see(c);
        }
    }

    fn mul(&mut self, a: &UPoly, b: &UPoly) -> UPoly {
        let (na, nb) = (nnz(a), nnz(b));
        self.mults += na * nb;
        self.adds += (na * nb).saturating_sub(a.deg() as u64 + b.deg() as u64 + 1);
        let p = a * b;
        self.see(&p);
        p
    }

    fn divrem(&mut self, a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let (q, r) = a.divrem(b)?;
        // one quotient coefficient per step, each step scales and subtracts b
        let steps = nnz(&q);
        self.mults += steps * (nnz(b) + 1);
        self.adds += steps * nnz(b);
        self.see(&q);
        self.see(&r);
        Ok((q, r))
    }

    fn gcd(&mut self, a: &UPoly, b: &UPoly) -> Result<UPoly> {
        self.gcd_calls += 1;
        // monic remainder sequence
        self.mults += nnz(a) + nnz(b);
        let (mut r0, mut r1) = (a.monic(), b.monic());
        while !r1.is_zero() {
            let (_, r) = self.divrem(&r0, &r1)?;
            self.mults += nnz(&r);
            r0 = r1;
            r1 = r.monic();
            self.see(&r1);
        }
        Ok(r0)
    }

    /// `t - c z^j s` on whole polynomials, one mult and one add per coefficient.
    fn axpy(&mut self, t: &Poly, c: &Rational, j: usize, s: &Poly) -> Poly {
        let k = s.terms().iter().map(|(_, u)| nnz(u)).sum::<u64>();
        self.mults += k;
        self.adds += k;
        let one = Monomial::one(s.nvars());
        let out = t.sub(&s.mul_term(&UPoly::monomial(c.clone(), j), &one));
        self.see_poly(&out);
        out
    }

    fn scale_poly(&mut self, s: &Poly, c: &Rational) -> Poly {
        self.mults += s.terms().iter().map(|(_, u)| nnz(u)).sum::<u64>();
        let out = s.scale(&UPoly::constant(c.clone()));
        self.see_poly(&out);
        out
    }

    fn mul_poly(&mut self, a: &UPoly, s: &Poly) -> Poly {
        let terms = s
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), self.mul(a, c)))
            .collect();
        MPoly::from_terms(s.order(), terms)
    }

    fn sub_poly(&mut self, a: &Poly, b: &Poly) -> Poly {
        self.adds += a
            .terms()
            .iter()
            .filter_map(|(m, c)| b.coeff_of(m).map(|d| nnz(c).min(nnz(d))))
            .sum::<u64>();
        let out = a.sub(b);
        self.see_poly(&out);
        out
    }
}

/// One random instance: `f = a x^alpha + f1`, `g = b x^beta + g1`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub f: Poly,
    pub g: Poly,
}

const ALPHA: [u32; 2] = [3, 1];
const BETA: [u32; 2] = [2, 3];

fn random_upoly(rng: &mut ChaCha8Rng, deg: usize) -> UPoly {
    loop {
        let cs: Vec<Rational> = (0..=deg).map(|_| rat(rng.gen_range(-9..=9))).collect();
        let u = UPoly::from_coeffs(cs);
        if u.degree() == Some(deg) {
            return u;
        }
    }
}

/// Leading coefficients of degree `m` sharing a planted factor, and `m`
/// random tail terms below the leading monomial.
pub fn random_instance(m: usize, rng: &mut ChaCha8Rng) -> Instance {
    let order = MonomialOrder::lex(2);
    let common = random_upoly(rng, (m / 4).max(1));
    let rest = m - common.deg();
    let a = &common * &random_upoly(rng, rest);
    let b = &common * &random_upoly(rng, rest);
    let tail = |lead: [u32; 2], rng: &mut ChaCha8Rng| {
        let lm = Monomial::new(lead.to_vec());
        let mut terms = Vec::new();
        while terms.len() < m {
            let e = Monomial::new(vec![
                rng.gen_range(0..=lead[0]),
                rng.gen_range(0..=2 * m as u32),
            ]);
            if order.cmp(&e, &lm).is_lt() && !terms.iter().any(|(t, _)| t == &e) {
                let d = rng.gen_range(0..m);
                terms.push((e, random_upoly(rng, d)));
            }
        }
        terms
    };
    let mut ft = tail(ALPHA, rng);
    ft.push((Monomial::new(ALPHA.to_vec()), a));
    let mut gt = tail(BETA, rng);
    gt.push((Monomial::new(BETA.to_vec()), b));
    Instance {
        f: MPoly::from_terms(&order, ft),
        g: MPoly::from_terms(&order, gt),
    }
}

fn parts(f: &Poly) -> (Monomial, UPoly, Poly) {
    let (m, c) = f.lt().expect("nonzero");
    (m.clone(), c.clone(), f.tail())
}

/// `(b/rho) x^(gamma-alpha) f1 - (a/rho) x^(gamma-beta) g1` with a single gcd.
pub fn spoly_one_gcd(inst: &Instance, ops: &mut OpCounter) -> Result<Poly> {
    let (alpha, a, f1) = parts(&inst.f);
    let (beta, b, g1) = parts(&inst.g);
    let gamma = alpha.lcm(&beta);
    let rho = ops.gcd(&a, &b)?;
    let (lam, _) = ops.divrem(&b, &rho)?;
    let (mu, _) = ops.divrem(&a, &rho)?;
    let left = ops.mul_poly(&lam, &f1.mul_monomial(&gamma.div(&alpha).expect("lcm")));
    let right = ops.mul_poly(&mu, &g1.mul_monomial(&gamma.div(&beta).expect("lcm")));
    Ok(ops.sub_poly(&left, &right))
}

/// Outcome of the chain simulation. `h` is the reduction of `s(f, w)` by the
/// final chain element `w`, and `t` its cofactor of `g / lc(b)`.
pub struct ChainResult {
    pub h: Poly,
    pub t: UPoly,
    pub steps: usize,
}

/// Term-by-term Euclidean chain on the monic leading coefficients, carrying
/// the tails along as a field Buchberger run does.
pub fn spoly_chain(inst: &Instance, ops: &mut OpCounter) -> Result<ChainResult> {
    let (alpha, a, f1) = parts(&inst.f);
    let (beta, b, g1) = parts(&inst.g);
    let gamma = alpha.lcm(&beta);
    let xf = f1.mul_monomial(&gamma.div(&alpha).expect("lcm"));
    let xg = g1.mul_monomial(&gamma.div(&beta).expect("lcm"));
    let (ia, ib) = (
        Rational::one() / a.leading_coeff(),
        Rational::one() / b.leading_coeff(),
    );
    ops.mults += nnz(&a) + nnz(&b);
    let a1 = a.scale(&ia);
    let t_f = ops.scale_poly(&xf, &ia);
    let mut w0 = (a1.clone(), t_f.clone(), UPoly::zero());
    let mut w1 = (b.scale(&ib), ops.scale_poly(&xg, &ib), UPoly::one());
    let mut steps = 0;
    loop {
        while !w0.0.is_zero() && w0.0.deg() >= w1.0.deg() {
            let c = w0.0.leading_coeff();
            let j = w0.0.deg() - w1.0.deg();
            let cz = UPoly::monomial(c.clone(), j);
            ops.mults += nnz(&w1.0);
            ops.adds += nnz(&w1.0);
            w0.0 = &w0.0 - &(&cz * &w1.0);
            ops.see(&w0.0);
            w0.1 = ops.axpy(&w0.1, &c, j, &w1.1);
            w0.2 = &w0.2 - &(&cz * &w1.2);
            steps += 1;
        }
        if w0.0.is_zero() {
            break;
        }
        let inv = Rational::one() / w0.0.leading_coeff();
        ops.mults += nnz(&w0.0);
        w0.0 = w0.0.scale(&inv);
        w0.1 = ops.scale_poly(&w0.1, &inv);
        w0.2 = w0.2.scale(&inv);
        std::mem::swap(&mut w0, &mut w1);
    }
    let (rho, tw, t) = w1;
    let (q, _) = ops.divrem(&a1, &rho)?;
    let lifted = ops.mul_poly(&q, &tw);
    let h = ops.sub_poly(&lifted, &t_f);
    Ok(ChainResult { h, t, steps })
}

/// The chain result and the single-gcd S-polynomial agree up to the factor
/// `-t / (lc(a) lc(b))`, and `t` matches the extended gcd cofactor.
pub fn chain_identity_holds(inst: &Instance, chain: &ChainResult, s: &Poly) -> Result<bool> {
    let a = inst.f.lc().expect("nonzero");
    let b = inst.g.lc().expect("nonzero");
    let (ca, cb) = (a.leading_coeff(), b.leading_coeff());
    let lhs = chain.h.scale(&UPoly::constant(&ca * &cb));
    let rhs = s.scale(&(-&chain.t));
    let (_, _, t) = xgcd(&a.monic(), &b.monic())?;
    Ok(lhs == rhs && t == chain.t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub m: usize,
    pub trial: usize,
    pub method: &'static str,
    pub ops: OpCounter,
}

pub const CSV_HEADER: &str = "m,trial,method,gcd_calls,mults,adds,max_coeff_bits";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.m,
            self.trial,
            self.method,
            self.ops.gcd_calls,
            self.ops.mults,
            self.ops.adds,
            self.ops.max_coeff_bits
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Trials on which the chain and single-gcd results failed to agree.
    pub identity_failures: usize,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.csv());
            s.push('\n');
        }
        s
    }

    /// Mean of `(mults + adds)` per method at a given `m`.
    pub fn mean_ops(&self, m: usize, method: &str) -> f64 {
        let v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.m == m && r.method == method)
            .map(|r| (r.ops.mults + r.ops.adds) as f64)
            .collect();
        v.iter().sum::<f64>() / v.len().max(1) as f64
    }

    pub fn mean_bits(&self, m: usize, method: &str) -> f64 {
        let v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.m == m && r.method == method)
            .map(|r| r.ops.max_coeff_bits as f64)
            .collect();
        v.iter().sum::<f64>() / v.len().max(1) as f64
    }
}

pub fn bench_spoly_compare(ms: &[usize], trials: usize, seed: u64) -> Result<BenchReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut identity_failures = 0;
    for &m in ms {
        for trial in 0..trials {
            let inst = random_instance(m, &mut rng);
            let mut new_ops = OpCounter::default();
            let s = spoly_one_gcd(&inst, &mut new_ops)?;
            let mut old_ops = OpCounter::default();
            let chain = spoly_chain(&inst, &mut old_ops)?;
            if !chain_identity_holds(&inst, &chain, &s)? {
                identity_failures += 1;
            }
            rows.push(BenchRow {
                m,
                trial,
                method: "single_gcd",
                ops: new_ops,
            });
            rows.push(BenchRow {
                m,
                trial,
                method: "euclid_chain",
                ops: old_ops,
            });
        }
    }
    Ok(BenchReport {
        rows,
        identity_failures,
    })
}
