//! Dense univariate polynomials over the rationals.
//!
//! This is the principal ideal domain `K[x1]` that every other module builds
//! on: coefficients of multivariate polynomials, multipliers, eliminants and
//! quotient-ring moduli all live here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A univariate polynomial, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// Build from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `(x - root)`.
    pub fn linear(root: i64) -> Self {
        Self::from_ints(&[-root, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
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

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Euclidean division `a = q*b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if da < db {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lc = b.coeffs[db].recip();
        let monic_b = b.coeffs[db].is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let c = if monic_b { top.clone() } else { top * &inv_lc };
            for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                if !bj.is_zero() {
                    rem[k + j] -= &c * bj;
                }
            }
            rem[k + db] = Rational::zero();
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, b: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, b: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Does `self` divide `other`? Zero divides only zero.
    pub fn divides(&self, other: &UPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self.render("z"))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

/// Monic greatest common divisor. `gcd(a, 0) = monic(a)`.
pub fn gcd_monic(a: &UPoly, b: &UPoly) -> Result<UPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd"));
    }
    let (mut r0, mut r1) = if a.deg() >= b.deg() {
        (a.monic(), b.monic())
    } else {
        (b.monic(), a.monic())
    };
    while !r1.is_zero() {
        let r = r0.rem(&r1)?.monic();
        r0 = r1;
        r1 = r;
    }
    Ok(r0)
}

/// Monic least common multiple.
pub fn lcm(a: &UPoly, b: &UPoly) -> Result<UPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("lcm"));
    }
    let g = gcd_monic(a, b)?;
    Ok((&a.exact_div(&g)? * b).monic())
}

/// Extended Euclid: `(g, s, t)` with `s*a + t*b = g` and `g` monic.
///
/// Remainders are kept monic, cofactors scaled along with them.
pub fn xgcd(a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly, UPoly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("xgcd"));
    }
    if b.is_zero() {
        let inv = a.leading_coeff().recip();
        return Ok((a.scale(&inv), UPoly::constant(inv), UPoly::zero()));
    }
    let (ia, ib) = (
        if a.is_zero() {
            Rational::one()
        } else {
            a.leading_coeff().recip()
        },
        b.leading_coeff().recip(),
    );
    let (mut r0, mut r1) = (a.scale(&ia), b.scale(&ib));
    let (mut s0, mut s1) = (UPoly::constant(ia.clone()), UPoly::zero());
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(ib));
    if a.is_zero() {
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut t0, &mut t1);
    }
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        s0 = s1;
        t0 = t1;
        if r.is_zero() {
            break;
        }
        let inv = r.leading_coeff().recip();
        r1 = r.scale(&inv);
        s1 = s.scale(&inv);
        t1 = t.scale(&inv);
    }
    Ok((r0, s0, t0))
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inverse_mod(a: &UPoly, m: &UPoly) -> Result<Option<UPoly>> {
    if m.is_zero() {
        return Err(Error::ZeroInput("modulus"));
    }
    let a = a.rem(m)?;
    if a.is_zero() {
        return Ok(None);
    }
    let inv_a = a.leading_coeff().recip();
    let inv_m = m.leading_coeff().recip();
    let (mut r0, mut r1) = (m.scale(&inv_m), a.scale(&inv_a));
    let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(inv_a));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        s0 = s1;
        if r.is_zero() {
            break;
        }
        let inv = r.leading_coeff().recip();
        r1 = r.scale(&inv);
        s1 = s.scale(&inv);
    }
    if !r0.is_one() {
        return Ok(None);
    }
    Ok(Some(s0.rem(m)?))
}

/// Yun's squarefree decomposition: `[(q_i, i)]` with every `q_i` monic,
/// squarefree, pairwise coprime, and `prod q_i^i = monic(a)`. Trivial
/// factors are omitted; entries come in increasing multiplicity.
pub fn squarefree_decompose(a: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroInput("squarefree_decompose"));
    }
    if a.is_constant() {
        return Err(Error::ConstantInput("squarefree_decompose"));
    }
    let f = a.monic();
    let fp = f.derivative();
    let mut out = Vec::new();
    let g = gcd_monic(&f, &fp)?;
    let mut b = f.exact_div(&g)?;
    let mut c = fp.exact_div(&g)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let qi = gcd_monic(&b, &d)?;
        if !qi.is_constant() {
            out.push((qi.clone(), i));
        }
        b = b.exact_div(&qi)?;
        if b.is_constant() {
            break;
        }
        c = d.exact_div(&qi)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Largest `k` with `p^k | a`.
pub fn multiplicity(p: &UPoly, a: &UPoly) -> Result<u32> {
    if p.is_constant() {
        return Err(Error::ConstantInput("multiplicity"));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput("multiplicity"));
    }
    let mut k = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = cur.divrem(p)?;
        if !r.is_zero() {
            return Ok(k);
        }
        k += 1;
        cur = q;
    }
}
