//! The normal principal quotient ring `R_q = K[x1]/<q>`.
//!
//! Elements are canonical remainders of degree `< deg q`. The ring generally
//! has zero divisors; units are exactly the residues coprime to `q`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mpoly::{Coeff, MPoly};
use crate::upoly::{gcd_monic, inverse_mod, UPoly};

/// Modulus context. Cheap to clone; the modulus is stored monic.
#[derive(Clone)]
pub struct PqrCtx {
    modulus: Arc<UPoly>,
}

impl PqrCtx {
    pub fn new(q: &UPoly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroInput("quotient ring modulus"));
        }
        if q.is_constant() {
            return Err(Error::ConstantInput("quotient ring modulus"));
        }
        Ok(PqrCtx {
            modulus: Arc::new(q.monic()),
        })
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn same(&self, other: &PqrCtx) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }

    /// `sigma_q` on `K[x1]`.
    pub fn project(&self, f: &UPoly) -> PqrElem {
        let rep = f.rem(&self.modulus).expect("modulus is nonzero");
        PqrElem {
            ctx: self.clone(),
            rep,
        }
    }

    /// `sigma_q` extended coefficient-wise; terms vanishing mod `q` are dropped.
    pub fn project_poly(&self, f: &MPoly<UPoly>) -> MPoly<PqrElem> {
        f.map_coeffs(|c| self.project(c))
    }

    pub fn zero(&self) -> PqrElem {
        PqrElem {
            ctx: self.clone(),
            rep: UPoly::zero(),
        }
    }

    pub fn one(&self) -> PqrElem {
        self.project(&UPoly::one())
    }
}

impl fmt::Debug for PqrCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R[{}]", self.modulus.render("z"))
    }
}

/// A residue in `R_q`, carrying its modulus context.
#[derive(Clone)]
pub struct PqrElem {
    ctx: PqrCtx,
    rep: UPoly,
}

impl PartialEq for PqrElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.ctx.same(&other.ctx)
    }
}

impl fmt::Debug for PqrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep.render("z"))
    }
}

impl PqrElem {
    pub fn ctx(&self) -> &PqrCtx {
        &self.ctx
    }

    /// `iota_q`: the canonical representative in `K[x1]`.
    pub fn lift(&self) -> &UPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.rep.is_zero()
            && gcd_monic(&self.rep, self.ctx.modulus())
                .map(|g| g.is_constant())
                .unwrap_or(false)
    }

    /// Nonzero and not a unit.
    pub fn is_zero_divisor(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn inverse(&self) -> Result<PqrElem> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        match inverse_mod(&self.rep, self.ctx.modulus())? {
            Some(s) => Ok(self.ctx.project(&s)),
            None => Err(Error::NotAUnit),
        }
    }

    /// The associate-class representative: `sigma_q(gcd(iota_q(a), q))`.
    ///
    /// For `q = prod p_k^i` the gcd has `p_k`-multiplicity
    /// `min(mult_{p_k}(a), i)`, which is the standard representation without
    /// factoring `q`.
    pub fn standard_rep(&self) -> Result<PqrElem> {
        if self.is_zero() {
            return Err(Error::ZeroInput("standard representation"));
        }
        let g = gcd_monic(&self.rep, self.ctx.modulus())?;
        Ok(self.ctx.project(&g))
    }

    pub fn is_associate(&self, other: &PqrElem) -> bool {
        self.assert_same(other);
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.standard_rep().ok() == other.standard_rep().ok(),
            _ => false,
        }
    }

    fn assert_same(&self, other: &PqrElem) {
        assert!(
            self.ctx.same(&other.ctx),
            "mixed quotient ring contexts: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }
}

impl Coeff for PqrElem {
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        // sum of reduced residues stays reduced
        PqrElem {
            ctx: self.ctx.clone(),
            rep: &self.rep + &rhs.rep,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        PqrElem {
            ctx: self.ctx.clone(),
            rep: &self.rep - &rhs.rep,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.ctx.project(&(&self.rep * &rhs.rep))
    }
    fn neg(&self) -> Self {
        PqrElem {
            ctx: self.ctx.clone(),
            rep: -&self.rep,
        }
    }
}

/// `iota_q` extended coefficient-wise.
pub fn lift_poly(f: &MPoly<PqrElem>) -> MPoly<UPoly> {
    f.map_coeffs(|c| c.lift().clone())
}
