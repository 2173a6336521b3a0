//! Proper divisors, eliminant reconstruction, the branch-wise basis and
//! ideal membership, plus the end-to-end pipeline.

use rayon::prelude::*;

use crate::compat::{compatible_part, CompatReport};
use crate::error::{Error, Result};
use crate::mpoly::{absorb_last_variable, expand_last_variable, MPoly, MonomialOrder};
use crate::pqr::{lift_poly, PqrCtx, PqrElem};
use crate::proper::{proper_eliminant, proper_remainder, ProperResult, DEFAULT_MAX_ITER};
use crate::pseudo::{pseudo_eliminant, PseudoResult};
use crate::upoly::{Rational, UPoly};

pub type QPoly = MPoly<PqrElem>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    Compatible,
    /// `e_q = 0`.
    ProperZero,
    /// `e_q` a nonzero zero divisor.
    ProperNonzero,
}

impl BranchKind {
    pub fn name(self) -> &'static str {
        match self {
            BranchKind::Compatible => "compatible",
            BranchKind::ProperZero => "proper-zero",
            BranchKind::ProperNonzero => "proper-nonzero",
        }
    }
}

/// One component `I + <divisor>` of the decomposition.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Composite divisor the branch came from (`d` for the compatible one).
    pub modulus: UPoly,
    /// Monic modulus of the branch ring.
    pub divisor: UPoly,
    pub ctx: PqrCtx,
    pub basis: Vec<QPoly>,
    pub kind: BranchKind,
}

impl Branch {
    /// `iota(basis)` together with the divisor itself, in `K[x1][x~]`.
    pub fn lifted(&self) -> Vec<MPoly<UPoly>> {
        self.basis.iter().map(lift_poly).collect()
    }

    /// Proper remainder of `sigma(f)` modulo the branch basis.
    pub fn remainder(&self, f: &MPoly<UPoly>) -> Result<QPoly> {
        let image = self.ctx.project_poly(f);
        if image.is_zero() || self.basis.is_empty() {
            return Ok(image);
        }
        Ok(proper_remainder(&image, &self.basis, &self.ctx)?.remainder)
    }

    /// `sigma(f)` properly reduces to zero modulo the branch basis.
    pub fn contains(&self, f: &MPoly<UPoly>) -> Result<bool> {
        Ok(self.remainder(f)?.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct NewBasis {
    pub compatible: Option<Branch>,
    pub proper: Vec<Branch>,
    pub chi: UPoly,
}

impl NewBasis {
    pub fn branches(&self) -> impl Iterator<Item = &Branch> {
        self.compatible.iter().chain(self.proper.iter())
    }

    /// The ideal is the whole ring.
    pub fn is_trivial(&self) -> bool {
        self.chi.is_constant()
    }
}

pub fn proper_divisor(e_q: &PqrElem, q: &UPoly) -> Result<UPoly> {
    if e_q.ctx().modulus() != &q.monic() {
        return Err(Error::Inconsistent(
            "proper eliminant lives in a different ring".into(),
        ));
    }
    if e_q.is_zero() {
        Ok(q.monic())
    } else if e_q.is_unit() {
        Ok(UPoly::one())
    } else {
        Ok(e_q.standard_rep()?.lift().clone())
    }
}

/// Monic product of the compatible part and the proper divisors.
pub fn reconstruct_eliminant(cp: &UPoly, divisors: &[UPoly]) -> UPoly {
    divisors.iter().fold(cp.monic(), |acc, c| &acc * c).monic()
}

fn branch_basis(basis: &[MPoly<UPoly>], ctx: &PqrCtx) -> Vec<QPoly> {
    basis
        .iter()
        .map(|b| ctx.project_poly(b))
        .filter(|b| !b.is_zero())
        .collect()
}

/// Assemble the branches. For a nonzero proper eliminant the branch basis is
/// the proper basis of `sigma_p(B_eps)` over `R_p`, whose eliminant must be 0.
pub fn build_new_basis(
    pseudo: &PseudoResult,
    compat: &CompatReport,
    results: &[ProperResult],
    max_iter: usize,
) -> Result<NewBasis> {
    if results.len() != compat.composite.len() {
        return Err(Error::Inconsistent(format!(
            "{} proper results for {} composite divisors",
            results.len(),
            compat.composite.len()
        )));
    }
    if pseudo.trivial || pseudo.chi_eps.is_constant() {
        return Ok(NewBasis {
            compatible: None,
            proper: Vec::new(),
            chi: UPoly::one(),
        });
    }
    let compatible = if compat.cp.is_constant() {
        None
    } else {
        let ctx = PqrCtx::new(&compat.cp)?;
        Some(Branch {
            modulus: compat.cp.clone(),
            divisor: compat.cp.clone(),
            basis: branch_basis(&pseudo.basis, &ctx),
            ctx,
            kind: BranchKind::Compatible,
        })
    };
    let mut proper = Vec::new();
    let mut divisors = Vec::new();
    for (cd, res) in compat.composite.iter().zip(results) {
        let c = proper_divisor(&res.e_q, &cd.modulus)?;
        if c.is_constant() {
            continue;
        }
        divisors.push(c.clone());
        if res.e_q.is_zero() {
            proper.push(Branch {
                modulus: cd.modulus.clone(),
                divisor: c,
                ctx: res.e_q.ctx().clone(),
                basis: res.basis.clone(),
                kind: BranchKind::ProperZero,
            });
        } else {
            let ctx = PqrCtx::new(&c)?;
            let refined = proper_eliminant(&branch_basis(&pseudo.basis, &ctx), &ctx, max_iter)?;
            if !refined.e_q.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "proper divisor {} is not annihilated in its own ring",
                    c.render("z")
                )));
            }
            proper.push(Branch {
                modulus: cd.modulus.clone(),
                divisor: c,
                basis: refined.basis,
                ctx,
                kind: BranchKind::ProperNonzero,
            });
        }
    }
    Ok(NewBasis {
        chi: reconstruct_eliminant(&compat.cp, &divisors),
        compatible,
        proper,
    })
}

/// Branch-wise membership over the decomposition `I = (I + <d>) ∩ ⋂ (I + <c>)`.
pub fn membership(f: &MPoly<UPoly>, nb: &NewBasis) -> Result<bool> {
    if nb.is_trivial() {
        return Ok(true);
    }
    for b in nb.branches() {
        if !b.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub max_iter: usize,
    pub parallel: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_iter: DEFAULT_MAX_ITER,
            parallel: false,
        }
    }
}

/// Every artifact of one run.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub full_order: MonomialOrder,
    pub tilde_order: MonomialOrder,
    pub generators: Vec<MPoly<UPoly>>,
    pub pseudo: PseudoResult,
    pub compat: CompatReport,
    /// One per composite divisor, in the same order.
    pub branches: Vec<ProperResult>,
    pub new_basis: NewBasis,
}

impl Pipeline {
    pub fn chi(&self) -> &UPoly {
        &self.new_basis.chi
    }

    pub fn absorb(&self, f: &MPoly<Rational>) -> MPoly<UPoly> {
        absorb_last_variable(&f.with_order(&self.full_order), &self.tilde_order)
    }

    pub fn contains(&self, f: &MPoly<Rational>) -> Result<bool> {
        membership(&self.absorb(f), &self.new_basis)
    }

    /// Lifted new basis in all variables: per branch, the divisor followed
    /// by the lifted branch basis.
    pub fn lifted_basis(&self) -> Vec<(BranchKind, Vec<MPoly<Rational>>)> {
        self.new_basis
            .branches()
            .map(|b| {
                let mut out = vec![expand_last_variable(
                    &MPoly::constant(&self.tilde_order, b.divisor.clone()),
                    &self.full_order,
                )];
                out.extend(
                    b.lifted()
                        .iter()
                        .map(|p| expand_last_variable(p, &self.full_order)),
                );
                (b.kind, out)
            })
            .collect()
    }
}

fn tilde_of(full: &MonomialOrder) -> Result<MonomialOrder> {
    let n = full.nvars();
    if n == 0 {
        return Err(Error::Precondition("no variables"));
    }
    if full.precedence()[n - 1] != n - 1 {
        return Err(Error::Precondition(
            "the eliminant variable must be the least one",
        ));
    }
    MonomialOrder::with_precedence(full.kind(), full.precedence()[..n - 1].to_vec())
}

/// Run the whole computation on generators in all variables, the last of
/// which is the eliminant variable.
pub fn run_pipeline(generators: &[MPoly<Rational>], opts: PipelineOptions) -> Result<Pipeline> {
    let full_order = generators.first().ok_or(Error::EmptyInput)?.order().clone();
    let tilde_order = tilde_of(&full_order)?;
    let gens: Vec<MPoly<UPoly>> = generators
        .iter()
        .map(|g| absorb_last_variable(g, &tilde_order))
        .collect();
    let pseudo = pseudo_eliminant(&gens)?;
    let compat = compatible_part(&pseudo.chi_eps, &pseudo.multipliers)?;
    let run = |q: &UPoly| -> Result<ProperResult> {
        let ctx = PqrCtx::new(q)?;
        let images = branch_basis(&pseudo.basis, &ctx);
        proper_eliminant(&images, &ctx, opts.max_iter)
    };
    let branches: Vec<ProperResult> = if opts.parallel {
        compat
            .composite
            .par_iter()
            .map(|c| run(&c.modulus))
            .collect::<Result<_>>()?
    } else {
        compat
            .composite
            .iter()
            .map(|c| run(&c.modulus))
            .collect::<Result<_>>()?
    };
    let new_basis = build_new_basis(&pseudo, &compat, &branches, opts.max_iter)?;
    Ok(Pipeline {
        full_order,
        tilde_order,
        generators: gens,
        pseudo,
        compat,
        branches,
        new_basis,
    })
}
