//! Compatible part of a pseudo-eliminant and the squarefree decomposition of
//! its incompatible part, using gcds only.

use crate::error::Result;
use crate::upoly::{gcd_monic, squarefree_decompose, UPoly};

/// A composite divisor `q = omega^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeDivisor {
    pub omega: UPoly,
    pub multiplicity: u32,
    pub modulus: UPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompatReport {
    pub cp: UPoly,
    /// Squarefree decomposition `[(q_i, i)]` of the pseudo-eliminant.
    pub squarefree: Vec<(UPoly, u32)>,
    /// `Omega_i` for every multiplicity `i` present in `squarefree`.
    pub omega: Vec<(u32, Vec<UPoly>)>,
    pub composite: Vec<CompositeDivisor>,
}

impl CompatReport {
    pub fn incompatible_part(&self) -> UPoly {
        self.composite
            .iter()
            .fold(UPoly::one(), |acc, c| &acc * &c.modulus)
    }
}

/// Refine `d` against the pairwise coprime set `omegas`, splitting members
/// that share a factor with it, and add what is left of `d`.
fn refine(omegas: &mut Vec<UPoly>, mut d: UPoly) -> Result<()> {
    loop {
        if d.is_constant() {
            return Ok(());
        }
        let hit = omegas
            .iter()
            .enumerate()
            .map(|(k, w)| gcd_monic(&d, w).map(|g| (k, g)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(_, g)| !g.is_constant());
        let Some((k, g)) = hit else {
            omegas.push(d);
            return Ok(());
        };
        d = d.exact_div(&g)?;
        let rest = omegas[k].exact_div(&g)?;
        if !rest.is_constant() {
            omegas[k] = g;
            omegas.insert(k + 1, rest);
        }
    }
}

pub fn compatible_part(chi_eps: &UPoly, multipliers: &[UPoly]) -> Result<CompatReport> {
    if chi_eps.is_constant() {
        return Ok(CompatReport {
            cp: UPoly::one(),
            squarefree: Vec::new(),
            omega: Vec::new(),
            composite: Vec::new(),
        });
    }
    let squarefree = squarefree_decompose(chi_eps)?;
    let mut omega: Vec<(u32, Vec<UPoly>)> =
        squarefree.iter().map(|(_, i)| (*i, Vec::new())).collect();
    for lambda in multipliers {
        for ((qi, _), (_, set)) in squarefree.iter().zip(omega.iter_mut()) {
            refine(set, gcd_monic(lambda, qi)?)?;
        }
    }
    let mut composite = Vec::new();
    let mut cp = chi_eps.monic();
    for (i, set) in &omega {
        for w in set {
            let q = w.pow(*i);
            cp = cp.exact_div(&q)?;
            composite.push(CompositeDivisor {
                omega: w.clone(),
                multiplicity: *i,
                modulus: q,
            });
        }
    }
    Ok(CompatReport {
        cp,
        squarefree,
        omega,
        composite,
    })
}

/// `p` is coprime to every multiplier.
pub fn is_compatible_divisor(p: &UPoly, multipliers: &[UPoly]) -> bool {
    multipliers
        .iter()
        .all(|l| gcd_monic(p, l).map(|g| g.is_constant()).unwrap_or(true))
}
