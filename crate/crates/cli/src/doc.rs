//! JSON result documents.

use serde::Serialize;

use pqrbasis::assemble::{proper_divisor, reconstruct_eliminant, Branch, Pipeline};
use pqrbasis::buchberger::from_univariate;
use pqrbasis::mpoly::{expand_last_variable, MPoly, MonomialOrder};
use pqrbasis::parse::{integer_normalize, render, SystemFile};
use pqrbasis::pqr::lift_poly;
use pqrbasis::proper::ProperStats;
use pqrbasis::pseudo::PseudoStats;
use pqrbasis::{Rational, Result, UPoly};

#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// A polynomial as canonical text, integer-cleared text and a term array.
#[derive(Debug, Clone, Serialize)]
pub struct Poly {
    pub text: String,
    pub cleared: String,
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn multi(f: &MPoly<Rational>, vars: &[String]) -> Poly {
        Poly {
            text: render(f, vars),
            cleared: render(&integer_normalize(f), vars),
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| Term {
                    exps: m.exps().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn uni(u: &UPoly, var: &str) -> Poly {
        let f = from_univariate(u, &MonomialOrder::lex(1));
        Poly::multi(&f, &[var.to_string()])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub variables: Vec<String>,
    pub eliminate: String,
    pub order: String,
    pub generators: Vec<Poly>,
}

impl Input {
    pub fn new(sys: &SystemFile) -> Input {
        Input {
            variables: sys.variables.clone(),
            eliminate: sys.eliminant.clone(),
            order: sys.order.name().into(),
            generators: sys
                .generators
                .iter()
                .map(|g| Poly::multi(g, &sys.variables))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoDoc {
    pub chi_eps: Poly,
    pub multipliers: Vec<Poly>,
    pub basis: Vec<Poly>,
    pub stats: PseudoStatsDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoStatsDoc {
    pub pairs: usize,
    pub coprime_skips: usize,
    pub triangle_skips: usize,
    pub reductions: usize,
    pub zero_remainders: usize,
    pub multiplier_events: usize,
}

impl From<&PseudoStats> for PseudoStatsDoc {
    fn from(s: &PseudoStats) -> Self {
        PseudoStatsDoc {
            pairs: s.pairs,
            coprime_skips: s.coprime_skips,
            triangle_skips: s.triangle_skips,
            reductions: s.reductions,
            zero_remainders: s.zero_remainders,
            multiplier_events: s.multiplier_events,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProperStatsDoc {
    pub pairs: usize,
    pub coprime_skips: usize,
    pub triangle_skips: usize,
    pub reductions: usize,
    pub modulus_spolys: usize,
    pub eliminant_spolys: usize,
    pub refinements: usize,
}

impl From<&ProperStats> for ProperStatsDoc {
    fn from(s: &ProperStats) -> Self {
        ProperStatsDoc {
            pairs: s.pairs,
            coprime_skips: s.coprime_skips,
            triangle_skips: s.triangle_skips,
            reductions: s.reductions,
            modulus_spolys: s.modulus_spolys,
            eliminant_spolys: s.eliminant_spolys,
            refinements: s.refinements,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Factor {
    pub factor: Poly,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaDoc {
    pub multiplicity: u32,
    pub factors: Vec<Poly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositeDoc {
    pub omega: Poly,
    pub multiplicity: u32,
    pub modulus: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatDoc {
    pub cp: Poly,
    pub squarefree: Vec<Factor>,
    pub omega: Vec<OmegaDoc>,
    pub composite: Vec<CompositeDoc>,
}

/// Result of the proper algorithm over one composite divisor.
#[derive(Debug, Clone, Serialize)]
pub struct ProperDoc {
    pub modulus: Poly,
    pub e_q: Poly,
    pub standard_rep: Option<Poly>,
    pub proper_divisor: Poly,
    pub basis: Vec<Poly>,
    pub stats: ProperStatsDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchDoc {
    pub kind: String,
    pub divisor: Poly,
    pub basis: Vec<Poly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reconstruction {
    pub cp: Poly,
    pub proper_divisors: Vec<Poly>,
    pub chi: Poly,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub pipeline_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub input: Input,
    pub pseudo: PseudoDoc,
    pub compat: CompatDoc,
    pub proper: Vec<ProperDoc>,
    pub chi: Poly,
    pub reconstruction: Reconstruction,
    pub new_basis: Vec<BranchDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn lifted(f: &MPoly<UPoly>, full: &MonomialOrder, vars: &[String]) -> Poly {
    Poly::multi(&expand_last_variable(f, full), vars)
}

pub fn branch_doc(b: &Branch, full: &MonomialOrder, vars: &[String], z: &str) -> BranchDoc {
    BranchDoc {
        kind: b.kind.name().into(),
        divisor: Poly::uni(&b.divisor, z),
        basis: b.lifted().iter().map(|f| lifted(f, full, vars)).collect(),
    }
}

pub fn result_document(
    sys: &SystemFile,
    p: &Pipeline,
    timing: Option<Timing>,
) -> Result<ResultDocument> {
    let vars = &sys.variables;
    let z = sys.eliminant.as_str();
    let full = &p.full_order;
    let pseudo = PseudoDoc {
        chi_eps: Poly::uni(&p.pseudo.chi_eps, z),
        multipliers: p
            .pseudo
            .multipliers
            .iter()
            .map(|m| Poly::uni(m, z))
            .collect(),
        basis: p
            .pseudo
            .basis
            .iter()
            .map(|f| lifted(f, full, vars))
            .collect(),
        stats: (&p.pseudo.stats).into(),
    };
    let compat = CompatDoc {
        cp: Poly::uni(&p.compat.cp, z),
        squarefree: p
            .compat
            .squarefree
            .iter()
            .map(|(f, k)| Factor {
                factor: Poly::uni(f, z),
                multiplicity: *k,
            })
            .collect(),
        omega: p
            .compat
            .omega
            .iter()
            .map(|(k, fs)| OmegaDoc {
                multiplicity: *k,
                factors: fs.iter().map(|f| Poly::uni(f, z)).collect(),
            })
            .collect(),
        composite: p
            .compat
            .composite
            .iter()
            .map(|c| CompositeDoc {
                omega: Poly::uni(&c.omega, z),
                multiplicity: c.multiplicity,
                modulus: Poly::uni(&c.modulus, z),
            })
            .collect(),
    };
    let mut divisors = Vec::new();
    let proper = p
        .compat
        .composite
        .iter()
        .zip(&p.branches)
        .map(|(c, r)| {
            let std = if r.e_q.is_zero() {
                None
            } else {
                Some(r.e_q.standard_rep()?.lift().clone())
            };
            let div = proper_divisor(&r.e_q, &c.modulus)?;
            if !div.is_constant() {
                divisors.push(div.clone());
            }
            Ok(ProperDoc {
                modulus: Poly::uni(&c.modulus, z),
                e_q: Poly::uni(r.e_q.lift(), z),
                standard_rep: std.map(|s| Poly::uni(&s, z)),
                proper_divisor: Poly::uni(&div, z),
                basis: r
                    .basis
                    .iter()
                    .map(|f| lifted(&lift_poly(f), full, vars))
                    .collect(),
                stats: (&r.stats).into(),
            })
        })
        .collect::<Result<_>>()?;
    let product = reconstruct_eliminant(&p.compat.cp, &divisors);
    Ok(ResultDocument {
        input: Input::new(sys),
        pseudo,
        compat,
        proper,
        chi: Poly::uni(p.chi(), z),
        reconstruction: Reconstruction {
            cp: Poly::uni(&p.compat.cp, z),
            proper_divisors: divisors.iter().map(|d| Poly::uni(d, z)).collect(),
            holds: p.new_basis.is_trivial() || &product == p.chi(),
            chi: Poly::uni(&product, z),
        },
        new_basis: p
            .new_basis
            .branches()
            .map(|b| branch_doc(b, full, vars, z))
            .collect(),
        timing,
    })
}
