//! Exact computation of pseudo-eliminants, compatible parts, proper
//! eliminants over principal quotient rings, and the resulting modular bases
//! of zero-dimensional ideals in `Q[x1][x2, ..., xn]`, together with a
//! classical Buchberger oracle to cross-check them.

pub mod assemble;
pub mod buchberger;
pub mod compat;
pub mod error;
pub mod mpoly;
pub mod parse;
pub mod pqr;
pub mod proper;
pub mod pseudo;
pub mod upoly;

pub use error::{Error, Result};
pub use mpoly::{Coeff, MPoly, Monomial, MonomialOrder, OrderKind};
pub use pqr::{PqrCtx, PqrElem};
pub use upoly::{Rational, UPoly};
