//! Exact evaluator for the `(g2, V)` quantum invariant of framed links and
//! closed trivalent nets ("3-nets").
//!
//! The pipeline is: parse a diagram ([`net`]), resolve crossings with the
//! skein relation ([`skein`]), then reduce crossing-free nets face by face
//! ([`reduce`]). Values live in the fraction field of `Z[q^±1, r^±1]`
//! ([`ring`]). [`liealg`] re-derives the skein coefficients from `g2` root
//! data as an independent check.

pub mod bundled;
pub mod coeffs;
pub mod liealg;
pub mod net;
pub mod reduce;
pub mod ring;
pub mod skein;

pub use coeffs::CoefficientTable;
pub use net::{Diagram, NetError};
pub use reduce::{EvalConfig, EvalError, Evaluator};
pub use ring::{FieldValue, LaurentPoly, Monomial, RingError};
