//! Exact-arithmetic toolkit for the singularity strata of polynomial maps
//! in arbitrary characteristic.
//!
//! The crate provides:
//! - exact fields (`field`): rationals, prime fields, small extensions;
//! - dense exact linear algebra (`linalg`): rank, kernel, cokernel;
//! - sparse polynomials and truncated power series (`poly`);
//! - linear systems of maps and order-2 jet evaluation (`jets`);
//! - pointwise singularity classification (`strata`): corank, intrinsic
//!   differentials, symbols, bad-locus membership;
//! - closed-form codimension and nonemptiness evaluators (`codim`);
//! - finite-field enumeration, witnesses and Monte-Carlo codimension
//!   estimation (`census`);
//! - constructive local normal forms (`morse`): Milnor numbers, finite
//!   determinacy, quadratic normal forms, Morse splitting with parameters;
//! - the acceptance battery (`verify`).

pub mod census;
pub mod codim;
pub mod error;
pub mod field;
pub mod jets;
pub mod linalg;
pub mod morse;
pub mod poly;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ExactField, FieldElem, FieldSpec};
pub use linalg::{Matrix, RankProfile};
pub use poly::{jet2_at, parse_map, parse_poly, Jet2, Mono, PolyMap, Series};
