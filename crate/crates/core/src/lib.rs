//! Exact compiler and analyzer for linear time-invariant dynamical systems
//! written as signal-flow terms.
//!
//! The pipeline: parse a term (`diagram`), compile it to a cospan of matrices
//! over `k[s, s^-1]` and normalize to a canonical corelation (`semantics`),
//! then analyze: decide behavioral equality, compute controllable parts
//! (`control`), or execute the per-tick stream semantics and compare finite
//! windows against the denotation (`opsem`). Everything runs in exact
//! arithmetic over the rationals or a prime field (`ring`, `linalg`).

pub mod control;
pub mod diagram;
pub mod json;
pub mod linalg;
pub mod opsem;
pub mod ring;
pub mod semantics;
pub mod testkit;

pub use diagram::{typecheck, Generator, RegisterKind, ScalarLit, Term, TypedTerm};
pub use linalg::PolyMatrix;
pub use ring::{Field, LaurentPoly, Rat, Zp};
pub use semantics::{behavior_equal, corelation_of, term_to_cospan, Corelation, Cospan, Span};
