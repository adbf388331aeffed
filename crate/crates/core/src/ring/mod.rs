//! Exact arithmetic: coefficient fields and the Laurent polynomial ring.

pub mod field;
pub mod poly;

pub use field::{EnumerableField, Field, FieldError, Rat, Zp};
pub use poly::{LaurentPoly, PolyParseError};
