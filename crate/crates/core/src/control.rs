//! Controllability analysis.
//!
//! The primary decision procedure is the pullback/pushout round trip: take
//! the pullback span of the corelation, push it back out, and compare
//! behaviors. The span witnesses the maximal controllable sub-behavior, and
//! the mediating map from the round-trip apex back to the original apex
//! records how the system fails to be controllable. The single-input
//! single-output gcd criterion and the invertible-leg and interconnection
//! shortcuts are kept as independent cross-checks.

use crate::linalg::{is_invertible, kernel_basis, solve_left, PolyMatrix};
use crate::ring::field::Field;
use crate::ring::poly::LaurentPoly;
use crate::semantics::{
    behavior_equal, corelation_of, Corelation, Cospan, Span,
};
use std::fmt;

/// Outcome of a sufficient-only test: it either establishes controllability
/// or says nothing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Controllable,
    Unknown,
}

/// Full controllability analysis of one corelation.
#[derive(Clone, Debug)]
pub struct ControllabilityReport<F: Field> {
    pub controllable: bool,
    /// Pullback span witnessing the controllable part.
    pub span: Span<F>,
    pub controllable_part: Corelation<F>,
    /// Mediating map from the pushout-of-pullback apex to the original apex:
    /// `obstruction * [C | D] = [A | B]`. Invertible exactly when the system
    /// is controllable.
    pub obstruction: PolyMatrix<F>,
}

/// The pullback span of a corelation: columns of the kernel of the canonical
/// kernel representation, split at the boundary.
pub fn pullback_span<F: Field>(x: &Corelation<F>) -> Span<F> {
    let k = kernel_basis(x.kernel_rep());
    Span {
        m: x.m,
        n: x.n,
        waist: k.cols(),
        r: k.take_rows(0..x.m),
        s: k.take_rows(x.m..x.m + x.n),
    }
}

/// The maximal controllable sub-behavior: pushout of the pullback span,
/// normalized. A fixed point of itself.
pub fn controllable_part<F: Field>(x: &Corelation<F>) -> Corelation<F> {
    pullback_span(x).to_corelation()
}

/// Decide controllability by the round trip and assemble the full report.
pub fn is_controllable<F: Field>(x: &Corelation<F>) -> ControllabilityReport<F> {
    let span = pullback_span(x);
    let pushout = span.pushout_cospan();
    let part = corelation_of(&pushout);
    let q = pushout.a.hstack(&pushout.b);
    let legs = x.a.hstack(&x.b);
    let obstruction = solve_left(&q, &legs)
        .expect("original legs factor through the pushout of their pullback");
    ControllabilityReport {
        controllable: behavior_equal(&part, x),
        span,
        controllable_part: part,
        obstruction,
    }
}

/// Sufficient condition: a cospan with an invertible leg is controllable.
pub fn invertible_leg_shortcut<F: Field>(c: &Cospan<F>) -> Verdict {
    if is_invertible(&c.a) || is_invertible(&c.b) {
        Verdict::Controllable
    } else {
        Verdict::Unknown
    }
}

/// Sufficient condition for a composite of two controllable systems given as
/// spans: the composite is controllable whenever the middle cospan (right leg
/// of the first against left leg of the second) is. Panics when the shared
/// boundary sizes differ.
pub fn composite_controllable_sufficient<F: Field>(b: &Span<F>, c: &Span<F>) -> Verdict {
    assert_eq!(
        b.n, c.m,
        "span composition boundary mismatch: {} vs {}",
        b.n, c.m
    );
    let middle = Cospan {
        m: b.waist,
        n: c.waist,
        apex: b.n,
        a: b.s.clone(),
        b: c.r.clone(),
    };
    if is_controllable(&corelation_of(&middle)).controllable {
        Verdict::Controllable
    } else {
        Verdict::Unknown
    }
}

/// Single-input single-output criterion: a behavior with 1x2 kernel
/// representation is controllable iff the gcd of the two entries is a unit.
/// Panics unless the input is 1x2.
pub fn siso_gcd_check<F: Field>(kernel_row: &PolyMatrix<F>) -> bool {
    assert_eq!(
        (kernel_row.rows(), kernel_row.cols()),
        (1, 2),
        "siso check needs a 1x2 kernel representation"
    );
    let a = kernel_row.at(0, 0);
    let b = kernel_row.at(0, 1);
    if a.is_zero() && b.is_zero() {
        return true; // the full behavior is trivially an image
    }
    a.gcd(b).is_unit()
}

/// Observability assumption of the scalar interconnection: both spans must
/// have coprime legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityError {
    pub which: &'static str,
}

impl fmt::Display for ObservabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "image representation {} is not observable (legs share a non-unit factor)",
            self.which
        )
    }
}

impl std::error::Error for ObservabilityError {}

/// Eliminate the latent and shared variables of the scalar interconnection
/// `(w1, w2) = (B1 l1, B2 l1)`, `(w2, w3) = (C1 l2, C2 l2)`: with
/// `G = gcd(B1, C2)`, `B1 = G B1'`, `C2 = G C2'`, the projected behavior on
/// `(w1, w3)` has kernel representation `[C2' B2, -(B1' C1)]`.
pub fn siso_interconnection_kernel<F: Field>(
    b1: &LaurentPoly<F>,
    b2: &LaurentPoly<F>,
    c1: &LaurentPoly<F>,
    c2: &LaurentPoly<F>,
) -> Result<PolyMatrix<F>, ObservabilityError> {
    if !b1.gcd(b2).is_unit() {
        return Err(ObservabilityError { which: "B" });
    }
    if !c1.gcd(c2).is_unit() {
        return Err(ObservabilityError { which: "C" });
    }
    if b1.is_zero() && c2.is_zero() {
        // both external legs vanish; the projection is {(0, 0)}, which a
        // single kernel row cannot express
        return Err(ObservabilityError { which: "interconnection" });
    }
    let g = b1.gcd(c2);
    let b1p = b1.exact_div(&g).expect("gcd divides");
    let c2p = c2.exact_div(&g).expect("gcd divides");
    Ok(PolyMatrix::from_rows(vec![vec![
        c2p.mul(b2),
        b1p.mul(c1).neg(),
    ]]))
}
