//! Denotational semantics: compile terms to cospans of matrices, compose by
//! pushout, normalize to corelations, and decide behavioral equality.
//!
//! A cospan `m -A-> apex <-B- n` denotes the stream relation
//! `{(x, y) | A x = B y}` — the behavior is never materialized, only the
//! matrices are manipulated. Normalizing the copairing `[A | B]` through the
//! epi / split-mono factorization yields the jointly-epic corelation, whose
//! canonical identity is the Hermite form of `[A | -B]`. Two terms denote the
//! same system iff those canonical kernel representations are identical.

use crate::diagram::{Generator, ScalarLit, Term, TypedTerm};
use crate::linalg::{
    epi_splitmono_factor, hermite_normal_form, solve_left, PolyMatrix,
};
use crate::ring::field::{Field, FieldError};
use crate::ring::poly::LaurentPoly;

/// A cospan of matrices: legs `a: apex x m` and `b: apex x n` into a shared
/// apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cospan<F: Field> {
    pub m: usize,
    pub n: usize,
    pub apex: usize,
    pub a: PolyMatrix<F>,
    pub b: PolyMatrix<F>,
}

/// A jointly-epic cospan with its canonical kernel representation.
///
/// Equality of corelations is equality of `m`, `n`, and `kernel_rep`; the
/// legs are kept only as a witness.
#[derive(Clone, Debug)]
pub struct Corelation<F: Field> {
    pub m: usize,
    pub n: usize,
    pub apex: usize,
    pub a: PolyMatrix<F>,
    pub b: PolyMatrix<F>,
    kernel_rep: PolyMatrix<F>,
}

impl<F: Field> PartialEq for Corelation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.kernel_rep == other.kernel_rep
    }
}

impl<F: Field> Eq for Corelation<F> {}

impl<F: Field> Corelation<F> {
    /// The canonical kernel representation: a full-row-rank matrix in Hermite
    /// form whose kernel (under the stream action) is the denoted behavior,
    /// on the stacked coordinates `(x; y)`.
    pub fn kernel_rep(&self) -> &PolyMatrix<F> {
        &self.kernel_rep
    }

    pub fn as_cospan(&self) -> Cospan<F> {
        Cospan {
            m: self.m,
            n: self.n,
            apex: self.apex,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Rebuild a corelation from a kernel representation matrix acting on
    /// `m + n` stacked coordinates.
    pub fn from_kernel_rep(m: usize, n: usize, rep: &PolyMatrix<F>) -> Self {
        assert_eq!(rep.cols(), m + n, "kernel representation width mismatch");
        let a = rep.take_cols(0..m);
        let b = rep.take_cols(m..m + n).neg();
        corelation_of(&Cospan {
            m,
            n,
            apex: rep.rows(),
            a,
            b,
        })
    }
}

/// A span of matrices: legs `r: m x waist` and `s: n x waist` out of a shared
/// waist. Denotes the joint image, i.e. `{(R z, S z) | z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span<F: Field> {
    pub m: usize,
    pub n: usize,
    pub waist: usize,
    pub r: PolyMatrix<F>,
    pub s: PolyMatrix<F>,
}

impl<F: Field> Span<F> {
    pub fn identity(n: usize) -> Self {
        Span {
            m: n,
            n,
            waist: n,
            r: PolyMatrix::identity(n),
            s: PolyMatrix::identity(n),
        }
    }

    /// The pushout cospan of this span: apex is the free cokernel of
    /// `[R; -S]`, legs are the two blocks of the cokernel map.
    pub fn pushout_cospan(&self) -> Cospan<F> {
        let stack = self.r.vstack(&self.s.neg());
        let q = crate::linalg::cokernel_free(&stack);
        Cospan {
            m: self.m,
            n: self.n,
            apex: q.rows(),
            a: q.take_cols(0..self.m),
            b: q.take_cols(self.m..self.m + self.n),
        }
    }

    /// Corelation of the denoted behavior `im [R; S]`.
    pub fn to_corelation(&self) -> Corelation<F> {
        corelation_of(&self.pushout_cospan())
    }
}

/// The fixed table of generator cospans. Fails only when a scalar literal has
/// no image in `F` (e.g. `1/2` in characteristic 2).
pub fn generator_cospan<F: Field>(g: &Generator) -> Result<Cospan<F>, FieldError> {
    let one = || LaurentPoly::<F>::one();
    let s = || LaurentPoly::<F>::var();
    let lit = |a: &ScalarLit| -> Result<LaurentPoly<F>, FieldError> {
        Ok(LaurentPoly::constant(F::from_ratio(a.num(), a.den())?))
    };
    let row = |ps: Vec<LaurentPoly<F>>| PolyMatrix::from_rows(vec![ps]);
    let cospan = |m: usize, n: usize, apex: usize, a: PolyMatrix<F>, b: PolyMatrix<F>| Cospan {
        m,
        n,
        apex,
        a,
        b,
    };
    let c = match g {
        Generator::Add => cospan(2, 1, 1, row(vec![one(), one()]), row(vec![one()])),
        Generator::Zero => cospan(0, 1, 1, PolyMatrix::zeros(1, 0), row(vec![one()])),
        Generator::Copy => cospan(
            1,
            2,
            2,
            PolyMatrix::from_rows(vec![vec![one()], vec![one()]]),
            PolyMatrix::identity(2),
        ),
        Generator::Discard => cospan(1, 0, 0, PolyMatrix::zeros(0, 1), PolyMatrix::zeros(0, 0)),
        Generator::Delay => cospan(1, 1, 1, row(vec![s()]), row(vec![one()])),
        Generator::Scalar(a) => cospan(1, 1, 1, row(vec![lit(a)?]), row(vec![one()])),
        g_mirror => {
            let c = generator_cospan::<F>(&g_mirror.mirrored())?;
            cospan(c.n, c.m, c.apex, c.b, c.a)
        }
    };
    Ok(c)
}

pub fn identity_cospan<F: Field>(n: usize) -> Cospan<F> {
    Cospan {
        m: n,
        n,
        apex: n,
        a: PolyMatrix::identity(n),
        b: PolyMatrix::identity(n),
    }
}

pub fn twist_cospan<F: Field>() -> Cospan<F> {
    Cospan {
        m: 2,
        n: 2,
        apex: 2,
        a: PolyMatrix::identity(2),
        b: PolyMatrix::permutation(&[1, 0]),
    }
}

/// Compose cospans by pushout over the shared boundary: the new apex is the
/// free cokernel of `[B1; -A2]` and the legs are pushed forward through its
/// two blocks. Panics on boundary mismatch.
pub fn cospan_compose<F: Field>(c1: &Cospan<F>, c2: &Cospan<F>) -> Cospan<F> {
    assert_eq!(
        c1.n, c2.m,
        "cospan composition boundary mismatch: {} vs {}",
        c1.n, c2.m
    );
    let stack = c1.b.vstack(&c2.a.neg());
    let q = crate::linalg::cokernel_free(&stack);
    let c_block = q.take_cols(0..c1.apex);
    let d_block = q.take_cols(c1.apex..c1.apex + c2.apex);
    Cospan {
        m: c1.m,
        n: c2.n,
        apex: q.rows(),
        a: c_block.mul(&c1.a),
        b: d_block.mul(&c2.b),
    }
}

/// Monoidal product: apexes add, legs are block diagonals.
pub fn cospan_tensor<F: Field>(c1: &Cospan<F>, c2: &Cospan<F>) -> Cospan<F> {
    Cospan {
        m: c1.m + c2.m,
        n: c1.n + c2.n,
        apex: c1.apex + c2.apex,
        a: c1.a.direct_sum(&c2.a),
        b: c1.b.direct_sum(&c2.b),
    }
}

/// Structural fold of a well-typed term into a cospan.
pub fn term_to_cospan<F: Field>(t: &TypedTerm) -> Result<Cospan<F>, FieldError> {
    fn go<F: Field>(t: &Term) -> Result<Cospan<F>, FieldError> {
        match t {
            Term::Gen(g) => generator_cospan(g),
            Term::Id(n) => Ok(identity_cospan(*n)),
            Term::Twist => Ok(twist_cospan()),
            Term::Seq(a, b) => Ok(cospan_compose(&go(a)?, &go(b)?)),
            Term::Tensor(a, b) => Ok(cospan_tensor(&go(a)?, &go(b)?)),
        }
    }
    go(&t.term)
}

/// Normalize a cospan to its jointly-epic corelation: factor the copairing
/// `[A | B] = S E`, keep the epi part as the new legs, and canonicalize
/// `[A' | -B']` by Hermite form. Idempotent on already-jointly-epic cospans.
pub fn corelation_of<F: Field>(c: &Cospan<F>) -> Corelation<F> {
    let copairing = c.a.hstack(&c.b);
    let (epi, _mono) = epi_splitmono_factor(&copairing);
    let a = epi.take_cols(0..c.m);
    let b = epi.take_cols(c.m..c.m + c.n);
    let kernel_rep = hermite_normal_form(&a.hstack(&b.neg())).h;
    Corelation {
        m: c.m,
        n: c.n,
        apex: epi.rows(),
        a,
        b,
        kernel_rep,
    }
}

/// Decide behavioral equality via the canonical kernel representations.
/// Panics when the boundary types differ.
pub fn behavior_equal<F: Field>(x: &Corelation<F>, y: &Corelation<F>) -> bool {
    assert_eq!(
        (x.m, x.n),
        (y.m, y.n),
        "behavior comparison across different boundary types"
    );
    x.kernel_rep == y.kernel_rep
}

/// Independent decision path for behavioral equality: mutual one-sided
/// solvability of the kernel representations (kernel containment both ways).
pub fn behavior_equal_via_solve<F: Field>(x: &Corelation<F>, y: &Corelation<F>) -> bool {
    assert_eq!(
        (x.m, x.n),
        (y.m, y.n),
        "behavior comparison across different boundary types"
    );
    solve_left(&x.kernel_rep, &y.kernel_rep).is_some()
        && solve_left(&y.kernel_rep, &x.kernel_rep).is_some()
}

/// Containment of behaviors: every trajectory of `x` is one of `y`.
pub fn behavior_contained<F: Field>(x: &Corelation<F>, y: &Corelation<F>) -> bool {
    assert_eq!((x.m, x.n), (y.m, y.n), "behavior comparison across different boundary types");
    solve_left(&x.kernel_rep, &y.kernel_rep).is_some()
}

/// The canonical kernel representation of a corelation.
pub fn kernel_representation<F: Field>(x: &Corelation<F>) -> &PolyMatrix<F> {
    x.kernel_rep()
}

/// Compile source text all the way to a corelation.
pub fn corelation_of_source<F: Field>(src: &str) -> Result<Corelation<F>, String> {
    let t = crate::diagram::parse_typed(src)?;
    let c = term_to_cospan::<F>(&t).map_err(|e| e.to_string())?;
    Ok(corelation_of(&c))
}

/// One checked equation: both sides must compile and denote the same system.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub passed: bool,
}

/// The curated equation list: monoid/comonoid laws for the additive and
/// copying structure, their mirror images, bimonoid interaction, delay-as-
/// formal-inverse, scalar algebra, and the bone law identifying
/// `zero ; co_zero` with the empty diagram.
pub const AXIOM_PAIRS: &[(&str, &str, &str)] = &[
    ("add commutative", "tw ; add", "add"),
    ("add associative", "(add | id) ; add", "(id | add) ; add"),
    ("add unit left", "(zero | id) ; add", "id"),
    ("add unit right", "(id | zero) ; add", "id"),
    ("copy cocommutative", "copy ; tw", "copy"),
    ("copy coassociative", "copy ; (copy | id)", "copy ; (id | copy)"),
    ("copy counit left", "copy ; (discard | id)", "id"),
    ("copy counit right", "copy ; (id | discard)", "id"),
    ("co_add cocommutative", "co_add ; tw", "co_add"),
    (
        "co_add coassociative",
        "co_add ; (co_add | id)",
        "co_add ; (id | co_add)",
    ),
    ("co_add counit left", "co_add ; (co_zero | id)", "id"),
    ("co_copy commutative", "tw ; co_copy", "co_copy"),
    (
        "co_copy associative",
        "(co_copy | id) ; co_copy",
        "(id | co_copy) ; co_copy",
    ),
    ("co_copy unit left", "(co_discard | id) ; co_copy", "id"),
    (
        "bimonoid add copy",
        "add ; copy",
        "(copy | copy) ; (id | tw | id) ; (add | add)",
    ),
    ("bimonoid zero copy", "zero ; copy", "zero | zero"),
    ("bimonoid add discard", "add ; discard", "discard | discard"),
    ("bimonoid zero discard", "zero ; discard", "id@0"),
    ("delay inverse right", "delay ; co_delay", "id"),
    ("delay inverse left", "co_delay ; delay", "id"),
    ("delay natural copy", "delay ; copy", "copy ; (delay | delay)"),
    ("delay natural discard", "delay ; discard", "discard"),
    ("delay natural add", "add ; delay", "(delay | delay) ; add"),
    ("delay natural zero", "zero ; delay", "zero"),
    (
        "mirror delay natural copy",
        "co_copy ; co_delay",
        "(co_delay | co_delay) ; co_copy",
    ),
    ("scalar multiplicative", "scalar(2) ; scalar(3)", "scalar(6)"),
    ("scalar identity", "scalar(1)", "id"),
    (
        "scalar natural copy",
        "scalar(3) ; copy",
        "copy ; (scalar(3) | scalar(3))",
    ),
    (
        "scalar natural add",
        "add ; scalar(3)",
        "(scalar(3) | scalar(3)) ; add",
    ),
    (
        "scalar sum",
        "copy ; (scalar(2) | scalar(3)) ; add",
        "scalar(5)",
    ),
    ("scalar delay commute", "scalar(3) ; delay", "delay ; scalar(3)"),
    (
        "mirror scalar multiplicative",
        "co_scalar(2) ; co_scalar(3)",
        "co_scalar(6)",
    ),
    ("antipode involution", "scalar(-1) ; scalar(-1)", "id"),
    (
        "antipode law",
        "copy ; (scalar(-1) | id) ; add",
        "discard ; zero",
    ),
    ("white bone", "zero ; co_zero", "id@0"),
];

/// Check every curated axiom pair over the field `F`.
pub fn axiom_soundness_suite<F: Field>() -> Vec<AxiomCheck> {
    AXIOM_PAIRS
        .iter()
        .map(|(name, lhs, rhs)| {
            let passed = match (
                corelation_of_source::<F>(lhs),
                corelation_of_source::<F>(rhs),
            ) {
                (Ok(x), Ok(y)) => behavior_equal(&x, &y),
                _ => false,
            };
            AxiomCheck {
                name,
                lhs,
                rhs,
                passed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_typed;
    use crate::ring::field::Rat;

    type M = PolyMatrix<Rat>;

    fn corel(src: &str) -> Corelation<Rat> {
        corelation_of_source::<Rat>(src).unwrap()
    }

    const T_EX: &str = "copy ; (delay|id) ; add ; co_add ; (co_delay|id) ; co_copy";

    #[test]
    fn generator_table_shapes() {
        for g in [
            Generator::Add,
            Generator::Zero,
            Generator::Copy,
            Generator::Discard,
            Generator::Delay,
            Generator::Scalar(ScalarLit::int(5)),
            Generator::CoAdd,
            Generator::CoZero,
            Generator::CoCopy,
            Generator::CoDiscard,
            Generator::CoDelay,
            Generator::CoScalar(ScalarLit::int(5)),
        ] {
            let c = generator_cospan::<Rat>(&g).unwrap();
            assert_eq!(c.m, g.arity(), "{g:?}");
            assert_eq!(c.n, g.coarity(), "{g:?}");
            assert_eq!(c.a.rows(), c.apex);
            assert_eq!(c.b.rows(), c.apex);
            assert_eq!(c.a.cols(), c.m);
            assert_eq!(c.b.cols(), c.n);
        }
    }

    #[test]
    fn delay_and_mirrors() {
        let d = generator_cospan::<Rat>(&Generator::Delay).unwrap();
        assert_eq!(d.a, M::parse_rows(&[vec!["s"]]));
        assert_eq!(d.b, M::identity(1));
        let cz = generator_cospan::<Rat>(&Generator::CoZero).unwrap();
        assert_eq!(cz.a, M::identity(1));
        assert_eq!((cz.b.rows(), cz.b.cols()), (1, 0));
        let i = identity_cospan::<Rat>(1);
        assert_eq!(i.a, M::identity(1));
        assert_eq!(i.b, M::identity(1));
    }

    #[test]
    fn white_bone_normalizes_to_empty() {
        let x = corel("zero ; co_zero");
        let y = corel("id@0");
        assert_eq!(x.apex, 0);
        assert_eq!((x.kernel_rep().rows(), x.kernel_rep().cols()), (0, 0));
        assert!(behavior_equal(&x, &y));
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let t = parse_typed("copy ; (delay | id) ; add").unwrap();
        let c = term_to_cospan::<Rat>(&t).unwrap();
        let composed = cospan_compose(&c, &identity_cospan(1));
        assert!(behavior_equal(&corelation_of(&composed), &corelation_of(&c)));
    }

    #[test]
    fn delay_then_co_delay_is_wire() {
        let x = corel("delay ; co_delay");
        assert!(behavior_equal(&x, &corel("id@1")));
    }

    #[test]
    fn example_circuit_corelation() {
        let x = corel(T_EX);
        // 1 -[s+1]-> 1 <-[s+1]- 1
        let direct = corelation_of(&Cospan {
            m: 1,
            n: 1,
            apex: 1,
            a: M::parse_rows(&[vec!["1 + s"]]),
            b: M::parse_rows(&[vec!["1 + s"]]),
        });
        assert!(behavior_equal(&x, &direct));
        assert_eq!(x.kernel_rep(), &M::parse_rows(&[vec!["1 + s", "-1 - s"]]));
        assert!(!behavior_equal(&x, &corel("id@1")));
    }

    #[test]
    fn copy_then_co_copy_is_wire() {
        assert!(behavior_equal(&corel("copy ; co_copy"), &corel("id@1")));
    }

    #[test]
    fn corelation_collapses_redundant_apex() {
        // both legs [1; 0] with apex 2: the corelation lives on apex 1
        let c = Cospan {
            m: 1,
            n: 1,
            apex: 2,
            a: M::parse_rows(&[vec!["1"], vec!["0"]]),
            b: M::parse_rows(&[vec!["1"], vec!["0"]]),
        };
        let x = corelation_of(&c);
        assert_eq!(x.apex, 1);
        assert!(behavior_equal(&x, &corel("id@1")));
    }

    #[test]
    fn lonely_apex_dies() {
        // 0 -> 1 <- 0 normalizes to 0 -> 0 <- 0
        let c = Cospan {
            m: 0,
            n: 0,
            apex: 1,
            a: M::zeros(1, 0),
            b: M::zeros(1, 0),
        };
        let x = corelation_of(&c);
        assert_eq!(x.apex, 0);
    }

    #[test]
    fn corelation_of_is_idempotent() {
        for src in [T_EX, "add", "copy ; co_copy", "discard", "zero ; co_zero"] {
            let x = corel(src);
            let again = corelation_of(&x.as_cospan());
            assert_eq!(again, x);
            assert_eq!(again.kernel_rep(), x.kernel_rep());
        }
    }

    #[test]
    fn kernel_rep_examples() {
        assert_eq!(
            corel("id@1").kernel_rep(),
            &M::parse_rows(&[vec!["1", "-1"]])
        );
        let discard = corel("discard");
        assert_eq!(
            (discard.kernel_rep().rows(), discard.kernel_rep().cols()),
            (0, 1)
        );
    }

    #[test]
    fn equality_decision_paths_agree() {
        let pairs = [
            (T_EX, "id@1"),
            ("delay ; co_delay", "id@1"),
            ("zero ; co_zero", "id@0"),
            ("copy ; (discard | id)", "id@1"),
            ("add", "tw ; add"),
        ];
        for (l, r) in pairs {
            let x = corel(l);
            let y = corel(r);
            assert_eq!(
                behavior_equal(&x, &y),
                behavior_equal_via_solve(&x, &y),
                "{l} vs {r}"
            );
        }
    }

    #[test]
    fn axiom_suite_all_pass_over_q() {
        for check in axiom_soundness_suite::<Rat>() {
            assert!(check.passed, "axiom failed: {}", check.name);
        }
    }

    #[test]
    fn axiom_suite_all_pass_over_z2() {
        for check in axiom_soundness_suite::<crate::ring::field::Zp<2>>() {
            assert!(check.passed, "axiom failed over Z2: {}", check.name);
        }
    }

    #[test]
    fn from_kernel_rep_round_trip() {
        let x = corel(T_EX);
        let y = Corelation::from_kernel_rep(1, 1, x.kernel_rep());
        assert!(behavior_equal(&x, &y));
    }
}
