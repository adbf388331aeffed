//! Randomized laws of the compilation pipeline: functoriality of the cospan
//! semantics, idempotence and behavior preservation of normalization, and
//! the polynomial-encoding fullness witness.

use flowcat_core::diagram::{poly_term, typecheck, ScalarLit, Term};
use flowcat_core::opsem::{step_relation, window_behavior};
use flowcat_core::ring::{LaurentPoly, Rat, Zp};
use flowcat_core::semantics::{
    behavior_equal, behavior_equal_via_solve, corelation_of, cospan_compose, term_to_cospan,
    Corelation, Cospan,
};
use flowcat_core::testkit::{random_term, Rng};

type F2 = Zp<2>;

fn typed(t: &Term) -> flowcat_core::diagram::TypedTerm {
    typecheck(t).unwrap()
}

#[test]
fn composition_is_functorial_up_to_behavior() {
    let mut rng = Rng::new(0xfeed_0001);
    let mut checked = 0;
    while checked < 40 {
        let t1 = random_term(&mut rng, 3, 2, 2);
        let t2 = random_term(&mut rng, 3, 2, 2);
        if t1.coarity != t2.arity {
            continue;
        }
        checked += 1;
        let seq = typed(&Term::seq(t1.term.clone(), t2.term.clone()));
        let whole = corelation_of(&term_to_cospan::<Rat>(&seq).unwrap());
        let parts = corelation_of(&cospan_compose(
            &term_to_cospan::<Rat>(&t1).unwrap(),
            &term_to_cospan::<Rat>(&t2).unwrap(),
        ));
        assert!(behavior_equal(&whole, &parts));
    }
}

#[test]
fn cospan_composition_associative_and_unital() {
    let mut rng = Rng::new(0xfeed_0002);
    let mut checked = 0;
    while checked < 25 {
        let t1 = random_term(&mut rng, 2, 2, 2);
        let t2 = random_term(&mut rng, 2, 2, 2);
        let t3 = random_term(&mut rng, 2, 2, 2);
        if t1.coarity != t2.arity || t2.coarity != t3.arity {
            continue;
        }
        checked += 1;
        let c1 = term_to_cospan::<Rat>(&t1).unwrap();
        let c2 = term_to_cospan::<Rat>(&t2).unwrap();
        let c3 = term_to_cospan::<Rat>(&t3).unwrap();
        let left = cospan_compose(&cospan_compose(&c1, &c2), &c3);
        let right = cospan_compose(&c1, &cospan_compose(&c2, &c3));
        assert!(behavior_equal(&corelation_of(&left), &corelation_of(&right)));
        let unit_l = cospan_compose(&flowcat_core::semantics::identity_cospan(c1.m), &c1);
        let unit_r = cospan_compose(&c1, &flowcat_core::semantics::identity_cospan(c1.n));
        assert!(behavior_equal(&corelation_of(&unit_l), &corelation_of(&c1)));
        assert!(behavior_equal(&corelation_of(&unit_r), &corelation_of(&c1)));
    }
}

#[test]
fn normalization_preserves_window_behavior_over_z2() {
    // the raw copairing [A | -B] and the canonical kernel representation cut
    // out the same window subspaces
    let mut rng = Rng::new(0xfeed_0003);
    for _ in 0..25 {
        let t = random_term(&mut rng, 2, 2, 2);
        let c: Cospan<F2> = term_to_cospan(&t).unwrap();
        let raw = c.a.hstack(&c.b.neg());
        let x = corelation_of(&c);
        for len in [3usize, 5] {
            let lhs = window_behavior(&raw, len);
            let rhs = window_behavior(x.kernel_rep(), len);
            assert!(lhs.rowspace_eq(&rhs), "term {:?} len {len}", t.term);
        }
    }
}

#[test]
fn corelation_idempotent_on_random_terms() {
    let mut rng = Rng::new(0xfeed_0004);
    for _ in 0..40 {
        let t = random_term(&mut rng, 3, 3, 3);
        let x = corelation_of(&term_to_cospan::<Rat>(&t).unwrap());
        let again = corelation_of(&x.as_cospan());
        assert_eq!(again, x);
    }
}

#[test]
fn equality_paths_agree_on_random_pairs() {
    let mut rng = Rng::new(0xfeed_0005);
    let mut compared = 0;
    while compared < 40 {
        let t1 = random_term(&mut rng, 2, 2, 2);
        let t2 = random_term(&mut rng, 2, 2, 2);
        if (t1.arity, t1.coarity) != (t2.arity, t2.coarity) {
            continue;
        }
        compared += 1;
        let x = corelation_of(&term_to_cospan::<Rat>(&t1).unwrap());
        let y = corelation_of(&term_to_cospan::<Rat>(&t2).unwrap());
        assert_eq!(behavior_equal(&x, &y), behavior_equal_via_solve(&x, &y));
        // reflexivity and symmetry
        assert!(behavior_equal(&x, &x));
        assert_eq!(behavior_equal(&x, &y), behavior_equal(&y, &x));
    }
}

#[test]
fn poly_term_realizes_multiplication() {
    // fullness witness: the encoding of p denotes {(x, y) | y = p x}, i.e.
    // the corelation with kernel row [p, -1]
    let cases: Vec<Vec<(i64, ScalarLit)>> = vec![
        vec![],
        vec![(0, ScalarLit::int(1))],
        vec![(1, ScalarLit::int(1)), (0, ScalarLit::int(1))],
        vec![(2, ScalarLit::int(3)), (-1, ScalarLit::int(-2))],
        vec![(-3, ScalarLit::int(3)), (-1, ScalarLit::new(-22, 7)), (2, ScalarLit::int(1))],
    ];
    for monomials in cases {
        let t = typed(&poly_term(&monomials));
        let x = corelation_of(&term_to_cospan::<Rat>(&t).unwrap());
        let p = LaurentPoly::<Rat>::from_terms(monomials.iter().map(|(e, c)| {
            (*e, flowcat_core::ring::Field::from_ratio(c.num(), c.den()).unwrap())
        }));
        let direct = Corelation::from_kernel_rep(
            1,
            1,
            &flowcat_core::linalg::PolyMatrix::from_rows(vec![vec![
                p.clone(),
                LaurentPoly::one().neg(),
            ]]),
        );
        assert!(behavior_equal(&x, &direct), "polynomial {p}");
    }
}

#[test]
fn random_poly_terms_round_trip_through_mirror() {
    // p ; mirror(q) denotes the cospan 1 -[p]-> 1 <-[q]- 1
    let mut rng = Rng::new(0xfeed_0006);
    for _ in 0..20 {
        let mk = |rng: &mut Rng| -> Vec<(i64, ScalarLit)> {
            (0..rng.below(3))
                .map(|_| (rng.range_i64(-2, 2), ScalarLit::int(rng.range_i64(-3, 3))))
                .collect()
        };
        let pm = mk(&mut rng);
        let qm = mk(&mut rng);
        let term = Term::seq(poly_term(&pm), poly_term(&qm).mirrored());
        let x = corelation_of(&term_to_cospan::<Rat>(&typed(&term)).unwrap());
        let lit = |m: &[(i64, ScalarLit)]| {
            LaurentPoly::<Rat>::from_terms(m.iter().map(|(e, c)| {
                (*e, flowcat_core::ring::Field::from_ratio(c.num(), c.den()).unwrap())
            }))
        };
        let direct = corelation_of(&Cospan {
            m: 1,
            n: 1,
            apex: 1,
            a: flowcat_core::linalg::PolyMatrix::from_rows(vec![vec![lit(&pm)]]),
            b: flowcat_core::linalg::PolyMatrix::from_rows(vec![vec![lit(&qm)]]),
        });
        assert!(behavior_equal(&x, &direct));
    }
}

#[test]
fn step_relation_and_cospan_agree_on_scalar_failure() {
    // scalar(1/2) has no image over Z2: both compilers must refuse
    let t = typed(&flowcat_core::diagram::parse("scalar(1/2)").unwrap());
    assert!(term_to_cospan::<F2>(&t).is_err());
    assert!(step_relation::<F2>(&t).is_err());
    assert!(term_to_cospan::<Rat>(&t).is_ok());
}
