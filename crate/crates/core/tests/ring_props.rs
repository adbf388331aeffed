//! Property tests for the coefficient fields and the Laurent polynomial ring.

use flowcat_core::ring::{Field, LaurentPoly, Rat, Zp};
use proptest::prelude::*;

type PQ = LaurentPoly<Rat>;
type P5 = LaurentPoly<Zp<5>>;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn arb_poly_q() -> impl Strategy<Value = PQ> {
    prop::collection::vec((-4i64..=4, arb_rat()), 0..5).prop_map(PQ::from_terms)
}

fn arb_poly_q_nonzero() -> impl Strategy<Value = PQ> {
    arb_poly_q().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_poly_5() -> impl Strategy<Value = P5> {
    prop::collection::vec((-4i64..=4, 0i64..5), 0..5)
        .prop_map(|terms| P5::from_terms(terms.into_iter().map(|(e, c)| (e, Zp::<5>::new(c)))))
}

proptest! {
    #[test]
    fn add_commutative(a in arb_poly_q(), b in arb_poly_q()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn add_associative(a in arb_poly_q(), b in arb_poly_q(), c in arb_poly_q()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_commutative(a in arb_poly_q(), b in arb_poly_q()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_associative(a in arb_poly_q(), b in arb_poly_q(), c in arb_poly_q()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn distributive(a in arb_poly_q(), b in arb_poly_q(), c in arb_poly_q()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn sub_is_add_neg(a in arb_poly_q(), b in arb_poly_q()) {
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn units_are_monomials(e in -4i64..=4, c in arb_rat()) {
        prop_assume!(!c.is_zero());
        let u = PQ::monomial(e, c);
        prop_assert!(u.is_unit());
        prop_assert!(u.mul(&u.unit_inv()).is_one());
    }

    #[test]
    fn divrem_contract(a in arb_poly_q(), b in arb_poly_q_nonzero()) {
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(a, q.mul(&b).add(&r));
        if !r.is_zero() {
            prop_assert!(r.span().unwrap() < b.span().unwrap_or(0).max(1));
            // canonical remainder is an ordinary polynomial below the span
            prop_assert!(r.min_exp().unwrap() >= 0);
            prop_assert!((r.max_exp().unwrap() as u64) < b.span().unwrap());
        }
    }

    #[test]
    fn divrem_canonical_on_cosets(a in arb_poly_q(), b in arb_poly_q_nonzero(), t in arb_poly_q()) {
        let shifted = a.add(&b.mul(&t));
        prop_assert_eq!(a.rem(&b), shifted.rem(&b));
    }

    #[test]
    fn gcd_bezout(a in arb_poly_q(), b in arb_poly_q()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, x, y) = a.gcd_ext(&b);
        prop_assert_eq!(x.mul(&a).add(&y.mul(&b)), g.clone());
        prop_assert!(!g.is_zero());
        prop_assert!(g.is_canonical_associate());
        prop_assert!(a.divrem(&g).1.is_zero());
        prop_assert!(b.divrem(&g).1.is_zero());
    }

    #[test]
    fn canonical_associate_constant_on_class(p in arb_poly_q_nonzero(), e in -3i64..=3, c in arb_rat()) {
        prop_assume!(!c.is_zero());
        let unit = PQ::monomial(e, c);
        let (u1, q1) = p.canonical_associate();
        let (u2, q2) = p.mul(&unit).canonical_associate();
        prop_assert_eq!(&q1, &q2);
        prop_assert_eq!(u1.mul(&q1), p.clone());
        prop_assert_eq!(u2.mul(&q2), p.mul(&unit));
        // idempotent on the canonical part
        let (u3, q3) = q1.canonical_associate();
        prop_assert!(u3.is_one());
        prop_assert_eq!(q3, q1);
    }

    #[test]
    fn display_parse_round_trip(p in arb_poly_q()) {
        let text = p.to_string();
        prop_assert_eq!(PQ::parse(&text).unwrap(), p);
    }

    #[test]
    fn exp_pairs_round_trip(p in arb_poly_q()) {
        prop_assert_eq!(PQ::from_exp_pairs(&p.to_exp_pairs()).unwrap(), p);
    }

    #[test]
    fn mod5_ring_axioms(a in arb_poly_5(), b in arb_poly_5(), c in arb_poly_5()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn mod5_divrem(a in arb_poly_5(), b in arb_poly_5()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(a, q.mul(&b).add(&r));
        if !r.is_zero() {
            prop_assert!(r.span().unwrap() < b.span().unwrap().max(1));
        }
    }

    #[test]
    fn mod5_gcd(a in arb_poly_5(), b in arb_poly_5()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, x, y) = a.gcd_ext(&b);
        prop_assert_eq!(x.mul(&a).add(&y.mul(&b)), g);
    }
}

#[test]
fn characteristic_two_does_not_assume_minus_one_distinct() {
    // -1 must be expressible in every field; in characteristic 2 it equals 1
    let m1 = Zp::<2>::from_int(-1);
    assert_eq!(m1, Zp::<2>::one());
    let m1 = Rat::from_int(-1);
    assert_ne!(m1, Rat::one());
    // scalar(-1) squared is the identity either way
    let p2 = LaurentPoly::<Zp<2>>::constant(m1_of::<Zp<2>>()).mul(&LaurentPoly::constant(m1_of::<Zp<2>>()));
    assert!(p2.is_one());
}

fn m1_of<F: Field>() -> F {
    F::from_int(-1)
}
