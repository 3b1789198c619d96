use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use goldbase::exactnum::{fib, golden_sign, mat_vec, quad_nullspace, GoldenInt, QuadRat};
use goldbase::morphic::{tau, Morphism};
use goldbase::phicodec::{
    expand_greedy, expand_recursive, interval_bounds, interval_of, parse, validate, PhiExpansion,
    MAX_N,
};

const ORACLE_BITS: u32 = 200;

// sign(a + b*phi) from floor(sqrt(5) * 2^200), decided only when the
// truncation error cannot flip it.
fn oracle_sign(a: &BigInt, b: &BigInt) -> Option<Ordering> {
    let scale = BigInt::from(1) << ORACLE_BITS;
    let root5 = (BigInt::from(5) << (2 * ORACLE_BITS)).sqrt();
    // 2(a + b*phi) = (2a + b) + b*sqrt5
    let approx = (BigInt::from(2) * a + b) * &scale + b * &root5;
    let slack = b.magnitude().clone() + 1u32;
    let mag = approx.magnitude();
    if *mag <= slack {
        None
    } else if approx > BigInt::from(0) {
        Some(Ordering::Greater)
    } else {
        Some(Ordering::Less)
    }
}

fn small_quad() -> impl Strategy<Value = QuadRat> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(pn, pd, qn, qd)| QuadRat::from_fracs(pn, pd, qn, qd))
}

fn golden() -> impl Strategy<Value = GoldenInt> {
    (any::<i64>(), any::<i64>()).prop_map(|(a, b)| GoldenInt::new(a, b))
}

proptest! {
    #[test]
    fn sign_agrees_with_scaled_oracle(a in any::<i64>(), b in any::<i64>()) {
        let x = GoldenInt::new(a, b);
        if let Some(expected) = oracle_sign(&x.a, &x.b) {
            prop_assert_eq!(x.sign(), expected);
        }
    }

    #[test]
    fn sign_near_convergents(k in 2i64..130, flip in any::<bool>(), nudge in -1i64..=1) {
        // F(k+1) - F(k)*phi is tiny and alternates in sign; 200 bits resolve k < 144
        let s: i64 = if flip { -1 } else { 1 };
        let a: BigInt = fib(k + 1) * s + nudge;
        let b: BigInt = -fib(k) * s;
        let x = GoldenInt::new(a.clone(), b.clone());
        let expected = oracle_sign(&a, &b).expect("200 bits separate these");
        prop_assert_eq!(x.sign(), expected);
        prop_assert_eq!(golden_sign(&x), match expected {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        });
    }

    #[test]
    fn golden_to_quad_is_a_ring_map(x in golden(), y in golden()) {
        prop_assert_eq!((&x * &y).to_quad(), &x.to_quad() * &y.to_quad());
        prop_assert_eq!((&x + &y).to_quad(), &x.to_quad() + &y.to_quad());
        prop_assert_eq!(&x - &x, GoldenInt::zero());
        prop_assert_eq!((&x - &y).sign(), x.to_quad().cmp(&y.to_quad()));
    }

    #[test]
    fn quad_display_parses_back(x in small_quad()) {
        prop_assert_eq!(x.to_string().parse::<QuadRat>().unwrap(), x);
    }

    #[test]
    fn quad_inverse(x in small_quad()) {
        match x.inv() {
            Some(inv) => prop_assert_eq!(&x * &inv, QuadRat::one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn quad_order_is_field_compatible(x in small_quad(), y in small_quad(), z in small_quad()) {
        prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        if z.is_positive() {
            prop_assert_eq!(x.cmp(&y), (&x * &z).cmp(&(&y * &z)));
        }
        let approx = x.to_f64() - y.to_f64();
        if approx.abs() > 1e-9 {
            prop_assert_eq!(x.cmp(&y), approx.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn nullspace_vectors_are_killed(
        rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..4),
        coefs in prop::collection::vec(-2i64..3, 4),
    ) {
        let m: Vec<Vec<QuadRat>> = rows
            .iter()
            .map(|r| r.iter().zip(&coefs).map(|(&x, &c)| QuadRat::from_fracs(x, 1, x * c, 2)).collect())
            .collect();
        let basis = quad_nullspace(&m);
        // rank + nullity = columns, rank <= rows
        prop_assert!(basis.len() >= 4 - m.len());
        for v in &basis {
            prop_assert!(v.iter().any(|x| !x.is_zero()));
            prop_assert!(mat_vec(&m, v).iter().all(QuadRat::is_zero));
        }
    }

    #[test]
    fn greedy_expansion_is_exact_and_admissible(n in 0..=MAX_N) {
        let e = expand_greedy(n);
        prop_assert!(validate(e.support()));
        prop_assert_eq!(e.evaluate(), GoldenInt::from_int(n));
    }

    #[test]
    fn recursive_matches_greedy(n in 0..=MAX_N) {
        prop_assert_eq!(expand_recursive(n), expand_greedy(n));
    }

    #[test]
    fn expansion_spans_interval_bounds(n in 2..=MAX_N) {
        let e = expand_greedy(n);
        let (l, r) = interval_bounds(interval_of(n).j).unwrap();
        prop_assert_eq!(e.leftmost(), Some(l));
        prop_assert_eq!(e.rightmost(), Some(r));
    }

    #[test]
    fn word_round_trip(n in 0..=MAX_N) {
        let e = expand_greedy(n);
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e.clone());
        prop_assert_eq!(PhiExpansion::from_word(&e.to_word()).unwrap(), e);
    }

    #[test]
    fn substitution_is_a_monoid_map(
        u in prop::collection::vec(1u8..=8, 0..20),
        v in prop::collection::vec(1u8..=8, 0..20),
    ) {
        let t: Morphism = tau();
        let mut uv = u.clone();
        uv.extend(&v);
        let mut expected = t.apply(&u);
        expected.extend(t.apply(&v));
        prop_assert_eq!(t.apply(&uv), expected);
    }
}

#[test]
fn oracle_recognises_known_signs() {
    let phi_minus_1 = GoldenInt::new(-1, 1);
    assert_eq!(
        oracle_sign(&phi_minus_1.a, &phi_minus_1.b),
        Some(Ordering::Greater)
    );
    let r = BigRational::new(BigInt::from(1), BigInt::from(2));
    assert_eq!(QuadRat::from_rational(r.clone()).to_string(), "1/2");
}
