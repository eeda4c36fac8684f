use num::traits::Zero;
use proptest::prelude::*;
use qdarboux::exact::det::det_laurent;
use qdarboux::exact::scalar::{int, one, pow, ratio};
use qdarboux::exact::{from_eta, phi_terminating, qpoch, to_eta};
use qdarboux::{Error, EtaPoly, LaurentPoly, Scalar};

fn q() -> Scalar {
    ratio(1, 2)
}

fn eta() -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::y()
}

/// Leibniz expansion over all permutations.
fn det_oracle(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..n {
                let mut next = p.clone();
                next.insert(pos, n - 1);
                // Inserting at `pos` moves the new element past `n - 1 - pos` others.
                out.push((next, even == (n - 1 - pos).is_multiple_of(2)));
            }
        }
        out
    }
    let mut acc = LaurentPoly::zero();
    for (p, even) in perms(m.len()) {
        let term = p
            .iter()
            .enumerate()
            .fold(LaurentPoly::one(), |t, (i, &j)| &t * &m[i][j]);
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn qpoch_examples() {
    assert_eq!(qpoch(&ratio(1, 3), &q(), 0), one());
    assert_eq!(qpoch(&ratio(1, 2), &ratio(1, 2), 2), ratio(3, 8));
    for n in 1..5 {
        assert!(qpoch(&one(), &q(), n).is_zero());
    }
}

#[test]
fn shift_examples() {
    assert_eq!(
        LaurentPoly::y().shift_x(&q(), 1),
        LaurentPoly::monomial(ratio(1, 2), 1)
    );
    let p = eta();
    assert_eq!(p.shift_x(&q(), 0), p);
    assert_eq!(p.shift_x(&q(), 2).eval_int_x(&q(), 3), ratio(31, 32));
    assert_eq!(p.eval_int_x(&q(), 5), ratio(31, 32));
}

#[test]
fn eval_examples() {
    assert!(eta().eval_int_x(&q(), 0).is_zero());
    let p = &LaurentPoly::monomial(int(1), -1) - &LaurentPoly::one();
    assert_eq!(p.eval_int_x(&q(), 1), int(1));
    assert_eq!(
        LaurentPoly::constant(ratio(5, 7)).eval_int_x(&q(), 13),
        ratio(5, 7)
    );
}

#[test]
fn infinity_examples() {
    assert_eq!(eta().eval_infinity().unwrap(), int(1));
    assert_eq!(
        LaurentPoly::constant(ratio(-2, 3)).eval_infinity().unwrap(),
        ratio(-2, 3)
    );
    assert_eq!(
        LaurentPoly::monomial(int(1), -1).eval_infinity(),
        Err(Error::NegativePowers)
    );
}

#[test]
fn to_eta_examples() {
    assert_eq!(to_eta(&eta()).unwrap(), EtaPoly::new(vec![int(0), int(1)]));
    assert_eq!(
        to_eta(&LaurentPoly::monomial(int(1), 2)).unwrap(),
        EtaPoly::new(vec![int(1), int(-2), int(1)])
    );
    assert_eq!(
        to_eta(&LaurentPoly::monomial(int(1), -1)),
        Err(Error::NegativePowers)
    );
}

#[test]
fn det_examples() {
    assert_eq!(det_laurent(&[]), LaurentPoly::one());
    let y = LaurentPoly::y();
    let m = vec![vec![eta(), y.clone()], vec![y.clone(), eta()]];
    assert_eq!(det_laurent(&m), &LaurentPoly::one() - &y.scale(&int(2)));
    let col = [eta(), y.clone(), LaurentPoly::one()];
    let rep: Vec<Vec<LaurentPoly>> = (0..3)
        .map(|i| vec![col[i].clone(), y.clone(), col[i].clone()])
        .collect();
    assert!(det_laurent(&rep).is_zero());
}

#[test]
fn phi_examples() {
    let (qq, a) = (q(), ratio(1, 3));
    let z = ratio(3, 4);
    assert_eq!(
        phi_terminating(&[ratio(5, 7)], &[], &qq, &Scalar::zero(), 5).unwrap(),
        one()
    );
    // Two-term expansion written out by hand: 1 + (1 - 1/q) q / ((1 - a)(1 - q)).
    let upper = [pow(&qq, -1), Scalar::zero()];
    let got = phi_terminating(&upper, std::slice::from_ref(&a), &qq, &qq, 3).unwrap();
    let expected = one() + (one() - pow(&qq, -1)) * &qq / ((one() - &a) * (one() - &qq));
    assert_eq!(got, expected);
    assert_eq!(got, ratio(-1, 2));
    assert_eq!(
        phi_terminating(&[one(), a.clone()], &[ratio(1, 5)], &qq, &z, 6).unwrap(),
        one()
    );
    let err = phi_terminating(&[pow(&qq, -2)], &[pow(&qq, -1)], &qq, &z, 4);
    assert!(matches!(err, Err(Error::ZeroDenominator(_))));
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, small_rational()), 0..6).prop_map(LaurentPoly::from_terms)
}

fn poly_up_to(deg: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(small_rational(), 0..=deg + 1).prop_map(LaurentPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn no_stored_zeros(a in laurent(), b in laurent()) {
        let p = &a * &b - &b * &a + &a;
        prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn shift_commutes_with_evaluation(p in laurent(), s in -6i64..=6, x in -6i64..=6, qn in 1i64..=9) {
        let qq = ratio(qn, 10);
        prop_assert_eq!(p.shift_x(&qq, s).eval_int_x(&qq, x), p.eval_int_x(&qq, x + s));
        prop_assert_eq!(p.shift_x(&qq, s).shift_x(&qq, -s), p.clone());
        let direct = p.terms().fold(Scalar::zero(), |acc, (d, c)| acc + c * pow(&pow(&qq, x), d));
        prop_assert_eq!(p.eval_int_x(&qq, x), direct);
    }

    #[test]
    fn eta_round_trip(p in poly_up_to(20)) {
        let e = to_eta(&p).unwrap();
        prop_assert_eq!(from_eta(&e), p.clone());
        prop_assert_eq!(to_eta(&from_eta(&e)).unwrap(), e.clone());
        prop_assert_eq!(e.degree().map(|d| d as i64), p.max_degree());
        prop_assert_eq!(e.eval_int_x(&ratio(1, 3), 4), p.eval_int_x(&ratio(1, 3), 4));
    }

    #[test]
    fn det_matches_leibniz(n in 0usize..=4, entries in prop::collection::vec(laurent(), 16)) {
        let m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| entries[i * 4..i * 4 + n].to_vec()).collect();
        prop_assert_eq!(det_laurent(&m), det_oracle(&m));
    }

    #[test]
    fn det_of_polynomial_entries(n in 4usize..=5, entries in prop::collection::vec(poly_up_to(2), 25)) {
        let m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| entries[i * 5..i * 5 + n].to_vec()).collect();
        prop_assert_eq!(det_laurent(&m), det_oracle(&m));
    }
}
