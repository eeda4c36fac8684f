mod common;

use common::{jacobi_ref, rand_jacobi, rand_laguerre, rng};
use num::traits::{Signed, Zero};
use proptest::prelude::*;
use qdarboux::base::{
    backward_shift_apply, eigenpoly, eigenpoly_y, energy, forward_shift_apply, groundstate_sq,
    ht_apply, leading_coeff, norm_ratio, potential_b, potential_d, varphi_minus,
};
use qdarboux::exact::scalar::{int, one, pow, ratio};
use qdarboux::{Family, LaurentPoly, Params, Scalar};
use rand::Rng;

fn laguerre_ref() -> Params {
    Params::laguerre(ratio(1, 2), ratio(1, 3), 0).unwrap()
}

fn poch(z: &Scalar, q: &Scalar, n: i64) -> Scalar {
    (0..n).fold(one(), |acc, k| acc * (one() - z * pow(q, k)))
}

/// `3phi1(q^-n, ab q^{n-1}, q^-x; b; q; q^{x+1}/a)` for Jacobi and
/// `2phi0(q^-n, q^-x; -; q; q^{x+1}/a)` for Laguerre, summed term by term.
fn series_oracle(n: i64, x: i64, p: &Params) -> Scalar {
    let q = &p.q;
    let z = pow(q, x + 1) / &p.a;
    let mut acc = Scalar::zero();
    for k in 0..=n {
        let mut num = poch(&pow(q, -n), q, k) * poch(&pow(q, -x), q, k);
        let mut den = poch(q, q, k);
        if p.is_jacobi() {
            num *= poch(&(&p.a * &p.b * pow(q, n - 1)), q, k);
            den *= poch(&p.b, q, k);
        }
        // (-1)^k q^{k(k-1)/2} to the power 1 + s - r = -1.
        let sign = if k % 2 == 0 { one() } else { -one() };
        acc += num / den * pow(&z, k) * sign * pow(q, -(k * (k - 1) / 2));
    }
    acc
}

fn norm_ratio_oracle(n: i64, p: &Params) -> Scalar {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let lag = pow(a, n) * pow(q, n * (n - 1)) / (poch(a, q, n) * poch(q, q, n));
    if !p.is_jacobi() {
        return lag;
    }
    let ab = a * b;
    lag * poch(b, q, n) * poch(&ab, q, n) * (one() - &ab * pow(q, 2 * n - 1))
        / (one() - &ab * pow(q, n - 1))
}

#[test]
fn energy_examples() {
    assert!(energy(0, &jacobi_ref()).is_zero());
    assert!(energy(0, &laguerre_ref()).is_zero());
    assert_eq!(energy(1, &jacobi_ref()), ratio(47, 48));
    assert_eq!(energy(2, &laguerre_ref()), int(3));
}

#[test]
fn energies_increase() {
    for p in [jacobi_ref(), laguerre_ref()] {
        for n in 0..10 {
            assert!(energy(n + 1, &p) > energy(n, &p));
        }
    }
}

#[test]
fn potential_examples() {
    let p = jacobi_ref();
    let q = &p.q;
    assert!(potential_d().eval_int_x(q, 0).is_zero());
    assert_eq!(potential_b(&p).eval_int_x(q, 1), ratio(31, 24));
    for x in 1..=50 {
        assert!(potential_d().eval_int_x(q, x).is_positive());
    }
    let lb = potential_b(&laguerre_ref());
    assert_eq!(lb.eval_int_x(q, 3), ratio(1, 3) * int(16));
}

#[test]
fn eigenpoly_examples() {
    let p = jacobi_ref();
    assert_eq!(eigenpoly_y(0, &p).unwrap(), LaurentPoly::one());
    for n in 0..=8 {
        assert_eq!(eigenpoly_y(n, &p).unwrap().eval_int_x(&p.q, 0), one());
    }
    assert_eq!(leading_coeff(1, &p).unwrap(), ratio(-47, 15));
    assert_eq!(eigenpoly(1, &p).unwrap().leading(), ratio(-47, 15));
    assert!(eigenpoly_y(-1, &p).unwrap().is_zero());
}

#[test]
fn eigenpoly_matches_series_oracle() {
    for p in [jacobi_ref(), laguerre_ref()] {
        for n in 0..=8 {
            let poly = eigenpoly_y(n, &p).unwrap();
            for x in 0..=10 {
                assert_eq!(
                    poly.eval_int_x(&p.q, x),
                    series_oracle(n, x, &p),
                    "n={n} x={x}"
                );
            }
        }
    }
}

#[test]
fn eigenpoly_degree_leading_infinity() {
    let mut r = rng(11);
    for _ in 0..5 {
        for p in [rand_jacobi(&mut r, 0), rand_laguerre(&mut r, 0)] {
            let q = &p.q;
            for n in 0..=8i64 {
                let e = eigenpoly(n, &p).unwrap();
                assert_eq!(e.degree(), Some(n as usize));
                let a = &p.a;
                let mut c = pow(&-a.clone(), -n) * pow(q, -n * (n - 1));
                let mut cp = pow(&-a.clone(), -n) * pow(q, -(n * (n - 1) / 2)) * poch(a, q, n);
                if p.is_jacobi() {
                    c = c * poch(&(a * &p.b * pow(q, n - 1)), q, n) / poch(&p.b, q, n);
                    cp /= poch(&p.b, q, n);
                }
                assert_eq!(e.leading(), c);
                assert_eq!(eigenpoly_y(n, &p).unwrap().eval_infinity().unwrap(), cp);
            }
        }
    }
}

#[test]
fn groundstate_examples() {
    assert_eq!(groundstate_sq(0, &jacobi_ref()), one());
    assert_eq!(groundstate_sq(1, &jacobi_ref()), ratio(5, 8));
    assert_eq!(groundstate_sq(2, &laguerre_ref()), ratio(8, 27));
    for x in 0..40 {
        assert!(groundstate_sq(x, &jacobi_ref()).is_positive());
    }
}

#[test]
fn norm_ratio_examples() {
    assert_eq!(norm_ratio(0, &jacobi_ref()), one());
    assert_eq!(norm_ratio(1, &laguerre_ref()), one());
    for p in [jacobi_ref(), laguerre_ref()] {
        for n in 0..=8 {
            assert_eq!(norm_ratio(n, &p), norm_ratio_oracle(n, &p));
            assert!(norm_ratio(n, &p).is_positive());
        }
    }
}

#[test]
fn hamiltonian_examples() {
    let p = jacobi_ref();
    assert!(ht_apply(&LaurentPoly::constant(ratio(7, 3)), &p).is_zero());
    let p3 = eigenpoly_y(3, &p).unwrap();
    assert!((ht_apply(&p3, &p) - p3.scale(&energy(3, &p))).is_zero());
    let l = laguerre_ref();
    for n in 0..=6 {
        let pn = eigenpoly_y(n, &l).unwrap();
        assert!((ht_apply(&pn, &l) - pn.scale(&energy(n, &l))).is_zero());
    }
}

#[test]
fn shift_examples() {
    let p = jacobi_ref();
    assert!(forward_shift_apply(&eigenpoly_y(0, &p).unwrap(), &p).is_zero());
    let lhs = forward_shift_apply(&eigenpoly_y(2, &p).unwrap(), &p);
    let rhs = eigenpoly_y(1, &p.plus_delta())
        .unwrap()
        .scale(&energy(2, &p));
    assert_eq!(lhs, rhs);
}

#[test]
fn backward_forward_is_hamiltonian() {
    let mut r = rng(5);
    for p in [jacobi_ref(), laguerre_ref()] {
        let f = LaurentPoly::from_coeffs(
            (0..=5).map(|_| ratio(r.gen_range(-30..30), r.gen_range(1..20))),
        );
        let bf = backward_shift_apply(&forward_shift_apply(&f, &p), &p);
        assert_eq!(bf, ht_apply(&f, &p));
    }
}

#[test]
fn identities_at_random_points() {
    let mut r = rng(23);
    for _ in 0..5 {
        for p in [rand_jacobi(&mut r, 0), rand_laguerre(&mut r, 0)] {
            let up = p.plus_delta();
            for n in 0..=8 {
                let pn = eigenpoly_y(n, &p).unwrap();
                assert!((ht_apply(&pn, &p) - pn.scale(&energy(n, &p))).is_zero());
                let lower = eigenpoly_y(n - 1, &up).unwrap();
                assert_eq!(forward_shift_apply(&pn, &p), lower.scale(&energy(n, &p)));
                if n >= 1 {
                    assert_eq!(backward_shift_apply(&lower, &p), pn);
                }
            }
        }
    }
}

#[test]
fn varphi_examples() {
    let q = ratio(1, 2);
    assert_eq!(varphi_minus(0, &q), LaurentPoly::one());
    assert_eq!(varphi_minus(1, &q), LaurentPoly::one());
    assert_eq!(varphi_minus(2, &q), LaurentPoly::monomial(int(2), 1));
    let eta = |x: i64| one() - pow(&q, x);
    for x in -1..=5 {
        let mut prod = one();
        for k in 1..=3 {
            for j in 1..k {
                prod = prod * (eta(x - j + 1) - eta(x - k + 1)) / eta(k - j);
            }
        }
        assert_eq!(varphi_minus(3, &q).eval_int_x(&q, x), prod);
    }
}

#[test]
fn laguerre_is_b_zero_jacobi() {
    let l = laguerre_ref();
    let j = Params::unchecked(
        Family::LittleQJacobi,
        l.construction,
        l.q.clone(),
        l.a.clone(),
        Scalar::zero(),
        0,
    );
    assert_eq!(potential_b(&l), potential_b(&j));
    for n in 0..=8 {
        assert_eq!(energy(n, &l), energy(n, &j));
        assert_eq!(eigenpoly_y(n, &l).unwrap(), eigenpoly_y(n, &j).unwrap());
        assert_eq!(norm_ratio(n, &l), norm_ratio(n, &j));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigen_and_normalization(seed in any::<u64>(), n in 0i64..=8) {
        let mut r = rng(seed);
        for p in [rand_jacobi(&mut r, 0), rand_laguerre(&mut r, 0)] {
            let pn = eigenpoly_y(n, &p).unwrap();
            prop_assert!((ht_apply(&pn, &p) - pn.scale(&energy(n, &p))).is_zero());
            prop_assert_eq!(pn.eval_int_x(&p.q, 0), one());
            prop_assert_eq!(pn.eval_int_x(&p.q, 3), series_oracle(n, 3, &p));
        }
    }
}
