#![allow(dead_code)]

use qdarboux::exact::scalar::{int, pow, ratio};
use qdarboux::{Construction, Family, IndexSet, Params, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference point `q = 1/2, a = 1/3, b = 1/16`, valid for `d_M <= 2`.
pub fn jacobi_ref() -> Params {
    Params::jacobi(ratio(1, 2), ratio(1, 3), ratio(1, 16), 2).unwrap()
}

/// Battery point `q = 1/2, a = 1/3, b = 1/128`, valid for `d_M <= 5`.
pub fn jacobi() -> Params {
    Params::jacobi(ratio(1, 2), ratio(1, 3), ratio(1, 128), 5).unwrap()
}

pub fn laguerre() -> Params {
    Params::laguerre(ratio(1, 2), ratio(1, 3), 5).unwrap()
}

pub fn battery() -> Vec<IndexSet> {
    [vec![1], vec![2], vec![1, 2], vec![2, 4], vec![1, 3, 5]]
        .into_iter()
        .map(|d| IndexSet::new(d).unwrap())
        .collect()
}

pub fn set(d: &[usize]) -> IndexSet {
    IndexSet::new(d.to_vec()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in `(lo, hi)` with a modest denominator.
pub fn rand_rational(r: &mut ChaCha8Rng, lo: &Scalar, hi: &Scalar) -> Scalar {
    let den: i64 = r.gen_range(7..97);
    let t = ratio(r.gen_range(1..den), den);
    lo + (hi - lo) * t
}

/// Random valid type II little q-Jacobi parameters with `b` possibly negative.
pub fn rand_jacobi(r: &mut ChaCha8Rng, dmax: usize) -> Params {
    let q = rand_rational(r, &ratio(1, 5), &ratio(4, 5));
    let a = rand_rational(r, &int(0), &int(1));
    let top = qdarboux::exact::scalar::pow(&q, 1 + dmax as i64);
    let b = rand_rational(r, &-int(1), &top);
    Params::new(Family::LittleQJacobi, Construction::TypeII, q, a, b, dmax).unwrap()
}

pub fn rand_laguerre(r: &mut ChaCha8Rng, dmax: usize) -> Params {
    let q = rand_rational(r, &ratio(1, 5), &ratio(4, 5));
    let a = rand_rational(r, &int(0), &int(1));
    Params::laguerre(q, a, dmax).unwrap()
}

/// Random valid type I parameters, `a < q^{1 + dmax}`.
pub fn rand_type_i(r: &mut ChaCha8Rng, family: Family, dmax: usize) -> Params {
    let q = rand_rational(r, &ratio(1, 3), &ratio(4, 5));
    let top = qdarboux::exact::scalar::pow(&q, 1 + dmax as i64);
    let a = rand_rational(r, &int(0), &top);
    let b = match family {
        Family::LittleQJacobi => rand_rational(r, &-int(1), &int(1)),
        Family::LittleQLaguerre => int(0),
    };
    Params::new(family, Construction::TypeI, q, a, b, dmax).unwrap()
}

/// The printed type II `D = {2}` polynomials for `n = 0, 1`, evaluated at integer `x`.
pub fn printed_type_ii_d2(n: i64, x: i64, p: &Params) -> Scalar {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let qp = |e: i64| pow(q, e);
    let one = int(1);
    let (b3, b4) = (b - a * qp(3), b - a * qp(4));
    if n == 0 {
        let body = (&one - a * q) * (&one - a * qp(2))
            - (&one + q) * (&one - a * qp(2)) * &b3 * qp(x - 2)
            + &b3 * &b4 * qp(2 * x - 3);
        return body / ((&one - b / q) * (&one - b * qp(-2)));
    }
    let ab = a * b;
    let body = -((&one - a) * (&one - a * q) * (&one - a * qp(3)))
        + (&one - a) * (&one - a * qp(3)) * ((&one + q) * &b3 + qp(2) * (&one - &ab)) * qp(x - 2)
        - (&one - a * qp(3)) * &b3 * ((&one + q) * (q - &ab) + b - a * qp(2)) * qp(2 * x - 3)
        + (&one - &ab) * &b3 * &b4 * qp(3 * x - 3);
    body / qp(1) / (a * (&one - b) * (&one - b / q) * (&one - b * qp(-3)))
}

/// The printed type I `D = {2}` polynomials for `n = 0, 1`, evaluated at integer `x`.
pub fn printed_type_i_d2(n: i64, x: i64, p: &Params) -> Scalar {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let qp = |e: i64| pow(q, e);
    let one = int(1);
    let (a3, a4) = (a - b * qp(3), a - b * qp(4));
    if n == 0 {
        let body = (&one - a / q) * (&one - a * qp(-2))
            + (&one + q) * (&one - a * qp(-2)) * &a3 * qp(x - 2)
            + &a3 * &a4 * qp(2 * x - 4);
        return body / ((&one - b * q) * (&one - b * qp(2)));
    }
    let ab = a * b;
    let body = -((&one - a) * (&one - a / q) * (&one - a * qp(-3)))
        - (&one - a) * (&one - a * qp(-3)) * ((&one + q) * &a3 - qp(2) * (&one - &ab)) * qp(x - 2)
        + (&one - a * qp(-3))
            * &a3
            * ((&one + q) * (&one - &ab * q) - a + b * qp(2))
            * qp(2 * x - 2)
        + (&one - &ab) * &a3 * &a4 * qp(3 * x - 4);
    body * q / (a * (&one - b) * (&one - b * q) * (&one - b * qp(3)))
}
