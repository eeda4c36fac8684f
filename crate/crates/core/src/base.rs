//! The undeformed little q-Jacobi and little q-Laguerre systems.
//!
//! All functions of `x` are returned as Laurent polynomials in `y = q^x`.

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::exact::eta::{to_eta, EtaPoly};
use crate::exact::laurent::LaurentPoly;
use crate::exact::qseries::qpoch;
use crate::exact::scalar::{self, binom2, Scalar};
use crate::params::{Family, Params};

fn one() -> Scalar {
    scalar::one()
}

/// `E_n`, the `n`-th eigenvalue.
pub fn energy(n: i64, p: &Params) -> Scalar {
    let q = &p.q;
    let qn = scalar::pow(q, -n) - one();
    match p.family {
        Family::LittleQJacobi => qn * (one() - &p.a * &p.b * scalar::pow(q, n - 1)),
        Family::LittleQLaguerre => qn,
    }
}

/// `B(x)`: `a q^{-1}(y^{-1} - b)` or `a q^{-1} y^{-1}`.
pub fn potential_b(p: &Params) -> LaurentPoly {
    let c = &p.a / &p.q;
    match p.family {
        Family::LittleQJacobi => LaurentPoly::from_terms([(-1, c.clone()), (0, -(c * &p.b))]),
        Family::LittleQLaguerre => LaurentPoly::monomial(c, -1),
    }
}

/// `D(x) = y^{-1} - 1`, common to both families.
pub fn potential_d() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, one()), (0, -one())])
}

/// `B(0)`.
pub fn b_at_zero(p: &Params) -> Scalar {
    let c = &p.a / &p.q;
    match p.family {
        Family::LittleQJacobi => c * (one() - &p.b),
        Family::LittleQLaguerre => c,
    }
}

/// `c'_n`, the value of `P_n` at `x = infinity`.
pub fn c_prime(n: i64, p: &Params) -> Result<Scalar> {
    let (q, a) = (&p.q, &p.a);
    let nn = n as usize;
    let base = scalar::pow(&-a.clone(), -n) * scalar::pow(q, -binom2(n)) * qpoch(a, q, nn);
    match p.family {
        Family::LittleQJacobi => checked(base, qpoch(&p.b, q, nn)),
        Family::LittleQLaguerre => Ok(base),
    }
}

/// `c_n`, the leading coefficient of `P_n` in `eta`.
pub fn leading_coeff(n: i64, p: &Params) -> Result<Scalar> {
    let (q, a) = (&p.q, &p.a);
    let nn = n as usize;
    let base = scalar::pow(&-a.clone(), -n) * scalar::pow(q, -n * (n - 1));
    match p.family {
        Family::LittleQJacobi => {
            let ab = a * &p.b * scalar::pow(q, n - 1);
            checked(base * qpoch(&ab, q, nn), qpoch(&p.b, q, nn))
        }
        Family::LittleQLaguerre => Ok(base),
    }
}

fn checked(num: Scalar, den: Scalar) -> Result<Scalar> {
    if den.is_zero() {
        return Err(Error::InvalidParams(
            "a q-Pochhammer normalization factor vanishes".into(),
        ));
    }
    Ok(num / den)
}

/// `P_n(x)` as a polynomial in `y`, normalized by `P_n(0) = 1`. Zero for `n < 0`.
///
/// The `y^k` coefficient is `c'_n` times the `k`-th term of the `2phi1` series at
/// argument `q y`; the factor `(a;q)_n / (a;q)_k` is folded into `(a q^k;q)_{n-k}`
/// so twisted parameters with `a = q^{-j}` stay regular.
pub fn eigenpoly_y(n: i64, p: &Params) -> Result<LaurentPoly> {
    if n < 0 {
        return Ok(LaurentPoly::zero());
    }
    let (q, a) = (&p.q, &p.a);
    let nn = n as usize;
    let mut pref = scalar::pow(&-a.clone(), -n) * scalar::pow(q, -binom2(n));
    let ab = match p.family {
        Family::LittleQJacobi => {
            pref = checked(pref, qpoch(&p.b, q, nn))?;
            a * &p.b * scalar::pow(q, n - 1)
        }
        Family::LittleQLaguerre => Scalar::zero(),
    };
    let qinv_n = scalar::pow(q, -n);
    let mut terms = Vec::with_capacity(nn + 1);
    // running (q^{-n};q)_k (ab q^{n-1};q)_k q^k / (q;q)_k
    let mut run = one();
    let mut qk = one();
    for k in 0..=nn {
        let tail = qpoch(&(a * &qk), q, nn - k);
        terms.push((k as i64, &pref * &run * tail));
        run = run * (one() - &qinv_n * &qk) * (one() - &ab * &qk) * q / (one() - &qk * q);
        qk *= q;
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn eigenpoly(n: i64, p: &Params) -> Result<EtaPoly> {
    to_eta(&eigenpoly_y(n, p)?)
}

/// `phi_0(x)^2` by the product `prod_{y<x} B(y)/D(y+1)`.
pub fn groundstate_sq(x: i64, p: &Params) -> Scalar {
    assert!(x >= 0, "ground state is tabulated for x >= 0");
    let q = &p.q;
    let mut acc = one();
    let mut qy = one();
    for _ in 0..x {
        let step = match p.family {
            Family::LittleQJacobi => &p.a * (one() - &p.b * &qy),
            Family::LittleQLaguerre => p.a.clone(),
        };
        qy *= q;
        acc = acc * step / (one() - &qy);
    }
    acc
}

/// `d_n^2 / d_0^2`, where the common infinite-product factor cancels.
pub fn norm_ratio(n: i64, p: &Params) -> Scalar {
    if n == 0 {
        return one();
    }
    let (q, a) = (&p.q, &p.a);
    let nn = n as usize;
    let common =
        scalar::pow(a, n) * scalar::pow(q, n * (n - 1)) / (qpoch(a, q, nn) * qpoch(q, q, nn));
    match p.family {
        Family::LittleQJacobi => {
            let ab = a * &p.b;
            // (ab;q)_n / (1 - ab q^{n-1}) = (ab;q)_{n-1}, which keeps ab = q regular.
            common
                * qpoch(&p.b, q, nn)
                * qpoch(&ab, q, nn - 1)
                * (one() - &ab * scalar::pow(q, 2 * n - 1))
        }
        Family::LittleQLaguerre => common,
    }
}

/// Truncated infinite product `(z;q)_inf` with a bound on the relative truncation error.
pub fn qpoch_inf_f64(z: f64, q: f64, factors: usize) -> (f64, f64) {
    let mut prod = 1.0;
    let mut zk = z;
    for _ in 0..factors {
        prod *= 1.0 - zk;
        zk *= q;
    }
    // |log(1 - t)| <= |t| / (1 - |t|) and the remaining |t| sum to |z| q^K / (1 - q).
    let rest = zk.abs() / (1.0 - q);
    let rel = if rest < 0.5 {
        (2.0 * rest).exp_m1()
    } else {
        f64::INFINITY
    };
    (prod, rel)
}

/// Approximate `d_0^2` with 256-factor products and the relative error of the truncation.
pub fn d0_sq_approx(p: &Params) -> (f64, f64) {
    let q = scalar::to_f64(&p.q);
    let a = scalar::to_f64(&p.a);
    let (num, e1) = qpoch_inf_f64(a, q, 256);
    match p.family {
        Family::LittleQJacobi => {
            let (den, e2) = qpoch_inf_f64(a * scalar::to_f64(&p.b), q, 256);
            (num / den, e1 + e2 + e1 * e2)
        }
        Family::LittleQLaguerre => (num, e1),
    }
}

/// The similarity-transformed Hamiltonian `B(x)(1 - e^d) + D(x)(1 - e^{-d})` applied to `f`.
pub fn ht_apply(f: &LaurentPoly, p: &Params) -> LaurentPoly {
    let q = &p.q;
    potential_b(p) * (f - f.shift_x(q, 1)) + potential_d() * (f - f.shift_x(q, -1))
}

/// `F f = B(0) phi(x)^{-1} (f(x) - f(x+1))` with `phi(x) = q^x`.
pub fn forward_shift_apply(f: &LaurentPoly, p: &Params) -> LaurentPoly {
    (f - f.shift_x(&p.q, 1)).mul_monomial(&b_at_zero(p), -1)
}

/// `B g = B(0)^{-1} (B(x) - D(x) e^{-d}) phi(x) g`.
pub fn backward_shift_apply(f: &LaurentPoly, p: &Params) -> LaurentPoly {
    let q = &p.q;
    let phi_f = f.mul_monomial(&one(), 1);
    let inv = one() / b_at_zero(p);
    (potential_b(p) * &phi_f - potential_d() * phi_f.shift_x(q, -1)).scale(&inv)
}

/// `varphi^{(-)}_M(x) = q^{C(M,2) x - M(M-1)(2M-1)/6}`.
pub fn varphi_minus(m: usize, q: &Scalar) -> LaurentPoly {
    let m = m as i64;
    let e = m * (m - 1) * (2 * m - 1) / 6;
    LaurentPoly::monomial(scalar::pow(q, -e), binom2(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};
    use crate::params::Construction;

    fn jac() -> Params {
        Params::jacobi(ratio(1, 2), ratio(1, 3), ratio(1, 16), 0).unwrap()
    }

    fn lag() -> Params {
        Params::laguerre(ratio(1, 2), ratio(1, 3), 0).unwrap()
    }

    #[test]
    fn energies() {
        assert_eq!(energy(0, &jac()), int(0));
        assert_eq!(energy(1, &jac()), ratio(47, 48));
        assert_eq!(energy(2, &lag()), int(3));
    }

    #[test]
    fn potentials() {
        let q = ratio(1, 2);
        assert_eq!(potential_d().eval_int_x(&q, 0), int(0));
        assert_eq!(potential_b(&jac()).eval_int_x(&q, 1), ratio(31, 24));
    }

    #[test]
    fn leading_coefficient_example() {
        assert_eq!(leading_coeff(1, &jac()).unwrap(), ratio(-47, 15));
        assert_eq!(eigenpoly(1, &jac()).unwrap().leading(), ratio(-47, 15));
    }

    #[test]
    fn ground_state_values() {
        assert_eq!(groundstate_sq(0, &jac()), int(1));
        assert_eq!(groundstate_sq(1, &jac()), ratio(5, 8));
        assert_eq!(groundstate_sq(2, &lag()), ratio(8, 27));
    }

    #[test]
    fn norm_ratio_laguerre() {
        assert_eq!(norm_ratio(0, &jac()), int(1));
        assert_eq!(norm_ratio(1, &lag()), int(1));
    }

    #[test]
    fn varphi_small() {
        let q = ratio(1, 2);
        assert_eq!(varphi_minus(0, &q), LaurentPoly::one());
        assert_eq!(varphi_minus(1, &q), LaurentPoly::one());
        assert_eq!(varphi_minus(2, &q), LaurentPoly::monomial(int(2), 1));
    }

    #[test]
    fn negative_degree_is_zero() {
        assert!(eigenpoly_y(-1, &jac()).unwrap().is_zero());
    }

    #[test]
    fn vanishing_pochhammer_is_invalid() {
        let p = Params::unchecked(
            Family::LittleQJacobi,
            Construction::TypeII,
            ratio(1, 2),
            ratio(1, 3),
            int(2),
            0,
        );
        assert!(matches!(eigenpoly_y(3, &p), Err(Error::InvalidParams(_))));
        let twisted = p.with_b(ratio(1, 16));
        let twisted = Params {
            a: int(4),
            ..twisted
        };
        assert!(eigenpoly_y(3, &twisted).is_ok());
    }
}
