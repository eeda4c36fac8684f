//! Virtual-state data for the type I and type II constructions.
//!
//! Everything is expressed through the rescaled potentials `B'new = alpha B'`
//! and `D'new = alpha D'`, which stay finite in the `b -> 0` limit.

use num::traits::Zero;

use crate::base;
use crate::error::{Error, Result};
use crate::exact::eta::to_eta;
use crate::exact::laurent::LaurentPoly;
use crate::exact::qseries::qpoch;
use crate::exact::scalar::{self, binom2, Scalar};
use crate::params::{Construction, Family, Params};

fn one() -> Scalar {
    scalar::one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualData {
    pub bprime_new: LaurentPoly,
    pub dprime_new: LaurentPoly,
    pub alpha_prime: Scalar,
    pub construction: Construction,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualPoly {
    pub v: usize,
    pub poly: LaurentPoly,
    pub construction: Construction,
}

/// Parameters `(a, b) -> (q^2 / a, b)` of the type I twist.
pub fn twist_i(p: &Params) -> Params {
    let mut t = p.clone();
    t.a = &p.q * &p.q / &p.a;
    t
}

pub fn virtual_data(p: &Params) -> VirtualData {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let yinv = |c: Scalar| LaurentPoly::monomial(c, -1);
    let (bprime_new, dprime_new, alpha_prime) = match (p.construction, p.family) {
        (Construction::TypeII, fam) => {
            let bp = yinv(a / q) - LaurentPoly::constant(a.clone());
            let (dp, ap) = match fam {
                Family::LittleQJacobi => (
                    yinv(one()) - LaurentPoly::constant(b / q),
                    -((one() - a) * (one() - b / q)),
                ),
                Family::LittleQLaguerre => (yinv(one()), -(one() - a)),
            };
            (bp, dp, ap)
        }
        (Construction::TypeI, fam) => {
            let dp = base::potential_d().scale(&(a / q));
            let (bp, ap) = match fam {
                Family::LittleQJacobi => (
                    yinv(one()) - LaurentPoly::constant(b.clone()),
                    -((one() - a / q) * (one() - b)),
                ),
                Family::LittleQLaguerre => (yinv(one()), -(one() - a / q)),
            };
            (bp, dp, ap)
        }
    };
    VirtualData {
        bprime_new,
        dprime_new,
        alpha_prime,
        construction: p.construction,
        family: p.family,
    }
}

/// `c~'_v`, the value of `xi_v` at `x = infinity` (type II).
pub fn c_tilde_prime(v: usize, p: &Params) -> Result<Scalar> {
    let (q, a) = (&p.q, &p.a);
    match p.family {
        Family::LittleQJacobi => {
            let den = qpoch(&(&p.b * scalar::pow(q, -(v as i64) - 1)), q, v);
            scalar::checked_div(&qpoch(a, q, v), &den)
                .map_err(|_| Error::InvalidParams(format!("(b q^{{-{v}-1}};q)_{v} vanishes")))
        }
        Family::LittleQLaguerre => Ok(qpoch(a, q, v)),
    }
}

/// `c~_v`, the leading `eta` coefficient of `xi_v` (type II).
pub fn c_tilde(v: usize, p: &Params) -> Result<Scalar> {
    let (q, a) = (&p.q, &p.a);
    let vi = v as i64;
    match p.family {
        Family::LittleQJacobi => {
            let mut num = scalar::pow(q, -binom2(vi + 1));
            for i in 0..vi {
                num *= &p.b - a * scalar::pow(q, vi + 1 + i);
            }
            let den = qpoch(&(&p.b * scalar::pow(q, -vi - 1)), q, v);
            scalar::checked_div(&num, &den)
                .map_err(|_| Error::InvalidParams(format!("(b q^{{-{v}-1}};q)_{v} vanishes")))
        }
        Family::LittleQLaguerre => Ok(scalar::pow(&-a.clone(), vi) * scalar::pow(q, vi * vi)),
    }
}

/// The virtual-state polynomial `xi_v(x)` in `y`.
pub fn xi_poly(v: usize, p: &Params) -> Result<VirtualPoly> {
    let poly = match p.construction {
        Construction::TypeI => base::eigenpoly_y(v as i64, &twist_i(p))?,
        Construction::TypeII => xi_type_ii(v, p)?,
    };
    Ok(VirtualPoly {
        v,
        poly,
        construction: p.construction,
    })
}

fn xi_type_ii(v: usize, p: &Params) -> Result<LaurentPoly> {
    let (q, a) = (&p.q, &p.a);
    let vi = v as i64;
    let ct = c_tilde_prime(v, p)?;
    let qinv_v = scalar::pow(q, -vi);
    let mut terms = Vec::with_capacity(v + 1);
    let mut run = one();
    let mut qk = one();
    for k in 0..=v {
        terms.push((k as i64, &ct * &run));
        if k == v {
            break;
        }
        // (q^{-v};q)_k prod_{i<k}(b - a q^{v+1+i}) / ((a;q)_k (q;q)_k), with the
        // 1phi1 sign/power factor producing the same product at b = 0.
        let upper = one() - &qinv_v * &qk;
        let z = match p.family {
            Family::LittleQJacobi => &p.b - a * scalar::pow(q, vi + 1) * &qk,
            Family::LittleQLaguerre => -(a * scalar::pow(q, vi + 1)) * &qk,
        };
        let den = (one() - a * &qk) * (one() - &qk * q);
        run = run * upper * z / den;
        qk *= q;
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `xi_v(x)` for integer `x >= 0` from the positive-term `3phi2` rewriting,
/// together with whether every term of the sum is positive (type II).
pub fn xi_positive_form(v: usize, x: i64, p: &Params) -> Result<(Scalar, bool)> {
    assert!(x >= 0);
    let q = &p.q;
    let vi = v as i64;
    let qx1 = scalar::pow(q, x + 1);
    let bv = &p.b * scalar::pow(q, -vi - 1);
    let mut sum = Scalar::zero();
    let mut all_positive = true;
    for k in 0..=vi {
        let ku = k as usize;
        let num =
            qpoch(&scalar::pow(q, vi - k + 1), q, ku) * qpoch(&bv, q, ku) * scalar::pow(&qx1, k);
        let den =
            qpoch(&p.a, q, ku) * qpoch(&scalar::pow(q, x + vi - k + 1), q, ku) * qpoch(q, q, ku);
        let term = scalar::checked_div(&num, &den)?;
        all_positive &= term > Scalar::zero();
        sum += term;
    }
    Ok((c_tilde_prime(v, p)? * qpoch(&qx1, q, v) * sum, all_positive))
}

/// `E'new_v = alpha E'_v`.
pub fn eprime_new(v: usize, p: &Params) -> Scalar {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let vi = v as i64;
    let qv = scalar::pow(q, -vi) - one();
    match (p.construction, p.family) {
        (Construction::TypeII, Family::LittleQJacobi) => qv * (b - a * scalar::pow(q, vi + 1)) / q,
        (Construction::TypeII, Family::LittleQLaguerre) => -(a * (one() - scalar::pow(q, vi))),
        (Construction::TypeI, Family::LittleQJacobi) => qv * (a / q - b * scalar::pow(q, vi)),
        (Construction::TypeI, Family::LittleQLaguerre) => qv * (a / q),
    }
}

/// Virtual energy `E~_v`, negative throughout the validated range.
pub fn virtual_energy(v: usize, p: &Params) -> Scalar {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let vi = v as i64;
    match (p.construction, p.family) {
        (Construction::TypeII, Family::LittleQJacobi) => {
            -((one() - a * scalar::pow(q, vi)) * (one() - b * scalar::pow(q, -1 - vi)))
        }
        (Construction::TypeII, Family::LittleQLaguerre) => -(one() - a * scalar::pow(q, vi)),
        (Construction::TypeI, Family::LittleQJacobi) => {
            -((one() - a * scalar::pow(q, -vi - 1)) * (one() - b * scalar::pow(q, vi)))
        }
        (Construction::TypeI, Family::LittleQLaguerre) => -(one() - a * scalar::pow(q, -vi - 1)),
    }
}

/// Residual of `B'(xi - xi(x+1)) + D'(xi - xi(x-1)) - E' xi`, in the rescaled normalization.
pub fn xi_diffeq_residual(v: usize, p: &Params) -> Result<LaurentPoly> {
    let vd = virtual_data(p);
    let xi = xi_poly(v, p)?.poly;
    let q = &p.q;
    Ok(
        &vd.bprime_new * (&xi - xi.shift_x(q, 1)) + &vd.dprime_new * (&xi - xi.shift_x(q, -1))
            - xi.scale(&eprime_new(v, p)),
    )
}

/// `nu(x) = phi_0(x) / phi~_0(x)`.
pub fn nu_value(x: i64, p: &Params) -> Scalar {
    assert!(x >= 0);
    let q = &p.q;
    match (p.construction, p.family) {
        (Construction::TypeII, Family::LittleQJacobi) => {
            qpoch(&p.b, q, x as usize) / qpoch(q, q, x as usize)
        }
        (Construction::TypeII, Family::LittleQLaguerre) => one() / qpoch(q, q, x as usize),
        (Construction::TypeI, _) => scalar::pow(&(&p.a / q), x),
    }
}

/// `phi~_0(x)^2 = phi_0(x)^2 / nu(x)^2`.
pub fn phi0_tilde_sq(x: i64, p: &Params) -> Scalar {
    assert!(x >= 0);
    let q = &p.q;
    match (p.construction, p.family) {
        (Construction::TypeII, Family::LittleQJacobi) => {
            qpoch(q, q, x as usize) * scalar::pow(&p.a, x) / qpoch(&p.b, q, x as usize)
        }
        (Construction::TypeII, Family::LittleQLaguerre) => {
            qpoch(q, q, x as usize) * scalar::pow(&p.a, x)
        }
        (Construction::TypeI, _) => {
            let nu = nu_value(x, p);
            base::groundstate_sq(x, p) / (&nu * &nu)
        }
    }
}

/// `r_j(x - j + 1; lambda, M)` as a polynomial in `y = q^x` (type II).
pub fn r_factor(j: usize, m: usize, p: &Params) -> Result<LaurentPoly> {
    assert!((1..=m + 1).contains(&j), "r_j needs 1 <= j <= M+1");
    let q = &p.q;
    let (ji, mi) = (j as i64, m as i64);
    let mut acc = LaurentPoly::one();
    for i in 0..(ji - 1) {
        acc = acc * LaurentPoly::from_terms([(0, one()), (1, -scalar::pow(q, -ji + 2 + i))]);
    }
    if p.family == Family::LittleQJacobi {
        for i in 0..=(mi - ji) {
            acc =
                acc * LaurentPoly::from_terms([(0, one()), (1, -(&p.b * scalar::pow(q, -mi + i)))]);
        }
        let den = qpoch(&(&p.b * scalar::pow(q, -mi)), q, m);
        if den.is_zero() {
            return Err(Error::InvalidParams(format!("(b q^-{m};q)_{m} vanishes")));
        }
        acc = acc.scale(&(one() / den));
    }
    Ok(acc)
}

/// Checks the degree and normalization of a virtual polynomial.
pub fn check_virtual_poly(vp: &VirtualPoly, p: &Params) -> Result<()> {
    let eta = to_eta(&vp.poly)?;
    if eta.degree() != Some(vp.v) {
        return Err(Error::InexactDivision(format!(
            "xi_{} has degree {:?}",
            vp.v,
            eta.degree()
        )));
    }
    let x0 = match vp.construction {
        Construction::TypeI => 0,
        Construction::TypeII => -1,
    };
    if vp.poly.eval_int_x(&p.q, x0) != one() {
        return Err(Error::InexactDivision(format!(
            "xi_{} is not normalized at x = {x0}",
            vp.v
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    fn jac() -> Params {
        Params::jacobi(ratio(1, 2), ratio(1, 3), ratio(1, 16), 2).unwrap()
    }

    #[test]
    fn type_ii_boundary_root() {
        let vd = virtual_data(&jac());
        assert!(vd.bprime_new.eval_int_x(&ratio(1, 2), -1).is_zero());
        assert_eq!(vd.alpha_prime, ratio(-7, 12));
    }

    #[test]
    fn virtual_energies() {
        assert_eq!(virtual_energy(2, &jac()), ratio(-11, 24));
        let lag = Params::laguerre(ratio(1, 2), ratio(1, 3), 2).unwrap();
        assert_eq!(virtual_energy(0, &lag), ratio(-2, 3));
    }

    #[test]
    fn xi_normalization() {
        let p = jac();
        assert_eq!(xi_poly(0, &p).unwrap().poly, LaurentPoly::one());
        let xi = xi_poly(2, &p).unwrap();
        assert_eq!(xi.poly.eval_int_x(&p.q, -1), int(1));
        check_virtual_poly(&xi, &p).unwrap();
    }

    #[test]
    fn nu_example() {
        assert_eq!(nu_value(0, &jac()), int(1));
        assert_eq!(nu_value(2, &jac()), ratio(155, 64));
    }

    #[test]
    fn r_factor_examples() {
        let p = jac();
        let r = r_factor(2, 1, &p).unwrap();
        assert_eq!(
            r,
            LaurentPoly::from_terms([(0, ratio(8, 7)), (1, ratio(-8, 7))])
        );
        let lag = Params::laguerre(ratio(1, 2), ratio(1, 3), 1).unwrap();
        assert_eq!(r_factor(1, 1, &lag).unwrap(), LaurentPoly::one());
    }
}
