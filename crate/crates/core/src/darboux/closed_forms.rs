//! Closed forms for single-indexed polynomials and the `D = {2}` examples.

use crate::base;
use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::{self, Scalar};
use crate::params::{Construction, Family, Params};
use crate::virtual_states::{twist_i, xi_poly};

fn one() -> Scalar {
    scalar::one()
}

fn lin(c0: Scalar, c1: Scalar) -> LaurentPoly {
    LaurentPoly::from_terms([(0, c0), (1, c1)])
}

/// Type I `P_{{d},n}` from `xi_d(x+1) P_n(x) - a q^{-1} xi_d(x) P_n(x+1)`.
pub fn single_indexed_type_i(d: usize, n: i64, p: &Params) -> Result<LaurentPoly> {
    let pi = p.with_construction(Construction::TypeI);
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let xi = base::eigenpoly_y(d as i64, &twist_i(&pi))?;
    let pn = base::eigenpoly_y(n, p)?;
    let body = xi.shift_x(q, 1) * &pn - (&xi * pn.shift_x(q, 1)).scale(&(a / q));
    let num = (one() - b) * scalar::pow(q, n);
    let den =
        (one() - a * scalar::pow(q, n - d as i64 - 1)) * (one() - b * scalar::pow(q, n + d as i64));
    let c = scalar::checked_div(&num, &den)
        .map_err(|_| Error::InvalidParams("type I single-index prefactor is singular".into()))?;
    Ok(body.scale(&c))
}

/// Type II `P_{{d},n}` from `q^{-x}((1 - b q^{x-1}) xi_d(x-1) P_n(x) - (1 - q^x) xi_d(x) P_n(x-1))`.
pub fn single_indexed_type_ii(d: usize, n: i64, p: &Params) -> Result<LaurentPoly> {
    let pii = p.with_construction(Construction::TypeII);
    let (q, b) = (&p.q, &p.b);
    let xi = xi_poly(d, &pii)?.poly;
    let pn = base::eigenpoly_y(n, p)?;
    let body = lin(one(), -(b / q)) * xi.shift_x(q, -1) * &pn
        - lin(one(), -one()) * &xi * pn.shift_x(q, -1);
    let c = scalar::checked_inv(&(one() - b / q))
        .map_err(|_| Error::InvalidParams("type II single-index prefactor is singular".into()))?;
    Ok(body.mul_monomial(&c, -1))
}

fn require_jacobi(p: &Params, n: i64) -> Result<()> {
    if p.family != Family::LittleQJacobi || !(0..=1).contains(&n) {
        return Err(Error::InvalidParams(
            "closed D={2} forms exist for little q-Jacobi, n = 0, 1".into(),
        ));
    }
    Ok(())
}

/// The printed type I `D = {2}` polynomials for `n = 0, 1`.
pub fn golden_type_i_d2(n: i64, p: &Params) -> Result<LaurentPoly> {
    require_jacobi(p, n)?;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let qp = |e: i64| scalar::pow(q, e);
    let ab = a * b;
    let a_bq3 = a - b * qp(3);
    let a_bq4 = a - b * qp(4);
    if n == 0 {
        let c0 = (one() - a / q) * (one() - a * qp(-2));
        let c1 = (one() + q) * (one() - a * qp(-2)) * &a_bq3 * qp(-2);
        let c2 = &a_bq3 * &a_bq4 * qp(-4);
        let den = (one() - b * q) * (one() - b * qp(2));
        return Ok(LaurentPoly::from_coeffs([c0, c1, c2]).scale(&(one() / den)));
    }
    let c0 = -((one() - a) * (one() - a / q) * (one() - a * qp(-3)));
    let c1 = -((one() - a) * (one() - a * qp(-3)) * ((one() + q) * &a_bq3 - qp(2) * (one() - &ab)))
        * qp(-2);
    let c2 =
        (one() - a * qp(-3)) * &a_bq3 * ((one() + q) * (one() - &ab * q) - a + b * qp(2)) * qp(-2);
    let c3 = (one() - &ab) * &a_bq3 * &a_bq4 * qp(-4);
    let pref = q / (a * (one() - b) * (one() - b * q) * (one() - b * qp(3)));
    Ok(LaurentPoly::from_coeffs([c0, c1, c2, c3]).scale(&pref))
}

/// The printed type II `D = {2}` polynomials for `n = 0, 1`.
pub fn golden_type_ii_d2(n: i64, p: &Params) -> Result<LaurentPoly> {
    require_jacobi(p, n)?;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let qp = |e: i64| scalar::pow(q, e);
    let ab = a * b;
    let b_aq3 = b - a * qp(3);
    let b_aq4 = b - a * qp(4);
    if n == 0 {
        let c0 = (one() - a * q) * (one() - a * qp(2));
        let c1 = -((one() + q) * (one() - a * qp(2)) * &b_aq3 * qp(-2));
        let c2 = &b_aq3 * &b_aq4 * qp(-3);
        let den = (one() - b / q) * (one() - b * qp(-2));
        return Ok(LaurentPoly::from_coeffs([c0, c1, c2]).scale(&(one() / den)));
    }
    let c0 = -((one() - a) * (one() - a * q) * (one() - a * qp(3)));
    let c1 =
        (one() - a) * (one() - a * qp(3)) * ((one() + q) * &b_aq3 + qp(2) * (one() - &ab)) * qp(-2);
    let c2 = -((one() - a * qp(3)) * &b_aq3 * ((one() + q) * (q - &ab) + b - a * qp(2))) * qp(-3);
    let c3 = (one() - &ab) * &b_aq3 * &b_aq4 * qp(-3);
    let pref = one() / (q * a * (one() - b) * (one() - b / q) * (one() - b * qp(-3)));
    Ok(LaurentPoly::from_coeffs([c0, c1, c2, c3]).scale(&pref))
}
