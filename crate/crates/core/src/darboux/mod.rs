//! Casoratian Darboux transformations: denominator polynomials, multi-indexed
//! polynomials, deformed potentials and the identities they satisfy.

mod closed_forms;
mod index_set;
mod type1;

use num::traits::{One, Zero};

use crate::base;
use crate::error::{Error, Result};
use crate::exact::det::det_laurent;
use crate::exact::eta::{to_eta, EtaPoly};
use crate::exact::laurent::LaurentPoly;
use crate::exact::qseries::qpoch;
use crate::exact::scalar::{self, binom2, Scalar};
use crate::params::{Construction, Family, Params};
use crate::virtual_states::{self, c_tilde, c_tilde_prime, virtual_energy, xi_poly, VirtualPoly};

pub use closed_forms::{
    golden_type_i_d2, golden_type_ii_d2, single_indexed_type_i, single_indexed_type_ii,
};
pub use index_set::IndexSet;
pub use type1::TypeISystem;

/// `W_C[f_1..f_n](x) = det(f_k(x + j - 1))`.
pub fn casoratian_plus(fs: &[LaurentPoly], q: &Scalar) -> LaurentPoly {
    let m: Vec<Vec<LaurentPoly>> = (0..fs.len())
        .map(|j| fs.iter().map(|f| f.shift_x(q, j as i64)).collect())
        .collect();
    det_laurent(&m)
}

/// `W^(-)_C[f_1..f_n](x) = det(f_k(x - j + 1))`.
pub fn casoratian_minus(fs: &[LaurentPoly], q: &Scalar) -> LaurentPoly {
    let m: Vec<Vec<LaurentPoly>> = (0..fs.len())
        .map(|j| fs.iter().map(|f| f.shift_x(q, -(j as i64))).collect())
        .collect();
    det_laurent(&m)
}

fn require_type_ii(p: &Params) -> Result<()> {
    if p.construction != Construction::TypeII {
        return Err(Error::InvalidParams(
            "operation is defined for the type II construction".into(),
        ));
    }
    Ok(())
}

/// `C_D` with `alpha D'(-j)` read as `D'new(-j)` for both families.
pub fn c_d(d: &IndexSet, p: &Params) -> Result<Scalar> {
    let q = &p.q;
    let ds = d.indices();
    let m = ds.len();
    let vd = virtual_states::virtual_data(p);
    let mut acc = scalar::one() / base::varphi_minus(m, q).eval_int_x(q, -1);
    for j in 0..m {
        let dp = vd.dprime_new.eval_int_x(q, -(j as i64 + 1));
        for k in j + 1..m {
            let num = virtual_energy(ds[j], p) - virtual_energy(ds[k], p);
            acc = scalar::checked_div(&(acc * num), &dp)
                .map_err(|_| Error::InvalidParams(format!("D'new(-{}) vanishes", j + 1)))?;
        }
    }
    if acc.is_zero() {
        return Err(Error::DegenerateCasoratian);
    }
    Ok(acc)
}

/// `C_{D,n} = (-1)^M q^{C(M+1,2)} C_D`.
pub fn c_dn(d: &IndexSet, p: &Params) -> Result<Scalar> {
    let m = d.m() as i64;
    let sign = if m % 2 == 0 {
        scalar::one()
    } else {
        -scalar::one()
    };
    Ok(sign * scalar::pow(&p.q, binom2(m + 1)) * c_d(d, p)?)
}

/// A type II deformed system at one parameter point.
#[derive(Debug, Clone)]
pub struct DeformedSystem {
    pub params: Params,
    pub dset: IndexSet,
    pub xi_polys: Vec<VirtualPoly>,
    /// `W^(-)_C[xi_{d_1}, ..., xi_{d_M}]`.
    pub xi_cas: LaurentPoly,
    /// `Xi_D(x)` in `y`.
    pub xi_denom: LaurentPoly,
    pub cd: Scalar,
    pub cdn: Scalar,
}

impl DeformedSystem {
    pub fn new(d: &IndexSet, p: &Params) -> Result<Self> {
        require_type_ii(p)?;
        let q = &p.q;
        let xi_polys = d
            .indices()
            .iter()
            .map(|&v| xi_poly(v, p))
            .collect::<Result<Vec<_>>>()?;
        let fs: Vec<LaurentPoly> = xi_polys.iter().map(|x| x.poly.clone()).collect();
        let xi_cas = casoratian_minus(&fs, q);
        if xi_cas.is_zero() {
            return Err(Error::DegenerateCasoratian);
        }
        let cd = c_d(d, p)?;
        let cdn = c_dn(d, p)?;
        let divisor = base::varphi_minus(d.m(), q).scale(&cd);
        let xi_denom = xi_cas.div_exact_or_err(&divisor, "Casoratian by C_D varphi_M")?;
        if !xi_denom.is_polynomial() {
            return Err(Error::InexactDivision(
                "Xi_D has negative powers of q^x".into(),
            ));
        }
        Ok(Self {
            params: p.clone(),
            dset: d.clone(),
            xi_polys,
            xi_cas,
            xi_denom,
            cd,
            cdn,
        })
    }

    pub fn denominator(&self) -> Result<EtaPoly> {
        to_eta(&self.xi_denom)
    }

    /// `P_{D,n}(x)` in `y`; zero for `n < 0`.
    pub fn poly_y(&self, n: i64) -> Result<LaurentPoly> {
        if n < 0 {
            return Ok(LaurentPoly::zero());
        }
        let p = &self.params;
        let q = &p.q;
        let m = self.dset.m();
        let pn = base::eigenpoly_y(n, p)?;
        let mut rows = Vec::with_capacity(m + 1);
        for j in 1..=m + 1 {
            let s = -(j as i64 - 1);
            let mut row: Vec<LaurentPoly> =
                self.xi_polys.iter().map(|x| x.poly.shift_x(q, s)).collect();
            row.push(virtual_states::r_factor(j, m, p)? * pn.shift_x(q, s));
            rows.push(row);
        }
        let det = det_laurent(&rows);
        let divisor = base::varphi_minus(m + 1, q).scale(&self.cdn);
        let out = det.div_exact_or_err(
            &divisor,
            "multi-indexed determinant by C_{D,n} varphi_{M+1}",
        )?;
        if !out.is_polynomial() {
            return Err(Error::InexactDivision(format!(
                "P_(D,{n}) has negative powers of q^x"
            )));
        }
        Ok(out)
    }

    pub fn poly(&self, n: i64) -> Result<EtaPoly> {
        to_eta(&self.poly_y(n)?)
    }

    /// `psi_D(x)^2 = Xi(0) phi_0(x; lambda + M delta~)^2 / (Xi(x) Xi(x-1))`.
    pub fn psi_sq(&self, x: i64) -> Result<Scalar> {
        let q = &self.params.q;
        let shifted = self.params.plus_m_delta_tilde(self.dset.m());
        let den = self.xi_denom.eval_int_x(q, x) * self.xi_denom.eval_int_x(q, x - 1);
        let num = self.xi_denom.eval_int_x(q, 0) * base::groundstate_sq(x, &shifted);
        scalar::checked_div(&num, &den).map_err(|_| Error::DenominatorZeroAtInteger(x))
    }

    /// Orthogonality weight `phi_0(x; lambda + M delta~)^2 / (Xi(x) Xi(x-1))`.
    pub fn weight(&self, x: i64) -> Result<Scalar> {
        let q = &self.params.q;
        let shifted = self.params.plus_m_delta_tilde(self.dset.m());
        let den = self.xi_denom.eval_int_x(q, x) * self.xi_denom.eval_int_x(q, x - 1);
        scalar::checked_div(&base::groundstate_sq(x, &shifted), &den)
            .map_err(|_| Error::DenominatorZeroAtInteger(x))
    }
}

pub fn denominator_poly(d: &IndexSet, p: &Params) -> Result<EtaPoly> {
    DeformedSystem::new(d, p)?.denominator()
}

pub fn multi_indexed_poly(d: &IndexSet, n: i64, p: &Params) -> Result<EtaPoly> {
    DeformedSystem::new(d, p)?.poly(n)
}

/// `c^Xi_D`, the closed-form leading `eta` coefficient of `Xi_D`.
pub fn c_xi(d: &IndexSet, p: &Params) -> Result<Scalar> {
    let ds = d.indices();
    let m = ds.len();
    let q = &p.q;
    let mut acc = scalar::one();
    for (j, &dj) in ds.iter().enumerate() {
        acc = acc * c_tilde(dj, p)? / c_tilde(j, p)?;
    }
    match p.family {
        Family::LittleQJacobi => {
            let bq = &p.b / q;
            for j in 0..m {
                for k in j + 1..m {
                    let num = &bq - &p.a * scalar::pow(q, (j + k) as i64);
                    let den = &bq - &p.a * scalar::pow(q, (ds[j] + ds[k]) as i64);
                    acc = acc * num / den;
                }
            }
        }
        Family::LittleQLaguerre => {
            acc *= scalar::pow(q, -(m as i64 - 1) * d.ell());
        }
    }
    Ok(acc)
}

/// `c^P_{D,n}`, the closed-form leading `eta` coefficient of `P_{D,n}`.
pub fn c_p(d: &IndexSet, n: i64, p: &Params) -> Result<Scalar> {
    let m = d.m() as i64;
    let q = &p.q;
    let mut acc = c_xi(d, p)? * base::leading_coeff(n, p)? * scalar::pow(q, -n * m);
    if p.family == Family::LittleQJacobi {
        for (j, &dj) in d.indices().iter().enumerate() {
            let num = scalar::one() - &p.b * scalar::pow(q, n - dj as i64 - 1);
            let den = scalar::one() - &p.b * scalar::pow(q, -(j as i64 + 1));
            acc = acc * num / den;
        }
    }
    Ok(acc)
}

/// Closed-form values of `Xi_D` and `P_{D,n}` at `x = infinity`.
pub fn infinity_values(d: &IndexSet, n: i64, p: &Params) -> Result<(Scalar, Scalar)> {
    let mut xi = scalar::one();
    let mut ratio = scalar::one();
    let en = base::energy(n, p);
    for (j, &dj) in d.indices().iter().enumerate() {
        xi = xi * c_tilde_prime(dj, p)? / c_tilde_prime(j, p)?;
        ratio = ratio * (&en - virtual_energy(dj, p)) / -virtual_energy(j, p);
    }
    let pinf = &xi * ratio * base::c_prime(n, p)?;
    Ok((xi, pinf))
}

/// `d~_{D,n}^2`.
pub fn dtilde_sq(d: &IndexSet, n: i64, p: &Params) -> Scalar {
    let en = base::energy(n, p);
    let mut den = scalar::one();
    for &dj in d.indices() {
        den *= &en - virtual_energy(dj, p);
    }
    let num = match p.family {
        Family::LittleQJacobi => {
            let m = d.m();
            qpoch(&(&p.b * scalar::pow(&p.q, -(m as i64))), &p.q, m)
        }
        Family::LittleQLaguerre => scalar::one(),
    };
    num / den
}

/// Exact value of `S_nn / S_00` implied by the norm formulas.
pub fn norm_ratio_deformed(d: &IndexSet, n: i64, p: &Params) -> Scalar {
    dtilde_sq(d, 0, p) / dtilde_sq(d, n, p) / base::norm_ratio(n, p)
}

/// Rational potential `num(x) / den(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalFn {
    pub fn eval_int_x(&self, q: &Scalar, x: i64) -> Result<Scalar> {
        let den = self.den.eval_int_x(q, x);
        scalar::checked_div(&self.num.eval_int_x(q, x), &den)
            .map_err(|_| Error::DenominatorZeroAtInteger(x))
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn same_function(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedPotentials {
    pub b: RationalFn,
    pub d: RationalFn,
}

/// `B_D` and `D_D` of the type II deformed system.
pub fn deformed_potentials(d: &IndexSet, p: &Params) -> Result<DeformedPotentials> {
    let q = &p.q;
    let xi = DeformedSystem::new(d, p)?.xi_denom;
    let xid = DeformedSystem::new(d, &p.plus_delta())?.xi_denom;
    let bprime = base::potential_b(&p.plus_m_delta_tilde(d.m()));
    let b = RationalFn {
        num: bprime * xi.shift_x(q, -1) * &xid,
        den: &xi * xid.shift_x(q, -1),
    };
    let dd = RationalFn {
        num: base::potential_d() * &xi * xid.shift_x(q, -2),
        den: xi.shift_x(q, -1) * xid.shift_x(q, -1),
    };
    Ok(DeformedPotentials { b, d: dd })
}

/// Cleared-denominator residual of `H~_D P_{D,n} = E_n P_{D,n}`.
pub fn deformed_eigencheck(d: &IndexSet, n: i64, p: &Params) -> Result<LaurentPoly> {
    let sys = DeformedSystem::new(d, p)?;
    let sys_d = DeformedSystem::new(d, &p.plus_delta())?;
    eigen_residual(&sys, &sys_d, n)
}

pub(crate) fn eigen_residual(
    sys: &DeformedSystem,
    sys_d: &DeformedSystem,
    n: i64,
) -> Result<LaurentPoly> {
    let p = &sys.params;
    let q = &p.q;
    let xi = &sys.xi_denom;
    let xid = &sys_d.xi_denom;
    let pn = sys.poly_y(n)?;
    let bprime = base::potential_b(&p.plus_m_delta_tilde(sys.dset.m()));
    let xi_m1 = xi.shift_x(q, -1);
    let xid_m1 = xid.shift_x(q, -1);
    let first = bprime * &xi_m1 * &xi_m1 * (xid * &pn - &xid_m1 * pn.shift_x(q, 1));
    let second =
        base::potential_d() * xi * xi * (xid.shift_x(q, -2) * &pn - &xid_m1 * pn.shift_x(q, -1));
    let third = (&pn * xi * &xi_m1 * &xid_m1).scale(&base::energy(n, p));
    Ok(first + second - third)
}

/// Cleared-denominator residual of `F_D P_{D,n} = E_n P_{D,n-1}(lambda + delta)`.
pub fn deformed_forward_check(d: &IndexSet, n: i64, p: &Params) -> Result<LaurentPoly> {
    let sys = DeformedSystem::new(d, p)?;
    let sys_d = DeformedSystem::new(d, &p.plus_delta())?;
    forward_residual(&sys, &sys_d, n)
}

pub(crate) fn forward_residual(
    sys: &DeformedSystem,
    sys_d: &DeformedSystem,
    n: i64,
) -> Result<LaurentPoly> {
    let p = &sys.params;
    let q = &p.q;
    let b0 = base::b_at_zero(&p.plus_m_delta_tilde(sys.dset.m()));
    let pn = sys.poly_y(n)?;
    let xid = &sys_d.xi_denom;
    let lhs = (xid * &pn - xid.shift_x(q, -1) * pn.shift_x(q, 1)).scale(&b0);
    let rhs = (&sys.xi_denom * sys_d.poly_y(n - 1)?).mul_monomial(&base::energy(n, p), 1);
    Ok(lhs - rhs)
}

/// Cleared-denominator residual of `B_D P_{D,n-1}(lambda + delta) = P_{D,n}`.
pub fn deformed_backward_check(d: &IndexSet, n: i64, p: &Params) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::InvalidParams(
            "the backward relation needs n >= 1".into(),
        ));
    }
    let sys = DeformedSystem::new(d, p)?;
    let sys_d = DeformedSystem::new(d, &p.plus_delta())?;
    backward_residual(&sys, &sys_d, n)
}

pub(crate) fn backward_residual(
    sys: &DeformedSystem,
    sys_d: &DeformedSystem,
    n: i64,
) -> Result<LaurentPoly> {
    let p = &sys.params;
    let q = &p.q;
    let shifted = p.plus_m_delta_tilde(sys.dset.m());
    let b0 = base::b_at_zero(&shifted);
    let g = sys_d.poly_y(n - 1)?;
    let xi = &sys.xi_denom;
    let one = scalar::one();
    let t1 = base::potential_b(&shifted) * xi.shift_x(q, -1) * g.mul_monomial(&one, 1);
    let t2 = base::potential_d() * xi * g.shift_x(q, -1).mul_monomial(&(&one / q), 1);
    let t3 = (sys_d.xi_denom.shift_x(q, -1) * sys.poly_y(n)?).scale(&b0);
    Ok(t1 - t2 - t3)
}

/// `P_{D,0}(x; lambda) - Xi_D(x - 1; lambda + delta)`.
pub fn lowest_matches_denominator(d: &IndexSet, p: &Params) -> Result<LaurentPoly> {
    let sys = DeformedSystem::new(d, p)?;
    let xid = DeformedSystem::new(d, &p.plus_delta())?.xi_denom;
    Ok(sys.poly_y(0)? - xid.shift_x(&p.q, -1))
}

/// `psi_D(x)^2`.
pub fn psi_d_sq(x: i64, d: &IndexSet, p: &Params) -> Result<Scalar> {
    DeformedSystem::new(d, p)?.psi_sq(x)
}

/// Deformed ground state `phi_{D,0}(x)^2 = prod_{y<x} B_D(y) / D_D(y+1)`,
/// equal to `psi_D(x)^2 P_{D,0}(x)^2`.
pub fn ground_state_sq_product(x: i64, pots: &DeformedPotentials, q: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for y in 0..x {
        acc = acc * pots.b.eval_int_x(q, y)? / pots.d.eval_int_x(q, y + 1)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    fn jac(dmax: usize) -> Params {
        Params::jacobi(ratio(1, 2), ratio(1, 3), ratio(1, 16), dmax).unwrap()
    }

    #[test]
    fn empty_casoratians() {
        let q = ratio(1, 2);
        assert_eq!(casoratian_minus(&[], &q), LaurentPoly::one());
        let f = LaurentPoly::from_coeffs([int(1), int(3)]);
        assert_eq!(casoratian_minus(std::slice::from_ref(&f), &q), f);
    }

    #[test]
    fn dtilde_examples() {
        let d = IndexSet::new(vec![2]).unwrap();
        assert_eq!(dtilde_sq(&d, 0, &jac(2)), ratio(21, 11));
        let lag = Params::laguerre(ratio(1, 2), ratio(1, 3), 1).unwrap();
        assert_eq!(
            dtilde_sq(&IndexSet::new(vec![1]).unwrap(), 1, &lag),
            ratio(6, 11)
        );
        assert_eq!(dtilde_sq(&IndexSet::empty(), 3, &lag), int(1));
    }

    #[test]
    fn single_index_denominator_is_xi() {
        let p = jac(2);
        let d = IndexSet::new(vec![2]).unwrap();
        let sys = DeformedSystem::new(&d, &p).unwrap();
        assert_eq!(sys.xi_denom, xi_poly(2, &p).unwrap().poly);
        assert_eq!(sys.xi_denom.eval_int_x(&p.q, -1), int(1));
    }

    #[test]
    fn type_i_params_rejected() {
        let p = jac(2).with_construction(Construction::TypeI);
        assert!(DeformedSystem::new(&IndexSet::new(vec![1]).unwrap(), &p).is_err());
    }
}
