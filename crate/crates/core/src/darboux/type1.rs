//! Raw type I engine, built directly from Casoratians of the virtual
//! polynomials and the gauge factor `nu(x) = (a/q)^x`.

use crate::base;
use crate::error::{Error, Result};
use crate::exact::det::det_laurent;
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::{self, Scalar};
use crate::params::{Construction, Params};
use crate::virtual_states::{self, virtual_energy, xi_poly};

use super::{casoratian_plus, DeformedPotentials, IndexSet, RationalFn};

#[derive(Debug, Clone)]
pub struct TypeISystem {
    pub params: Params,
    pub dset: IndexSet,
    pub xi_polys: Vec<LaurentPoly>,
    /// `W_C[xi_{d_1}, ..., xi_{d_M}](x)`.
    pub cas: LaurentPoly,
    /// `Q_0(x)`, the Casoratian with `nu` appended.
    pub q0: LaurentPoly,
}

impl TypeISystem {
    pub fn new(d: &IndexSet, p: &Params) -> Result<Self> {
        if p.construction != Construction::TypeI {
            return Err(Error::InvalidParams(
                "type I engine needs type I parameters".into(),
            ));
        }
        let xi_polys = d
            .indices()
            .iter()
            .map(|&v| xi_poly(v, p).map(|x| x.poly))
            .collect::<Result<Vec<_>>>()?;
        let cas = casoratian_plus(&xi_polys, &p.q);
        if cas.is_zero() {
            return Err(Error::DegenerateCasoratian);
        }
        let mut sys = Self {
            params: p.clone(),
            dset: d.clone(),
            xi_polys,
            cas,
            q0: LaurentPoly::zero(),
        };
        sys.q0 = sys.q_poly(0)?;
        if sys.q0.is_zero() {
            return Err(Error::DegenerateCasoratian);
        }
        Ok(sys)
    }

    /// `Q_n(x) = det[xi_{d_k}(x+j-1) | (a/q)^{j-1} P_n(x+j-1)]`.
    pub fn q_poly(&self, n: i64) -> Result<LaurentPoly> {
        let p = &self.params;
        let q = &p.q;
        let pn = base::eigenpoly_y(n, p)?;
        let ratio = &p.a / q;
        let m = self.dset.m();
        let rows: Vec<Vec<LaurentPoly>> = (0..=m)
            .map(|j| {
                let s = j as i64;
                let mut row: Vec<LaurentPoly> =
                    self.xi_polys.iter().map(|f| f.shift_x(q, s)).collect();
                row.push(pn.shift_x(q, s).scale(&scalar::pow(&ratio, s)));
                row
            })
            .collect();
        Ok(det_laurent(&rows))
    }

    /// `Q_n` with its lowest power of `y` removed and scaled to value 1 at `x = 0`.
    pub fn normalized_poly(&self, n: i64) -> Result<LaurentPoly> {
        let qn = self.q_poly(n)?;
        let low = qn.min_degree().ok_or(Error::DegenerateCasoratian)?;
        let stripped = qn.mul_monomial(&scalar::one(), -low);
        let at0 = stripped.eval_int_x(&self.params.q, 0);
        let inv = scalar::checked_inv(&at0).map_err(|_| Error::DenominatorZeroAtInteger(0))?;
        Ok(stripped.scale(&inv))
    }

    fn bprime_new(&self) -> LaurentPoly {
        virtual_states::virtual_data(&self.params).bprime_new
    }

    pub fn potentials(&self) -> DeformedPotentials {
        let p = &self.params;
        let q = &p.q;
        let m = self.dset.m() as i64;
        let vd = virtual_states::virtual_data(p);
        let aq = &p.a / q;
        let b = RationalFn {
            num: (vd.bprime_new.shift_x(q, m) * &self.cas * self.q0.shift_x(q, 1)).scale(&aq),
            den: self.cas.shift_x(q, 1) * &self.q0,
        };
        let d = RationalFn {
            num: (vd.dprime_new * self.cas.shift_x(q, 1) * self.q0.shift_x(q, -1))
                .scale(&(q / &p.a)),
            den: &self.cas * &self.q0,
        };
        DeformedPotentials { b, d }
    }

    /// Cleared-denominator residual of the eigen-equation for `Q_n / Q_0`.
    pub fn eigen_residual(&self, n: i64) -> Result<LaurentPoly> {
        let p = &self.params;
        let q = &p.q;
        let m = self.dset.m() as i64;
        let vd = virtual_states::virtual_data(p);
        let qn = self.q_poly(n)?;
        let q0 = &self.q0;
        let w = &self.cas;
        let w1 = w.shift_x(q, 1);
        let first = (vd.bprime_new.shift_x(q, m)
            * w
            * w
            * (&qn * q0.shift_x(q, 1) - qn.shift_x(q, 1) * q0))
            .scale(&(&p.a / q));
        let second =
            (vd.dprime_new * &w1 * &w1 * (&qn * q0.shift_x(q, -1) - qn.shift_x(q, -1) * q0))
                .scale(&(q / &p.a));
        let third = (qn * q0 * w * &w1).scale(&base::energy(n, p));
        Ok(first + second - third)
    }

    /// Weight `prod_j B'new(x+j-1) phi_0(x)^2 / (W(x) W(x+1))` for the raw `Q_n`.
    pub fn weight(&self, x: i64) -> Result<Scalar> {
        let p = &self.params;
        let q = &p.q;
        let bp = self.bprime_new();
        let mut num = base::groundstate_sq(x, p);
        for j in 0..self.dset.m() as i64 {
            num *= bp.eval_int_x(q, x + j);
        }
        let den = self.cas.eval_int_x(q, x) * self.cas.eval_int_x(q, x + 1);
        scalar::checked_div(&num, &den).map_err(|_| Error::DenominatorZeroAtInteger(x))
    }

    /// `(Q_n, Q_n) / (Q_0, Q_0)` under [`Self::weight`].
    pub fn norm_ratio(&self, n: i64) -> Scalar {
        let p = &self.params;
        let en = base::energy(n, p);
        let mut acc = scalar::one() / base::norm_ratio(n, p);
        for &d in self.dset.indices() {
            let e = virtual_energy(d, p);
            acc = acc * (&en - &e) / -e;
        }
        acc
    }
}
