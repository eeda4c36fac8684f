//! Certified tails for sums `sum_{x >= 0} C kappa^x (beta;q)_x / (q;q)_x prod_i g_i(q^x)^{e_i}`.
//!
//! For `x > X` every factor is bounded through `y = q^x <= q^{X+1}`: the
//! Laurent factors `g_i = y^{k_i} h_i(y)` satisfy `|h_i(y) - h_i(0)| <= sum_j |h_ij| y^j`,
//! and each Pochhammer step `(1 - beta q^z)/(1 - q^{z+1})` is at most
//! `(1 + |beta| y) / (1 - q y)`. The resulting geometric majorant is summed in closed form.

use num::traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::qseries::qpoch;
use crate::exact::scalar::{self, Scalar};

/// Hard cap on the truncation point.
pub const MAX_TERMS: i64 = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct TailBound {
    pub truncation_x: i64,
    pub partial_sum: Scalar,
    /// Ratio `rho < 1` of the geometric majorant.
    pub ratio_bound: Scalar,
    /// Upper bound on `sum_{x > truncation_x} |t(x)|`.
    pub tail_estimate: Scalar,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub q: Scalar,
    pub constant: Scalar,
    pub kappa: Scalar,
    pub beta: Scalar,
    pub factors: Vec<(LaurentPoly, i32)>,
}

impl Series {
    pub fn with_factor(&self, g: LaurentPoly, e: i32) -> Self {
        let mut s = self.clone();
        s.factors.push((g, e));
        s
    }

    pub fn term(&self, x: i64) -> Result<Scalar> {
        let q = &self.q;
        let xu = x as usize;
        let mut t = &self.constant * scalar::pow(&self.kappa, x) * qpoch(&self.beta, q, xu)
            / qpoch(q, q, xu);
        for (g, e) in &self.factors {
            let v = g.eval_int_x(q, x);
            if *e < 0 && v.is_zero() {
                return Err(Error::DenominatorZeroAtInteger(x));
            }
            t *= scalar::pow(&v, *e as i64);
        }
        Ok(t)
    }

    /// Bound on `sum_{x > x_trunc} |t(x)|`, or `None` when the majorant does not converge yet.
    pub fn tail_after(&self, x_trunc: i64) -> Result<Option<(Scalar, Scalar)>> {
        let q = &self.q;
        let one = scalar::one();
        let x1 = x_trunc + 1;
        let y0 = scalar::pow(q, x1);
        let mut kappa_eff = self.kappa.abs();
        let mut g_bound = one.clone();
        for (g, e) in &self.factors {
            let k = g.min_degree().ok_or(Error::DenominatorZeroAtInteger(x1))?;
            let h0 = g.coeff(k).abs();
            let mut spread = Scalar::zero();
            for (d, c) in g.terms() {
                if d > k {
                    spread += c.abs() * scalar::pow(&y0, d - k);
                }
            }
            kappa_eff *= scalar::pow(q, k * *e as i64);
            let b = if *e > 0 {
                h0 + spread
            } else {
                let lower = h0 - spread;
                if !lower.is_positive() {
                    return Ok(None);
                }
                lower
            };
            g_bound *= scalar::pow(&b, *e as i64);
        }
        let step = (&one + self.beta.abs() * &y0) / (&one - q * &y0);
        let rho = &kappa_eff * step;
        if rho >= one {
            return Ok(None);
        }
        let xu = x1 as usize;
        let poch = (qpoch(&self.beta, q, xu) / qpoch(q, q, xu)).abs();
        let first = self.constant.abs() * poch * g_bound * scalar::pow(&kappa_eff, x1);
        Ok(Some((first / (&one - &rho), rho)))
    }
}

/// Partial sum up to `x_trunc` with its certified tail.
pub fn bounded_sum(s: &Series, x_trunc: i64) -> Result<TailBound> {
    let mut partial = Scalar::zero();
    for x in 0..=x_trunc {
        partial += s.term(x)?;
    }
    match s.tail_after(x_trunc)? {
        Some((tail, rho)) => Ok(TailBound {
            truncation_x: x_trunc,
            partial_sum: partial,
            ratio_bound: rho,
            tail_estimate: tail,
        }),
        None => Err(Error::NonConvergence(x_trunc as usize)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    #[test]
    fn geometric_series_is_bracketed() {
        let s = Series {
            q: ratio(1, 2),
            constant: int(1),
            kappa: ratio(1, 2),
            beta: ratio(1, 2),
            factors: vec![(LaurentPoly::from_coeffs([int(1), int(1)]), 1)],
        };
        let tb = bounded_sum(&s, 30).unwrap();
        let mut exact_tail = Scalar::zero();
        for x in 31..200 {
            exact_tail += s.term(x).unwrap();
        }
        assert!(exact_tail <= tb.tail_estimate);
        assert!(tb.tail_estimate < exact_tail * int(4));
        assert!(tb.ratio_bound < int(1));
    }

    #[test]
    fn divergent_majorant_is_reported() {
        let s = Series {
            q: ratio(1, 2),
            constant: int(1),
            kappa: int(2),
            beta: int(0),
            factors: vec![],
        };
        assert!(matches!(
            bounded_sum(&s, 10),
            Err(Error::NonConvergence(10))
        ));
    }
}
