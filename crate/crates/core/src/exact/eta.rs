//! Polynomials in the sinusoidal coordinate `eta = 1 - q^x`.

use std::fmt;

use num::traits::Zero;

use super::laurent::LaurentPoly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Dense coefficients in `eta`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EtaPoly {
    coeffs: Vec<Scalar>,
}

impl EtaPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Horner evaluation at a given `eta`.
    pub fn eval(&self, eta: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * eta + c)
    }

    /// Value at the lattice point `x`, where `eta = 1 - q^x`.
    pub fn eval_int_x(&self, q: &Scalar, x: i64) -> Scalar {
        self.eval(&(scalar::one() - scalar::pow(q, x)))
    }

    /// Change of basis to `y = q^x` via `eta^i = (1 - y)^i`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.coeffs.len();
        let mut out = vec![Scalar::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut binom = scalar::one();
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let term = c * &binom;
                if j % 2 == 0 {
                    *slot += term;
                } else {
                    *slot -= term;
                }
                binom = binom * scalar::int((i - j) as i64) / scalar::int(j as i64 + 1);
            }
        }
        LaurentPoly::from_coeffs(out)
    }
}

/// Exact change of basis `y = 1 - eta`; fails on genuinely Laurent input.
pub fn to_eta(p: &LaurentPoly) -> Result<EtaPoly> {
    if !p.is_polynomial() {
        return Err(Error::NegativePowers);
    }
    let top = p.max_degree().unwrap_or(-1);
    let mut out = vec![Scalar::zero(); (top + 1) as usize];
    for (d, c) in p.terms() {
        let d = d as usize;
        let mut binom = scalar::one();
        for (i, slot) in out.iter_mut().enumerate().take(d + 1) {
            let term = c * &binom;
            if i % 2 == 0 {
                *slot += term;
            } else {
                *slot -= term;
            }
            binom = binom * scalar::int((d - i) as i64) / scalar::int(i as i64 + 1);
        }
    }
    Ok(EtaPoly::new(out))
}

pub fn from_eta(p: &EtaPoly) -> LaurentPoly {
    p.to_laurent()
}

impl fmt::Debug for EtaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*eta^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn basis_examples() {
        let eta_poly = &LaurentPoly::one() - &LaurentPoly::y();
        assert_eq!(
            to_eta(&eta_poly).unwrap(),
            EtaPoly::new(vec![int(0), int(1)])
        );
        let y2 = LaurentPoly::monomial(int(1), 2);
        assert_eq!(
            to_eta(&y2).unwrap(),
            EtaPoly::new(vec![int(1), int(-2), int(1)])
        );
        assert_eq!(
            to_eta(&LaurentPoly::monomial(int(1), -1)),
            Err(Error::NegativePowers)
        );
    }

    #[test]
    fn degree_is_last_nonzero() {
        let p = EtaPoly::new(vec![int(1), int(2), int(0), int(0)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(EtaPoly::zero().degree(), None);
    }
}
