//! Laurent polynomials in the formal variable `y = q^x`.
//!
//! Every function of the lattice coordinate `x` that appears in the little
//! q-Jacobi/Laguerre systems is a finite Laurent polynomial in `q^x`, so the
//! shift operators `e^{±∂}` become the exact substitution `y -> y q^{±1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * y^degree`.
    pub fn monomial(c: Scalar, degree: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// The variable `y` itself.
    pub fn y() -> Self {
        Self::monomial(scalar::one(), 1)
    }

    /// Dense coefficients `c_0 + c_1 y + ...`.
    pub fn from_coeffs<I: IntoIterator<Item = Scalar>>(cs: I) -> Self {
        Self::from_terms(cs.into_iter().enumerate().map(|(d, c)| (d as i64, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    fn add_term(&mut self, d: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(d).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i64) -> Scalar {
        self.coeffs.get(&d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Leading coefficient in `y`.
    pub fn leading(&self) -> Scalar {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// True when no negative powers of `y` occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// Multiplies by `c * y^k`.
    pub fn mul_monomial(&self, c: &Scalar, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (d + k, v * c)).collect(),
        }
    }

    /// Realizes `x -> x + s`: the degree-`d` coefficient picks up `q^{d s}`.
    pub fn shift_x(&self, q: &Scalar, s: i64) -> Self {
        if s == 0 {
            return self.clone();
        }
        let qs = scalar::pow(q, s);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, v)| (*d, v * scalar::pow(&qs, *d)))
                .collect(),
        }
    }

    /// Evaluates at `y = value`.
    pub fn eval_y(&self, value: &Scalar) -> Scalar {
        self.coeffs.iter().fold(Scalar::zero(), |acc, (d, c)| {
            acc + c * scalar::pow(value, *d)
        })
    }

    /// Exact value at the integer point `x`, i.e. at `y = q^x`.
    pub fn eval_int_x(&self, q: &Scalar, x: i64) -> Scalar {
        self.eval_y(&scalar::pow(q, x))
    }

    /// The `x -> infinity` limit (`y -> 0`).
    pub fn eval_infinity(&self) -> Result<Scalar> {
        if !self.is_polynomial() {
            return Err(Error::NegativePowers);
        }
        Ok(self.coeff(0))
    }

    /// Exact quotient in the Laurent ring; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let dmin = divisor.min_degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nmin = self.min_degree().unwrap();
        // Strip the lowest powers so both sides are polynomials with nonzero constant term
        // in the divisor; the quotient picks up y^{nmin - dmin}.
        let num: Vec<Scalar> = dense(self, nmin);
        let den: Vec<Scalar> = dense(divisor, dmin);
        if den.len() > num.len() {
            return None;
        }
        let mut rem = num;
        let dl = den.len() - 1;
        let lead = den[dl].clone();
        let mut quot = vec![Scalar::zero(); rem.len() - dl];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dl] / &lead;
            if !c.is_zero() {
                for (j, dv) in den.iter().enumerate() {
                    rem[i + j] -= &c * dv;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot).mul_monomial(&scalar::one(), nmin - dmin))
    }

    /// Exact division that reports failure as an internal error.
    pub fn div_exact_or_err(&self, divisor: &LaurentPoly, what: &str) -> Result<LaurentPoly> {
        self.div_exact(divisor)
            .ok_or_else(|| Error::InexactDivision(what.to_string()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

fn dense(p: &LaurentPoly, offset: i64) -> Vec<Scalar> {
    let top = p.max_degree().unwrap_or(offset);
    let mut v = vec![Scalar::zero(); (top - offset + 1) as usize];
    for (d, c) in p.terms() {
        v[(d - offset) as usize] = c.clone();
    }
    v
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                *acc.entry(d1 + d2).or_insert_with(Scalar::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs: acc }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    fn eta() -> LaurentPoly {
        &LaurentPoly::one() - &LaurentPoly::y()
    }

    #[test]
    fn shift_scales_monomials() {
        let q = ratio(1, 2);
        assert_eq!(
            LaurentPoly::y().shift_x(&q, 1),
            LaurentPoly::monomial(ratio(1, 2), 1)
        );
        let p = eta();
        assert_eq!(p.shift_x(&q, 0), p);
    }

    #[test]
    fn shift_then_eval() {
        let q = ratio(1, 2);
        let p = eta();
        let lhs = p.shift_x(&q, 2).eval_int_x(&q, 3);
        assert_eq!(lhs, ratio(31, 32));
        assert_eq!(lhs, p.eval_int_x(&q, 5));
    }

    #[test]
    fn eval_examples() {
        let q = ratio(1, 2);
        assert_eq!(eta().eval_int_x(&q, 0), int(0));
        let p = &LaurentPoly::monomial(int(1), -1) - &LaurentPoly::one();
        assert_eq!(p.eval_int_x(&q, 1), int(1));
        let c = LaurentPoly::constant(ratio(7, 3));
        assert_eq!(c.eval_int_x(&q, -4), ratio(7, 3));
    }

    #[test]
    fn infinity_limit() {
        assert_eq!(eta().eval_infinity().unwrap(), int(1));
        assert_eq!(
            LaurentPoly::constant(int(5)).eval_infinity().unwrap(),
            int(5)
        );
        assert_eq!(
            LaurentPoly::monomial(int(1), -1).eval_infinity(),
            Err(Error::NegativePowers)
        );
    }

    #[test]
    fn exact_division() {
        let a = &eta() * &(&LaurentPoly::monomial(int(3), -2) + &LaurentPoly::y());
        assert_eq!(
            a.div_exact(&eta()).unwrap(),
            &LaurentPoly::monomial(int(3), -2) + &LaurentPoly::y()
        );
        let b = &eta() + &LaurentPoly::monomial(int(1), 2);
        assert!(b.div_exact(&eta()).is_none());
        assert!(a.div_exact(&LaurentPoly::zero()).is_none());
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = &eta() - &eta();
        assert!(p.is_zero());
        assert_eq!(p.term_count(), 0);
    }
}
