//! q-Pochhammer symbols and terminating basic hypergeometric series.

use num::traits::Zero;

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// `(z; q)_n = prod_{k<n} (1 - z q^k)`.
pub fn qpoch(z: &Scalar, q: &Scalar, n: usize) -> Scalar {
    let mut acc = scalar::one();
    let mut zk = z.clone();
    for _ in 0..n {
        acc *= scalar::one() - &zk;
        zk *= q;
    }
    acc
}

/// Coefficients `t_k` with `rphis(upper; lower; q; z) = sum_k t_k z^k`, for `k <= nterms`.
///
/// The list is cut at the first vanishing numerator, so its length is the
/// number of nonzero terms when the series terminates.
pub fn phi_coeffs(
    upper: &[Scalar],
    lower: &[Scalar],
    q: &Scalar,
    nterms: usize,
) -> Result<Vec<Scalar>> {
    let r = upper.len() as i64;
    let s = lower.len() as i64;
    let power = 1 + s - r;
    let mut out = vec![scalar::one()];
    let mut t = scalar::one();
    let mut qk = scalar::one();
    for k in 0..nterms {
        let mut num = scalar::one();
        for a in upper {
            num *= scalar::one() - a * &qk;
        }
        if num.is_zero() {
            break;
        }
        let mut den = scalar::one() - &qk * q;
        for b in lower {
            den *= scalar::one() - b * &qk;
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator(k + 1));
        }
        t = t * num / den;
        // ((-1)^k q^{k(k-1)/2})^power grows by (-q^k)^power from k to k+1.
        if power != 0 {
            let step = -qk.clone();
            t *= scalar::pow(&step, power);
        }
        out.push(t.clone());
        qk *= q;
    }
    Ok(out)
}

/// Exact value of a terminating `rphis` series at `z`.
pub fn phi_terminating(
    upper: &[Scalar],
    lower: &[Scalar],
    q: &Scalar,
    z: &Scalar,
    nterms: usize,
) -> Result<Scalar> {
    let cs = phi_coeffs(upper, lower, q, nterms)?;
    let mut acc = Scalar::zero();
    let mut zk = scalar::one();
    for c in cs {
        acc += c * &zk;
        zk *= z;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    #[test]
    fn pochhammer_examples() {
        let h = ratio(1, 2);
        assert_eq!(qpoch(&ratio(2, 7), &h, 0), int(1));
        assert_eq!(qpoch(&h, &h, 2), ratio(3, 8));
        assert_eq!(qpoch(&int(1), &h, 3), int(0));
    }

    #[test]
    fn zero_argument_gives_one() {
        let q = ratio(1, 3);
        let v =
            phi_terminating(&[ratio(9, 1), ratio(2, 5)], &[ratio(1, 7)], &q, &int(0), 5).unwrap();
        assert_eq!(v, int(1));
    }

    #[test]
    fn unit_upper_parameter_truncates() {
        let q = ratio(1, 3);
        let v =
            phi_terminating(&[int(1), ratio(2, 5)], &[ratio(1, 7)], &q, &ratio(5, 2), 5).unwrap();
        assert_eq!(v, int(1));
    }

    #[test]
    fn two_term_sum() {
        // 2phi1(q^{-1}, 0; a; q; q) at q = 1/2, a = 1/3.
        let q = ratio(1, 2);
        let a = ratio(1, 3);
        let v = phi_terminating(&[int(2), int(0)], std::slice::from_ref(&a), &q, &q, 3).unwrap();
        let direct =
            int(1) + (int(1) - int(2)) * (int(1) - int(0)) / ((int(1) - &a) * (int(1) - &q)) * &q;
        assert_eq!(v, direct);
    }

    #[test]
    fn vanishing_lower_is_reported() {
        let q = ratio(1, 2);
        let r = phi_terminating(&[int(8)], &[int(2)], &q, &q, 4);
        assert_eq!(r, Err(Error::ZeroDenominator(2)));
    }
}
