//! Zeros of polynomials in `eta`: double-precision companion eigenvalues
//! polished by Aberth iteration in rounded rational complex arithmetic, with
//! an exact Sturm count of the real zeros in `[0, 1)`.

use nalgebra::DMatrix;
use num::complex::Complex;
use num::traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::eta::EtaPoly;
use crate::exact::scalar::{self, Scalar};

pub type CScalar = Complex<Scalar>;

/// A polished zero with its scale-relative residual `|P(z)| / sum |c_k| |z|^k`.
#[derive(Debug, Clone)]
pub struct Root {
    pub value: CScalar,
    pub residual: f64,
}

impl Root {
    pub fn re_f64(&self) -> f64 {
        scalar::to_f64(&self.value.re)
    }

    pub fn im_f64(&self) -> f64 {
        scalar::to_f64(&self.value.im)
    }
}

/// Zeros split by location: real zeros in `[0, 1)` and everything else.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub physical: Vec<Root>,
    pub unphysical: Vec<Root>,
}

impl ZeroSet {
    pub fn max_residual(&self) -> f64 {
        self.physical
            .iter()
            .chain(&self.unphysical)
            .map(|z| z.residual)
            .fold(0.0, f64::max)
    }

    pub fn physical_f64(&self) -> Vec<f64> {
        self.physical.iter().map(Root::re_f64).collect()
    }
}

fn exp2(e: i64) -> Scalar {
    scalar::pow(&scalar::int(2), e)
}

fn bit_exponent(r: &Scalar) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// Rounds both parts to a common absolute grid of `bits` below the larger part.
fn round_complex(z: &CScalar, bits: u64) -> CScalar {
    let mag = if z.re.abs() > z.im.abs() {
        z.re.abs()
    } else {
        z.im.abs()
    };
    if mag.is_zero() {
        return z.clone();
    }
    let grid = exp2(bit_exponent(&mag) - bits as i64);
    let r = |v: &Scalar| (v / &grid).round() * &grid;
    Complex::new(r(&z.re), r(&z.im))
}

fn horner(coeffs: &[Scalar], z: &CScalar) -> (CScalar, CScalar) {
    let mut p = CScalar::zero();
    let mut dp = CScalar::zero();
    for c in coeffs.iter().rev() {
        dp = &dp * z + &p;
        p = &p * z + Complex::new(c.clone(), Scalar::zero());
    }
    (p, dp)
}

fn abs_f64(z: &CScalar) -> f64 {
    scalar::to_f64(&z.norm_sqr()).sqrt()
}

/// Double-precision starting points from the companion matrix.
fn initial_guesses(coeffs: &[Scalar]) -> Vec<Complex<f64>> {
    let n = coeffs.len() - 1;
    let lead = scalar::to_f64(&coeffs[n]);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -scalar::to_f64(&coeffs[i]) / lead;
    }
    let mut out: Vec<Complex<f64>> = m
        .complex_eigenvalues()
        .iter()
        .map(|z| Complex::new(z.re, z.im))
        .collect();
    // Aberth needs pairwise distinct starts.
    for i in 0..out.len() {
        for j in 0..i {
            if (out[i] - out[j]).norm() < 1e-12 * (1.0 + out[i].norm()) {
                out[i] += Complex::new(1e-7 * (i as f64 + 1.0), 1e-7);
            }
        }
    }
    out
}

fn from_f64(v: f64) -> Result<Scalar> {
    Scalar::from_float(v).ok_or_else(|| Error::RootFindingFailure(format!("non-finite start {v}")))
}

/// All complex zeros of `p`, polished to roughly `bits` bits.
pub fn all_zeros(p: &EtaPoly, bits: u64) -> Result<Vec<Root>> {
    let coeffs = p.coeffs();
    let n = match p.degree() {
        None => return Err(Error::RootFindingFailure("zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let mut zs: Vec<CScalar> = initial_guesses(coeffs)
        .into_iter()
        .map(|z| Ok(Complex::new(from_f64(z.re)?, from_f64(z.im)?)))
        .collect::<Result<_>>()?;
    let tol = exp2(-(bits as i64) + 16);
    let mut converged = false;
    for _ in 0..200 {
        let mut worst = Scalar::zero();
        for i in 0..n {
            let (pv, dpv) = horner(coeffs, &zs[i]);
            if pv.is_zero() {
                continue;
            }
            let w = &pv / &dpv;
            let mut s = CScalar::zero();
            for j in 0..n {
                if j != i {
                    s += CScalar::new(scalar::one(), Scalar::zero()) / (&zs[i] - &zs[j]);
                }
            }
            let denom = CScalar::new(scalar::one(), Scalar::zero()) - &w * s;
            let step = if denom.is_zero() { w } else { w / denom };
            let scale = scalar::one() + zs[i].norm_sqr();
            let rel = step.norm_sqr() / scale;
            if rel > worst {
                worst = rel;
            }
            zs[i] = round_complex(&(&zs[i] - step), bits);
        }
        if worst <= &tol * &tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootFindingFailure(format!(
            "Aberth iteration did not converge for degree {n}"
        )));
    }
    Ok(zs
        .into_iter()
        .map(|z| {
            let az = abs_f64(&z);
            let scale: f64 = coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * az + scalar::to_f64(c).abs());
            let residual = abs_f64(&horner(coeffs, &z).0) / scale;
            Root { value: z, residual }
        })
        .collect())
}

/// Splits zeros into real ones in `[0, 1)` (imaginary part below `im_tol`) and the rest.
pub fn classify(zeros: Vec<Root>, im_tol: f64) -> ZeroSet {
    let (mut physical, unphysical): (Vec<Root>, Vec<Root>) = zeros.into_iter().partition(|z| {
        let re = z.re_f64();
        z.im_f64().abs() < im_tol && z.value.re >= Scalar::zero() && re < 1.0
    });
    physical.sort_by(|x, y| x.value.re.cmp(&y.value.re));
    ZeroSet {
        physical,
        unphysical,
    }
}

pub fn find_zeros(p: &EtaPoly, bits: u64) -> Result<ZeroSet> {
    Ok(classify(all_zeros(p, bits)?, 1e-20))
}

fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = &r[top] / lead;
        for (k, bk) in b.iter().enumerate() {
            r[top - db + k] -= &c * bk;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn sign_changes(seq: &[Vec<Scalar>], x: &Scalar) -> usize {
    let vals: Vec<Scalar> = seq
        .iter()
        .map(|p| p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c))
        .filter(|v| !v.is_zero())
        .collect();
    vals.windows(2)
        .filter(|w| w[0].is_positive() != w[1].is_positive())
        .count()
}

/// Number of distinct real zeros of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &EtaPoly, lo: &Scalar, hi: &Scalar) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let p0 = p.coeffs().to_vec();
    let p1: Vec<Scalar> = p0
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * scalar::int(k as i64))
        .collect();
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    sign_changes(&seq, lo) - sign_changes(&seq, hi)
}

/// Distinct real zeros in `[0, 1)`, counted exactly.
pub fn physical_count_exact(p: &EtaPoly) -> usize {
    let (zero, one) = (Scalar::zero(), scalar::one());
    let mut n = sturm_count(p, &zero, &one);
    if p.eval(&zero).is_zero() {
        n += 1;
    }
    if p.eval(&one).is_zero() {
        n -= 1;
    }
    n
}
