//! Zero counts and interlacing of the multi-indexed polynomials.

use serde::Serialize;

use super::report::Check;
use crate::darboux::{DeformedSystem, IndexSet};
use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;
use crate::params::Params;
use crate::roots::{self, ZeroSet};

/// Largest accepted scale-relative residual of a polished zero.
pub const RESIDUAL_TOL: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZerosReport {
    pub n: i64,
    pub degree: usize,
    pub physical: usize,
    pub unphysical: usize,
    /// Distinct real zeros in `[0, 1)` from a Sturm sequence.
    pub physical_exact: usize,
    pub interlaced_with_next: bool,
    pub max_residual: f64,
}

pub fn zeros_of(sys: &DeformedSystem, n: i64, prec_bits: u64) -> Result<ZeroSet> {
    if prec_bits < 128 {
        return Err(Error::InvalidParams(
            "prec_bits must be at least 128".into(),
        ));
    }
    let poly = sys.poly(n)?;
    let zs = roots::find_zeros(&poly, prec_bits)?;
    if zs.max_residual() > RESIDUAL_TOL {
        return Err(Error::RootFindingFailure(format!(
            "residual {:.3e} exceeds {RESIDUAL_TOL:e} for n = {n}",
            zs.max_residual()
        )));
    }
    Ok(zs)
}

/// Strict interlacing `u_0 < l_0 < u_1 < ... < l_{k-1} < u_k`.
pub fn interlaced(lower: &[Scalar], upper: &[Scalar]) -> bool {
    upper.len() == lower.len() + 1
        && lower
            .iter()
            .enumerate()
            .all(|(i, l)| &upper[i] < l && l < &upper[i + 1])
}

fn physical_values(z: &ZeroSet) -> Vec<Scalar> {
    z.physical.iter().map(|r| r.value.re.clone()).collect()
}

fn report_from(sys: &DeformedSystem, n: i64, z: &ZeroSet, next: &ZeroSet) -> Result<ZerosReport> {
    let poly = sys.poly(n)?;
    Ok(ZerosReport {
        n,
        degree: poly.degree().unwrap_or(0),
        physical: z.physical.len(),
        unphysical: z.unphysical.len(),
        physical_exact: roots::physical_count_exact(&poly),
        interlaced_with_next: interlaced(&physical_values(z), &physical_values(next)),
        max_residual: z.max_residual(),
    })
}

pub fn zeros_report(d: &IndexSet, n: i64, p: &Params, prec_bits: u64) -> Result<ZerosReport> {
    let sys = DeformedSystem::new(d, p)?;
    let z = zeros_of(&sys, n, prec_bits)?;
    let next = zeros_of(&sys, n + 1, prec_bits)?;
    report_from(&sys, n, &z, &next)
}

/// Count checks for `n <= nmax` and interlacing checks for consecutive `n < nmax`.
pub fn zero_checks(sys: &DeformedSystem, nmax: i64, prec_bits: u64) -> Vec<Check> {
    let ell = sys.dset.ell() as usize;
    let sets: Vec<Result<ZeroSet>> = (0..=nmax).map(|n| zeros_of(sys, n, prec_bits)).collect();
    let mut out = Vec::new();
    for n in 0..=nmax {
        let name = format!("zeros/count/{n}");
        let c = match &sets[n as usize] {
            Err(e) => Check::fail(name, format!("error: {e}")),
            Ok(z) => {
                let exact = sys
                    .poly(n)
                    .map(|p| roots::physical_count_exact(&p))
                    .unwrap_or(usize::MAX);
                let ok = z.physical.len() == n as usize
                    && exact == n as usize
                    && z.unphysical.len() == ell;
                Check::from_bool(
                    name,
                    ok,
                    format!(
                        "physical {} (Sturm {exact}), unphysical {}, residual {:.3e}",
                        z.physical.len(),
                        z.unphysical.len(),
                        z.max_residual()
                    ),
                )
            }
        };
        out.push(c);
    }
    for n in 0..nmax {
        let name = format!("zeros/interlace/{n},{}", n + 1);
        let c = match (&sets[n as usize], &sets[n as usize + 1]) {
            (Ok(a), Ok(b)) => Check::from_bool(
                name,
                interlaced(&physical_values(a), &physical_values(b)),
                "physical zeros",
            ),
            _ => Check::fail(name, "zeros unavailable"),
        };
        out.push(c);
    }
    out
}
