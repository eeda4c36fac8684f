//! Exact sign scans of the denominator polynomial and deformed potentials.

use num::traits::{Signed, Zero};

use super::report::Check;
use crate::darboux::{self, DeformedPotentials, DeformedSystem, IndexSet, TypeISystem};
use crate::error::Result;
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::Scalar;
use crate::params::{Construction, Params};

fn first_failure(
    range: std::ops::RangeInclusive<i64>,
    f: impl Fn(i64) -> Result<bool>,
) -> Option<(i64, String)> {
    for x in range {
        match f(x) {
            Ok(true) => {}
            Ok(false) => return Some((x, "wrong sign".into())),
            Err(e) => return Some((x, e.to_string())),
        }
    }
    None
}

fn scan(
    name: &str,
    range: std::ops::RangeInclusive<i64>,
    f: impl Fn(i64) -> Result<bool>,
) -> Check {
    let (lo, hi) = (*range.start(), *range.end());
    match first_failure(range, f) {
        None => Check::pass(name, format!("x in [{lo}, {hi}]")),
        Some((x, why)) => Check::fail(name, format!("x = {x}: {why}")),
    }
}

fn definite_sign(name: &str, f: &LaurentPoly, q: &Scalar, lo: i64, hi: i64) -> Check {
    let s0 = f.eval_int_x(q, lo);
    if s0.is_zero() {
        return Check::fail(name, format!("x = {lo}: zero"));
    }
    let pos = s0.is_positive();
    scan(name, lo..=hi, |x| {
        Ok(f.eval_int_x(q, x).is_positive() == pos && !f.eval_int_x(q, x).is_zero())
    })
}

fn potential_checks(pots: &DeformedPotentials, q: &Scalar, xmax: i64) -> Vec<Check> {
    vec![
        scan("positivity/B_D", 0..=xmax, |x| {
            Ok(pots.b.eval_int_x(q, x)?.is_positive())
        }),
        scan("positivity/D_D", 1..=xmax, |x| {
            Ok(pots.d.eval_int_x(q, x)?.is_positive())
        }),
        match pots.d.eval_int_x(q, 0) {
            Ok(v) => Check::from_bool("positivity/D_D(0)", v.is_zero(), format!("D_D(0) = {v}")),
            Err(e) => Check::fail("positivity/D_D(0)", format!("error: {e}")),
        },
    ]
}

/// Sign scans; failures become warnings in the extended `b <= 0` range.
pub fn positivity_scan(d: &IndexSet, p: &Params, xmax: i64) -> Vec<Check> {
    let q = &p.q;
    let mut out = Vec::new();
    match p.construction {
        Construction::TypeII => match (
            DeformedSystem::new(d, p),
            darboux::deformed_potentials(d, p),
        ) {
            (Ok(sys), Ok(pots)) => {
                out.push(scan("positivity/Xi_D", -1..=xmax, |x| {
                    Ok(sys.xi_denom.eval_int_x(q, x).is_positive())
                }));
                out.push(definite_sign(
                    "positivity/casoratian_sign",
                    &sys.xi_cas,
                    q,
                    -1,
                    xmax,
                ));
                out.extend(potential_checks(&pots, q, xmax));
            }
            (Err(e), _) | (_, Err(e)) => {
                out.push(Check::fail("positivity/construct", format!("error: {e}")))
            }
        },
        Construction::TypeI => match TypeISystem::new(d, p) {
            Ok(sys) => {
                out.push(definite_sign(
                    "positivity/casoratian_sign",
                    &sys.cas,
                    q,
                    0,
                    xmax,
                ));
                out.extend(potential_checks(&sys.potentials(), q, xmax));
            }
            Err(e) => out.push(Check::fail("positivity/construct", format!("error: {e}"))),
        },
    }
    if p.in_extended_range() {
        out = out.into_iter().map(Check::downgrade).collect();
    }
    out
}
