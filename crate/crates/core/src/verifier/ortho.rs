//! Truncated orthogonality sums with certified tails.

use num::traits::{Signed, Zero};

use super::report::Check;
use super::tail::{Series, MAX_TERMS};
use crate::base;
use crate::darboux::{self, DeformedSystem, IndexSet, TypeISystem};
use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::{self, Scalar};
use crate::params::{Construction, Family, Params};
use crate::virtual_states::{self, virtual_energy};

/// Weight series, polynomials and the exact norm ratios they should reproduce.
#[derive(Debug, Clone)]
pub struct OrthoSetup {
    pub weight: Series,
    pub polys: Vec<LaurentPoly>,
    /// Exact `S_nn / S_00`.
    pub expected_ratio: Vec<Scalar>,
    /// Approximate `S_00` and its relative error bound.
    pub expected_s00: (f64, f64),
}

fn pochhammer_base(p: &Params) -> Scalar {
    match p.family {
        Family::LittleQJacobi => p.b.clone(),
        Family::LittleQLaguerre => Scalar::zero(),
    }
}

pub fn setup_type_ii(sys: &DeformedSystem, nmax: i64) -> Result<OrthoSetup> {
    let p = &sys.params;
    let q = &p.q;
    let shifted = p.plus_m_delta_tilde(sys.dset.m());
    let weight = Series {
        q: q.clone(),
        constant: scalar::one(),
        kappa: shifted.a.clone(),
        beta: pochhammer_base(&shifted),
        factors: vec![
            (sys.xi_denom.clone(), -1),
            (sys.xi_denom.shift_x(q, -1), -1),
        ],
    };
    let polys = (0..=nmax)
        .map(|n| sys.poly_y(n))
        .collect::<Result<Vec<_>>>()?;
    let expected_ratio = (0..=nmax)
        .map(|n| darboux::norm_ratio_deformed(&sys.dset, n, p))
        .collect();
    let (d0, err) = base::d0_sq_approx(p);
    let dt = scalar::to_f64(&darboux::dtilde_sq(&sys.dset, 0, p));
    Ok(OrthoSetup {
        weight,
        polys,
        expected_ratio,
        expected_s00: (1.0 / (d0 * dt), err),
    })
}

pub fn setup_type_i(sys: &TypeISystem, nmax: i64) -> Result<OrthoSetup> {
    let p = &sys.params;
    let q = &p.q;
    let bp = virtual_states::virtual_data(p).bprime_new;
    let mut factors: Vec<(LaurentPoly, i32)> = (0..sys.dset.m() as i64)
        .map(|j| (bp.shift_x(q, j), 1))
        .collect();
    factors.push((sys.cas.clone(), -1));
    factors.push((sys.cas.shift_x(q, 1), -1));
    let weight = Series {
        q: q.clone(),
        constant: scalar::one(),
        kappa: p.a.clone(),
        beta: pochhammer_base(p),
        factors,
    };
    let polys = (0..=nmax)
        .map(|n| sys.q_poly(n))
        .collect::<Result<Vec<_>>>()?;
    let expected_ratio = (0..=nmax).map(|n| sys.norm_ratio(n)).collect();
    let (d0, err) = base::d0_sq_approx(p);
    let mut prod = scalar::one();
    for &d in sys.dset.indices() {
        prod *= -virtual_energy(d, p);
    }
    Ok(OrthoSetup {
        weight,
        polys,
        expected_ratio,
        expected_s00: (scalar::to_f64(&prod) / d0, err),
    })
}

pub fn setup(d: &IndexSet, p: &Params, nmax: i64) -> Result<OrthoSetup> {
    match p.construction {
        Construction::TypeII => setup_type_ii(&DeformedSystem::new(d, p)?, nmax),
        Construction::TypeI => setup_type_i(&TypeISystem::new(d, p)?, nmax),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: i64,
    pub computed: Scalar,
    pub exact: Scalar,
    /// Allowed relative deviation, `2 max(delta_n, delta_0)`.
    pub rel_bound: Scalar,
}

impl RatioRow {
    pub fn within(&self) -> bool {
        ((&self.computed - &self.exact) / &self.exact).abs() <= self.rel_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoResult {
    pub truncation_x: i64,
    /// Largest certified majorant ratio over all pairs.
    pub ratio_bound: Scalar,
    /// Partial sums `S_nm`, `x = 0..=truncation_x`.
    pub sums: Vec<Vec<Scalar>>,
    /// Certified bounds on the neglected tails of `S_nm`.
    pub tails: Vec<Vec<Scalar>>,
    pub ratios: Vec<RatioRow>,
}

struct Accumulator<'a> {
    setup: &'a OrthoSetup,
    next_x: i64,
    sums: Vec<Vec<Scalar>>,
}

impl<'a> Accumulator<'a> {
    fn new(setup: &'a OrthoSetup) -> Self {
        let k = setup.polys.len();
        Self {
            setup,
            next_x: 0,
            sums: vec![vec![Scalar::zero(); k]; k],
        }
    }

    fn extend_to(&mut self, x_trunc: i64) -> Result<()> {
        let q = &self.setup.weight.q;
        while self.next_x <= x_trunc {
            let x = self.next_x;
            let w = self.setup.weight.term(x)?;
            let vals: Vec<Scalar> = self
                .setup
                .polys
                .iter()
                .map(|f| f.eval_int_x(q, x))
                .collect();
            for (n, vn) in vals.iter().enumerate() {
                let wn = &w * vn;
                for (m, vm) in vals.iter().enumerate().skip(n) {
                    self.sums[n][m] += &wn * vm;
                }
            }
            self.next_x += 1;
        }
        Ok(())
    }

    /// Tails for every pair, or `None` if some majorant does not converge yet.
    #[allow(clippy::needless_range_loop)]
    fn tails(&self, x_trunc: i64) -> Result<Option<(Vec<Vec<Scalar>>, Scalar)>> {
        let k = self.setup.polys.len();
        let mut tails = vec![vec![Scalar::zero(); k]; k];
        let mut rho_max = Scalar::zero();
        for n in 0..k {
            for m in n..k {
                let s = self
                    .setup
                    .weight
                    .with_factor(self.setup.polys[n].clone(), 1)
                    .with_factor(self.setup.polys[m].clone(), 1);
                match s.tail_after(x_trunc)? {
                    Some((t, rho)) => {
                        if rho > rho_max {
                            rho_max = rho;
                        }
                        tails[n][m] = t;
                    }
                    None => return Ok(None),
                }
            }
        }
        Ok(Some((tails, rho_max)))
    }

    fn result(&self, x_trunc: i64, tails: Vec<Vec<Scalar>>, rho: Scalar) -> OrthoResult {
        let k = self.setup.polys.len();
        let mut sums = self.sums.clone();
        let mut tails = tails;
        for n in 0..k {
            for m in 0..n {
                sums[n][m] = sums[m][n].clone();
                tails[n][m] = tails[m][n].clone();
            }
        }
        let rel = |n: usize| &tails[n][n] / &sums[n][n];
        let ratios = (0..k)
            .map(|n| {
                let d = std::cmp::max(rel(n), rel(0));
                RatioRow {
                    n: n as i64,
                    computed: &sums[n][n] / &sums[0][0],
                    exact: self.setup.expected_ratio[n].clone(),
                    rel_bound: d * scalar::int(2),
                }
            })
            .collect();
        OrthoResult {
            truncation_x: x_trunc,
            ratio_bound: rho,
            sums,
            tails,
            ratios,
        }
    }
}

/// Sums truncated at a fixed point.
pub fn orthogonality_at(setup: &OrthoSetup, x_trunc: i64) -> Result<OrthoResult> {
    let mut acc = Accumulator::new(setup);
    acc.extend_to(x_trunc)?;
    match acc.tails(x_trunc)? {
        Some((tails, rho)) => Ok(acc.result(x_trunc, tails, rho)),
        None => Err(Error::NonConvergence(x_trunc as usize)),
    }
}

/// Grows the truncation until every tail is below `eps` relative to its diagonal scale.
pub fn orthogonality_adaptive(setup: &OrthoSetup, eps: &Scalar) -> Result<OrthoResult> {
    let mut acc = Accumulator::new(setup);
    let k = setup.polys.len();
    let mut x_trunc = 16;
    while x_trunc <= MAX_TERMS {
        acc.extend_to(x_trunc)?;
        if let Some((tails, rho)) = acc.tails(x_trunc)? {
            let small = (0..k).all(|n| {
                (n..k).all(|m| {
                    let scale_sq = &acc.sums[n][n] * &acc.sums[m][m];
                    let t = &tails[n][m];
                    t * t <= eps * eps * scale_sq.abs()
                })
            });
            if small {
                return Ok(acc.result(x_trunc, tails, rho));
            }
        }
        x_trunc += 8;
    }
    Err(Error::NonConvergence(MAX_TERMS as usize))
}

/// Checks derived from a finished orthogonality computation.
pub fn checks_from(setup: &OrthoSetup, r: &OrthoResult) -> Vec<Check> {
    let mut out = vec![Check::pass(
        "ortho/truncation",
        format!(
            "X = {}, rho <= {}",
            r.truncation_x,
            scalar::to_sci(&r.ratio_bound, 4)
        ),
    )];
    let k = r.sums.len();
    for n in 0..k {
        for m in n + 1..k {
            let s = r.sums[n][m].abs();
            let t = &r.tails[n][m];
            out.push(
                Check::from_bool(
                    format!("ortho/offdiag/{n},{m}"),
                    &s <= t,
                    format!("|S| = {}", scalar::to_sci(&s, 4)),
                )
                .with_bound(scalar::to_sci(t, 4)),
            );
        }
    }
    for row in r.ratios.iter().skip(1) {
        let dev = ((&row.computed - &row.exact) / &row.exact).abs();
        out.push(
            Check::from_bool(
                format!("ortho/ratio/{}", row.n),
                row.within(),
                format!(
                    "exact {}, relative deviation {}",
                    scalar::format(&row.exact),
                    scalar::to_sci(&dev, 4)
                ),
            )
            .with_bound(scalar::to_sci(&row.rel_bound, 4)),
        );
    }
    let s00 = scalar::to_f64(&r.sums[0][0]);
    let (expected, err) = setup.expected_s00;
    let dev = ((s00 - expected) / expected).abs();
    let tol = 1e-12 + err;
    out.push(
        Check::from_bool(
            "ortho/s00",
            dev <= tol,
            format!("S00 = {s00:.15e}, expected {expected:.15e}"),
        )
        .with_bound(format!("{tol:.3e}")),
    );
    out
}

pub fn orthogonality_check(
    d: &IndexSet,
    p: &Params,
    nmax: i64,
    eps: &Scalar,
) -> Result<(Vec<Check>, OrthoResult)> {
    if !eps.is_positive() {
        return Err(Error::InvalidParams("eps must be positive".into()));
    }
    let s = setup(d, p, nmax)?;
    let r = orthogonality_adaptive(&s, eps)?;
    Ok((checks_from(&s, &r), r))
}
