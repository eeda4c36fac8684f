//! The full verification battery.

use num::traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ortho::orthogonality_check;
use super::positivity::positivity_scan;
use super::report::{Check, VerificationReport};
use super::zeros::zero_checks;
use crate::base;
use crate::darboux::{self, casoratian_plus, DeformedSystem, IndexSet, TypeISystem};
use crate::error::Result;
use crate::exact::eta::to_eta;
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::{self, int, ratio, Scalar};
use crate::params::{Construction, Family, Params};
use crate::virtual_states;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Exact,
    Structural,
    Reflection,
    Limit,
    Random,
    Ortho,
    Zeros,
    Positivity,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Exact,
        Suite::Structural,
        Suite::Reflection,
        Suite::Limit,
        Suite::Random,
        Suite::Ortho,
        Suite::Zeros,
        Suite::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Structural => "structural",
            Suite::Reflection => "reflection",
            Suite::Limit => "limit",
            Suite::Random => "random",
            Suite::Ortho => "ortho",
            Suite::Zeros => "zeros",
            Suite::Positivity => "positivity",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL.iter().find(|x| x.name() == s).map(|x| vec![*x])
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dset: IndexSet,
    pub params: Params,
    pub nmax: i64,
    pub eps: Scalar,
    pub xmax: i64,
    pub prec_bits: u64,
    pub seed: u64,
    /// Random parameter points per identity in the `random` suite.
    pub random_points: usize,
    pub suites: Vec<Suite>,
}

impl SuiteConfig {
    pub fn new(dset: IndexSet, params: Params) -> Self {
        Self {
            dset,
            params,
            nmax: 4,
            eps: scalar::pow(&int(10), -24),
            xmax: 60,
            prec_bits: 256,
            seed: 0,
            random_points: 4,
            suites: Suite::ALL.to_vec(),
        }
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn guarded(name: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    r.unwrap_or_else(|e| vec![Check::fail(name, format!("error: {e}"))])
}

fn one_check(name: String, f: impl FnOnce() -> Result<Check>) -> Check {
    Check::from_result(name, f())
}

fn residual(name: String, f: impl FnOnce() -> Result<LaurentPoly>) -> Check {
    let r = f();
    match r {
        Ok(res) => Check::from_residual(name, &res),
        Err(e) => Check::fail(name, format!("error: {e}")),
    }
}

fn equal_check(name: String, a: &LaurentPoly, b: &LaurentPoly) -> Check {
    Check::from_residual(name, &(a - b))
}

fn base_checks(p: &Params, nmax: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        out.push(residual(format!("base/eigen/{n}"), || {
            let pn = base::eigenpoly_y(n, p)?;
            Ok(base::ht_apply(&pn, p) - pn.scale(&base::energy(n, p)))
        }));
    }
    for n in 1..=nmax {
        out.push(residual(format!("base/forward/{n}"), || {
            let lhs = base::forward_shift_apply(&base::eigenpoly_y(n, p)?, p);
            Ok(lhs - base::eigenpoly_y(n - 1, &p.plus_delta())?.scale(&base::energy(n, p)))
        }));
        out.push(residual(format!("base/backward/{n}"), || {
            let lhs = base::backward_shift_apply(&base::eigenpoly_y(n - 1, &p.plus_delta())?, p);
            Ok(lhs - base::eigenpoly_y(n, p)?)
        }));
    }
    out
}

fn virtual_checks(d: &IndexSet, p: &Params) -> Vec<Check> {
    let mut out = Vec::new();
    for &v in d.indices() {
        out.push(residual(format!("virtual/equation/{v}"), || {
            virtual_states::xi_diffeq_residual(v, p)
        }));
        out.push(one_check(format!("virtual/normalization/{v}"), || {
            virtual_states::check_virtual_poly(&virtual_states::xi_poly(v, p)?, p)?;
            Ok(Check::pass("", "degree and normalization exact"))
        }));
        if p.construction == Construction::TypeII {
            out.push(one_check(format!("virtual/positive_form/{v}"), || {
                let xi = virtual_states::xi_poly(v, p)?.poly;
                for x in 0..=12 {
                    let (val, positive) = virtual_states::xi_positive_form(v, x, p)?;
                    if val != xi.eval_int_x(&p.q, x) {
                        return Ok(Check::fail("", format!("x = {x}: routes disagree")));
                    }
                    if !positive {
                        return Ok(Check::fail("", format!("x = {x}: nonpositive term")));
                    }
                }
                Ok(Check::pass("", "x in [0, 12]"))
            }));
        }
    }
    out
}

fn denominator_checks(sys: &DeformedSystem) -> Result<Vec<Check>> {
    let p = &sys.params;
    let d = &sys.dset;
    let q = &p.q;
    let xi = &sys.xi_denom;
    let eta = to_eta(xi)?;
    let (xi_inf, _) = darboux::infinity_values(d, 0, p)?;
    let m = d.m();
    let fs: Vec<LaurentPoly> = sys.xi_polys.iter().map(|v| v.poly.clone()).collect();
    let sign = if (m * m.saturating_sub(1) / 2).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    };
    let plus = casoratian_plus(&fs, q)
        .shift_x(q, -(m as i64) + 1)
        .scale(&sign);
    Ok(vec![
        Check::from_bool(
            "deformed/xi/value_at_-1",
            xi.eval_int_x(q, -1) == int(1),
            "exact",
        ),
        Check::from_bool(
            "deformed/xi/degree",
            eta.degree() == Some(d.ell() as usize),
            format!("degree {:?}, l_D = {}", eta.degree(), d.ell()),
        ),
        Check::from_bool(
            "deformed/xi/leading",
            eta.leading() == darboux::c_xi(d, p)?,
            "closed form",
        ),
        Check::from_bool(
            "deformed/xi/infinity",
            xi.eval_infinity()? == xi_inf,
            "closed form",
        ),
        equal_check("deformed/casoratian_relation".into(), &sys.xi_cas, &plus),
    ])
}

fn poly_checks(sys: &DeformedSystem, n: i64) -> Result<Vec<Check>> {
    let p = &sys.params;
    let d = &sys.dset;
    let q = &p.q;
    let pn = sys.poly_y(n)?;
    let eta = to_eta(&pn)?;
    let (_, p_inf) = darboux::infinity_values(d, n, p)?;
    let want = (d.ell() + n) as usize;
    Ok(vec![
        Check::from_bool(
            format!("deformed/P/{n}/value_at_0"),
            pn.eval_int_x(q, 0) == int(1),
            "exact",
        ),
        Check::from_bool(
            format!("deformed/P/{n}/degree"),
            eta.degree() == Some(want),
            format!("degree {:?}, expected {want}", eta.degree()),
        ),
        Check::from_bool(
            format!("deformed/P/{n}/leading"),
            eta.leading() == darboux::c_p(d, n, p)?,
            "closed form",
        ),
        Check::from_bool(
            format!("deformed/P/{n}/infinity"),
            pn.eval_infinity()? == p_inf,
            "closed form",
        ),
    ])
}

/// `psi_D(x)^2 P_{D,0}(x)^2` against the ground-state product of `B_D / D_D`.
fn psi_check(sys: &DeformedSystem) -> Result<Check> {
    let p = &sys.params;
    let pots = darboux::deformed_potentials(&sys.dset, p)?;
    if sys.psi_sq(0)? != int(1) {
        return Ok(Check::fail("", "psi_D(0)^2 != 1"));
    }
    let p0 = sys.poly_y(0)?;
    for x in 1..=20 {
        let v = p0.eval_int_x(&p.q, x);
        if sys.psi_sq(x)? * &v * &v != darboux::ground_state_sq_product(x, &pots, &p.q)? {
            return Ok(Check::fail(
                "",
                format!("x = {x}: product formula disagrees"),
            ));
        }
    }
    Ok(Check::pass("", "x in [0, 20]"))
}

fn type_ii_exact_tasks<'a>(cfg: &'a SuiteConfig, p: &'a Params) -> Vec<Task<'a>> {
    let d = &cfg.dset;
    let nmax = cfg.nmax;
    let mut tasks: Vec<Task<'a>> = vec![
        Box::new(move || base_checks(p, nmax)),
        Box::new(move || virtual_checks(d, p)),
        Box::new(move || {
            guarded(
                "deformed/xi",
                DeformedSystem::new(d, p).and_then(|s| denominator_checks(&s)),
            )
        }),
        Box::new(move || {
            vec![residual("deformed/lowest".into(), || {
                darboux::lowest_matches_denominator(d, p)
            })]
        }),
        Box::new(move || {
            vec![one_check("deformed/psi".into(), || {
                psi_check(&DeformedSystem::new(d, p)?)
            })]
        }),
    ];
    for n in 0..=nmax {
        tasks.push(Box::new(move || {
            let run = || -> Result<Vec<Check>> {
                let sys = DeformedSystem::new(d, p)?;
                let sys_d = DeformedSystem::new(d, &p.plus_delta())?;
                let mut out = poly_checks(&sys, n)?;
                out.push(residual(format!("deformed/eigen/{n}"), || {
                    darboux::eigen_residual(&sys, &sys_d, n)
                }));
                out.push(residual(format!("deformed/forward/{n}"), || {
                    darboux::forward_residual(&sys, &sys_d, n)
                }));
                if n >= 1 {
                    out.push(residual(format!("deformed/backward/{n}"), || {
                        darboux::backward_residual(&sys, &sys_d, n)
                    }));
                }
                Ok(out)
            };
            guarded(&format!("deformed/P/{n}"), run())
        }));
    }
    tasks
}

fn type_i_exact_tasks<'a>(cfg: &'a SuiteConfig, p: &'a Params) -> Vec<Task<'a>> {
    let d = &cfg.dset;
    let nmax = cfg.nmax;
    let mut tasks: Vec<Task<'a>> = vec![
        Box::new(move || base_checks(p, nmax)),
        Box::new(move || virtual_checks(d, p)),
    ];
    for n in 0..=nmax {
        tasks.push(Box::new(move || {
            let run = || -> Result<Vec<Check>> {
                let sys = TypeISystem::new(d, p)?;
                let mut out = vec![Check::from_residual(
                    format!("typeI/eigen/{n}"),
                    &sys.eigen_residual(n)?,
                )];
                if let [v] = d.indices() {
                    let closed = darboux::single_indexed_type_i(*v, n, p)?;
                    out.push(equal_check(
                        format!("typeI/single_index/{n}"),
                        &sys.normalized_poly(n)?,
                        &closed,
                    ));
                }
                Ok(out)
            };
            guarded(&format!("typeI/{n}"), run())
        }));
    }
    tasks
}

/// Raw set `{d_1 + 1, ..., d_M + 1, 0}`.
fn lifted_with_zero(d: &IndexSet) -> Result<IndexSet> {
    let mut v: Vec<usize> = d.indices().iter().map(|x| x + 1).collect();
    v.push(0);
    IndexSet::raw(v)
}

fn permutation_check(d: &IndexSet, p: &Params) -> Result<Check> {
    let mut rev = d.indices().to_vec();
    rev.reverse();
    let dr = IndexSet::raw(rev)?;
    let a = darboux::deformed_potentials(d, p)?;
    let b = darboux::deformed_potentials(&dr, p)?;
    let xa = DeformedSystem::new(d, p)?.xi_denom;
    let xb = DeformedSystem::new(&dr, p)?.xi_denom;
    let ok = a.b.same_function(&b.b) && a.d.same_function(&b.d) && (xa == xb || xa == -xb);
    Ok(Check::from_bool("", ok, format!("reversed order {dr}")))
}

/// `P^I_{{1},n}` at `lambda - delta~^I` against `P^II_{{1},n}` at `lambda - delta~^II`.
fn type_relation_check(p: &Params, n: i64) -> Result<Check> {
    let pi = p.shifted(1, -1).with_construction(Construction::TypeI);
    let pii = p.shifted(-1, 1).with_construction(Construction::TypeII);
    let one = IndexSet::new(vec![1])?;
    let lhs = darboux::single_indexed_type_i(1, n, &pi)?;
    let raw = TypeISystem::new(&one, &pi)?.normalized_poly(n)?;
    let rhs = DeformedSystem::new(&one, &pii)?.poly_y(n)?;
    let ok = lhs == rhs && raw == rhs;
    Ok(Check::from_bool(
        "",
        ok,
        if ok { "equal" } else { "differ" },
    ))
}

fn structural_tasks<'a>(cfg: &'a SuiteConfig, p: &'a Params) -> Vec<Task<'a>> {
    let d = &cfg.dset;
    let nmax = cfg.nmax;
    let mut tasks: Vec<Task<'a>> = Vec::new();
    if d.m() >= 2 {
        tasks.push(Box::new(move || {
            vec![one_check("structural/permutation".into(), || {
                permutation_check(d, p)
            })]
        }));
    }
    tasks.push(Box::new(move || {
        let run = || -> Result<Vec<Check>> {
            let lifted = DeformedSystem::new(&lifted_with_zero(d)?, &p.shifted(-1, 1))?;
            let reduced = DeformedSystem::new(d, p)?;
            let mut out = vec![equal_check(
                "structural/reduction/xi".into(),
                &lifted.xi_denom,
                &reduced.xi_denom,
            )];
            for n in 0..=nmax {
                out.push(equal_check(
                    format!("structural/reduction/{n}"),
                    &lifted.poly_y(n)?,
                    &reduced.poly_y(n)?,
                ));
            }
            Ok(out)
        };
        guarded("structural/reduction", run())
    }));
    tasks.push(Box::new(move || {
        (0..=nmax.min(4))
            .map(|n| {
                one_check(format!("structural/type_relation_D1/{n}"), || {
                    type_relation_check(p, n)
                })
            })
            .collect()
    }));
    tasks
}

/// The `D = {2}` reflection `x -> -x, q -> 1/q` between the two types; expected to hold only for `n = 0, 1`.
///
/// The type I side is the raw Casoratian numerator at `1/q`, whose `y`
/// coefficients are read as coefficients in `q^x`. The reflection holds iff it
/// is proportional to the type II polynomial and normalizable at `x = 0`.
pub fn reflection_holds(p: &Params, n: i64) -> Result<bool> {
    let d2 = IndexSet::new(vec![2])?;
    let mut refl = p.with_construction(Construction::TypeI);
    refl.q = scalar::checked_inv(&p.q)?;
    let raw = TypeISystem::new(&d2, &refl)?.q_poly(n)?;
    let rhs = DeformedSystem::new(&d2, &p.with_construction(Construction::TypeII))?.poly_y(n)?;
    let at0 = raw.eval_int_x(&p.q, 0);
    if at0.is_zero() {
        return Ok(false);
    }
    Ok(raw.scale(&scalar::checked_inv(&at0)?) == rhs)
}

fn reflection_checks(p: &Params) -> Vec<Check> {
    if p.family != Family::LittleQJacobi {
        return Vec::new();
    }
    (0..=2)
        .map(|n| {
            let expected = n <= 1;
            one_check(format!("reflection/{n}"), || {
                let holds = reflection_holds(p, n)?;
                let witness = match (holds, expected) {
                    (true, true) => "holds",
                    (false, false) => "does not hold, as expected",
                    (true, false) => "unexpectedly holds",
                    (false, true) => "does not hold",
                };
                Ok(Check::from_bool("", holds == expected, witness))
            })
        })
        .collect()
}

/// Largest coefficient deviation between the little q-Jacobi polynomials at
/// `b = 2^{-k}` and the little q-Laguerre ones, over `Xi_D` and `P_{D,n}`, `n <= nmax`.
pub fn limit_deviation(d: &IndexSet, p: &Params, k: i64, nmax: i64) -> Result<Scalar> {
    let jac = Params::unchecked(
        Family::LittleQJacobi,
        Construction::TypeII,
        p.q.clone(),
        p.a.clone(),
        ratio(1, 1) / scalar::pow(&int(2), k),
        p.dmax,
    );
    let lag = Params::unchecked(
        Family::LittleQLaguerre,
        Construction::TypeII,
        p.q.clone(),
        p.a.clone(),
        Scalar::zero(),
        p.dmax,
    );
    let sj = DeformedSystem::new(d, &jac)?;
    let sl = DeformedSystem::new(d, &lag)?;
    let mut diffs = vec![&sj.xi_denom - &sl.xi_denom];
    for n in 0..=nmax {
        diffs.push(sj.poly_y(n)? - sl.poly_y(n)?);
    }
    let mut worst = Scalar::zero();
    for diff in diffs {
        for c in to_eta(&diff)?.coeffs() {
            if c.abs() > worst {
                worst = c.abs();
            }
        }
    }
    Ok(worst)
}

fn limit_check(d: &IndexSet, p: &Params, nmax: i64) -> Result<Check> {
    let devs = [10, 14, 18]
        .iter()
        .map(|&k| limit_deviation(d, p, k, nmax))
        .collect::<Result<Vec<_>>>()?;
    if devs.iter().any(Zero::is_zero) {
        return Ok(Check::pass("", "no b dependence"));
    }
    // Ratios r with 2^{-4.5} <= r <= 2^{-3.5}, compared through r^2.
    let (lo, hi) = (scalar::pow(&int(2), -9), scalar::pow(&int(2), -7));
    let ratios: Vec<Scalar> = devs.windows(2).map(|w| &w[1] / &w[0]).collect();
    let ok = ratios.iter().all(|r| {
        let r2 = r * r;
        r2 >= lo && r2 <= hi
    });
    let shown: Vec<String> = ratios
        .iter()
        .map(|r| format!("{:.4}", scalar::to_f64(r).log2()))
        .collect();
    Ok(Check::from_bool(
        "",
        ok,
        format!("log2 ratios {}", shown.join(", ")),
    ))
}

fn random_params(r: &mut ChaCha8Rng, fam: Family, dmax: usize) -> Result<Params> {
    let mut frac = |lo: &Scalar, hi: &Scalar| {
        let den: i64 = r.gen_range(7..97);
        lo + (hi - lo) * ratio(r.gen_range(1..den), den)
    };
    let q = frac(&ratio(1, 5), &ratio(4, 5));
    let a = frac(&int(0), &int(1));
    match fam {
        Family::LittleQJacobi => {
            let b = frac(&int(-1), &scalar::pow(&q, 1 + dmax as i64));
            Params::jacobi(q, a, b, dmax)
        }
        Family::LittleQLaguerre => Params::laguerre(q, a, dmax),
    }
}

fn random_point_check(d: &IndexSet, p: &Params, nmax: i64) -> Result<Check> {
    let sys = DeformedSystem::new(d, p)?;
    let sys_d = DeformedSystem::new(d, &p.plus_delta())?;
    let mut bad = Vec::new();
    for n in 0..=nmax {
        if !darboux::eigen_residual(&sys, &sys_d, n)?.is_zero() {
            bad.push(format!("eigen {n}"));
        }
        if !darboux::forward_residual(&sys, &sys_d, n)?.is_zero() {
            bad.push(format!("forward {n}"));
        }
        if n >= 1 && !darboux::backward_residual(&sys, &sys_d, n)?.is_zero() {
            bad.push(format!("backward {n}"));
        }
    }
    if !darboux::lowest_matches_denominator(d, p)?.is_zero() {
        bad.push("lowest".into());
    }
    let witness = format!(
        "q = {}, a = {}, b = {}{}",
        scalar::format(&p.q),
        scalar::format(&p.a),
        scalar::format(&p.b),
        if bad.is_empty() {
            String::new()
        } else {
            format!("; nonzero: {}", bad.join(", "))
        }
    );
    Ok(Check::from_bool("", bad.is_empty(), witness))
}

pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let d = &cfg.dset;
    let mut p = cfg.params.clone();
    p.dmax = p.dmax.max(d.max());
    let mut report = VerificationReport::new(&p, d);
    if let Err(e) = p.validate() {
        report.push(Check::fail("params/valid", e.to_string()));
        return report;
    }
    report.push(Check::pass("params/valid", "within the validated range"));
    let p = &p;
    let type_ii = p.construction == Construction::TypeII;
    let has = |s: Suite| cfg.suites.contains(&s);
    let nmax = cfg.nmax;
    let mut tasks: Vec<Task<'_>> = Vec::new();
    if has(Suite::Exact) {
        tasks.extend(if type_ii {
            type_ii_exact_tasks(cfg, p)
        } else {
            type_i_exact_tasks(cfg, p)
        });
    }
    if has(Suite::Structural) && type_ii {
        tasks.extend(structural_tasks(cfg, p));
    }
    if has(Suite::Reflection) {
        tasks.push(Box::new(move || reflection_checks(p)));
    }
    if has(Suite::Limit) && type_ii {
        tasks.push(Box::new(move || {
            vec![one_check("limit/b_to_0".into(), || limit_check(d, p, nmax))]
        }));
    }
    if has(Suite::Random) && type_ii {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let points: Vec<Result<Params>> = (0..cfg.random_points)
            .map(|_| random_params(&mut rng, p.family, d.max()))
            .collect();
        for (k, point) in points.into_iter().enumerate() {
            tasks.push(Box::new(move || {
                let name = format!("random/{k}");
                vec![match &point {
                    Ok(rp) => one_check(name, || random_point_check(d, rp, nmax.min(3))),
                    Err(e) => Check::fail(name, format!("error: {e}")),
                }]
            }));
        }
    }
    if has(Suite::Ortho) {
        let eps = &cfg.eps;
        tasks.push(Box::new(move || {
            guarded(
                "ortho",
                orthogonality_check(d, p, nmax, eps).map(|(c, _)| c),
            )
        }));
    }
    if has(Suite::Zeros) && type_ii {
        let bits = cfg.prec_bits;
        tasks.push(Box::new(move || {
            guarded(
                "zeros",
                DeformedSystem::new(d, p).map(|s| zero_checks(&s, nmax, bits)),
            )
        }));
    }
    if has(Suite::Positivity) {
        let xmax = cfg.xmax;
        tasks.push(Box::new(move || positivity_scan(d, p, xmax)));
    }
    let results: Vec<Vec<Check>> = tasks.par_iter().map(|t| t()).collect();
    report.extend(results.into_iter().flatten());
    report
}
