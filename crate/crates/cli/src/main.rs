//! Command-line front end: construct multi-indexed polynomials, run the
//! verification suites and emit zeros or norm tables.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;
use qdarboux::darboux::{DeformedSystem, TypeISystem};
use qdarboux::exact::scalar;
use qdarboux::exact::to_eta;
use qdarboux::roots::find_zeros;
use qdarboux::verifier::{orthogonality_check, run_suite, Suite, SuiteConfig};
use qdarboux::{Construction, Error, EtaPoly, Family, IndexSet, LaurentPoly, Params, Scalar};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "qdarboux",
    version,
    about = "Multi-indexed little q-Jacobi and little q-Laguerre polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the denominator-normalized polynomials P_{D,n}, n = 0..=nmax.
    Construct,
    /// Run the verification suites and print a report.
    Verify,
    /// Zeros of P_{D,n} in the eta plane.
    Zeros {
        /// Single degree index; all n <= nmax when omitted.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Norm ratios S_nn / S_00 against their exact values.
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Parser)]
struct RunArgs {
    #[arg(long, global = true, default_value = "lqJacobi")]
    family: String,
    #[arg(long = "type", global = true, default_value_t = 2)]
    ctype: u8,
    #[arg(long, global = true, default_value = "1/2")]
    q: String,
    #[arg(long, global = true, default_value = "1/3")]
    a: String,
    #[arg(long, global = true, default_value = "1/16")]
    b: String,
    /// Comma-separated virtual indices, e.g. "1,3".
    #[arg(long, global = true, default_value = "")]
    indices: String,
    #[arg(long, global = true, default_value_t = 4)]
    nmax: i64,
    #[arg(long, global = true, default_value = "1e-24")]
    eps: String,
    #[arg(long, global = true, default_value_t = 60)]
    xmax: i64,
    #[arg(long = "prec-bits", global = true, default_value_t = 256)]
    prec_bits: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    out: Output,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suite selector: all, exact, structural, reflection, limit, random, ortho, zeros, positivity.
    #[arg(long, global = true, default_value = "all")]
    suite: String,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Config {
    dset: IndexSet,
    params: Params,
    args: RunArgs,
}

fn config(args: RunArgs) -> Result<Config, Failure> {
    let family = match args.family.to_ascii_lowercase().as_str() {
        "lqjacobi" | "jacobi" => Family::LittleQJacobi,
        "lqlaguerre" | "laguerre" => Family::LittleQLaguerre,
        other => return Err(Failure::Input(format!("unknown family {other:?}"))),
    };
    let construction = match args.ctype {
        1 => Construction::TypeI,
        2 => Construction::TypeII,
        other => return Err(Failure::Input(format!("type must be 1 or 2, got {other}"))),
    };
    let dset = IndexSet::parse(&args.indices)?;
    let b = match family {
        Family::LittleQJacobi => scalar::parse(&args.b)?,
        Family::LittleQLaguerre => Scalar::default(),
    };
    let params = Params::new(
        family,
        construction,
        scalar::parse(&args.q)?,
        scalar::parse(&args.a)?,
        b,
        dset.max(),
    )?;
    if args.nmax < 0 {
        return Err(Failure::Input("nmax must be non-negative".into()));
    }
    Ok(Config { dset, params, args })
}

/// Polynomials in `eta` for `n = 0..=nmax` together with their `y`-forms.
fn polys(cfg: &Config) -> Result<Vec<(EtaPoly, LaurentPoly)>, Failure> {
    let nmax = cfg.args.nmax;
    let ys: Vec<LaurentPoly> = match cfg.params.construction {
        Construction::TypeII => {
            let s = DeformedSystem::new(&cfg.dset, &cfg.params)?;
            (0..=nmax).map(|n| s.poly_y(n)).collect::<Result<_, _>>()?
        }
        Construction::TypeI => {
            let s = TypeISystem::new(&cfg.dset, &cfg.params)?;
            (0..=nmax)
                .map(|n| s.normalized_poly(n))
                .collect::<Result<_, _>>()?
        }
    };
    ys.into_iter()
        .map(|y| Ok((to_eta(&y).map_err(|e| Failure::Internal(e.to_string()))?, y)))
        .collect()
}

#[derive(Serialize)]
struct PolyOut {
    n: i64,
    basis: &'static str,
    coeffs: Vec<[String; 2]>,
    #[serde(rename = "ell_D")]
    ell_d: i64,
    leading: String,
    value_at_0: String,
    value_at_inf: String,
}

#[derive(Serialize)]
struct ConstructOut {
    family: String,
    #[serde(rename = "type")]
    construction: u8,
    q: String,
    a: String,
    b: String,
    #[serde(rename = "D")]
    dset: Vec<usize>,
    polynomials: Vec<PolyOut>,
}

fn construct(cfg: &Config) -> Result<(String, bool), Failure> {
    let p = &cfg.params;
    let mut out = Vec::new();
    for (n, (eta, y)) in polys(cfg)?.into_iter().enumerate() {
        let inf = y
            .eval_infinity()
            .map_err(|e| Failure::Internal(e.to_string()))?;
        out.push(PolyOut {
            n: n as i64,
            basis: "eta",
            coeffs: eta
                .coeffs()
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
            ell_d: cfg.dset.ell(),
            leading: scalar::format(&eta.leading()),
            value_at_0: scalar::format(&y.eval_int_x(&p.q, 0)),
            value_at_inf: scalar::format(&inf),
        });
    }
    let text = match cfg.args.out {
        Output::Json => {
            let doc = ConstructOut {
                family: p.family.name().into(),
                construction: cfg.args.ctype,
                q: scalar::format(&p.q),
                a: scalar::format(&p.a),
                b: scalar::format(&p.b),
                dset: cfg.dset.indices().to_vec(),
                polynomials: out,
            };
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))? + "\n"
        }
        Output::Csv => {
            let mut s = String::from("n,k,num,den\n");
            for row in &out {
                for (k, [num, den]) in row.coeffs.iter().enumerate() {
                    let _ = writeln!(s, "{},{k},{num},{den}", row.n);
                }
            }
            s
        }
    };
    Ok((text, true))
}

fn verify(cfg: &Config) -> Result<(String, bool), Failure> {
    let suites = Suite::parse(&cfg.args.suite)
        .ok_or_else(|| Failure::Input(format!("unknown suite {:?}", cfg.args.suite)))?;
    let mut sc = SuiteConfig::new(cfg.dset.clone(), cfg.params.clone());
    sc.nmax = cfg.args.nmax;
    sc.eps = scalar::parse(&cfg.args.eps)?;
    sc.xmax = cfg.args.xmax;
    sc.prec_bits = cfg.args.prec_bits;
    sc.seed = cfg.args.seed;
    sc.suites = suites;
    let report = run_suite(&sc);
    let text = match cfg.args.out {
        Output::Json => {
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Internal(e.to_string()))?
                + "\n"
        }
        Output::Csv => {
            let mut s = String::from("name,status,witness\n");
            for c in &report.checks {
                let status = serde_json::to_string(&c.status)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    csv_field(&c.name),
                    status.trim_matches('"'),
                    csv_field(&c.witness)
                );
            }
            s
        }
    };
    Ok((text, report.passed()))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn digits(bits: u64) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

fn zeros(cfg: &Config, only: Option<i64>) -> Result<(String, bool), Failure> {
    if cfg.params.construction != Construction::TypeII {
        return Err(Failure::Input(
            "zeros are reported for type II systems only".into(),
        ));
    }
    let bits = cfg.args.prec_bits;
    let s = DeformedSystem::new(&cfg.dset, &cfg.params)?;
    let ns: Vec<i64> = match only {
        Some(n) if n < 0 => return Err(Failure::Input("n must be non-negative".into())),
        Some(n) => vec![n],
        None => (0..=cfg.args.nmax).collect(),
    };
    let dig = digits(bits);
    let mut rows = Vec::new();
    for n in ns {
        let set = find_zeros(&s.poly(n)?, bits)?;
        let mut all: Vec<(bool, qdarboux::roots::Root)> = set
            .physical
            .into_iter()
            .map(|r| (true, r))
            .chain(set.unphysical.into_iter().map(|r| (false, r)))
            .collect();
        all.sort_by(|x, y| {
            x.1.value
                .re
                .cmp(&y.1.value.re)
                .then_with(|| x.1.value.im.cmp(&y.1.value.im))
        });
        for (phys, r) in all {
            rows.push((n, phys, r));
        }
    }
    let text = match cfg.args.out {
        Output::Csv => {
            let mut t = String::from("n,re,im,physical,residual,digits\n");
            for (n, phys, r) in &rows {
                let _ = writeln!(
                    t,
                    "{n},{},{},{phys},{:.3e},{dig}",
                    scalar::to_sci(&r.value.re, dig),
                    scalar::to_sci(&r.value.im, dig),
                    r.residual
                );
            }
            t
        }
        Output::Json => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, phys, r)| {
                    serde_json::json!({
                        "n": n,
                        "re": scalar::to_sci(&r.value.re, dig),
                        "im": scalar::to_sci(&r.value.im, dig),
                        "physical": phys,
                        "residual": format!("{:.3e}", r.residual),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "digits": dig, "zeros": list });
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))? + "\n"
        }
    };
    Ok((text, true))
}

fn table(cfg: &Config) -> Result<(String, bool), Failure> {
    let eps = scalar::parse(&cfg.args.eps)?;
    let (_, r) = orthogonality_check(&cfg.dset, &cfg.params, cfg.args.nmax, &eps)?;
    let dig = 30;
    let ok = r.ratios.iter().all(|row| row.within());
    let text = match cfg.args.out {
        Output::Csv => {
            let mut t =
                String::from("n,exact,computed,rel_deviation,rel_bound,within,truncation_x\n");
            for row in &r.ratios {
                let dev = ((&row.computed - &row.exact) / &row.exact).abs();
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{},{}",
                    row.n,
                    scalar::format(&row.exact),
                    scalar::to_sci(&row.computed, dig),
                    scalar::to_sci(&dev, 6),
                    scalar::to_sci(&row.rel_bound, 6),
                    row.within(),
                    r.truncation_x
                );
            }
            t
        }
        Output::Json => {
            let list: Vec<serde_json::Value> = r
                .ratios
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "n": row.n,
                        "exact": scalar::format(&row.exact),
                        "computed": scalar::to_sci(&row.computed, dig),
                        "rel_bound": scalar::to_sci(&row.rel_bound, 6),
                        "within": row.within(),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "truncation_x": r.truncation_x, "ratios": list });
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))? + "\n"
        }
    };
    Ok((text, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = config(cli.run).and_then(|cfg| match cli.command {
        Command::Construct => construct(&cfg),
        Command::Verify => verify(&cfg),
        Command::Zeros { n } => zeros(&cfg, n),
        Command::Table => table(&cfg),
    });
    match result {
        Ok((text, passed)) => {
            print!("{text}");
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
