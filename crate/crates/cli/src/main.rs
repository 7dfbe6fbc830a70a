mod expr;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use mzv_core::exact::cot_poly::divisibility_experiment;
use mzv_core::exact::hoffman::{hat_h, hat_k, hat_t, t_coefficient, zagier_coefficient};
use mzv_core::harness::{verify_experiment, CheckConfig, CheckResult, Grid, Suite, SuiteConfig};
use mzv_core::numerics::constants::{const_pi, zeta_int};
use mzv_core::numerics::eval::eval_combination;
use mzv_core::series::{
    mzv_extrapolated, prefix_mhn_cached, Composition, Parity, SeriesKind, TruncationPlan,
};
use mzv_core::{RealBall, ZetaCombination};

use expr::Expr;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "mzv",
    version,
    about = "Multiple zeta and t-values: closed forms, quadrature and series"
)]
struct Cli {
    /// Significant decimal digits.
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
    /// Working precision in bits; defaults to digits*4 + 32.
    #[arg(long, global = true)]
    bits: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Tolerance for closed-form and quadrature comparisons; defaults to 10^-digits.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Tolerance for comparisons involving the series route.
    #[arg(long = "series-tol", global = true, default_value_t = 1e-8)]
    series_tol: f64,
    /// Worker threads for verification.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Zagier,
    T,
    Lemmas,
    Moments,
    Euler,
    Exact,
    Experiment,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    #[value(name = "hatH")]
    HatH,
    #[value(name = "hatT")]
    HatT,
    #[value(name = "hatK")]
    HatK,
    Coeffs,
    #[value(name = "tcoeffs")]
    TCoeffs,
    Mhn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate zeta(k1,..,kr), t(k1,..,kr), H(a,b), T(a,b), hatH(a,b), hatT(a,b) or hatK(a,b).
    /// Compositions use increasing indices: zeta(k1,..,kr) sums over n1 < .. < nr.
    Eval { expr: String },
    /// Run a verification suite and print a JSON-lines report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        amax: Option<u32>,
        #[arg(long)]
        bmax: Option<u32>,
        #[arg(long)]
        pmax: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print coefficient tables or exact combinations over a grid.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 2)]
        amax: u32,
        #[arg(long, default_value_t = 2)]
        bmax: u32,
        /// Table length for mhn.
        #[arg(long, default_value_t = 10)]
        nmax: u64,
        /// Odd weights for mhn.
        #[arg(long)]
        odd: bool,
    },
    /// Denominator experiment: divisibility, positivity and the beta bound.
    Experiment {
        #[arg(long, default_value_t = 6)]
        amax: u32,
    },
}

struct Settings {
    digits: u32,
    bits: u32,
    tol: f64,
    series_tol: f64,
    workers: usize,
}

impl Settings {
    fn from(cli: &Cli) -> Self {
        Settings {
            digits: cli.digits,
            bits: cli.bits.unwrap_or(cli.digits * 4 + 32),
            tol: cli.tol.unwrap_or_else(|| {
                format!("1e-{}", cli.digits)
                    .parse()
                    .expect("valid float literal")
            }),
            series_tol: cli.series_tol,
            workers: cli
                .workers
                .unwrap_or_else(|| {
                    std::thread::available_parallelism()
                        .map(|n| n.get())
                        .unwrap_or(1)
                })
                .max(1),
        }
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            bits: self.bits,
            tol: self.tol,
            series_tol: self.series_tol,
            ..CheckConfig::default()
        }
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Evaluated {
    value: RealBall,
    route: &'static str,
    exact: Option<ZetaCombination>,
}

/// Position of a single 3 among twos, as `(a, b)`.
fn hoffman_shape(parts: &[u32]) -> Option<(u32, u32)> {
    let threes: Vec<usize> = parts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k == 3)
        .map(|(i, _)| i)
        .collect();
    if threes.len() == 1 && parts.iter().all(|&k| k == 2 || k == 3) {
        let a = threes[0] as u32;
        return Some((a, parts.len() as u32 - a - 1));
    }
    None
}

fn series_plan(digits: u32) -> (TruncationPlan, bool) {
    if digits <= 10 {
        (TruncationPlan::default(), true)
    } else {
        (TruncationPlan::new(1024, (digits / 4 + 2).min(20)), false)
    }
}

fn eval_composition(parts: Vec<u32>, kind: SeriesKind, s: &Settings) -> Result<Evaluated, String> {
    let c = Composition::new(parts).map_err(|e| e.to_string())?;
    let p = c.parts();
    let bits = s.bits;
    let closed = |comb: ZetaCombination| Evaluated {
        value: eval_combination(&comb, bits),
        route: "closed_form",
        exact: Some(comb),
    };
    if let Some((a, b)) = hoffman_shape(p) {
        return Ok(closed(match kind {
            SeriesKind::Zeta => hat_h(a, b),
            SeriesKind::T => hat_t(a, b),
        }));
    }
    if p.iter().all(|&k| k == 2) {
        let n = p.len() as u32;
        let fact: BigInt = (1..=(2 * n as u64 + u64::from(kind == SeriesKind::Zeta)))
            .map(BigInt::from)
            .product();
        let den = match kind {
            SeriesKind::Zeta => fact,
            SeriesKind::T => fact << (2 * n) as usize,
        };
        let r = BigRational::new(1.into(), den);
        let v = const_pi(bits)
            .powi(2 * n as i64)
            .map_err(|e| e.to_string())?
            .mul_rational(&r, bits);
        return Ok(Evaluated {
            value: v,
            route: "closed_form",
            exact: None,
        });
    }
    if p.len() == 1 {
        let k = p[0];
        let mut v = zeta_int(k, bits);
        if kind == SeriesKind::T {
            let f = BigRational::new(
                (BigInt::from(1) << k as usize) - 1,
                BigInt::from(1) << k as usize,
            );
            v = v.mul_rational(&f, bits);
        }
        return Ok(Evaluated {
            value: v,
            route: "closed_form",
            exact: None,
        });
    }
    let (plan, fast) = series_plan(s.digits);
    let prec = if fast { 53 } else { bits };
    let v = mzv_extrapolated(&c, &plan, prec, kind).map_err(|e| e.to_string())?;
    Ok(Evaluated {
        value: v,
        route: "series",
        exact: None,
    })
}

fn evaluate(e: &Expr, s: &Settings) -> Result<Evaluated, String> {
    let exact = |comb: ZetaCombination| Evaluated {
        value: eval_combination(&comb, s.bits),
        route: "closed_form",
        exact: Some(comb),
    };
    match e {
        Expr::Zeta(p) => eval_composition(p.clone(), SeriesKind::Zeta, s),
        Expr::T(p) => eval_composition(p.clone(), SeriesKind::T, s),
        Expr::H(a, b) | Expr::HatH(a, b) => Ok(exact(hat_h(*a, *b))),
        Expr::TH(a, b) | Expr::HatT(a, b) => Ok(exact(hat_t(*a, *b))),
        Expr::HatK(a, b) => Ok(exact(hat_k(*a, *b))),
    }
}

fn cmd_eval(text: &str, fmt: Format, s: &Settings) -> ExitCode {
    let e = match expr::parse(text) {
        Ok(e) => e,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let ev = match evaluate(&e, s) {
        Ok(v) => v,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let rendered = ev.value.render(s.digits as usize);
    let show_terms = matches!(e, Expr::HatH(..) | Expr::HatT(..) | Expr::HatK(..));
    let radius = ev.value.rad().to_decimal(3);
    let rigor = serde_json::to_value(ev.value.rigor()).expect("rigor serializes");
    let rigor = rigor.as_str().unwrap_or("");
    let mut out = std::io::stdout().lock();
    let _ = match fmt {
        Format::Json => {
            let mut obj = json!({
                "expr": e.to_string(),
                "value": rendered.text,
                "digits": rendered.digits,
                "radius": radius,
                "rigor": rigor,
                "route": ev.route,
            });
            if let (true, Some(c)) = (show_terms, &ev.exact) {
                obj["terms"] = serde_json::to_value(c).expect("combination serializes");
            }
            writeln!(out, "{obj}")
        }
        Format::Csv => {
            let terms = if show_terms {
                ev.exact.as_ref().map(|c| c.to_string()).unwrap_or_default()
            } else {
                String::new()
            };
            writeln!(out, "expr,value,digits,radius,rigor,route,exact").and_then(|_| {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    csv_field(&e.to_string()),
                    rendered.text,
                    rendered.digits,
                    radius,
                    rigor,
                    ev.route,
                    csv_field(&terms)
                )
            })
        }
        Format::Text => {
            if let (true, Some(c)) = (show_terms, &ev.exact) {
                let _ = writeln!(out, "{e} = {c}");
            }
            writeln!(out, "{e} = {} ({}, {})", rendered.text, ev.route, rigor)
        }
    };
    if rendered.digits == 0 {
        return fail(
            EXIT_BUDGET,
            format!("value of {e} not resolved to any digit"),
        );
    }
    if rendered.reduced {
        eprintln!(
            "note: {} of {} requested digits are supported by the {} route",
            rendered.digits, s.digits, ev.route
        );
    }
    ExitCode::SUCCESS
}

fn result_text(r: &CheckResult) -> String {
    let params: Vec<String> = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let status = if r.passed { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{status} {} {} discrepancy={} tol={}",
        r.identity_id,
        params.join(" "),
        r.max_discrepancy,
        r.tolerance
    );
    if let Some(reason) = &r.reason {
        line.push_str(&format!(" reason=\"{reason}\""));
    }
    line
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: SuiteArg,
    amax: Option<u32>,
    bmax: Option<u32>,
    pmax: Option<u32>,
    nmax: Option<u32>,
    seed: Option<u64>,
    fmt: Format,
    s: &Settings,
) -> ExitCode {
    let suite = match suite {
        SuiteArg::Zagier => Suite::Zagier,
        SuiteArg::T => Suite::T,
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::Moments => Suite::Moments,
        SuiteArg::Euler => Suite::Euler,
        SuiteArg::Exact => Suite::Exact,
        SuiteArg::Experiment => Suite::Experiment,
        SuiteArg::All => Suite::All,
    };
    let mut grid = Grid::default();
    if amax.is_some() || bmax.is_some() {
        grid.hoffman_sum_max = None;
    }
    if let Some(a) = amax {
        grid.hoffman_amax = a;
        grid.experiment_amax = a;
    }
    if let Some(b) = bmax {
        grid.hoffman_bmax = b;
        grid.moment_bmax = b;
    }
    if let Some(p) = pmax {
        grid.half_pi_pmax = p;
        grid.clausen_pmax = p;
    }
    if let Some(n) = nmax {
        grid.moment_nmax = n;
        grid.wallis_nmax = n;
    }
    let mut config = SuiteConfig {
        suite,
        check: s.check_config(),
        grid,
        workers: s.workers,
        ..SuiteConfig::default()
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let report = match mzv_core::harness::run_suite(&config) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let mut out = std::io::stdout().lock();
    let _ = match fmt {
        Format::Json => write!(out, "{}", report.to_json_lines()),
        Format::Text => {
            for r in &report.results {
                let _ = writeln!(out, "{}", result_text(r));
            }
            writeln!(
                out,
                "suite {}: {} passed, {} failed, {} skipped in {} ms",
                report.suite, report.passed, report.failed, report.skipped, report.wall_ms
            )
        }
        Format::Csv => {
            let _ = writeln!(
                out,
                "identity_id,parameters,passed,max_discrepancy,tolerance,failure,reason"
            );
            for r in &report.results {
                let failure = r.failure.map(|k| {
                    serde_json::to_value(k)
                        .expect("kind serializes")
                        .as_str()
                        .unwrap_or("")
                        .to_string()
                });
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.identity_id,
                    csv_field(&Value::Object(r.parameters.clone()).to_string()),
                    r.passed,
                    r.max_discrepancy,
                    r.tolerance,
                    failure.unwrap_or_default(),
                    csv_field(r.reason.as_deref().unwrap_or(""))
                );
            }
            Ok(())
        }
    };
    for r in report.results.iter().filter(|r| r.failed()) {
        eprintln!("{}", result_text(r));
    }
    match report.exit_status() {
        0 => ExitCode::SUCCESS,
        3 => ExitCode::from(EXIT_BUDGET),
        _ => ExitCode::from(EXIT_VERIFY),
    }
}

fn emit_rows(header: &[&str], rows: Vec<Vec<String>>, fmt: Format) {
    let mut out = std::io::stdout().lock();
    match fmt {
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for r in rows {
                let _ = writeln!(
                    out,
                    "{}",
                    r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
                );
            }
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .into_iter()
                .map(|r| {
                    let m: serde_json::Map<String, Value> = header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| (h.to_string(), Value::String(v)))
                        .collect();
                    Value::Object(m)
                })
                .collect();
            let _ = writeln!(out, "{}", Value::Array(arr));
        }
        Format::Text => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<String>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(
                out,
                "{}",
                line(header.iter().map(|h| h.to_string()).collect())
            );
            for r in rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
    }
}

fn cmd_table(kind: TableKind, amax: u32, bmax: u32, nmax: u64, odd: bool, fmt: Format) -> ExitCode {
    let mut rows = Vec::new();
    match kind {
        TableKind::Coeffs | TableKind::TCoeffs => {
            for a in 0..=amax {
                for b in 0..=bmax {
                    for k in 1..=a + b + 1 {
                        let c = if kind == TableKind::Coeffs {
                            zagier_coefficient(a, b, k)
                        } else {
                            t_coefficient(a, b, k)
                        };
                        let c = c.expect("k in range");
                        rows.push(vec![
                            a.to_string(),
                            b.to_string(),
                            k.to_string(),
                            c.numer().to_string(),
                            c.denom().to_string(),
                        ]);
                    }
                }
            }
            emit_rows(&["a", "b", "k", "numerator", "denominator"], rows, fmt);
        }
        TableKind::HatH | TableKind::HatT | TableKind::HatK => {
            for a in 0..=amax {
                for b in 0..=bmax {
                    let comb = match kind {
                        TableKind::HatH => hat_h(a, b),
                        TableKind::HatT => hat_t(a, b),
                        _ => hat_k(a, b),
                    };
                    for (m, c) in comb.iter() {
                        rows.push(vec![
                            a.to_string(),
                            b.to_string(),
                            m.to_string(),
                            c.numer().to_string(),
                            c.denom().to_string(),
                        ]);
                    }
                }
            }
            emit_rows(
                &["a", "b", "monomial", "numerator", "denominator"],
                rows,
                fmt,
            );
        }
        TableKind::Mhn => {
            let parity = if odd { Parity::Odd } else { Parity::All };
            let table = match prefix_mhn_cached(bmax, nmax, parity, None) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_USAGE, e),
            };
            let first = parity.first_index();
            for (i, v) in table.values().iter().enumerate() {
                rows.push(vec![
                    (first + i as u64).to_string(),
                    v.numer().to_string(),
                    v.denom().to_string(),
                ]);
            }
            emit_rows(&["n", "numerator", "denominator"], rows, fmt);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_experiment(amax: u32, fmt: Format, s: &Settings) -> ExitCode {
    let cfg = s.check_config();
    let mut out = std::io::stdout().lock();
    let mut ok = true;
    if fmt == Format::Csv {
        let _ = writeln!(out, "a,scaled,divisor,divisible,integral,bound,passed");
    }
    for a in 0..=amax {
        let report = divisibility_experiment(a);
        let check = verify_experiment(a, &cfg);
        ok &= report.all_divisible && check.passed;
        let integral = check
            .route_values
            .iter()
            .find(|r| r.label == "B")
            .map(|r| r.value.clone())
            .unwrap_or_default();
        let bound = check
            .route_values
            .iter()
            .find(|r| r.label == "bound")
            .map(|r| r.value.clone())
            .unwrap_or_default();
        let scaled: Vec<String> = report
            .scaled_integers
            .values()
            .map(|v| v.to_string())
            .collect();
        let _ = match fmt {
            Format::Json => {
                let obj = json!({
                    "a": a,
                    "divisibility": report,
                    "integral": integral,
                    "bound": bound,
                    "check": check,
                });
                writeln!(out, "{obj}")
            }
            Format::Csv => writeln!(
                out,
                "{a},{},{},{},{integral},{bound},{}",
                scaled.join(" "),
                report.factorial_divisor,
                report.all_divisible,
                check.passed
            ),
            Format::Text => writeln!(
                out,
                "a={a}: scaled coefficients [{}], divisor {}, divisible={}, integral = {integral} in (0, {bound}){}",
                scaled.join(", "),
                report.factorial_divisor,
                report.all_divisible,
                check.reason.as_ref().map(|r| format!(" FAIL: {r}")).unwrap_or_default()
            ),
        };
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let s = Settings::from(&cli);
    if s.bits < 16 {
        return fail(EXIT_USAGE, "--bits must be at least 16");
    }
    match &cli.command {
        Command::Eval { expr } => cmd_eval(expr, cli.format.unwrap_or(Format::Text), &s),
        Command::Verify {
            suite,
            amax,
            bmax,
            pmax,
            nmax,
            seed,
        } => cmd_verify(
            *suite,
            *amax,
            *bmax,
            *pmax,
            *nmax,
            *seed,
            cli.format.unwrap_or(Format::Json),
            &s,
        ),
        Command::Table {
            kind,
            amax,
            bmax,
            nmax,
            odd,
        } => cmd_table(
            *kind,
            *amax,
            *bmax,
            *nmax,
            *odd,
            cli.format.unwrap_or(Format::Text),
        ),
        Command::Experiment { amax } => {
            cmd_experiment(*amax, cli.format.unwrap_or(Format::Text), &s)
        }
    }
}
