//! `horn`: evaluate Horn functions, inspect the identity catalog and run the
//! verification harness.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horn_kernel::catalog::{catalog, registry_json, IdentityRecord, RegistryStatus};
use horn_kernel::error::HornError;
use horn_kernel::harness::{
    canonical_json, format_float, render_csv, render_json, render_text, run, SamplePlan, Status,
    TolerancePolicy,
};
use horn_kernel::parallel::Execution;
use horn_kernel::series::{eval, in_domain, EvalPoint, HornFunctionId, SeriesConfig};
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_POLE_OR_DOMAIN: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

const PARAM_HELP: &str = "Parameters in order, comma separated:
  h1 α,β,γ,δ   h2 α,β,γ,δ,ε   h3 α,β,γ   h4 α,β,γ,δ
  h5 α,β,γ     h6 α,β,γ       h7 α,β,γ,δ";

#[derive(Parser)]
#[command(name = "horn", version, about = "Horn double hypergeometric functions H1-H7")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Check the identity catalog on random admissible instances.
    Verify(VerifyArgs),
    /// Print the identity registry as JSON.
    ListIdentities,
    /// Tabulate one function over a rectangular grid as CSV.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Trunc {
    /// Highest power of x summed.
    #[arg(long, default_value_t = SeriesConfig::default().max_m)]
    max_m: usize,
    /// Highest power of y summed.
    #[arg(long, default_value_t = SeriesConfig::default().max_n)]
    max_n: usize,
    /// Target bound on the dropped tail.
    #[arg(long, default_value = "1e-12")]
    tail_tol: f64,
}

impl Trunc {
    fn config(&self) -> SeriesConfig {
        SeriesConfig {
            max_m: self.max_m,
            max_n: self.max_n,
            tail_tol: self.tail_tol,
            ..SeriesConfig::default()
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// h1..h7
    #[arg(long, short)]
    function: HornFunctionId,
    #[arg(long, short, value_delimiter = ',', allow_hyphen_values = true, long_help = PARAM_HELP)]
    params: Vec<f64>,
    /// x,y
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    point: (f64, f64),
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    trunc: Trunc,
}

#[derive(Args)]
struct VerifyArgs {
    /// Only identities whose id starts with this prefix.
    #[arg(long)]
    identity: Option<String>,
    /// Draws per identity and free-integer value.
    #[arg(long, default_value_t = SamplePlan::default().n_samples)]
    samples: usize,
    #[arg(long, env = "HORN_KERNEL_SEED", default_value_t = SamplePlan::default().seed)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Absolute tolerance; setting either tolerance drops the per-family overrides.
    #[arg(long)]
    a_tol: Option<f64>,
    #[arg(long)]
    r_tol: Option<f64>,
    /// Recursion depths k, comma separated.
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<u32>>,
    /// Operator orders s, comma separated.
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<u32>>,
    /// Truncation R of the generating-function sums.
    #[arg(long = "sum-terms")]
    r: Option<u32>,
    #[command(flatten)]
    trunc: Trunc,
}

#[derive(Clone, Copy, Debug)]
struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Axis {
    fn nodes(self) -> impl Iterator<Item = f64> {
        (0..self.n).map(move |i| {
            if self.n == 1 {
                self.lo
            } else {
                self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
            }
        })
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("axis `{s}` is not lo:hi:n"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        let n: usize = n.trim().parse().map_err(|e| format!("`{n}`: {e}"))?;
        if n == 0 {
            return Err("grid needs at least one node per axis".into());
        }
        Ok(Axis {
            lo: num(lo)?,
            hi: num(hi)?,
            n,
        })
    }
}

fn parse_grid(s: &str) -> Result<(Axis, Axis), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("grid `{s}` is not x0:x1:nx,y0:y1:ny"))?;
    Ok((x.parse()?, y.parse()?))
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("point `{s}` is not x,y"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((num(x)?, num(y)?))
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, short)]
    function: HornFunctionId,
    #[arg(long, short, value_delimiter = ',', allow_hyphen_values = true, long_help = PARAM_HELP)]
    params: Vec<f64>,
    /// x0:x1:nx,y0:y1:ny
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: (Axis, Axis),
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    trunc: Trunc,
}

/// A failure together with the exit code it maps to.
struct Failure(u8, String);

impl From<HornError> for Failure {
    fn from(e: HornError) -> Self {
        let code = match e {
            HornError::Pole(_) | HornError::Domain(_) | HornError::Overflow(_) => EXIT_POLE_OR_DOMAIN,
            HornError::NonConvergence(_) => EXIT_NON_CONVERGENCE,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure(EXIT_USAGE, format!("stdout: {e}")))
        }
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<u8, Failure> {
    a.function.check_arity(&a.params)?;
    let cfg = a.trunc.config();
    cfg.validate()?;
    let r = eval(a.function, &a.params, EvalPoint::new(a.point.0, a.point.1), &cfg)?;
    let text = match a.format {
        Format::Json => {
            let v = json!({
                "function": a.function.name(),
                "params": a.params,
                "point": {"x": a.point.0, "y": a.point.1},
                "value": r.value,
                "err_estimate": r.err_estimate,
                "terms_used": r.terms_used,
                "in_domain": r.in_domain,
                "truncated_cleanly": r.truncated_cleanly,
            });
            canonical_json(&v) + "\n"
        }
        Format::Csv => format!(
            "value,err_estimate,terms_used,in_domain,truncated_cleanly\n{},{},{},{},{}\n",
            format_float(r.value),
            format_float(r.err_estimate),
            r.terms_used,
            r.in_domain,
            r.truncated_cleanly
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "value {}", format_float(r.value));
            let _ = writeln!(s, "err_estimate {}", format_float(r.err_estimate));
            let _ = writeln!(s, "terms_used {}", r.terms_used);
            let _ = writeln!(s, "in_domain {}", r.in_domain);
            let _ = writeln!(s, "truncated_cleanly {}", r.truncated_cleanly);
            s
        }
    };
    emit(None, &text)?;
    Ok(EXIT_OK)
}

fn blocks_exit(r: &horn_kernel::harness::IdentityReport) -> bool {
    !r.open_question && matches!(r.status, Status::Disputed | Status::Inconclusive)
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let cfg = a.trunc.config();
    let mut plan = SamplePlan {
        seed: a.seed,
        n_samples: a.samples,
        ..SamplePlan::default()
    };
    if let Some(k) = &a.k {
        plan.k_values = k.clone();
    }
    if let Some(s) = &a.s {
        plan.s_values = s.clone();
    }
    if let Some(r) = a.r {
        plan.r_trunc = r;
    }
    let tol = if a.a_tol.is_some() || a.r_tol.is_some() {
        let d = TolerancePolicy::default();
        TolerancePolicy::uniform(a.a_tol.unwrap_or(d.a_tol), a.r_tol.unwrap_or(d.r_tol))
    } else {
        TolerancePolicy::default()
    };
    let records: Vec<IdentityRecord> = catalog()
        .into_iter()
        .filter(|r| a.identity.as_deref().is_none_or(|p| r.identity_id.starts_with(p)))
        .collect();
    if records.is_empty() {
        eprintln!(
            "warning: no identity matches `{}`",
            a.identity.as_deref().unwrap_or_default()
        );
    }
    if a.jobs == Some(0) {
        return Err(Failure(EXIT_USAGE, "--jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let mut report = run(&records, &plan, &tol, &cfg, Execution::from_jobs(a.jobs))?;
    if a.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let text = match a.format {
        Format::Text => render_text(&report),
        Format::Json => render_json(&report),
        Format::Csv => render_csv(&report),
    };
    emit(a.output.as_ref(), &text)?;
    for r in report.identities.iter().filter(|r| blocks_exit(r)) {
        let registered = match r.registry_status {
            RegistryStatus::Disputed => " (registered as disputed)",
            RegistryStatus::Active => "",
        };
        eprintln!("{} {}{registered}", r.status.as_str(), r.identity_id);
    }
    Ok(if report.identities.iter().any(blocks_exit) {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn cmd_list() -> Result<u8, Failure> {
    emit(None, &(canonical_json(&registry_json(&catalog())) + "\n"))?;
    Ok(EXIT_OK)
}

fn cmd_table(a: &TableArgs) -> Result<u8, Failure> {
    a.function.check_arity(&a.params)?;
    let cfg = a.trunc.config();
    cfg.validate()?;
    let (gx, gy) = a.grid;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure(EXIT_USAGE, e.to_string());
    w.write_record(["x", "y", "value", "err_estimate", "in_domain"])
        .map_err(csv_err)?;
    for x in gx.nodes() {
        for y in gy.nodes() {
            let p = EvalPoint::new(x, y);
            let r = eval(a.function, &a.params, p, &cfg)?;
            w.write_record([
                format_float(x),
                format_float(y),
                format_float(r.value),
                format_float(r.err_estimate),
                in_domain(a.function, p).to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    emit(a.output.as_ref(), &String::from_utf8_lossy(&bytes))?;
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ListIdentities => cmd_list(),
        Command::Table(a) => cmd_table(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
