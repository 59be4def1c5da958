//! The `bernstein` command line: `tables`, `verify`, `ft`, `census`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 budget refusal.

mod config;
mod tables;
mod verify;

pub use config::{parse_config_text, parse_primes, parse_suites, Format, Overrides, RunConfig, Suite};
pub use tables::{build_tables, render_tables, rows_to_csv, table_json, Table, TableKind, TableRow};
pub use verify::{render_reports, run_suite, run_verify, CaseRecord, VerificationReport};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::error::{Error, Result};
use crate::latticeft::{ft_g_minus_k, ft_truncated, parse_target, stabilize, Method, TruncatedLattice};
use crate::projectors::supercuspidal_census;
use crate::qfield::{check_odd_prime, CyclotomicSum};
use crate::scalar::{Depth, HalfInt};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bernstein", version, about = "Bernstein projectors for SL(2) over p-adic fields: tables and verifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// key = value configuration file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Residue field sizes, comma separated.
    #[arg(long)]
    pub q: Option<String>,
    /// Output format: md, csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Largest depth, e.g. 2 or 3/2.
    #[arg(long)]
    pub depth_max: Option<String>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            q: self.q.clone(),
            depth_max: self.depth_max.clone(),
            format: self.format.clone(),
            output: self.output.clone(),
            ..Default::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit e_0, e^cusp_d, half-integral e_d and σ_d on the class grid.
    Tables {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Suites, comma separated, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Primes for the p-adic suites (ps-oracle, ft-vanish, kim).
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        ell_max: Option<u32>,
        #[arg(long)]
        point_budget: Option<u128>,
    },
    /// Truncated Fourier transform of 1_{g_{-k}} at Y, swept over ℓ until stable.
    Ft {
        #[arg(long)]
        p: u64,
        /// Y as four comma-separated entries a,b,c,-a; entries may be n/p^e.
        #[arg(long = "Y", allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        ell_min: Option<u32>,
        #[arg(long, default_value_t = 2)]
        ell_max: u32,
        /// brute, stratified or auto.
        #[arg(long, default_value = "brute")]
        method: String,
        #[arg(long)]
        point_budget: Option<u128>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Supercuspidal counts, formal degrees and multiplicities.
    Census {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PointBudget { .. } | Error::QAboveBudget { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn write_out(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_method(s: &str) -> Result<Method> {
    match s {
        "brute" => Ok(Method::Brute),
        "stratified" => Ok(Method::Stratified),
        "auto" => Ok(Method::Auto),
        other => Err(Error::InvalidInput(format!("unknown method {other:?} (brute, stratified, auto)"))),
    }
}

fn float_value(s: &CyclotomicSum) -> f64 {
    match s.to_rational() {
        Some(r) => r.to_f64().unwrap_or(f64::NAN),
        None => s.to_complex().0,
    }
}

fn sum_json(s: &CyclotomicSum) -> serde_json::Value {
    json!({
        "order": s.order(),
        "counts": s.counts().iter().map(tables::big_json).collect::<Vec<_>>(),
        "scale": s.scale().to_string(),
    })
}

fn cmd_ft(
    p: u64,
    y: &str,
    k: u32,
    ell_min: Option<u32>,
    ell_max: u32,
    method: &str,
    budget: Option<u128>,
) -> Result<String> {
    check_odd_prime(p)?;
    let target = parse_target(p, y)?;
    let method = parse_method(method)?;
    let budget = budget.unwrap_or_else(crate::latticeft::point_budget);
    let start = ell_min.unwrap_or(k).max(k);
    if start > ell_max {
        return Err(Error::InvalidInput(format!("empty ℓ range {start}..={ell_max}")));
    }
    let st = stabilize(start, ell_max, |ell| {
        if k == 0 {
            ft_truncated(&target, ell, HalfInt::ZERO, method, budget)
        } else {
            ft_g_minus_k(k, &target, ell, method, budget)
        }
    })?;
    let (ell, value) = match st.stable_at {
        Some(l) => (l, st.value().expect("stable value").clone()),
        None => st.values.last().cloned().expect("nonempty range"),
    };
    let inner = if k == 0 { target.clone() } else { target.scaled(-(k as i32)) };
    let inner_ell = ell - k;
    let order = p.pow(inner_ell + inner.denominator_exponent() + 1);
    let lattice = TruncatedLattice::for_target(&inner, inner_ell, HalfInt::ZERO);
    let sweep: Vec<_> = st
        .values
        .iter()
        .map(|(l, v)| json!({ "ell": l, "value": v.to_string(), "value_float": float_value(v) }))
        .collect();
    let out = json!({
        "p": p,
        "k": k,
        "Y": target.to_string(),
        "ell": ell,
        "histogram_order": order,
        "value_exact": sum_json(&value),
        "value": value.to_string(),
        "value_float": float_value(&value),
        "stabilized": st.stable_at.is_some(),
        "path": if k == 0 { "direct".to_string() } else { format!("p^{} × transform at ϖ^-{k} Y", 3 * k) },
        "residual_precision": lattice.s,
        "sweep": sweep,
    });
    serde_json::to_string_pretty(&out).map(|s| s + "\n").map_err(|e| Error::InvalidInput(format!("json: {e}")))
}

fn cmd_census(cfg: &RunConfig) -> Result<String> {
    let mut records = Vec::new();
    for &q in &cfg.q_list {
        for d in cfg.depth_max.up_to().filter(|d| *d != Depth::ZERO) {
            records.push(supercuspidal_census(q, d)?);
        }
    }
    let opt = |v: &Option<num_rational::BigRational>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
    Ok(match cfg.format {
        Format::Json => serde_json::to_string_pretty(&records)
            .map(|s| s + "\n")
            .map_err(|e| Error::InvalidInput(format!("json: {e}")))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let wrap = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
            w.write_record([
                "q", "depth", "per_family", "families", "total", "per_induced", "orbits", "formal_degree", "multiplicity",
            ])
            .map_err(wrap)?;
            for r in &records {
                w.write_record([
                    r.q.to_string(),
                    r.depth.to_string(),
                    opt(&r.per_family),
                    r.families.to_string(),
                    opt(&r.total()),
                    r.per_induced.to_string(),
                    opt(&r.orbits),
                    r.formal_degree.to_string(),
                    r.multiplicity.to_string(),
                ])
                .map_err(wrap)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?)
                .map_err(|e| Error::InvalidInput(e.to_string()))?
        }
        Format::Md => {
            let mut s = String::from(
                "| q | d | per family | families | total | classes per induced | orbits | formal degree | multiplicity |\n\
                 |---:|---:|---:|---:|---:|---:|---:|---:|---:|\n",
            );
            for r in &records {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.q,
                    r.depth,
                    opt(&r.per_family),
                    r.families,
                    opt(&r.total()),
                    r.per_induced,
                    opt(&r.orbits),
                    r.formal_degree,
                    r.multiplicity
                ));
            }
            s
        }
    })
}

/// Run a parsed command; returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    let result: Result<i32> = (|| match cli.command {
        Command::Tables { common } => {
            let cfg = RunConfig::resolve(common.config.as_deref(), &common.overrides())?;
            let text = render_tables(&build_tables(&cfg.q_list, cfg.depth_max)?, cfg.format)?;
            write_out(cfg.output.as_ref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { common, suite, p, ell_max, point_budget } => {
            let flags = Overrides { suites: suite, p, ell_max, point_budget, ..common.overrides() };
            let cfg = RunConfig::resolve(common.config.as_deref(), &flags)?;
            let reports = run_verify(&cfg)?;
            write_out(cfg.output.as_ref(), &render_reports(&reports, cfg.format)?)?;
            for r in &reports {
                eprintln!("{}: {} ({} passed, {} failed, {} ms)", r.suite, if r.pass { "PASS" } else { "FAIL" }, r.passed, r.failed, r.wall_ms);
            }
            Ok(if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Ft { p, y, k, ell_min, ell_max, method, point_budget, output } => {
            let text = cmd_ft(p, &y, k, ell_min, ell_max, &method, point_budget)?;
            write_out(output.as_ref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Census { common } => {
            let cfg = RunConfig::resolve(common.config.as_deref(), &common.overrides())?;
            write_out(cfg.output.as_ref(), &cmd_census(&cfg)?)?;
            Ok(EXIT_OK)
        }
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Parse `args` and run; clap usage errors map to exit code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
