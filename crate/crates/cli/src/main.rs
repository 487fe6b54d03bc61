//! `oddsymp`: characters, tables, oracle dumps and identity checks.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use oddsymp::characters::{character_table, CharacterSpec, Family};
use oddsymp::laurent::{variables_in, LaurentPoly, VarTable};
use oddsymp::par::Exec;
use oddsymp::partition::Partition;
use oddsymp::report::VerificationReport;
use oddsymp::series::{default_cap, oracle_table};
use oddsymp::suite::{run_all, run_check, CheckArgs, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "oddsymp", version, about = "Exact odd symplectic characters and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one character.
    Char(CharArgs),
    /// Characters for every partition in a box.
    Table(TableArgs),
    /// Run a named check (or `all`).
    Verify(VerifyArgs),
    /// Dump the characters read off the generating series.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct CharArgs {
    /// schur, sp_even, osp or osp_proctor
    family: String,
    /// Comma separated parts; empty for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    n: usize,
    /// Specialize a variable, e.g. `z=1`, `x1=q^2`. Repeatable.
    #[arg(long = "set", value_name = "VAR=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    family: String,
    #[arg(long)]
    n: usize,
    /// Defaults to the longest admissible length for the family.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_part: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    check: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of logical cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    /// Largest |λ| to read off; defaults to 4.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    json: bool,
}

/// Invalid input: reported on stderr with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Serialize)]
struct CharOut<'a> {
    family: Family,
    lambda: &'a Partition,
    n: usize,
    #[serde(flatten)]
    poly: &'a LaurentPoly,
}

#[derive(Serialize)]
struct Row<'a> {
    lambda: &'a Partition,
    poly: &'a LaurentPoly,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Char(a) => cmd_char(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_char(a: CharArgs) -> Result<ExitCode, UsageError> {
    let family: Family = a.family.parse()?;
    let lambda = Partition::parse(&a.lambda)?;
    let spec = CharacterSpec::new(family, lambda, a.n)?;
    let assignments = a
        .set
        .iter()
        .map(|s| parse_assignment(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut poly = spec.compute().map_err(UsageError::from)?;
    for (var, value) in &assignments {
        poly = specialize(&poly, var, value)?;
    }
    if a.json {
        let out = CharOut {
            family,
            lambda: &spec.lambda,
            n: spec.n,
            poly: &poly,
        };
        println!("{}", to_json(&out)?);
    } else {
        println!("{poly}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_assignment(s: &str) -> Result<(String, String), UsageError> {
    let (var, value) = s
        .split_once('=')
        .ok_or_else(|| UsageError(format!("bad assignment {s:?}; expected VAR=VALUE")))?;
    let (var, value) = (var.trim(), value.trim());
    if var.is_empty() || value.is_empty() {
        return Err(UsageError(format!("bad assignment {s:?}; expected VAR=VALUE")));
    }
    Ok((var.to_string(), value.to_string()))
}

/// Substitutes `var := value`, adding any new variables of `value` to the
/// table and dropping `var` once it no longer occurs.
fn specialize(poly: &LaurentPoly, var: &str, value: &str) -> Result<LaurentPoly, UsageError> {
    let vars = poly.vars();
    if vars.index_of(var).is_none() {
        return Err(UsageError(format!(
            "cannot set {var}: variables are {}",
            vars.names().join(", ")
        )));
    }
    let wide = vars.extended(&variables_in(value)?);
    let v = LaurentPoly::parse(value, &wide)?;
    let out = poly.with_vars(&wide)?.substitute_named(var, &v)?;
    let idx = wide.require(var)?;
    if out.terms().any(|(m, _)| m.exp(idx) != 0) {
        return Ok(out);
    }
    let kept = VarTable::new(wide.names().iter().filter(|n| n.as_str() != var))?;
    Ok(out.with_vars(&kept)?)
}

fn cmd_table(a: TableArgs) -> Result<ExitCode, UsageError> {
    let family: Family = a.family.parse()?;
    let max_len = a.max_len.unwrap_or(family.max_len(a.n));
    let rows = character_table(family, max_len, a.max_part, a.n, Exec::default())?;
    let rows: Vec<Row> = rows.iter().map(|(lambda, poly)| Row { lambda, poly }).collect();
    print_rows(&rows, a.json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(a: OracleArgs) -> Result<ExitCode, UsageError> {
    let cap = match a.degree {
        Some(d) => d + (a.n * (a.n + 1) / 2) as u32,
        None => default_cap(a.n),
    };
    let table = oracle_table(a.n, cap)?;
    let rows: Vec<Row> = table
        .iter()
        .map(|r| Row {
            lambda: &r.lambda,
            poly: &r.poly,
        })
        .collect();
    print_rows(&rows, a.json)?;
    Ok(ExitCode::SUCCESS)
}

fn print_rows(rows: &[Row], json: bool) -> Result<(), UsageError> {
    if json {
        println!("{}", to_json(&rows)?);
    } else {
        for r in rows {
            println!("{}\t{}", r.lambda, r.poly);
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, UsageError> {
    let args = CheckArgs {
        n: a.n,
        m: a.m,
        r: a.r,
        trials: a.trials,
        degree: a.degree,
        seed: a.seed,
    };
    let check = a.check.clone();
    let run = move || -> Result<Vec<VerificationReport>, UsageError> {
        let exec = Exec::default();
        if check == "all" {
            Ok(run_all(args.seed.unwrap_or(DEFAULT_SEED), exec))
        } else {
            Ok(run_check(&check, &args, exec)?)
        }
    };
    let reports = in_pool(a.jobs, run)?;
    if a.json {
        println!("{}", to_json(&reports)?);
    } else {
        for r in &reports {
            println!("{}", r.summary_line());
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        println!("{} passed, {} failed", reports.len() - failed, failed);
    }
    if reports.iter().all(|r| r.pass) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[cfg(feature = "parallel")]
fn in_pool<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> Result<T, UsageError> + Send,
) -> Result<T, UsageError> {
    match jobs {
        Some(0) => Err(UsageError("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j).build()?.install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> Result<T, UsageError> + Send,
) -> Result<T, UsageError> {
    if jobs == Some(0) {
        return Err(UsageError("--jobs must be at least 1".into()));
    }
    f()
}

fn to_json<T: Serialize>(v: &T) -> Result<String, UsageError> {
    Ok(serde_json::to_string_pretty(v)?)
}
