//! The `stirconv` command line.
//!
//! Exit codes: 0 when every verdict matches what the registry expects, 1
//! for an unexpected verdict, 2 for usage and I/O errors.

pub mod files;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use crate::identities::{
    check_grid, expectation_met, explore, ExploreId, ExploreParams, ExploreRow, IdentityId,
};
use crate::kernel::{
    bell, format_rational, in_unit_interval, parse_rational, rat, ratio, triangle, ExactRational,
    TriangleKind,
};
use crate::series::{
    apply_transform, dual_path_check, kernel_gf, todorov_gf, GfKind, TransformKind,
};

pub use files::{ReportEntry, SequenceFile};

#[derive(Debug, Parser)]
#[command(
    name = "stirconv",
    version,
    about = "Exact Stirling/Lah/Bell convolutions and series transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a number triangle (or the Bell numbers) for rows 0..=n-max.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path, `-` for stdout.
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Check identities over the grid 0 <= p <= n <= n-max.
    Check {
        /// Identity ids; repeat or separate with commas.
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        id: Vec<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Values of mu (defaults to -2,-1,-1/2,1/3,1/2,3/4,1,2).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<String>,
        /// Values of z (defaults to -3/2,-1,1/2,1,4).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<String>,
        /// Write every report as JSON here.
        #[arg(long)]
        report: Option<String>,
    },
    /// Apply a series transformation to a sequence file.
    Transform {
        #[arg(long, value_enum)]
        name: TransformName,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        order: Option<usize>,
        /// Input sequence file, `-` for stdin.
        #[arg(long, short, default_value = "-")]
        input: String,
        #[arg(long, short, default_value = "-")]
        out: String,
        /// Also build the generating-function side and require agreement.
        #[arg(long)]
        verify: bool,
    },
    /// Expand a column generating function into its sequence terms.
    Expand {
        #[arg(long, value_enum)]
        gf: GfName,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        order: usize,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Tabulate a convolution that has no known closed form.
    Explore {
        #[arg(long)]
        id: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Stirling1,
    Stirling1u,
    Stirling2,
    Lah,
    Binom,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformName {
    Stirling2,
    Stirling1,
    Lah,
    Binomial,
    Euler,
    Geomsum,
    Logdivide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GfName {
    Stirling2,
    Stirling1,
    Lah,
    Binom,
    Todorov,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable input, unwritable output.
    Usage(String),
    /// Ran fine, but a verdict was not the expected one.
    Unexpected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Unexpected(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Unexpected(m) => write!(f, "unexpected verdict: {m}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code. Summaries go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

fn default_mu_set() -> Vec<ExactRational> {
    vec![
        rat(-2),
        rat(-1),
        ratio(-1, 2),
        ratio(1, 3),
        ratio(1, 2),
        ratio(3, 4),
        rat(1),
        rat(2),
    ]
}

fn default_z_set() -> Vec<ExactRational> {
    vec![ratio(-3, 2), rat(-1), ratio(1, 2), rat(1), rat(4)]
}

fn parse_list(
    raw: &[String],
    default: fn() -> Vec<ExactRational>,
) -> CliResult<Vec<ExactRational>> {
    if raw.is_empty() {
        return Ok(default());
    }
    raw.iter()
        .map(|s| parse_rational(s).map_err(CliError::from))
        .collect()
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    if path == "-" {
        stdout.write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Table {
            kind,
            n_max,
            format,
            out,
        } => write_output(&out, &table_text(kind, n_max, format)?, stdout),
        Command::Check {
            id,
            all,
            n_max,
            mu,
            z,
            report,
        } => {
            let ids: Vec<IdentityId> = if all {
                IdentityId::ALL.to_vec()
            } else {
                id.iter()
                    .map(|s| s.parse().map_err(CliError::from))
                    .collect::<CliResult<_>>()?
            };
            let mu_set = parse_list(&mu, default_mu_set)?;
            let z_set = parse_list(&z, default_z_set)?;
            cmd_check(&ids, n_max, &mu_set, &z_set, report.as_deref(), stdout)
        }
        Command::Transform {
            name,
            lambda,
            mu,
            order,
            input,
            out,
            verify,
        } => {
            let lambda = parse_rational(&lambda)?;
            let mu = parse_rational(&mu)?;
            let kind = transform_kind(name, lambda, mu);
            let file = SequenceFile::parse(&read_input(&input)?)?;
            let a = file.to_series(order)?;
            let b = apply_transform(&kind, &a)?;
            if verify && !dual_path_check(&kind, &a)? {
                return Err(CliError::Unexpected(format!(
                    "{} coefficient sums disagree with the composed series",
                    kind.name()
                )));
            }
            write_output(&out, &SequenceFile::from_series(&b).to_json(), stdout)
        }
        Command::Expand {
            gf,
            p,
            mu,
            order,
            out,
        } => {
            let mu = parse_rational(&mu)?;
            let series = match gf {
                GfName::Stirling2 => kernel_gf(GfKind::Stirling2, p, order),
                GfName::Stirling1 => kernel_gf(GfKind::Stirling1, p, order),
                GfName::Lah => kernel_gf(GfKind::Lah, p, order),
                GfName::Binom => kernel_gf(GfKind::BinomCol, p, order),
                GfName::Todorov => todorov_gf(&mu, p, order),
            };
            let file = SequenceFile::from_series(&series);
            write_output(&out, &file.to_json(), stdout)?;
            if gf == GfName::Todorov && in_unit_interval(&mu) {
                if let Some(n) = (p..=order).find(|&n| !file.terms[n].is_positive()) {
                    return Err(CliError::Unexpected(format!(
                        "term {n} is not positive for mu = {mu}"
                    )));
                }
            }
            Ok(())
        }
        Command::Explore {
            id,
            p,
            n_max,
            mu,
            lambda,
            z,
            format,
            out,
        } => {
            let xid: ExploreId = id.parse()?;
            let params = ExploreParams {
                mu: parse_rational(&mu)?,
                lambda: parse_rational(&lambda)?,
                z: parse_rational(&z)?,
            };
            let rows = explore(xid, n_max, p, &params)?;
            write_output(&out, &explore_text(&rows, format)?, stdout)?;
            match rows.iter().find(|r| !r.agrees()) {
                Some(r) => Err(CliError::Unexpected(format!(
                    "{xid} n={}: direct {} vs series {}",
                    r.n, r.value, r.oracle
                ))),
                None => Ok(()),
            }
        }
    }
}

fn transform_kind(name: TransformName, lambda: ExactRational, mu: ExactRational) -> TransformKind {
    match name {
        TransformName::Stirling2 => TransformKind::Stirling2 { lambda, mu },
        TransformName::Stirling1 => TransformKind::Stirling1 { lambda, mu },
        TransformName::Lah => TransformKind::Lah { lambda, mu },
        TransformName::Binomial => TransformKind::Binomial { lambda },
        TransformName::Euler => TransformKind::EulerOgf { lambda, mu },
        TransformName::Geomsum => TransformKind::GeomSum { lambda },
        TransformName::Logdivide => TransformKind::LogDivide,
    }
}

fn table_name(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Stirling1 => "stirling1",
        TableKind::Stirling1u => "stirling1u",
        TableKind::Stirling2 => "stirling2",
        TableKind::Lah => "lah",
        TableKind::Binom => "binom",
        TableKind::Bell => "bell",
    }
}

pub fn table_text(kind: TableKind, n_max: usize, format: Format) -> CliResult<String> {
    let tri = match kind {
        TableKind::Stirling1 => Some(TriangleKind::StirlingSigned),
        TableKind::Stirling1u => Some(TriangleKind::StirlingUnsigned),
        TableKind::Stirling2 => Some(TriangleKind::Stirling2),
        TableKind::Lah => Some(TriangleKind::Lah),
        TableKind::Binom => Some(TriangleKind::Binomial),
        TableKind::Bell => None,
    };
    let rows: Vec<Vec<String>> = match tri {
        Some(t) => {
            let cache = triangle(t);
            files::int_rows(
                &(0..=n_max)
                    .map(|n| cache.row(n).to_vec())
                    .collect::<Vec<_>>(),
            )
        }
        None => vec![(0..=n_max).map(|n| bell(n).to_string()).collect()],
    };
    match format {
        Format::Csv => Ok(files::rows_csv(&rows)?),
        Format::Json => {
            let value = match tri {
                Some(_) => serde_json::json!({ "kind": table_name(kind), "rows": rows }),
                None => serde_json::json!({ "kind": "bell", "values": rows[0] }),
            };
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            Ok(s)
        }
    }
}

fn explore_text(rows: &[ExploreRow], format: Format) -> CliResult<String> {
    let poly_text = |r: &ExploreRow| {
        r.poly.as_ref().map(|p| {
            p.coeffs()
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        })
    };
    match format {
        Format::Csv => {
            let with_poly = rows.iter().any(|r| r.poly.is_some());
            let mut table = vec![{
                let mut h = vec![
                    "n".to_string(),
                    "value".into(),
                    "oracle".into(),
                    "agrees".into(),
                ];
                if with_poly {
                    h.push("coeffs".into());
                }
                h
            }];
            for r in rows {
                let mut line = vec![
                    r.n.to_string(),
                    format_rational(&r.value),
                    format_rational(&r.oracle),
                    r.agrees().to_string(),
                ];
                if let Some(c) = poly_text(r) {
                    line.push(c);
                }
                table.push(line);
            }
            Ok(files::rows_csv(&table)?)
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::json!({
                        "n": r.n,
                        "value": format_rational(&r.value),
                        "oracle": format_rational(&r.oracle),
                        "agrees": r.agrees(),
                    });
                    if let Some(p) = &r.poly {
                        v["coeffs"] = p.coeffs().iter().map(format_rational).collect();
                    }
                    v
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("serializable");
            s.push('\n');
            Ok(s)
        }
    }
}

const MAX_FAIL_LINES: usize = 20;

fn cmd_check(
    ids: &[IdentityId],
    n_max: usize,
    mu_set: &[ExactRational],
    z_set: &[ExactRational],
    report: Option<&str>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let mut all_reports = Vec::new();
    let mut unexpected = Vec::new();
    for &id in ids {
        let reports = check_grid(id, n_max, mu_set, z_set)?;
        let failed = reports.iter().filter(|r| !r.pass).count();
        let met = expectation_met(id, &reports);
        let verdict = match (met, failed) {
            (false, _) => "UNEXPECTED",
            (true, 0) => "ok",
            (true, _) => "ok (expected failures)",
        };
        writeln!(
            stdout,
            "{:<18} {:>5} checked {:>5} failed  {verdict}",
            id.name(),
            reports.len(),
            failed
        )?;
        for r in reports.iter().filter(|r| !r.pass).take(MAX_FAIL_LINES) {
            let mut at = format!("n={} p={}", r.instance.n, r.instance.p);
            if let Some(mu) = &r.instance.mu {
                at.push_str(&format!(" mu={mu}"));
            }
            if let Some(z) = &r.instance.z {
                at.push_str(&format!(" z={z}"));
            }
            writeln!(
                stdout,
                "  FAIL {} {at}: lhs {} rhs {}",
                id.name(),
                r.lhs,
                r.rhs
            )?;
        }
        if failed > MAX_FAIL_LINES {
            writeln!(stdout, "  ... {} more", failed - MAX_FAIL_LINES)?;
        }
        if !met {
            unexpected.push(id.name());
        }
        all_reports.extend(reports);
    }
    if let Some(path) = report {
        write_output(path, &files::report_json(&all_reports), stdout)?;
    }
    if unexpected.is_empty() {
        Ok(())
    } else {
        Err(CliError::Unexpected(unexpected.join(", ")))
    }
}
