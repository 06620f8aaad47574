//! Command-line front end: `check`, `scan` and `form`.
//!
//! Exit codes: 0 on success (for `check`, only when the theorem applies),
//! 1 when `check` finds a failing hypothesis, 2 on usage errors.

pub mod scan;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use k3cert::bqf::{self, QuadraticForm};
use k3cert::certify::CertifyOptions;
use k3cert::{build_certificate, Certificate};
use num_bigint::BigInt;

pub use scan::{read_csv, scan_rows, write_csv, write_json, ScanRow, ScanSummary};

/// Environment variable holding the scan worker count.
pub const WORKERS_ENV: &str = "K3CERT_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "k3cert",
    version,
    about = "Clifford-index certificates for curves on K3 surfaces of type (2, 3)"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and print the certificate for one (g, s).
    #[command(allow_negative_numbers = true)]
    Check {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: CheckFormat,
    },
    /// Tabulate certificates over a rectangle of (g, s).
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long)]
        g_min: i64,
        #[arg(long)]
        g_max: i64,
        #[arg(long)]
        s_min: i64,
        #[arg(long)]
        s_max: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: ScanFormat,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also emit cells outside both regimes.
        #[arg(long)]
        all: bool,
    },
    /// Decide whether am² + bmn + cn² takes the value `target`.
    #[command(allow_negative_numbers = true)]
    Form {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        c: BigInt,
        /// 0, ±1 or ±2.
        #[arg(long)]
        target: BigInt,
        #[arg(long, value_enum, default_value = "text")]
        format: CheckFormat,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { g, s, format } => cmd_check(g, s, format, out),
        Command::Scan {
            g_min,
            g_max,
            s_min,
            s_max,
            format,
            out: path,
            all,
        } => cmd_scan(
            ScanRequest {
                g_min,
                g_max,
                s_min,
                s_max,
                all,
            },
            format,
            path,
            out,
            err,
        ),
        Command::Form {
            a,
            b,
            c,
            target,
            format,
        } => cmd_form(QuadraticForm::new(a, b, c), target, format, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn cmd_check(g: i64, s: i64, format: CheckFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let cert = build_certificate(g, s).map_err(|e| CliError::Usage(e.to_string()))?;
    match format {
        CheckFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &cert).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        CheckFormat::Text => write_certificate_text(out, &cert)?,
    }
    Ok(if cert.conclusion.applies() {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

pub fn write_certificate_text(out: &mut dyn Write, c: &Certificate) -> io::Result<()> {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    writeln!(out, "g = {}, s = {}, d = {}", c.g, c.s, c.d)?;
    writeln!(out, "regime             {}", c.regime)?;
    writeln!(out, "lemma21_ok         {}", c.lemma21_ok)?;
    writeln!(out, "square_zero_free   {}", c.square_zero_free)?;
    writeln!(
        out,
        "minus_two          {}",
        opt(c.minus_two.as_ref().map(|d| d.to_string()))
    )?;
    let clifford = c.clifford.as_ref().map(|r| {
        format!(
            "min f = {} at {} over {} points, target {}, pass {}",
            opt(r.min_value.map(|v| v.to_string())),
            opt(r.argmin.map(|x| x.to_string())),
            r.region_size,
            r.target,
            r.pass
        )
    });
    writeln!(out, "clifford           {}", opt(clifford))?;
    writeln!(
        out,
        "ample_scan         {} flagged within radius {}",
        c.ample_scan.flagged.len(),
        c.ample_scan.radius
    )?;
    writeln!(out, "gamma1             {}", c.gamma1)?;
    writeln!(out, "gamma_E            {}", c.gamma_e)?;
    writeln!(out, "gap_lower_bound    {}", c.gap_lower_bound)?;
    writeln!(out, "general_curve      {}", c.general_curve_bound)?;
    writeln!(out, "expected_dim       {}", c.expected_dim)?;
    writeln!(out, "(C - H)^2          {}", c.lemma31_square)?;
    writeln!(out, "h0(H|_C)           {}", c.h0_h_restricted)?;
    writeln!(out, "conclusion         {}", c.conclusion)
}

struct ScanRequest {
    g_min: i64,
    g_max: i64,
    s_min: i64,
    s_max: i64,
    all: bool,
}

fn workers_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn cmd_scan(
    req: ScanRequest,
    format: ScanFormat,
    path: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if req.g_min > req.g_max {
        return Err(CliError::Usage(format!(
            "g-min {} exceeds g-max {}",
            req.g_min, req.g_max
        )));
    }
    if req.s_min > req.s_max {
        return Err(CliError::Usage(format!(
            "s-min {} exceeds s-max {}",
            req.s_min, req.s_max
        )));
    }
    if req.s_min < -1 {
        return Err(CliError::Usage(format!("s-min {} is below -1", req.s_min)));
    }
    let limit = k3cert::lattice::MAX_PARAM;
    if [req.g_min, req.g_max, req.s_max]
        .iter()
        .any(|v| v.abs() > limit)
    {
        return Err(CliError::Usage(format!("ranges must stay within ±{limit}")));
    }

    let opts = CertifyOptions::default();
    let compute = || scan_rows(req.g_min..=req.g_max, req.s_min..=req.s_max, req.all, &opts);
    let rows = match workers_from_env()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(compute),
        None => compute(),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut sink: Box<dyn Write + '_> = match &path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(&mut *out),
    };
    match format {
        ScanFormat::Csv => {
            write_csv(&mut sink, &rows)?;
            writeln!(err, "{}", ScanSummary::of(&rows))?;
        }
        ScanFormat::Json => write_json(&mut sink, &rows)?,
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

fn cmd_form(
    f: QuadraticForm,
    target: BigInt,
    format: CheckFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if target == BigInt::from(0) {
        let witness = bqf::isotropic_vector(&f);
        match format {
            CheckFormat::Text => match &witness {
                Some((m, n)) => writeln!(out, "Witness({m}, {n}) via isotropic_vector")?,
                None => writeln!(out, "NoneProved via isotropic_vector")?,
            },
            CheckFormat::Json => {
                let value = match &witness {
                    Some((m, n)) => serde_json::json!({
                        "status": "witness",
                        "m": m.to_string(),
                        "n": n.to_string(),
                        "method": "isotropic_vector",
                    }),
                    None => serde_json::json!({
                        "status": "none_proved",
                        "method": "isotropic_vector",
                    }),
                };
                writeln!(out, "{value}")?;
            }
        }
        return Ok(EXIT_OK);
    }
    let decision = bqf::represents(&f, &target).map_err(|e| CliError::Usage(e.to_string()))?;
    match format {
        CheckFormat::Text => writeln!(out, "{decision}")?,
        CheckFormat::Json => {
            serde_json::to_writer(&mut *out, &decision).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}
