use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rankfit::{
    compare_models, evaluate, fit_model, generate_synthetic_len, parse_csv, simulate_simon,
    BetaLikeParams, Error, FitReport, Ingested, LavaletteParams, MandelbrotParams, ModelKind,
    ModelParams, NoiseSpec, SimonConfig, ZipfParams,
};

use crate::report::{digest, Payload, ReportDocument};
use crate::{Cli, Command, GenerateArgs, ModelArg};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Input(Error),
    Fit(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io { .. } | CliError::Input(_) => 1,
            CliError::Fit(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Input(e) | CliError::Fit(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::InvalidParams(_) => CliError::Usage(e.to_string()),
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::EmptySeries
            | Error::RankOutOfRange { .. } => CliError::Input(e),
            Error::InsufficientData { .. }
            | Error::Singular
            | Error::FitFailure(_)
            | Error::NonFinite { .. }
            | Error::Model { .. } => CliError::Fit(e),
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Fit { input, model } => cmd_fit(cli, input, *model),
        Command::Compare { input } => cmd_compare(cli, input),
        Command::Generate(args) => cmd_generate(cli, args),
        Command::Simulate { p_new, steps, seed } => cmd_simulate(cli, *p_new, *steps, *seed),
        Command::Plotdata { input, model } => cmd_plotdata(cli, input, *model),
    }
}

fn read_input(cli: &Cli, path: &Path) -> Result<(u64, Ingested), CliError> {
    let options = cli.ingest_options()?;
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Io {
        path: path.into(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })?;
    let ingested = parse_csv(text, &options)?;
    if !cli.quiet {
        for w in &ingested.warnings {
            eprintln!("rankfit: warning: {w}");
        }
    }
    Ok((digest(&bytes), ingested))
}

fn write_output(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Human-readable text goes to stdout when the machine output went to a
/// file, and to stderr otherwise so it never corrupts piped JSON/CSV.
fn print_human(cli: &Cli, text: &str) {
    if cli.quiet {
        return;
    }
    if cli.output.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

fn fmt_scale(k: f64) -> String {
    if (1e-3..1e4).contains(&k.abs()) {
        format!("{k:.4}")
    } else {
        format!("{k:.4e}")
    }
}

/// Four decimals, without a sign on values that round to zero.
fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        s[1..].to_string()
    } else {
        s
    }
}

/// Shortest round-trip representation, switching to exponent notation for
/// very small or very large magnitudes.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parameters in the field order of the usual results table (K, b, a).
pub fn params_summary(params: &ModelParams) -> String {
    match params {
        ModelParams::Zipf(p) => format!("K={} alpha={}", fmt_scale(p.k), fmt4(p.alpha)),
        ModelParams::Mandelbrot(p) => format!("rho={} epsilon={}", fmt4(p.rho), fmt4(p.epsilon)),
        ModelParams::Lavalette(p) => format!("K={} b={}", fmt_scale(p.k), fmt4(p.b)),
        ModelParams::BetaLike(p) => {
            format!("K={} b={} a={}", fmt_scale(p.k), fmt4(p.b), fmt4(p.a))
        }
    }
}

fn fit_line(report: &FitReport) -> String {
    format!(
        "{}: {} R²={} (n={})",
        report.model,
        params_summary(&report.params),
        fmt4(report.r_squared),
        report.n
    )
}

fn cmd_fit(cli: &Cli, input: &Path, model: ModelArg) -> Result<(), CliError> {
    let (digest, ingested) = read_input(cli, input)?;
    let report = fit_model(model.into(), &ingested.series)?;
    let mut warnings = ingested.warnings.clone();
    warnings.extend(report.warnings.iter().cloned());
    let doc = ReportDocument::new(digest, &ingested.series, Payload::Fit(&report), warnings);
    write_output(cli, &doc.to_json())?;
    print_human(cli, &format!("{}\n", fit_line(&report)));
    Ok(())
}

fn cmd_compare(cli: &Cli, input: &Path) -> Result<(), CliError> {
    let (digest, ingested) = read_input(cli, input)?;
    let cmp = compare_models(&ingested.series)?;
    let mut warnings = ingested.warnings.clone();
    for r in &cmp.reports {
        warnings.extend(r.warnings.iter().map(|w| format!("{}: {w}", r.model)));
    }
    let doc = ReportDocument::new(
        digest,
        &ingested.series,
        Payload::Comparison(&cmp),
        warnings,
    );
    write_output(cli, &doc.to_json())?;

    let mut table = String::new();
    let _ = writeln!(table, "{:<12} {:<40} {:>7}", "model", "params", "R²");
    for r in &cmp.reports {
        let _ = writeln!(
            table,
            "{:<12} {:<40} {:>7}",
            r.model.name(),
            params_summary(&r.params),
            fmt4(r.r_squared)
        );
    }
    let _ = writeln!(
        table,
        "best by R²: {}; nesting {}",
        cmp.best_by_r2,
        if cmp.nesting_ok {
            "consistent"
        } else {
            "VIOLATED"
        }
    );
    print_human(cli, &table);
    Ok(())
}

fn need(name: &str, value: Option<f64>) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{name} is required for this model")))
}

pub fn generate_params(args: &GenerateArgs) -> Result<ModelParams, CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let params = match args.model {
        ModelArg::Zipf => ModelParams::Zipf(ZipfParams::new(
            need("k", args.k)?,
            need("alpha", args.alpha)?,
        )?),
        ModelArg::Mandelbrot => ModelParams::Mandelbrot(MandelbrotParams::new(
            need("rho", args.rho)?,
            need("epsilon", args.epsilon)?,
            args.n,
        )?),
        ModelArg::Lavalette => ModelParams::Lavalette(LavaletteParams::new(
            need("k", args.k)?,
            need("b", args.b)?,
            args.n,
        )?),
        ModelArg::BetaLike => ModelParams::BetaLike(BetaLikeParams::new(
            need("k", args.k)?,
            need("a", args.a)?,
            need("b", args.b)?,
            args.n,
        )?),
    };
    Ok(params)
}

fn series_csv(values: &[f64]) -> String {
    let mut out = String::new();
    for v in values {
        let _ = writeln!(out, "{}", fmt_num(*v));
    }
    out
}

fn cmd_generate(cli: &Cli, args: &GenerateArgs) -> Result<(), CliError> {
    let params = generate_params(args)?;
    let noise = NoiseSpec::new(args.sigma, args.seed)?;
    let series = generate_synthetic_len(&params, args.n, &noise).map_err(|e| match e {
        // Parameters that overflow or underflow the law are bad flags.
        Error::NonFinite { .. } => CliError::Usage(e.to_string()),
        other => other.into(),
    })?;
    write_output(cli, &series_csv(&series.values()))
}

fn cmd_simulate(cli: &Cli, p_new: f64, steps: u64, seed: u64) -> Result<(), CliError> {
    let config = SimonConfig::new(p_new, steps, seed)?;
    let series = simulate_simon(&config)?;
    write_output(cli, &series_csv(&series.values()))
}

fn cmd_plotdata(cli: &Cli, input: &Path, model: ModelArg) -> Result<(), CliError> {
    let (_, ingested) = read_input(cli, input)?;
    let report = fit_model(ModelKind::from(model), &ingested.series)?;
    let mut out = String::from("rank\tobserved\tfitted\tlog_residual\n");
    for (entry, resid) in ingested.series.entries().iter().zip(&report.residuals) {
        let fitted = evaluate(&report.params, entry.rank)?;
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            entry.rank,
            fmt_num(entry.value),
            fmt_num(fitted),
            fmt_num(*resid)
        );
    }
    write_output(cli, &out)?;
    print_human(cli, &format!("{}\n", fit_line(&report)));
    Ok(())
}
