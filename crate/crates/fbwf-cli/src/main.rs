//! `fbwf` — design and analyze fractional-order Butterworth-like
//! low-pass filters from the command line.
//!
//! Structured results (filter documents) are JSON on stdout; sampled
//! curves are CSV with a header row. Warnings go to stderr. Exit codes:
//! 0 success, 2 invalid input, 3 numerical failure.

use clap::{Parser, Subcommand, ValueEnum};
use fbwf::{
    bode, classified_candidates, design_filter_with_rule, map_radius, stable_poles,
    step_response_gl, CutoffRule, DesignSpec, Error as LibError, FrequencyGrid, TimeGrid, WPole,
};
use fbwf_cli::document::FilterDocument;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fbwf",
    version,
    about = "Fractional-order Butterworth-like filter toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Design a low-pass filter from frequency-domain specifications
    Design(DesignArgs),
    /// List w-plane pole locations and damping classes as CSV
    Poles(PolesArgs),
    /// Sample the frequency response of a filter document as CSV
    Bode(BodeArgs),
    /// Simulate the unit-step response of a filter document as CSV
    Step(StepArgs),
    /// Regenerate the reference pole and transfer-function tables as CSV
    Tables(TablesArgs),
}

#[derive(clap::Args)]
struct DesignArgs {
    /// Maximum pass-band attenuation, dB
    #[arg(long = "ap")]
    alpha_p: f64,
    /// Minimum stop-band attenuation, dB
    #[arg(long = "as")]
    alpha_s: f64,
    /// Pass-band edge, rad/sec
    #[arg(long = "wp")]
    omega_p: f64,
    /// Stop-band edge, rad/sec
    #[arg(long = "ws")]
    omega_s: f64,
    /// Decimal places kept when truncating the exact order
    #[arg(long, default_value_t = 1)]
    decimals: usize,
    /// Which band requirement pins the fractional-stage cutoff
    #[arg(long = "cutoff-rule", value_enum, default_value_t = CutoffRuleArg::Stopband)]
    cutoff_rule: CutoffRuleArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CutoffRuleArg {
    Stopband,
    Passband,
}

impl From<CutoffRuleArg> for CutoffRule {
    fn from(arg: CutoffRuleArg) -> Self {
        match arg {
            CutoffRuleArg::Stopband => CutoffRule::StopBand,
            CutoffRuleArg::Passband => CutoffRule::PassBand,
        }
    }
}

#[derive(clap::Args)]
struct PolesArgs {
    /// Pole count P
    #[arg(long = "p")]
    p: u32,
    /// Riemann sheet count Q
    #[arg(long = "q")]
    q: u32,
    /// s-plane cutoff frequency, rad/sec (pole circle radius is wc^(1/Q))
    #[arg(long = "wc", default_value_t = 1.0)]
    wc: f64,
    /// Include unstable and marginal candidates
    #[arg(long)]
    all: bool,
    /// Analyze P/Q as given even when it shares a common factor
    #[arg(long = "no-reduce")]
    no_reduce: bool,
}

#[derive(clap::Args)]
struct BodeArgs {
    /// Lowest frequency, rad/sec
    #[arg(long)]
    from: f64,
    /// Highest frequency, rad/sec
    #[arg(long)]
    to: f64,
    /// Number of logarithmically spaced samples
    #[arg(long)]
    points: usize,
    /// Filter document (JSON); stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct StepArgs {
    /// Simulation horizon, seconds
    #[arg(long)]
    tmax: f64,
    /// Time step, seconds
    #[arg(long)]
    dt: f64,
    /// History truncation length, samples (full history when omitted)
    #[arg(long)]
    memory: Option<usize>,
    /// Filter document (JSON); stdin when omitted
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct TablesArgs {
    /// Which table to regenerate: 2 (pole locations) or 3 (factored forms)
    #[arg(long)]
    which: u32,
    /// Restrict output to one pole count
    #[arg(long = "p")]
    p: Option<u32>,
}

enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Numerical(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn lib_error(err: LibError) -> CliError {
    match err {
        LibError::InvalidOrder(_)
        | LibError::InvalidSpec(_)
        | LibError::InvalidGrid(_)
        | LibError::ZeroPole
        | LibError::NotConjugateClosed
        | LibError::EmptyFactorList
        | LibError::EmptyCascade => CliError::Input(err.to_string()),
        _ => CliError::Numerical(err.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Design(args) => cmd_design(args),
        Command::Poles(args) => cmd_poles(args),
        Command::Bode(args) => cmd_bode(args),
        Command::Step(args) => cmd_step(args),
        Command::Tables(args) => cmd_tables(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}

fn cmd_design(args: DesignArgs) -> Result<(), CliError> {
    let spec = DesignSpec::new(args.omega_p, args.omega_s, args.alpha_p, args.alpha_s)
        .map_err(lib_error)?;
    let report = design_filter_with_rule(&spec, args.decimals, args.cutoff_rule.into())
        .map_err(lib_error)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    let doc = FilterDocument::from_report(&report);
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn write_pole_rows(out: &mut impl Write, poles: &[WPole]) -> std::io::Result<()> {
    for pole in poles {
        writeln!(
            out,
            "{},{},{},{}",
            pole.value.re,
            pole.value.im,
            pole.arg_abs,
            pole.class.as_str()
        )?;
    }
    Ok(())
}

fn cmd_poles(args: PolesArgs) -> Result<(), CliError> {
    if args.p == 0 || args.q == 0 {
        return Err(CliError::Input("P and Q must be positive".into()));
    }
    if !args.wc.is_finite() || args.wc <= 0.0 {
        return Err(CliError::Input("wc must be positive".into()));
    }
    if !args.no_reduce && gcd(args.p as u64, args.q as u64) != 1 {
        return Err(CliError::Input(format!(
            "P = {} and Q = {} share a common factor; reduce the order or pass --no-reduce",
            args.p, args.q
        )));
    }
    let radius = map_radius(args.wc, args.q);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "re,im,arg_abs_rad,class").unwrap();
    if args.all {
        let poles = classified_candidates(args.p, args.q, radius);
        write_pole_rows(&mut out, &poles).unwrap();
    } else {
        let selection = stable_poles(args.p, args.q, radius);
        if !selection.marginal.is_empty() {
            eprintln!(
                "warning: {} marginal pole(s) on the stability boundary excluded; \
                 rerun with --all to list them",
                selection.marginal.len()
            );
        }
        write_pole_rows(&mut out, &selection.poles).unwrap();
    }
    Ok(())
}

fn load_document(input: &Option<PathBuf>) -> Result<FilterDocument, CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid filter document: {e}")))
}

fn cmd_bode(args: BodeArgs) -> Result<(), CliError> {
    let doc = load_document(&args.input)?;
    let filter = doc.to_cascade().map_err(CliError::Input)?;
    let grid = FrequencyGrid::log_space(args.from, args.to, args.points).map_err(lib_error)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "omega,mag_db,phase_deg").unwrap();
    for point in bode(&filter, &grid) {
        writeln!(
            out,
            "{},{},{}",
            point.omega, point.magnitude_db, point.phase_deg
        )
        .unwrap();
    }
    Ok(())
}

fn cmd_step(args: StepArgs) -> Result<(), CliError> {
    let doc = load_document(&args.input)?;
    let filter = doc.to_cascade().map_err(CliError::Input)?;
    let mut grid = TimeGrid::new(args.dt, args.tmax).map_err(lib_error)?;
    if let Some(memory) = args.memory {
        grid = grid.with_memory(memory).map_err(lib_error)?;
    }
    let response = step_response_gl(&filter, &grid).map_err(lib_error)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "t,y").unwrap();
    for (t, y) in response {
        writeln!(out, "{t},{y}").unwrap();
    }
    Ok(())
}

// Representative sheet counts for the factored-form table: the smallest Q
// coprime to P at which every conjugate pair is strictly stable, so each
// row carries the full stable factor set.
const FACTOR_TABLE_Q: [(u32, u32); 9] = [
    (1, 2),
    (2, 3),
    (3, 2),
    (4, 5),
    (5, 3),
    (6, 7),
    (7, 4),
    (8, 9),
    (9, 5),
];

fn format_factor(coeffs: &[f64]) -> String {
    let sign = |c: f64| if c < 0.0 { '-' } else { '+' };
    match coeffs.len() {
        2 => format!("w{}{}", sign(coeffs[0]), coeffs[0].abs()),
        3 => format!(
            "w^2{}{}w{}{}",
            sign(coeffs[1]),
            coeffs[1].abs(),
            sign(coeffs[0]),
            coeffs[0].abs()
        ),
        _ => unreachable!("factors are linear or quadratic"),
    }
}

fn cmd_tables(args: TablesArgs) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.which {
        2 => {
            writeln!(out, "q_den,p,re,im,arg_abs_rad,class").unwrap();
            for q in 2..=5u32 {
                for p in 1..q {
                    if args.p.is_some_and(|want| want != p) {
                        continue;
                    }
                    for pole in stable_poles(p, q, 1.0).poles {
                        writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            q,
                            p,
                            pole.value.re,
                            pole.value.im,
                            pole.arg_abs,
                            pole.class.as_str()
                        )
                        .unwrap();
                    }
                }
            }
            Ok(())
        }
        3 => {
            writeln!(out, "p,q_den,factor").unwrap();
            for (p, q) in FACTOR_TABLE_Q {
                if args.p.is_some_and(|want| want != p) {
                    continue;
                }
                let selection = stable_poles(p, q, 1.0);
                let factors = fbwf::factors_from_poles(&selection.poles).map_err(lib_error)?;
                for factor in &factors {
                    writeln!(out, "{},{},{}", p, q, format_factor(factor)).unwrap();
                }
            }
            Ok(())
        }
        other => Err(CliError::Input(format!(
            "unknown table {other}; expected 2 or 3"
        ))),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
