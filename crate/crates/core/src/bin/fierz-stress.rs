use clap::{Args, Parser, Subcommand, ValueEnum};
use fierz_stress::commands::{self, exit_code, Format, Outcome, EXIT_DATA, EXIT_FLAGS};
use fierz_stress::spherical::{Branch, FdConfig, SphericalParams};
use fierz_stress::suite::SuiteConfig;
use std::fs::File;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Bilinear Maxwell-Dirac stress-energy checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the algebraic identity suites over seeded random inputs.
    Identities {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate stress-energy tensors for a JSON jet (`-` reads stdin).
    Stress {
        input: PathBuf,
        #[arg(long)]
        allow_degenerate: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the spherically reduced tensor over a CSV (t, r) grid.
    Spherical {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        /// Nodes with r below this are flagged.
        #[arg(long, default_value_t = 1e-6)]
        r_floor: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Run every acceptance criterion.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override the draw count of the large batches (small ones use a tenth).
        #[arg(long, value_parser = clap::value_parser!(u64).range(10..))]
        trials: Option<u64>,
        #[arg(long, hide = true)]
        corrupt_basis: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn read_input(path: &PathBuf) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut buf)?;
    } else {
        File::open(path)?.read_to_end(&mut buf)?;
    }
    Ok(buf)
}

fn format(o: &Output, default: Format) -> Format {
    match o.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
        None => default,
    }
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), u8> {
    let fail = |e: fierz_stress::Error| {
        eprintln!("error: {e}");
        exit_code(&e)
    };
    let io_fail = |e: std::io::Error| {
        eprintln!("error: {e}");
        EXIT_DATA
    };
    match cli.command {
        Command::Identities { trials, seed, tol, output } => {
            let o = commands::identities(seed, trials as usize, tol, format(&output, Format::Json)).map_err(fail)?;
            Ok((o, output.out))
        }
        Command::Stress { input, allow_degenerate, output } => {
            let bytes = read_input(&input).map_err(io_fail)?;
            let text = String::from_utf8(bytes).map_err(|_| {
                eprintln!("error: input is not UTF-8");
                commands::EXIT_SCHEMA
            })?;
            let o = commands::stress(&text, format(&output, Format::Json), allow_degenerate).map_err(fail)?;
            if o.code != 0 {
                eprintln!("bilinear route unavailable; pass --allow-degenerate to accept");
            }
            Ok((o, output.out))
        }
        Command::Spherical { input, sign, mass, charge, r_floor, output } => {
            let sign = match sign {
                SignArg::Plus => Branch::Plus,
                SignArg::Minus => Branch::Minus,
            };
            let p = SphericalParams { sign, q: charge, mass };
            let bytes = read_input(&input).map_err(io_fail)?;
            let o = commands::spherical(bytes.as_slice(), &p, &FdConfig { r_floor }, format(&output, Format::Csv))
                .map_err(fail)?;
            Ok((o, output.out))
        }
        Command::Selftest { seed, trials, corrupt_basis, output } => {
            let mut cfg = SuiteConfig { seed, corrupt_basis, ..SuiteConfig::default() };
            if let Some(n) = trials {
                cfg.large = n as usize;
                cfg.small = (n / 10) as usize;
            }
            let o = commands::selftest(&cfg, format(&output, Format::Json), |id, t| {
                eprintln!("criterion {id:>2}: {:.3} s", t.as_secs_f64());
            })
            .map_err(fail)?;
            Ok((o, output.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FLAGS } else { 0 });
        }
    };
    let (outcome, path) = match run(cli) {
        Ok(x) => x,
        Err(code) => return ExitCode::from(code),
    };
    let written = match path {
        Some(p) => std::fs::write(p, &outcome.body),
        None => std::io::stdout().write_all(&outcome.body),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_DATA);
    }
    ExitCode::from(outcome.code)
}
