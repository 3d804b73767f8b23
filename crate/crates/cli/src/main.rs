use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eie_core::{
    emit_csv, evaluate_point_detailed, point_report, run_sweep, Config, Error, SweepRow,
};

/// Entanglement of pump and probe fields after an EIT medium.
#[derive(Parser, Debug)]
#[command(name = "eie", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one parameter point and write a JSON report.
    Point {
        #[command(flatten)]
        common: Common,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the configured sweep and write CSV rows.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Override the analysis frequency (rad/μs).
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Suppress warnings and the summary on stderr.
    #[arg(long)]
    quiet: bool,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

fn exit_code(e: &Error) -> u8 {
    if e.is_input_error() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

fn load(common: &Common) -> Result<Config, Error> {
    let mut cfg = Config::load(&common.config)?;
    if let Some(w) = common.omega {
        if !w.is_finite() {
            return Err(Error::Config(format!("--omega must be finite, got {w}")));
        }
        cfg.system.omega = w;
    }
    Ok(cfg)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

fn point(common: &Common, out: Option<&Path>) -> Result<(), Error> {
    let cfg = load(common)?;
    let r = evaluate_point_detailed(&cfg.system)?;
    if !common.quiet {
        for w in &r.warnings {
            eprintln!("warning: {w}");
        }
        eprintln!(
            "V12 = {:.6e} ({}), commutator error {:.2e}",
            r.report.v12,
            if r.report.entangled { "entangled" } else { "not entangled" },
            r.commutator_error()
        );
    }
    let doc = serde_json::to_string_pretty(&point_report(&cfg.system, &r))
        .map_err(|e| Error::Config(e.to_string()))?;
    match out {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "{doc}").and_then(|_| w.flush()).map_err(io_err(path))
        }
        None => writeln!(io::stdout(), "{doc}").map_err(io_err(Path::new("<stdout>"))),
    }
}

fn sweep(common: &Common, out: &Path, jobs: Option<usize>) -> Result<Vec<SweepRow>, Error> {
    let cfg = load(common)?;
    let spec = cfg
        .sweep
        .ok_or_else(|| Error::Config("config has no [sweep] section".into()))?;
    if jobs == Some(0) {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let rows = run_sweep(&spec, &cfg.system, jobs)?;
    let mut w = create(out)?;
    emit_csv(&rows, &mut w)?;
    w.flush().map_err(io_err(out))?;
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Point { common, out } => match point(&common, out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        },
        Command::Sweep { common, out, jobs } => match sweep(&common, &out, jobs) {
            Ok(rows) => {
                let failed = rows.iter().filter(|r| !r.succeeded()).count();
                if !common.quiet {
                    eprintln!(
                        "{} points written to {}, {failed} failed",
                        rows.len(),
                        out.display()
                    );
                }
                if failed == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_NUMERICAL)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        },
    }
}
