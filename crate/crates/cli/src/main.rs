use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use cyclecert::io::{
    candidate_curve, export_curve_samples, load_problem, parse_sweep, run_certificate, run_sweep, sweep_exit_code,
    Report, Window,
};

// A closed pipe (`cyclecert ... | head`) is not worth a panic.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "cyclecert", version, about = "Bendixson-Dulac certificates bounding limit cycles of planar polynomial fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certificate described by a problem file.
    ///
    /// Exit codes: 0 certified, 2 inconclusive, 1 error.
    Check {
        /// Problem file (TOML).
        file: PathBuf,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Rerun over a parameter grid, `name=lo:hi:step`.
        #[arg(long, value_name = "SPEC")]
        sweep: Option<String>,
        /// Write non-certified sign samples of the candidate curve as CSV.
        #[arg(long, value_name = "CSV", requires = "window")]
        samples: Option<PathBuf>,
        /// Sampling window `x0,x1,y0,y1`.
        #[arg(long, value_name = "X0,X1,Y0,Y1", allow_hyphen_values = true, requires = "samples")]
        window: Option<String>,
        /// Grid points per axis.
        #[arg(long, default_value_t = 200)]
        res: usize,
    },
}

fn emit(json: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match json {
        Some(p) if p == Path::new("-") => say!("{text}"),
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?,
        None => {}
    }
    Ok(())
}

fn print_report(r: &Report) {
    say!("status: {}", serde_status(r));
    if let Some(b) = r.bound {
        say!("bound: {b}");
    }
    say!("{}", r.summary);
}

fn serde_status(r: &Report) -> String {
    serde_json::to_value(r.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn check(
    file: &Path,
    json: &Option<PathBuf>,
    sweep: &Option<String>,
    samples: &Option<PathBuf>,
    window: &Option<String>,
    res: usize,
) -> anyhow::Result<i32> {
    let spec = load_problem(file)?;
    let quiet = json.as_deref() == Some(Path::new("-"));

    if let (Some(out), Some(window)) = (samples, window) {
        let curve = candidate_curve(&spec)?;
        let n = export_curve_samples(&curve, &Window::parse(window)?, res, out)?;
        if !quiet {
            say!("wrote {n} non-certified samples to {}", out.display());
        }
    }

    if let Some(sweep) = sweep {
        let (name, values) = parse_sweep(sweep)?;
        let points = run_sweep(&spec, &name, &values)?;
        if !quiet {
            for p in &points {
                let bound = p.report.bound.map_or("-".to_string(), |b| b.to_string());
                say!("{}={}\t{}\t{}", p.param, p.value, serde_status(&p.report), bound);
            }
        }
        emit(json, &serde_json::to_string_pretty(&points)?)?;
        return Ok(sweep_exit_code(&points));
    }

    let report = run_certificate(&spec);
    if !quiet {
        print_report(&report);
    }
    emit(json, &report.to_json())?;
    Ok(report.exit_code_hint)
}

fn main() -> ExitCode {
    // usage errors exit 1; 2 is reserved for inconclusive certificates
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match &cli.command {
        Command::Check { file, json, sweep, samples, window, res } => {
            match check(file, json, sweep, samples, window, *res) {
                Ok(code) => code,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    1
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
