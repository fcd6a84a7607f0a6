mod args;
mod commands;
mod svg;
mod table;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use superspec_core::verify::{acceptance_checks, invariant_checks, Check};

use args::{Cli, Command, Format, Output};
use commands::Report;

const CONFIG_ERROR: u8 = 1;
const VERIFY_FAILED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(CONFIG_ERROR),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (report, out, figure) = match cli.command {
        Command::Verify => return Ok(verify()),
        Command::Nodes { family, n, out } => (commands::nodes(family, n.0)?, out, false),
        Command::Superpoints { family, n, order, out } => (commands::superpoint_table(family, n.0, order)?, out, false),
        Command::InterpError(a) => (
            commands::interp_error(a.function, a.family, &a.sweep.n.0, a.order, a.sweep.grid_size, a.sweep.sweep, &a.ellipse)?,
            a.out,
            false,
        ),
        Command::Bounds(a) => (
            commands::bounds(a.function, a.family, a.quantity.into(), &a.n.0, a.grid_size, &a.ellipse)?,
            a.out,
            false,
        ),
        Command::Ode(a) => (
            commands::ode(a.function, a.set, &a.sweep.n.0, a.sweep.grid_size, a.sweep.sweep)?,
            a.out,
            false,
        ),
        Command::Envelope { family, n, out } => (commands::envelope(family, n.0)?, out, false),
        Command::Figure { id, n, grid_size, out } => (commands::figure(id, n.0, grid_size)?, out, true),
    };
    let format = out.format.unwrap_or_else(|| match &out.output {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg")) => Format::Svg,
        _ if figure => Format::Svg,
        _ => Format::Csv,
    });
    let text = render(report, format)?;
    emit(&out, text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn render(report: Report, format: Format) -> Result<String> {
    Ok(match (report, format) {
        (Report::Points { points, .. }, Format::Csv) | (Report::Profile { points, .. }, Format::Csv) => table::pointwise_csv(&points),
        (Report::Sweep(rows), Format::Csv) => table::sweep_csv(&rows),
        (Report::Profile { svg, .. }, Format::Svg) => svg,
        (Report::Points { title, points }, Format::Svg) => {
            if points.iter().all(|p| p.error.is_none()) {
                bail!("svg output needs an error column; use --format csv for this table");
            }
            svg::error_plot(&title, &points)
        }
        (Report::Sweep(_), Format::Svg) => bail!("sweep tables are csv only"),
    })
}

/// Writes to a temporary file beside `path` and renames it into place, so a
/// failed run never leaves a partial file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(())
}

fn emit(out: &Output, bytes: &[u8]) -> Result<()> {
    match &out.output {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(bytes).and_then(|_| stdout.flush()) {
                // a closed pipe (`| head`) is a normal way to stop reading
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn line(label: &str, c: &Check) {
    let status = if c.passed { "PASS" } else { "FAIL" };
    println!("[{status}] {label}: {} ({})", c.name, c.detail);
}

fn verify() -> ExitCode {
    let mut failed = 0;
    for (id, check) in acceptance_checks() {
        let c = check();
        line(&format!("criterion {id:>2}"), &c);
        failed += usize::from(!c.passed);
    }
    for check in invariant_checks() {
        let c = check();
        line("invariant", &c);
        failed += usize::from(!c.passed);
    }
    if failed == 0 {
        println!("all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} checks failed");
        ExitCode::from(VERIFY_FAILED)
    }
}
