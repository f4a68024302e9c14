//! `ptcircle`: spectra, critical couplings and broken-symmetry branches of the
//! imaginary step potential on a circle.
//!
//! Exit codes: 0 success, 1 verification failure, 2 numerical failure or
//! request below a critical coupling, 64 usage error, 74 output not writable.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use clap::{Parser, Subcommand};
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "ptcircle", version, about = "Spectral solver for iZ sign(x) on a circle")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Append run metadata (CSV: `#` comment lines after the table).
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Real eigenvalues at fixed coupling, sorted by energy.
    Spectrum {
        #[arg(long = "Z", allow_negative_numbers = true)]
        z: f64,
        /// Upper end of the scanned s-window.
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        smax: f64,
    },
    /// Critical couplings where two real levels merge.
    Critical {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Complex-conjugate pair `pair` at a coupling above its critical value.
    Broken {
        #[arg(long = "Z", allow_negative_numbers = true)]
        z: f64,
        #[arg(long, default_value_t = 0)]
        pair: usize,
    },
    /// Recomputes the reference table of the first two merging pairs.
    Table1,
    /// Data behind the two figures (no plotting).
    Fig {
        #[arg(long)]
        which: u8,
        /// `N` (fig 1) or `NxM` (fig 2: N points in t, M in Z).
        #[arg(long)]
        grid: Option<String>,
        /// `lo,hi` window in t.
        #[arg(long = "t-range", allow_hyphen_values = true)]
        t_range: Option<String>,
        /// `lo,hi` window in Z (fig 2).
        #[arg(long = "Z-range", allow_hyphen_values = true)]
        z_range: Option<String>,
        /// Coupling for fig 1.
        #[arg(long = "Z", default_value_t = 5.0, allow_negative_numbers = true)]
        z: f64,
    },
    /// Runs the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = commands::VerifyLevel::Quick)]
        level: commands::VerifyLevel,
        /// Replaces the factored quantization function by a sign-flipped one
        /// (mutation smoke test).
        #[arg(long, hide = true)]
        inject_sign_bug: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = std::time::Instant::now();
    let result = match cli.command {
        Command::Spectrum { z, smax } => commands::spectrum(z, smax),
        Command::Critical { count } => commands::critical(count),
        Command::Broken { z, pair } => commands::broken(z, pair),
        Command::Table1 => commands::table1(),
        Command::Fig {
            which,
            grid,
            t_range,
            z_range,
            z,
        } => commands::fig(which, grid.as_deref(), t_range.as_deref(), z_range.as_deref(), z),
        Command::Verify { level, inject_sign_bug } => commands::verify(level, inject_sign_bug),
    };
    let (record, code) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ptcircle: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let meta = if cli.meta {
        vec![
            ("ptcircle_version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            (
                "elapsed_seconds".to_string(),
                format!("{:.3}", started.elapsed().as_secs_f64()),
            ),
        ]
    } else {
        Vec::new()
    };
    let text = output::render(&record, cli.format, &meta);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("ptcircle: cannot write output: {e}");
        return ExitCode::from(74);
    }
    ExitCode::from(code)
}
