//! Command-line front end: argument parsing, dispatch, rendering and reference files.

pub mod args;
pub mod commands;
pub mod golden;
pub mod input;
pub mod render;

use std::io::Write;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::Report;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// A report disagrees with its reference (or a check failed).
pub const EXIT_MISMATCH: i32 = 1;
/// Bad arguments, unreadable or malformed input, or a failed computation.
pub const EXIT_INPUT: i32 = 2;

fn dispatch(command: &Command) -> Result<Report> {
    use commands as c;
    match command {
        Command::Age { spectrum } => c::age(spectrum),
        Command::RtCheck { spectra, powers } => c::rt_check(spectra, *powers),
        Command::OrdersScan { bound } => c::orders_scan(*bound),
        Command::PairSearch { f_max, mode } => c::pair_search(*f_max, (*mode).into()),
        Command::Table1 => c::table1_cmd(),
        Command::Table2 => c::table2_cmd(),
        Command::Multisets { mode, f_max } => c::multisets((*mode).into(), *f_max),
        Command::SameOrderScreen { n, dim } => c::same_order_screen(*n, *dim),
        Command::AvVerdict { input, cap } => c::av_verdict(input, *cap),
        Command::Filtration { input, cap } => c::filtration_cmd(input, *cap),
        Command::SimpleAvScreen { dim, n, computed_orders } => c::simple_av_screen_cmd(*dim, *n, *computed_orders),
        Command::MonomialCheck { m, p, n, reflection_rep, cap } => c::monomial_check(*m, *p, *n, *reflection_rep, *cap),
        Command::ImprimitiveCases { f_max } => c::imprimitive_cases(*f_max),
        Command::Deviation(d) => c::deviation(d.spectrum.as_deref(), d.matrix.as_deref(), d.random_trials, d.seed),
        Command::ExtraspecialScan { max_dim } => c::extraspecial(*max_dim),
        Command::VerifyWitness { input } => c::verify_witness(input),
        Command::Golden { dir, regenerate } => golden::run(dir.as_deref(), *regenerate),
    }
}

/// Runs the tool on `argv` and returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if cli.global.threads > 0 {
        // a pool may already exist when running in-process more than once; keep it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return EXIT_INPUT;
        }
    };
    let written = match cli.global.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.envelope()).expect("JSON values serialize");
            s.push('\n');
            out.write_all(s.as_bytes())
        }
        Format::Table => out.write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    if !report.conformant && (report.hard_failure || cli.global.strict_conformance) {
        let _ = writeln!(err, "{}: does not conform to the reference data", report.command);
        return EXIT_MISMATCH;
    }
    EXIT_OK
}
