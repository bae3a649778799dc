//! Command-line front end for the kernel and verification pipeline.
//!
//! Exit status: 0 on success, 1 when a verification or self-test fails,
//! 2 on a configuration error.

pub mod config;
pub mod report;

use clap::Parser;
use config::{Cli, Format, RunConfig};
use induced_core::catalog::{compute_kernel, verify};
use induced_core::{selftest, Execution, ModelConfig};
use report::{render_text, JsonReport};
use std::ffi::OsString;
use std::io::Write;

pub use config::ConfigError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

const DEFAULT_SEED: u64 = 0x5EED;

/// Parses `args` (including the program name), runs, and returns the exit
/// status. Reports go to `out`, diagnostics to `err`.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_CONFIG;
        }
    };
    let cfg = match RunConfig::resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    if cli.selftest {
        run_selftest(&cfg, cli.cases, out)
    } else {
        run(&cfg, out, err)
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let model = match ModelConfig::xyz(cfg.commuting, cfg.ops) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: ops: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = match cfg.verify {
        Some(family) => match verify(family, &model, cfg.mode) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(err, "error: verify: {e}");
                return EXIT_CONFIG;
            }
        },
        None => compute_kernel(&model, cfg.mode),
    };
    let body = match cfg.format {
        Format::Json => JsonReport::from_report(&report).to_json(),
        Format::Text => render_text(&report),
    };
    let _ = out.write_all(body.as_bytes());
    match &report.verdicts {
        Some(v) if !v.eq => EXIT_FAILED,
        _ => EXIT_OK,
    }
}

pub fn run_selftest(cfg: &RunConfig, cases: usize, out: &mut dyn Write) -> i32 {
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let outcomes = selftest::run_all(seed, cases, Execution::default());
    let _ = writeln!(out, "seed {seed}, {cases} cases per property");
    let mut ok = true;
    for o in &outcomes {
        ok &= o.passed();
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} {} ({} cases, {} failures)", o.name, o.cases, o.failures);
        if let Some(f) = &o.first_failure {
            let _ = writeln!(out, "  first failure: {f}");
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
