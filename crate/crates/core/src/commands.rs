//! Command bodies shared by the binary and the examples. Each returns the bytes
//! to write and the process exit code.

use crate::clifford::dirac;
use crate::error::{Error, Result};
use crate::io::{evaluate_stress, write_stress_csv, JetInput};
use crate::report::IdentityReport;
use crate::spherical::{grid_evaluate, write_output_csv, FdConfig, GridTable, SphericalParams};
use crate::suite::{identity_report, run_selftest, SuiteConfig};
use serde::Serialize;
use std::io::Read;
use std::time::Duration;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_FLAGS: u8 = 2;
pub const EXIT_SCHEMA: u8 = 3;
pub const EXIT_DATA: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema(_) => EXIT_SCHEMA,
        Error::Config(_) => EXIT_FLAGS,
        _ => EXIT_DATA,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: Vec<u8>,
    pub code: u8,
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    v.push(b'\n');
    Ok(v)
}

fn report_csv(r: &IdentityReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &r.entries {
        w.serialize(e).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

pub fn identities(seed: u64, trials: usize, tol: f64, format: Format) -> Result<Outcome> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Config("tol must be positive".into()));
    }
    let report = identity_report(dirac(), seed, trials, tol);
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => report_csv(&report)?,
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { body, code })
}

pub fn stress(text: &str, format: Format, allow_degenerate: bool) -> Result<Outcome> {
    let out = evaluate_stress(&JetInput::parse(text)?)?;
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_stress_csv(&out, &mut buf)?;
            buf
        }
    };
    let code = if out.bilinear_error.is_some() && !allow_degenerate {
        EXIT_DATA
    } else {
        EXIT_OK
    };
    Ok(Outcome { body, code })
}

pub fn spherical<R: Read>(input: R, params: &SphericalParams, cfg: &FdConfig, format: Format) -> Result<Outcome> {
    if params.q == 0.0 || !params.q.is_finite() {
        return Err(Error::Config("charge must be finite and nonzero".into()));
    }
    let grid = GridTable::read_csv(input)?;
    let rows = grid_evaluate(&grid, params, cfg)?;
    let body = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_output_csv(&rows, &mut buf)?;
            buf
        }
        Format::Json => json(&rows)?,
    };
    Ok(Outcome { body, code: EXIT_OK })
}

/// Runs the acceptance suite; the report body holds no timings, which go to `on_timing`.
pub fn selftest(cfg: &SuiteConfig, format: Format, on_timing: impl FnMut(u8, Duration)) -> Result<Outcome> {
    let report = run_selftest(cfg, on_timing);
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "name", "passed", "worst", "tol"]).map_err(|e| Error::Io(e.to_string()))?;
            for c in &report.criteria {
                w.serialize((c.id, &c.name, c.passed, c.worst, c.tol))
                    .map_err(|e| Error::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))?
        }
    };
    let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { body, code })
}
