//! Runs every acceptance criterion at full scale and prints one line per criterion.

use fierz_stress::commands::{self, Format};
use fierz_stress::suite::{run_selftest, SuiteConfig, SELFTEST_BUDGET};
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut timings = Vec::new();
    let report = run_selftest(&cfg, |id, t| timings.push((id, t)));
    for c in &report.criteria {
        let t = timings.iter().find(|(id, _)| *id == c.id).map(|(_, t)| t.as_secs_f64()).unwrap_or(0.0);
        println!("{} [{t:.2} s]", c.summary_line());
        if !c.passed {
            for e in c.details.failures() {
                println!("    failed: {} residual {:.3e} tol {:.0e}", e.name, e.residual, e.tol);
            }
        }
    }

    // The command layer must also produce byte-identical bodies.
    let start = Instant::now();
    let a = commands::selftest(&cfg, Format::Json, |_, _| {}).expect("selftest runs");
    let b = commands::selftest(&cfg, Format::Json, |_, _| {}).expect("selftest runs");
    let per_run = start.elapsed() / 2;
    let bytes_ok = a == b && a.code == 0 && per_run < SELFTEST_BUDGET;
    println!(
        "criterion 10 {} selftest command bodies identical across runs ({:.2} s per run, budget {} s)",
        if bytes_ok { "PASS" } else { "FAIL" },
        per_run.as_secs_f64(),
        SELFTEST_BUDGET.as_secs()
    );

    if report.passed && bytes_ok {
        println!("acceptance PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance FAIL");
        ExitCode::FAILURE
    }
}
