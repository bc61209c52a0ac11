//! Reduced-size selftest, showing the report and that it is reproducible.

use fierz_stress::commands::{identities, selftest, Format};
use fierz_stress::suite::SuiteConfig;

fn main() {
    let cfg = SuiteConfig { seed: 5, large: 500, small: 100, corrupt_basis: false };
    let a = selftest(&cfg, Format::Csv, |id, t| eprintln!("criterion {id:>2}: {:.3} s", t.as_secs_f64())).unwrap();
    let b = selftest(&cfg, Format::Csv, |_, _| {}).unwrap();
    print!("{}", String::from_utf8_lossy(&a.body));
    println!("exit code {}, identical reruns: {}", a.code, a == b);

    let bad = selftest(&SuiteConfig { corrupt_basis: true, ..cfg }, Format::Csv, |_, _| {}).unwrap();
    println!("with a corrupted gamma basis the exit code is {}", bad.code);

    let ids = identities(5, 50, 1e-9, Format::Json).unwrap();
    println!("identities command: {} bytes of JSON, exit code {}", ids.body.len(), ids.code);
}
