//! Build the gamma basis, check the Clifford relation by hand and run the
//! full identity table.

use fierz_stress::clifford::{build_gamma_basis, levi_civita, verify_appendix_a, SpinorMatrix, Variance};
use fierz_stress::tensor::C64;

fn main() {
    let b = build_gamma_basis();

    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let target = SpinorMatrix::identity().scale(C64::from(2.0 * b.eta[mu][nu]));
            let diff = b.gamma[mu].anticommutator(&b.gamma[nu]) - target;
            worst = worst.max(diff.max_abs());
        }
    }
    println!("max |{{γ^μ, γ^ν}} − 2η^{{μν}}| = {worst:e}");
    println!("tr(γ_5 γ^0 γ^1 γ^2 γ^3) = {}", (b.gamma5 * b.gamma[0] * b.gamma[1] * b.gamma[2] * b.gamma[3]).trace());
    println!("ε^{{0123}} = {}, ε_{{0123}} = {}", levi_civita([0, 1, 2, 3], Variance::Upper), levi_civita([0, 1, 2, 3], Variance::Lower));

    let report = verify_appendix_a(&b, 1e-13);
    for e in &report.entries {
        println!("{:<40} {:.1e} {}", e.name, e.residual, if e.passed { "ok" } else { "FAIL" });
    }
    println!("{} identities, all passed: {}", report.entries.len(), report.passed());
}
