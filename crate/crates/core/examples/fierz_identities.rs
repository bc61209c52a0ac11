//! Fierz expansion of an outer product, the fundamental bilinear identities
//! and the derivative identity chain on one random 1-jet.

use fierz_stress::bilinear::compute_bilinears;
use fierz_stress::fierz::{appendix_b_suite, belinfante_identity_residual, check_fundamental, reconstruction_residual};
use fierz_stress::sampling::{random_jet, random_spinor, trial_rng};

fn main() {
    let mut rng = trial_rng(2024, 0);
    let (chi, psi) = (random_spinor(&mut rng), random_spinor(&mut rng));
    println!("ψχ̄ rebuilt from 16 coefficients, residual {:e}", reconstruction_residual(&chi, &psi));

    let b = compute_bilinears(&psi);
    println!("σ = {:.4}, ω = {:.4}, σ² − ω² = {:.4}", b.sigma, b.omega, b.invariant());
    for e in &check_fundamental(&b).entries {
        println!("  {:<28} {:.2e}", e.name, e.residual);
    }

    let jet = random_jet(&mut rng);
    for e in appendix_b_suite(&jet) {
        match e.result {
            Ok(r) => println!("  {:<28} {:.2e}", e.name, r.normalized()),
            Err(err) => println!("  {:<28} skipped: {err}", e.name),
        }
    }
    let bel = belinfante_identity_residual(&jet).expect("non-degenerate draw");
    println!("symmetric stress identity: full {:.2e}, contracted {:.2e}", bel.full.normalized(), bel.contracted.normalized());
}
