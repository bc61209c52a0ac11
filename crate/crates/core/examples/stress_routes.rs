//! Stress-energy from spinor data and from bilinears alone, for a random
//! jet and for a plane wave.

use fierz_stress::bilinear::{bilinear_jet, Spinor, SpinorJet};
use fierz_stress::sampling::{random_jet, trial_rng};
use fierz_stress::stress::{asymmetry, belinfante_bilinear, belinfante_spinor, canonical_tensor, real_part};
use fierz_stress::tensor::{max_abs_mat, sub_mat, C64};

fn show(name: &str, t: &[[f64; 4]; 4]) {
    println!("{name}:");
    for row in t {
        println!("  {:>10.5} {:>10.5} {:>10.5} {:>10.5}", row[0], row[1], row[2], row[3]);
    }
}

fn main() {
    let jet = random_jet(&mut trial_rng(7, 0));
    let spinor_route = belinfante_spinor(&jet);
    let bilinear_route = belinfante_bilinear(&bilinear_jet(&jet).fields()).expect("non-degenerate");
    println!("random jet, scale {:.3}", jet.scale());
    println!("  canonical asymmetry        {:.3e}", asymmetry(&canonical_tensor(&jet)));
    println!("  symmetrized asymmetry      {:.3e}", asymmetry(&bilinear_route));
    println!("  spinor vs bilinear route   {:.3e}", max_abs_mat(&sub_mat(&spinor_route, &bilinear_route)));

    let u = Spinor([C64::new(1.0, 0.0), C64::new(0.3, 0.1), C64::new(0.0, 0.2), C64::new(-0.4, 0.0)]);
    let wave = SpinorJet::plane_wave(u, [1.3, 0.2, -0.5, 0.7]);
    show("plane wave, bilinear route", &real_part(&belinfante_bilinear(&bilinear_jet(&wave).fields()).unwrap()));
    show("plane wave, spinor route", &real_part(&belinfante_spinor(&wave)));
}
