//! Full Maxwell-Dirac tensor through both routes, and its behaviour under a
//! joint local gauge transformation.

use fierz_stress::bilinear::{bilinear_jet, gauge_transform};
use fierz_stress::sampling::{random_jet, random_real4, random_real_mat, trial_rng};
use fierz_stress::stress::{assemble_md, b_field, maxwell_tensor, EMField};
use fierz_stress::tensor::{max_abs_mat, sub_mat, C64, ETA};

fn main() {
    let mut rng = trial_rng(11, 0);
    let jet = random_jet(&mut rng);
    let em = EMField::from_potential(random_real4(&mut rng), random_real_mat(&mut rng), 0.7, 1.3);

    let tm = maxwell_tensor(&em.f).unwrap();
    let trace: C64 = (0..4).map(|m| tm[m][m] * ETA[m]).sum();
    println!("Maxwell tensor trace {:.2e}", trace.norm());

    let md = assemble_md(&jet, &em).expect("non-degenerate");
    println!("spinor route vs bilinear route: {:.3e}", md.route_difference());

    let (theta, dtheta) = (0.9, [0.4, -1.1, 0.25, 2.0]);
    let jet2 = gauge_transform(&jet, theta, dtheta);
    let em2 = em.gauge_shift(dtheta).unwrap();
    let md2 = assemble_md(&jet2, &em2).unwrap();
    let b1 = b_field(&bilinear_jet(&jet).fields(), &em.a, em.q).unwrap();
    let b2 = b_field(&bilinear_jet(&jet2).fields(), &em2.a, em2.q).unwrap();
    println!("A changes by {:?}", std::array::from_fn::<f64, 4, _>(|m| em2.a[m] - em.a[m]));
    println!("B before {b1:.6?}");
    println!("B after  {b2:.6?}");
    println!("tensor change under gauge {:.3e}", max_abs_mat(&sub_mat(&md.bilinear_route, &md2.bilinear_route)));
}
