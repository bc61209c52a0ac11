use super::*;
use crate::bilinear::{compute_bilinears, Spinor, SpinorJet};
use crate::sampling::{random_jet, random_spinor, trial_rng};
use crate::tensor::{ONE, ZERO};

fn worst_suite(jets: impl Iterator<Item = SpinorJet>) -> Vec<(&'static str, f64)> {
    let mut worst: Vec<(&'static str, f64)> = Vec::new();
    for jet in jets {
        for e in appendix_b_suite(&jet) {
            let r = e.result.expect("random jets are non-degenerate").normalized();
            match worst.iter_mut().find(|(n, _)| *n == e.name) {
                Some(w) => w.1 = w.1.max(r),
                None => worst.push((e.name, r)),
            }
        }
    }
    worst
}

#[test]
fn zero_spinors_expand_to_zero() {
    let z = fierz_expand(&Spinor::zero(), &Spinor::zero());
    assert_eq!(z.a_s, ZERO);
    assert_eq!(z.a_p, ZERO);
    assert!(z.a_v.iter().chain(z.a_a.iter()).all(|c| *c == ZERO));
}

#[test]
fn first_unit_spinor_scalar_coefficient() {
    let e1 = Spinor::unit(0);
    assert_eq!(fierz_expand(&e1, &e1).a_s, C64::new(0.25, 0.0));
}

#[test]
fn expansion_reconstructs_outer_product() {
    let mut rng = trial_rng(100, 0);
    for _ in 0..1000 {
        let chi = random_spinor(&mut rng);
        let psi = random_spinor(&mut rng);
        let bound = 1e-12 * (chi.norm_sqr() * psi.norm_sqr()).sqrt();
        assert!(reconstruction_residual(&chi, &psi) <= bound);
    }
}

#[test]
fn replacement_matches_direct_rank2_for_first_unit_spinor() {
    let b = compute_bilinears(&Spinor::unit(0));
    let (s, sd) = rank2_replacement(&b).unwrap();
    for m in 0..4 {
        for n in 0..4 {
            assert!((s[m][n] - b.s[m][n]).norm() < 1e-15);
            assert!((sd[m][n] - b.sdual[m][n]).norm() < 1e-15);
        }
    }
}

#[test]
fn chiral_state_is_degenerate_for_replacement() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = Spinor([C64::new(h, 0.0), ZERO, C64::new(-h, 0.0), ZERO]);
    let b = compute_bilinears(&psi);
    assert!(matches!(rank2_replacement(&b), Err(Error::DegenerateInvariant { .. })));
    let jet = SpinorJet::constant(psi);
    assert!(antiproduct_residuals(&jet).is_err());
    let suite = appendix_b_suite(&jet);
    assert!(suite.iter().any(|e| e.result.is_err()));
    // identities free of 1/(σ²−ω²) still evaluate
    assert!(suite.iter().find(|e| e.name == "first_version").unwrap().result.is_ok());
}

#[test]
fn fundamental_set() {
    let r = check_fundamental(&compute_bilinears(&Spinor::zero()));
    assert!(r.entries.iter().all(|e| e.residual == 0.0));

    let b = compute_bilinears(&Spinor::unit(0));
    assert_eq!(dot(&b.j, &b.j), ONE);
    assert_eq!(b.invariant(), ONE);
    assert!(check_fundamental(&b).passed());

    let mut rng = trial_rng(101, 0);
    for _ in 0..10_000 {
        let rep = check_fundamental(&compute_bilinears(&random_spinor(&mut rng)));
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}

#[test]
fn constant_jet_gives_zero_residuals() {
    let mut rng = trial_rng(102, 0);
    let jet = SpinorJet::constant(random_spinor(&mut rng));
    for e in appendix_b_suite(&jet) {
        let r = e.result.unwrap();
        // replacement identities do not involve derivatives
        if r.name.ends_with("replacement") {
            assert!(r.normalized() < 1e-13, "{}", r.name);
        } else {
            assert_eq!(r.max_abs, 0.0, "{}", r.name);
        }
    }
}

#[test]
fn plane_wave_antiproducts() {
    let mut rng = trial_rng(103, 0);
    for _ in 0..100 {
        let jet = SpinorJet::plane_wave(random_spinor(&mut rng), crate::sampling::random_real4(&mut rng));
        let (a, b) = antiproduct_residuals(&jet).unwrap();
        assert!(a.normalized() <= 1e-10 && b.normalized() <= 1e-10);
    }
}

#[test]
fn whole_suite_on_random_jets() {
    let mut rng = trial_rng(104, 0);
    let worst = worst_suite((0..1000).map(|_| random_jet(&mut rng)));
    assert_eq!(worst.len(), 24);
    for (name, r) in worst {
        assert!(r <= 1e-9, "{name}: {r:e}");
    }
}

#[test]
fn contracted_form_is_the_trace() {
    let mut rng = trial_rng(105, 0);
    for _ in 0..500 {
        let b = belinfante_identity_residual(&random_jet(&mut rng)).unwrap();
        assert!(b.trace_mismatch <= 1e-13, "{}", b.trace_mismatch);
        assert!(b.full.normalized() <= 1e-9);
    }
}

#[test]
fn every_coefficient_is_load_bearing() {
    let jets: Vec<_> = {
        let mut rng = trial_rng(106, 0);
        (0..16).map(|_| random_jet(&mut rng)).collect()
    };
    let ctxs: Vec<_> = jets.iter().map(FierzContext::new).collect();
    let n_ids = appendix_b_expressions(&ctxs[0]).len();
    for id in 0..n_ids {
        let n_terms = appendix_b_expressions(&ctxs[0])[id].1.as_ref().unwrap().rhs.len();
        for t in 0..n_terms {
            for factor in [C64::new(1.1, 0.0), C64::new(-1.0, 0.0)] {
                let worst = ctxs
                    .iter()
                    .map(|c| {
                        let e = appendix_b_expressions(c).swap_remove(id).1.unwrap();
                        e.mutated(t, factor).relative_residual()
                    })
                    .fold(0.0, f64::max);
                let e = appendix_b_expressions(&ctxs[0]).swap_remove(id).1.unwrap();
                assert!(worst > 1e-3, "{} term {} ({}) × {factor}: {worst:e}", e.name, t, e.rhs[t].label);
            }
        }
    }
}
