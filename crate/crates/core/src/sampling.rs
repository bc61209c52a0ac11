//! Seeded random inputs. Each trial gets its own ChaCha stream, so results do
//! not depend on thread scheduling.

use crate::bilinear::{Spinor, SpinorJet};
use crate::clifford::dirac;
use crate::tensor::{Mat4, Vec4, C64, ETA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type TrialRng = ChaCha8Rng;

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard complex normal: real and imaginary parts each N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    C64::new(s * normal(rng), s * normal(rng))
}

pub fn random_spinor<R: Rng + ?Sized>(rng: &mut R) -> Spinor {
    Spinor(std::array::from_fn(|_| complex_normal(rng)))
}

pub fn random_jet<R: Rng + ?Sized>(rng: &mut R) -> SpinorJet {
    SpinorJet {
        value: random_spinor(rng),
        d: std::array::from_fn(|_| random_spinor(rng)),
    }
}

pub fn random_real4<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    std::array::from_fn(|_| normal(rng))
}

pub fn random_real_mat<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 4]; 4] {
    std::array::from_fn(|_| random_real4(rng))
}

pub fn random_complex_vec<R: Rng + ?Sized>(rng: &mut R) -> Vec4 {
    std::array::from_fn(|_| complex_normal(rng))
}

pub fn random_complex_mat<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    std::array::from_fn(|_| random_complex_vec(rng))
}

/// A plane-wave solution of the Dirac equation in the potential `a_lower`.
#[derive(Debug, Clone, Copy)]
pub struct OnShellSample {
    pub jet: SpinorJet,
    /// Kinetic momentum P_μ with P·P = mass².
    pub kinetic_lower: [f64; 4],
    /// Canonical momentum p_μ = P_μ + qA_μ.
    pub canonical_lower: [f64; 4],
    pub a_lower: [f64; 4],
}

/// u = (γ·P + m)χ solves (γ·P − m)u = 0 whenever P² = m², so with
/// ∂_μψ = −ip_μψ and p = P + qA the Dirac equation holds and the
/// Lagrangian vanishes.
pub fn on_shell_plane_wave<R: Rng + ?Sized>(rng: &mut R, mass: f64, charge: f64) -> OnShellSample {
    let b = dirac();
    let spatial: [f64; 3] = std::array::from_fn(|_| 0.5 * normal(rng));
    let e = (mass * mass + spatial.iter().map(|x| x * x).sum::<f64>()).sqrt();
    // lower indices: P_0 = E, P_i = −p^i
    let kinetic_lower = [e, -spatial[0], -spatial[1], -spatial[2]];
    let a_lower = random_real4(rng);
    let canonical_lower: [f64; 4] = std::array::from_fn(|m| kinetic_lower[m] + charge * a_lower[m]);

    // γ^μ P_μ + m
    let mut op = crate::clifford::SpinorMatrix::identity() * mass;
    for m in 0..4 {
        op += b.gamma[m] * kinetic_lower[m];
    }
    let chi = random_spinor(rng);
    let u = Spinor(op.apply(&chi.0));
    OnShellSample {
        jet: SpinorJet::plane_wave(u, canonical_lower),
        kinetic_lower,
        canonical_lower,
        a_lower,
    }
}

/// Raise the index of a real covector.
pub fn raise_real(v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|m| ETA[m] * v[m])
}

/// Reduced jet with every entry N(0,1), r ≥ 0.3 and σ² + omega_im² ≥ 0.1.
pub fn random_spherical_jet<R: Rng + ?Sized>(rng: &mut R) -> crate::spherical::SphericalJet {
    loop {
        let v: [f64; 18] = std::array::from_fn(|_| normal(rng));
        let sj = crate::spherical::SphericalJet {
            t: v[0],
            r: v[1].abs() + 0.3,
            sigma: v[2],
            omega_im: v[3],
            j_a: v[4],
            j_b: v[5],
            sigma_t: v[6],
            sigma_r: v[7],
            omega_im_t: v[8],
            omega_im_r: v[9],
            j_a_t: v[10],
            j_a_r: v[11],
            j_b_t: v[12],
            j_b_r: v[13],
            sigma_tt: v[14],
            sigma_rr: v[15],
            omega_im_tt: v[16],
            omega_im_rr: v[17],
        };
        if sj.invariant() >= 0.1 {
            return sj;
        }
    }
}

/// Uniformly distributed point on the sphere of radius `r`.
pub fn random_point_on_sphere<R: Rng + ?Sized>(rng: &mut R, r: f64) -> [f64; 3] {
    loop {
        let d: [f64; 3] = std::array::from_fn(|_| normal(rng));
        let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return d.map(|x| x / n * r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = random_spinor(&mut trial_rng(1, 4));
        let b = random_spinor(&mut trial_rng(1, 4));
        let c = random_spinor(&mut trial_rng(1, 5));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn complex_normal_has_unit_second_moment() {
        let mut rng = trial_rng(2, 0);
        let n = 20000;
        let m2: f64 = (0..n).map(|_| complex_normal(&mut rng).norm_sqr()).sum::<f64>() / n as f64;
        assert!((m2 - 1.0).abs() < 0.05, "{m2}");
    }

    #[test]
    fn on_shell_sample_satisfies_dirac_equation() {
        let b = dirac();
        let mut rng = trial_rng(3, 0);
        let s = on_shell_plane_wave(&mut rng, 1.5, 0.8);
        let p = s.kinetic_lower;
        let p2 = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
        assert!((p2 - 2.25).abs() < 1e-12);
        let mut op = crate::clifford::SpinorMatrix::identity() * -1.5;
        for m in 0..4 {
            op += b.gamma[m] * p[m];
        }
        let r = op.apply(&s.jet.value.0);
        assert!(r.iter().all(|x| x.norm() < 1e-12));
    }
}
