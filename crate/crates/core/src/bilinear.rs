//! Spinors, 1-jets and the bilinear currents built from them.

use crate::clifford::{dirac, SpinorMatrix};
use crate::error::{Error, Result};
use crate::tensor::{dot, zero_mat, zero_rank3, zero_vec, Mat4, Rank3, Vec4, C64, ZERO};
use serde::{Deserialize, Serialize};

/// Relative threshold on |σ² − ω²| below which inverse factors are refused.
pub const DEGENERACY_REL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor(pub [C64; 4]);

impl Spinor {
    pub const fn zero() -> Self {
        Spinor([ZERO; 4])
    }

    /// The `i`-th unit spinor.
    pub fn unit(i: usize) -> Self {
        let mut s = Self::zero();
        s.0[i] = C64::new(1.0, 0.0);
        s
    }

    /// Dirac adjoint ψ̄ = ψ†γ^0 as a row vector.
    pub fn bar(&self) -> [C64; 4] {
        let p = &self.0;
        [p[0].conj(), p[1].conj(), -p[2].conj(), -p[3].conj()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Spinor(self.0.map(|c| c * s))
    }

    pub fn add(&self, other: &Spinor) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// A spinor value with its four first partial derivatives `d[μ] = ∂_μψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorJet {
    pub value: Spinor,
    pub d: [Spinor; 4],
}

impl SpinorJet {
    pub fn constant(value: Spinor) -> Self {
        SpinorJet {
            value,
            d: [Spinor::zero(); 4],
        }
    }

    /// Plane wave at the origin: ∂_μψ = −i p_μ ψ with `p_lower` = p_μ.
    pub fn plane_wave(value: Spinor, p_lower: [f64; 4]) -> Self {
        let d = std::array::from_fn(|m| value.scale(C64::new(0.0, -p_lower[m])));
        SpinorJet { value, d }
    }

    /// `1 + |ψ|² + Σ_μ |∂_μψ|²`; identities of degree `n` are normalized by `scale()^(n/2)`.
    pub fn scale(&self) -> f64 {
        1.0 + self.value.norm_sqr() + self.d.iter().map(Spinor::norm_sqr).sum::<f64>()
    }
}

/// The sixteen ψ̄Γψ fields plus ŝ and the charge-conjugate vectors m, n.
/// Every index is upper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilinearSet {
    pub sigma: C64,
    pub j: Vec4,
    pub s: Mat4,
    pub k: Vec4,
    pub omega: C64,
    pub sdual: Mat4,
    pub m: Vec4,
    pub n: Vec4,
}

impl BilinearSet {
    pub fn zero() -> Self {
        BilinearSet {
            sigma: ZERO,
            j: zero_vec(),
            s: zero_mat(),
            k: zero_vec(),
            omega: ZERO,
            sdual: zero_mat(),
            m: zero_vec(),
            n: zero_vec(),
        }
    }

    /// σ² − ω²
    pub fn invariant(&self) -> C64 {
        self.sigma * self.sigma - self.omega * self.omega
    }

    /// `(1 + |ψ|²)²`, read off from j^0 = ψ†ψ.
    pub fn scale(&self) -> f64 {
        (1.0 + self.j[0].re.abs()).powi(2)
    }

    pub fn degeneracy_threshold(&self) -> f64 {
        DEGENERACY_REL * self.scale()
    }

    /// σ² − ω², or `DegenerateInvariant` when it is too small to invert.
    pub fn nondegenerate_invariant(&self) -> Result<C64> {
        let d = self.invariant();
        let threshold = self.degeneracy_threshold();
        if d.norm() <= threshold || !d.norm().is_finite() {
            Err(Error::DegenerateInvariant {
                value: d.norm(),
                threshold,
            })
        } else {
            Ok(d)
        }
    }

    /// Largest imaginary part among fields that should be real, and largest
    /// real part among ω and ŝ (which should be imaginary).
    pub fn reality_defect(&self) -> f64 {
        let mut worst = self.sigma.im.abs();
        for v in [&self.j, &self.k, &self.m, &self.n] {
            for c in v.iter() {
                worst = worst.max(c.im.abs());
            }
        }
        for c in self.s.iter().flatten() {
            worst = worst.max(c.im.abs());
        }
        worst = worst.max(self.omega.re.abs());
        for c in self.sdual.iter().flatten() {
            worst = worst.max(c.re.abs());
        }
        worst
    }

    fn add(&self, o: &BilinearSet) -> BilinearSet {
        let v = |a: &Vec4, b: &Vec4| -> Vec4 { std::array::from_fn(|i| a[i] + b[i]) };
        let t = |a: &Mat4, b: &Mat4| -> Mat4 { std::array::from_fn(|i| std::array::from_fn(|k| a[i][k] + b[i][k])) };
        BilinearSet {
            sigma: self.sigma + o.sigma,
            j: v(&self.j, &o.j),
            s: t(&self.s, &o.s),
            k: v(&self.k, &o.k),
            omega: self.omega + o.omega,
            sdual: t(&self.sdual, &o.sdual),
            m: v(&self.m, &o.m),
            n: v(&self.n, &o.n),
        }
    }
}

/// `ā M b` for a row vector `ā`.
#[inline]
pub fn sandwich(bar_a: &[C64; 4], m: &SpinorMatrix, b: &[C64; 4]) -> C64 {
    let mb = m.apply(b);
    bar_a[0] * mb[0] + bar_a[1] * mb[1] + bar_a[2] * mb[2] + bar_a[3] * mb[3]
}

/// ψ^c = C ψ̄ᵀ
pub fn charge_conjugate(psi: &Spinor) -> Spinor {
    Spinor(dirac().conjugation.apply(&psi.bar()))
}

/// χ̄Γψ for every Γ in the Clifford basis (plus γ_5σ), leaving m, n zero.
fn gauge_invariant_block(bar_chi: &[C64; 4], psi: &[C64; 4]) -> BilinearSet {
    let b = dirac();
    let mut out = BilinearSet::zero();
    out.sigma = bar_chi.iter().zip(psi).map(|(a, c)| a * c).sum();
    out.omega = sandwich(bar_chi, &b.gamma5, psi);
    for m in 0..4 {
        out.j[m] = sandwich(bar_chi, &b.gamma[m], psi);
        out.k[m] = sandwich(bar_chi, &b.gamma5_gamma[m], psi);
    }
    for m in 0..4 {
        for n in (m + 1)..4 {
            let s = sandwich(bar_chi, &b.sigma[m][n], psi);
            let sd = sandwich(bar_chi, &b.gamma5_sigma[m][n], psi);
            out.s[m][n] = s;
            out.s[n][m] = -s;
            out.sdual[m][n] = sd;
            out.sdual[n][m] = -sd;
        }
    }
    out
}

/// ψ̄^c γ^μ χ, linear in both arguments.
fn conjugate_vector(psi: &Spinor, chi: &Spinor) -> Vec4 {
    let b = dirac();
    let bar_c = charge_conjugate(psi).bar();
    std::array::from_fn(|m| sandwich(&bar_c, &b.gamma[m], &chi.0))
}

/// ψ̄ γ^μ χ^c
fn vector_with_conjugate(psi: &Spinor, chi: &Spinor) -> Vec4 {
    let b = dirac();
    let c = charge_conjugate(chi);
    let bar = psi.bar();
    std::array::from_fn(|m| sandwich(&bar, &b.gamma[m], &c.0))
}

pub fn compute_bilinears(psi: &Spinor) -> BilinearSet {
    let mut out = gauge_invariant_block(&psi.bar(), &psi.0);
    // m = ½(ψ̄^cγψ + ψ̄γψ^c),  n = (i/2)(ψ̄γψ^c − ψ̄^cγψ)
    let z = conjugate_vector(psi, psi);
    let zbar = vector_with_conjugate(psi, psi);
    for mu in 0..4 {
        out.m[mu] = (z[mu] + zbar[mu]) * 0.5;
        out.n[mu] = (zbar[mu] - z[mu]) * C64::new(0.0, 0.5);
    }
    out
}

/// All bilinears of a jet, their first derivatives and the antisymmetric
/// derivative combinations `[ψ̄Γ∂_μψ − ∂_μψ̄Γψ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilinearJet {
    pub value: BilinearSet,
    /// `d[μ]` holds ∂_μ of every field.
    pub d: [BilinearSet; 4],
    /// `[μ]`: ψ̄∂_μψ − ∂_μψ̄ψ
    pub antisym_scalar: Vec4,
    /// `[μ]`: ψ̄γ_5∂_μψ − ∂_μψ̄γ_5ψ
    pub antisym_pseudo: Vec4,
    /// `[μ][ν]`: ψ̄γ_ν∂_μψ − ∂_μψ̄γ_νψ (ν lower)
    pub antisym_vector: Mat4,
    /// `[μ][σ]`: ψ̄γ_5γ^σ∂_μψ − ∂_μψ̄γ_5γ^σψ (σ upper)
    pub antisym_axial: Mat4,
    /// `[μ][ν][σ]`: ψ̄σ_{νσ}∂_μψ − ∂_μψ̄σ_{νσ}ψ
    pub antisym_tensor: Rank3,
    /// `[μ][ν][σ]`: ψ̄γ_5σ_{νσ}∂_μψ − ∂_μψ̄γ_5σ_{νσ}ψ
    pub antisym_tensor5: Rank3,
    /// Scale of the jet this was built from, `1 + |ψ|² + Σ|∂ψ|²`.
    pub jet_scale: f64,
}

pub fn bilinear_jet(jet: &SpinorJet) -> BilinearJet {
    let b = dirac();
    let psi = &jet.value;
    let bar = psi.bar();
    let value = compute_bilinears(psi);

    let mut d = [BilinearSet::zero(); 4];
    let mut antisym_scalar = zero_vec();
    let mut antisym_pseudo = zero_vec();
    let mut antisym_vector = zero_mat();
    let mut antisym_axial = zero_mat();
    let mut antisym_tensor = zero_rank3();
    let mut antisym_tensor5 = zero_rank3();

    for mu in 0..4 {
        let dpsi = &jet.d[mu];
        let dbar = dpsi.bar();
        // ψ̄Γ∂ψ and ∂ψ̄Γψ
        let right = gauge_invariant_block(&bar, &dpsi.0);
        let left = gauge_invariant_block(&dbar, &psi.0);
        let mut dset = right.add(&left);
        let dz = {
            let a = conjugate_vector(dpsi, psi);
            let c = conjugate_vector(psi, dpsi);
            let ab = vector_with_conjugate(dpsi, psi);
            let cb = vector_with_conjugate(psi, dpsi);
            (a, c, ab, cb)
        };
        for nu in 0..4 {
            let z = dz.0[nu] + dz.1[nu];
            let zb = dz.2[nu] + dz.3[nu];
            dset.m[nu] = (z + zb) * 0.5;
            dset.n[nu] = (zb - z) * C64::new(0.0, 0.5);
        }
        d[mu] = dset;

        antisym_scalar[mu] = right.sigma - left.sigma;
        antisym_pseudo[mu] = right.omega - left.omega;
        for nu in 0..4 {
            antisym_vector[mu][nu] = sandwich(&bar, &b.gamma_lower[nu], &dpsi.0)
                - sandwich(&dbar, &b.gamma_lower[nu], &psi.0);
            antisym_axial[mu][nu] = right.k[nu] - left.k[nu];
            for s in 0..4 {
                antisym_tensor[mu][nu][s] = sandwich(&bar, &b.sigma_lower[nu][s], &dpsi.0)
                    - sandwich(&dbar, &b.sigma_lower[nu][s], &psi.0);
                antisym_tensor5[mu][nu][s] = sandwich(&bar, &b.gamma5_sigma_lower[nu][s], &dpsi.0)
                    - sandwich(&dbar, &b.gamma5_sigma_lower[nu][s], &psi.0);
            }
        }
    }

    BilinearJet {
        value,
        d,
        antisym_scalar,
        antisym_pseudo,
        antisym_vector,
        antisym_axial,
        antisym_tensor,
        antisym_tensor5,
        jet_scale: jet.scale(),
    }
}

/// ψ → e^{iθ}ψ with ∂_μθ = `dtheta[μ]`.
pub fn gauge_transform(jet: &SpinorJet, theta: f64, dtheta: [f64; 4]) -> SpinorJet {
    let phase = C64::from_polar(1.0, theta);
    let value = jet.value.scale(phase);
    let d = std::array::from_fn(|m| {
        jet.d[m]
            .add(&jet.value.scale(C64::new(0.0, dtheta[m])))
            .scale(phase)
    });
    SpinorJet { value, d }
}

/// The gauge-invariant currents and the single gauge-dependent combination
/// `m^σ∂_μn_σ` that enter the bilinear stress-energy formulas.
///
/// `dj[μ][ν]` is ∂_μ j^ν. Can be filled from spinors (via [`BilinearJet::fields`])
/// or directly from an ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentFields {
    pub sigma: C64,
    pub omega: C64,
    pub j: Vec4,
    pub k: Vec4,
    pub dsigma: Vec4,
    pub domega: Vec4,
    pub dj: Mat4,
    /// `[μ]`: m^σ ∂_μ n_σ
    pub m_dn: Vec4,
    /// Normalization used for degeneracy decisions.
    pub scale: f64,
}

impl CurrentFields {
    pub fn invariant(&self) -> C64 {
        self.sigma * self.sigma - self.omega * self.omega
    }

    pub fn nondegenerate_invariant(&self) -> Result<C64> {
        let d = self.invariant();
        let threshold = DEGENERACY_REL * self.scale;
        if d.norm() <= threshold || !d.norm().is_finite() {
            Err(Error::DegenerateInvariant {
                value: d.norm(),
                threshold,
            })
        } else {
            Ok(d)
        }
    }
}

impl BilinearJet {
    /// m^σ ∂_μ n_σ for each μ.
    pub fn m_dn(&self) -> Vec4 {
        std::array::from_fn(|mu| dot(&self.value.m, &self.d[mu].n))
    }

    pub fn fields(&self) -> CurrentFields {
        CurrentFields {
            sigma: self.value.sigma,
            omega: self.value.omega,
            j: self.value.j,
            k: self.value.k,
            dsigma: std::array::from_fn(|m| self.d[m].sigma),
            domega: std::array::from_fn(|m| self.d[m].omega),
            dj: std::array::from_fn(|m| self.d[m].j),
            m_dn: self.m_dn(),
            scale: self.value.scale(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_jet, random_spinor, trial_rng};
    use crate::tensor::{max_abs_mat, ONE};

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn zero_spinor_has_zero_bilinears() {
        let b = compute_bilinears(&Spinor::zero());
        assert_eq!(b, BilinearSet::zero());
        assert_eq!(charge_conjugate(&Spinor::zero()), Spinor::zero());
    }

    #[test]
    fn first_unit_spinor() {
        let b = compute_bilinears(&Spinor::unit(0));
        assert_eq!(b.sigma, ONE);
        assert_eq!(b.j, [ONE, ZERO, ZERO, ZERO]);
        assert_eq!(b.omega, ZERO);
        assert!(close(dot(&b.j, &b.j), b.invariant(), 0.0));
    }

    #[test]
    fn charge_conjugate_of_first_unit_spinor() {
        // C ψ̄ᵀ with C = iγ²γ⁰ antidiagonal: e_1 maps onto ±e_4.
        let c = charge_conjugate(&Spinor::unit(0));
        let nonzero: Vec<_> = c.0.iter().enumerate().filter(|(_, x)| x.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, 3);
        assert_eq!(nonzero[0].1.norm(), 1.0);
    }

    #[test]
    fn charge_conjugation_is_an_involution() {
        let mut rng = trial_rng(11, 0);
        for _ in 0..100 {
            let psi = random_spinor(&mut rng);
            let back = charge_conjugate(&charge_conjugate(&psi));
            for i in 0..4 {
                assert!(close(back.0[i], psi.0[i], 1e-14));
            }
        }
    }

    #[test]
    fn constant_phase_leaves_sixteen_fields_and_rotates_m_plus_in() {
        let mut rng = trial_rng(3, 0);
        let psi = random_spinor(&mut rng);
        let theta = 0.7;
        let jet = gauge_transform(&SpinorJet::constant(psi), theta, [0.0; 4]);
        let a = compute_bilinears(&psi);
        let b = compute_bilinears(&jet.value);
        assert!(close(a.sigma, b.sigma, 1e-13));
        assert!(close(a.omega, b.omega, 1e-13));
        for m in 0..4 {
            assert!(close(a.j[m], b.j[m], 1e-13));
            assert!(close(a.k[m], b.k[m], 1e-13));
            let za = (a.m[m] + a.n[m] * crate::tensor::I) * C64::from_polar(1.0, 2.0 * theta);
            let zb = b.m[m] + b.n[m] * crate::tensor::I;
            assert!(close(za, zb, 1e-12));
        }
        assert!(max_abs_mat(&crate::tensor::sub_mat(&a.s, &b.s)) < 1e-13);
    }

    #[test]
    fn local_gauge_rotates_m_plus_in_value() {
        let mut rng = trial_rng(5, 0);
        let jet = random_jet(&mut rng);
        let t = gauge_transform(&jet, -1.3, [0.2, -0.4, 1.1, 0.3]);
        let a = compute_bilinears(&jet.value);
        let b = compute_bilinears(&t.value);
        let rot = C64::from_polar(1.0, -2.6);
        for m in 0..4 {
            let za = (a.m[m] + a.n[m] * crate::tensor::I) * rot;
            assert!(close(za, b.m[m] + b.n[m] * crate::tensor::I, 1e-12));
        }
    }

    #[test]
    fn identity_gauge_transform() {
        let mut rng = trial_rng(7, 0);
        let jet = random_jet(&mut rng);
        assert_eq!(gauge_transform(&jet, 0.0, [0.0; 4]), jet);
    }

    #[test]
    fn constant_jet_has_zero_derivatives() {
        let mut rng = trial_rng(9, 0);
        let bj = bilinear_jet(&SpinorJet::constant(random_spinor(&mut rng)));
        for mu in 0..4 {
            assert_eq!(bj.d[mu], BilinearSet::zero());
        }
        assert_eq!(bj.antisym_vector, zero_mat());
        assert_eq!(bj.antisym_tensor, zero_rank3());
    }

    #[test]
    fn plane_wave_antisym_vector() {
        // ∂_μψ = −ip_μψ ⇒ [ψ̄γ_ν∂_μψ − ∂_μψ̄γ_νψ] = −2i p_μ j_ν
        let mut rng = trial_rng(13, 0);
        let psi = random_spinor(&mut rng);
        let p = [1.3, -0.2, 0.7, 0.4];
        let bj = bilinear_jet(&SpinorJet::plane_wave(psi, p));
        let jl = crate::tensor::lower(&bj.value.j);
        for mu in 0..4 {
            for nu in 0..4 {
                let expected = C64::new(0.0, -2.0 * p[mu]) * jl[nu];
                assert!(close(bj.antisym_vector[mu][nu], expected, 1e-12));
            }
        }
    }

    #[test]
    fn product_rule_matches_finite_differences() {
        let mut rng = trial_rng(17, 0);
        for _ in 0..20 {
            let jet = random_jet(&mut rng);
            let bj = bilinear_jet(&jet);
            let h = 1e-6;
            for mu in 0..4 {
                let fwd = compute_bilinears(&jet.value.add(&jet.d[mu].scale(C64::new(h, 0.0))));
                let bwd = compute_bilinears(&jet.value.add(&jet.d[mu].scale(C64::new(-h, 0.0))));
                let fd_sigma = (fwd.sigma - bwd.sigma) / (2.0 * h);
                assert!(close(fd_sigma, bj.d[mu].sigma, 1e-6 * jet.scale()));
                for nu in 0..4 {
                    let fd_n = (fwd.n[nu] - bwd.n[nu]) / (2.0 * h);
                    assert!(close(fd_n, bj.d[mu].n[nu], 1e-6 * jet.scale()));
                    let fd_k = (fwd.k[nu] - bwd.k[nu]) / (2.0 * h);
                    assert!(close(fd_k, bj.d[mu].k[nu], 1e-6 * jet.scale()));
                }
            }
        }
    }

    #[test]
    fn reality_pattern_and_antisymmetry() {
        let mut rng = trial_rng(19, 0);
        for _ in 0..1000 {
            let psi = random_spinor(&mut rng);
            let b = compute_bilinears(&psi);
            let scale = (1.0 + psi.norm_sqr()).powi(2);
            assert!(b.reality_defect() <= 1e-12 * scale);
            for m in 0..4 {
                for n in 0..4 {
                    assert_eq!(b.s[m][n], -b.s[n][m]);
                    assert_eq!(b.sdual[m][n], -b.sdual[n][m]);
                }
            }
        }
    }

    #[test]
    fn degenerate_state_is_refused() {
        // ψ = (1,0,1,0)/√2 has σ = ω = 0 (a chiral combination).
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = Spinor([C64::new(h, 0.0), ZERO, C64::new(h, 0.0), ZERO]);
        let b = compute_bilinears(&psi);
        assert!(matches!(
            b.nondegenerate_invariant(),
            Err(Error::DegenerateInvariant { .. })
        ));
    }
}
