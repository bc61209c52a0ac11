//! Stress-energy tensors in spinor and bilinear form.
//!
//! Every rank-2 output has both indices lower.

use crate::bilinear::{bilinear_jet, BilinearJet, CurrentFields, Spinor, SpinorJet};
use crate::clifford::dirac;
use crate::error::{Error, Result};
use crate::tensor::{
    epsilon_upper_terms, lower, max_abs_mat, zero_mat, zero_rank3, Mat4, Rank3, Vec4, C64, ETA, I,
};
use serde::{Deserialize, Serialize};

/// Complex rank-2 tensor, both indices lower.
pub type Tensor2 = Mat4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub q: f64,
    pub mass: f64,
}

/// Electromagnetic data at a point: A_μ, ∂_μA_ν and F_{μν} = ∂_μA_ν − ∂_νA_μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EMField {
    pub a: [f64; 4],
    pub da: [[f64; 4]; 4],
    pub f: [[f64; 4]; 4],
    pub q: f64,
    pub mass: f64,
}

impl EMField {
    pub fn from_potential(a: [f64; 4], da: [[f64; 4]; 4], q: f64, mass: f64) -> Self {
        let f = std::array::from_fn(|m| std::array::from_fn(|n| da[m][n] - da[n][m]));
        EMField { a, da, f, q, mass }
    }

    pub fn vacuum(q: f64, mass: f64) -> Self {
        Self::from_potential([0.0; 4], [[0.0; 4]; 4], q, mass)
    }

    pub fn params(&self) -> PhysParams {
        PhysParams {
            q: self.q,
            mass: self.mass,
        }
    }

    /// A_μ → A_μ − ∂_μθ/q, the partner of ψ → e^{iθ}ψ. F is unchanged.
    pub fn gauge_shift(&self, dtheta: [f64; 4]) -> Result<Self> {
        if self.q == 0.0 {
            return Err(Error::ZeroCharge);
        }
        let mut out = *self;
        for m in 0..4 {
            out.a[m] -= dtheta[m] / self.q;
        }
        Ok(out)
    }

    /// Size of the field data, for residual normalization.
    pub fn magnitude(&self) -> f64 {
        let a = self.a.iter().fold(0.0_f64, |x, y| x.max(y.abs()));
        let f = self.f.iter().flatten().fold(0.0_f64, |x, y| x.max(y.abs()));
        1.0 + self.q.abs() * a + f * f
    }
}

fn real_to_complex(v: &[f64; 4]) -> Vec4 {
    v.map(|x| C64::new(x, 0.0))
}

fn symmetrize(x: &Mat4) -> Mat4 {
    std::array::from_fn(|m| std::array::from_fn(|n| x[m][n] + x[n][m]))
}

/// Largest |Im| entry.
pub fn max_imag(t: &Tensor2) -> f64 {
    t.iter().flatten().fold(0.0, |a, x| a.max(x.im.abs()))
}

pub fn real_part(t: &Tensor2) -> [[f64; 4]; 4] {
    std::array::from_fn(|m| std::array::from_fn(|n| t[m][n].re))
}

pub fn asymmetry(t: &Tensor2) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            worst = worst.max((t[m][n] - t[n][m]).norm());
        }
    }
    worst
}

// Spinor route.

/// T̃_{μν} = −(i/2)[ψ̄γ_μ∂_νψ − ∂_νψ̄γ_μψ]
pub fn canonical_tensor(jet: &SpinorJet) -> Tensor2 {
    canonical_from(&bilinear_jet(jet))
}

pub fn canonical_from(bj: &BilinearJet) -> Tensor2 {
    let av = &bj.antisym_vector;
    std::array::from_fn(|m| std::array::from_fn(|n| C64::new(0.0, -0.5) * av[n][m]))
}

/// Θ_{μν} = (T̃_{μν} + T̃_{νμ})/2
pub fn belinfante_spinor(jet: &SpinorJet) -> Tensor2 {
    belinfante_spinor_from(&bilinear_jet(jet))
}

pub fn belinfante_spinor_from(bj: &BilinearJet) -> Tensor2 {
    let t = canonical_from(bj);
    std::array::from_fn(|m| std::array::from_fn(|n| (t[m][n] + t[n][m]) * 0.5))
}

/// S^{μσν} = −(1/4)[ψ̄{γ^μ,σ^{σν}}ψ + ψ̄{γ^ν,σ^{σμ}}ψ], indexed `[μ][σ][ν]`.
pub fn spin_density(psi: &Spinor) -> Rank3 {
    let b = dirac();
    let bar = psi.bar();
    let ev = |m: usize, s: usize, n: usize| {
        crate::bilinear::sandwich(&bar, &b.gamma[m].anticommutator(&b.sigma[s][n]), &psi.0)
    };
    let mut out = zero_rank3();
    for m in 0..4 {
        for s in 0..4 {
            for n in 0..4 {
                out[m][s][n] = (ev(m, s, n) + ev(n, s, m)) * -0.25;
            }
        }
    }
    out
}

/// (i/2)[ψ̄γ^μ∂_μψ − ∂_μψ̄γ^μψ] − mσ − q j^μA_μ
pub fn spinor_lagrangian(jet: &SpinorJet, a_lower: &[f64; 4], p: &PhysParams) -> C64 {
    spinor_lagrangian_from(&bilinear_jet(jet), a_lower, p)
}

pub fn spinor_lagrangian_from(bj: &BilinearJet, a_lower: &[f64; 4], p: &PhysParams) -> C64 {
    let av = &bj.antisym_vector;
    let kinetic: C64 = (0..4).map(|m| av[m][m] * ETA[m]).sum();
    let ja: C64 = (0..4).map(|m| bj.value.j[m] * a_lower[m]).sum();
    C64::new(0.0, 0.5) * kinetic - bj.value.sigma * p.mass - ja * p.q
}

// Bilinear route.

/// ε^{ρσκτ}(∂_ρ j_σ) j_κ k_τ, with `djl[ρ][σ]` = ∂_ρ j_σ.
fn eps_full(djl: &Mat4, jl: &Vec4, kl: &Vec4) -> C64 {
    epsilon_upper_terms()
        .iter()
        .map(|([a, b, c, d], s)| djl[*a][*b] * jl[*c] * kl[*d] * *s)
        .sum()
}

/// `[μ][ν]` = ε_ν{}^{ρσκ}(∂_μ j_ρ) j_σ k_κ
fn eps_first_lowered(djl: &Mat4, jl: &Vec4, kl: &Vec4) -> Mat4 {
    let mut out = zero_mat();
    for ([n, r, s, k], sign) in epsilon_upper_terms() {
        let e = sign * ETA[*n];
        for m in 0..4 {
            out[m][*n] += djl[m][*r] * jl[*s] * kl[*k] * e;
        }
    }
    out
}

/// The three ε terms of the variational form with free index μ (first
/// argument), before adding the μ↔ν counterparts.
fn eps_variational(djl: &Mat4, jl: &Vec4, kl: &Vec4) -> Mat4 {
    let mut out = zero_mat();
    for ([a, b, c, d], sign) in epsilon_upper_terms() {
        // ε^ρ{}_μ{}^{σκ}(∂_ρ j_ν) j_σ k_κ
        let (r, m, s, k) = (*a, *b, *c, *d);
        for n in 0..4 {
            out[m][n] += djl[r][n] * jl[s] * kl[k] * (sign * ETA[m]);
        }
        // ε^{ρσ}{}_μ{}^κ(∂_ρ j_σ) j_ν k_κ
        let (r, s, m, k) = (*a, *b, *c, *d);
        for n in 0..4 {
            out[m][n] += djl[r][s] * jl[n] * kl[k] * (sign * ETA[m]);
        }
        // ε^{ρσκ}{}_μ(∂_ρ j_σ) j_κ k_ν
        let (r, s, k, m) = (*a, *b, *c, *d);
        for n in 0..4 {
            out[m][n] += djl[r][s] * jl[k] * kl[n] * (sign * ETA[m]);
        }
    }
    out
}

/// LHS − RHS of the ε combinatorial identity for arbitrary `djl[ρ][σ]` = ∂_ρ j_σ,
/// `jl`, `kl` (all lower).
pub fn combinatorial_residual(djl: &Mat4, jl: &Vec4, kl: &Vec4) -> Tensor2 {
    let e = eps_first_lowered(djl, jl, kl);
    let lhs = symmetrize(&e).map(|r| r.map(|x| -x));
    let full = eps_full(djl, jl, kl);
    let six = symmetrize(&eps_variational(djl, jl, kl));
    std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let eta = if m == n { ETA[m] } else { 0.0 };
            lhs[m][n] - (full * (-2.0 * eta) + six[m][n])
        })
    })
}

/// j_σk_κ[ε_ν^{ρσκ}∂_μj_ρ + ε_μ^{ρσκ}∂_νj_ρ]
pub fn epsilon_contraction(f: &CurrentFields) -> Tensor2 {
    let l = lowered(f);
    symmetrize(&eps_first_lowered(&l.djl, &l.jl, &l.kl))
}

struct Lowered {
    jl: Vec4,
    kl: Vec4,
    djl: Mat4,
    /// ω∂_μσ − σ∂_μω
    x: Vec4,
}

fn lowered(f: &CurrentFields) -> Lowered {
    Lowered {
        jl: lower(&f.j),
        kl: lower(&f.k),
        djl: std::array::from_fn(|m| lower(&f.dj[m])),
        x: std::array::from_fn(|m| f.omega * f.dsigma[m] - f.sigma * f.domega[m]),
    }
}

/// (1/4)D^{-1}{−i[k_μX_ν + k_νX_μ] − j_σk_κ[ε_ν^{ρσκ}∂_μj_ρ + ε_μ^{ρσκ}∂_νj_ρ]}, the part
/// of the bilinear Belinfante tensor built only from gauge-invariant fields.
pub fn gauge_invariant_part(f: &CurrentFields) -> Result<Tensor2> {
    let d = f.nondegenerate_invariant()?;
    let l = lowered(f);
    let e = eps_first_lowered(&l.djl, &l.jl, &l.kl);
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            (-I * (l.kl[m] * l.x[n] + l.kl[n] * l.x[m]) - (e[m][n] + e[n][m])) / (d * 4.0)
        })
    }))
}

/// Bilinear Belinfante tensor including the gauge-dependent −j_μ m·∂_νn − j_ν m·∂_μn terms.
pub fn belinfante_bilinear(f: &CurrentFields) -> Result<Tensor2> {
    let d = f.nondegenerate_invariant()?;
    let gi = gauge_invariant_part(f)?;
    let jl = lower(&f.j);
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| gi[m][n] - (jl[m] * f.m_dn[n] + jl[n] * f.m_dn[m]) / (d * 4.0))
    }))
}

/// B_μ = A_μ − (1/2q)(σ²−ω²)^{-1} m^σ∂_μn_σ, returned as its real part.
pub fn b_field(f: &CurrentFields, a_lower: &[f64; 4], q: f64) -> Result<[f64; 4]> {
    if q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let d = f.nondegenerate_invariant()?;
    Ok(std::array::from_fn(|m| a_lower[m] - (f.m_dn[m] / (d * (2.0 * q))).re))
}

/// (q/2)(j_μX_ν + j_νX_μ) for lower-index `jl` and `xl`.
pub fn interaction_tensor(jl: &Vec4, xl: &[f64; 4], q: f64) -> Tensor2 {
    let x = real_to_complex(xl);
    std::array::from_fn(|m| std::array::from_fn(|n| (jl[m] * x[n] + jl[n] * x[m]) * (q / 2.0)))
}

pub const ASYMMETRY_TOL: f64 = 1e-12;

/// (1/4)η_{μν}F_{σρ}F^{σρ} − F_{μσ}F_ν{}^σ
pub fn maxwell_tensor(f: &[[f64; 4]; 4]) -> Result<Tensor2> {
    let size = f.iter().flatten().fold(1.0_f64, |a, x| a.max(x.abs()));
    let mut worst: f64 = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            worst = worst.max((f[m][n] + f[n][m]).abs());
        }
    }
    if worst > ASYMMETRY_TOL * size {
        return Err(Error::Asymmetry { residual: worst });
    }
    let mut ff = 0.0;
    for s in 0..4 {
        for r in 0..4 {
            ff += f[s][r] * f[s][r] * ETA[s] * ETA[r];
        }
    }
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let eta = if m == n { ETA[m] } else { 0.0 };
            let cross: f64 = (0..4).map(|s| f[m][s] * f[n][s] * ETA[s]).sum();
            C64::new(0.25 * eta * ff - cross, 0.0)
        })
    }))
}

fn add3(a: &Tensor2, b: &Tensor2, c: &Tensor2) -> Tensor2 {
    std::array::from_fn(|m| std::array::from_fn(|n| a[m][n] + b[m][n] + c[m][n]))
}

/// Θ_MD from spinors: Belinfante spinor form + interaction with A + Maxwell.
pub fn assemble_md_spinor(jet: &SpinorJet, em: &EMField) -> Result<Tensor2> {
    let bj = bilinear_jet(jet);
    let theta = belinfante_spinor_from(&bj);
    let int = interaction_tensor(&lower(&bj.value.j), &em.a, em.q);
    Ok(add3(&theta, &int, &maxwell_tensor(&em.f)?))
}

/// Θ_MD from bilinears: gauge-invariant part + interaction with B + Maxwell.
pub fn assemble_md_bilinear(f: &CurrentFields, b_lower: &[f64; 4], em: &EMField) -> Result<Tensor2> {
    let gi = gauge_invariant_part(f)?;
    let int = interaction_tensor(&lower(&f.j), b_lower, em.q);
    Ok(add3(&gi, &int, &maxwell_tensor(&em.f)?))
}

/// Both assembly routes for one jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdAssembly {
    pub spinor_route: Tensor2,
    pub bilinear_route: Tensor2,
    pub b: [f64; 4],
}

impl MdAssembly {
    pub fn route_difference(&self) -> f64 {
        max_abs_mat(&crate::tensor::sub_mat(&self.spinor_route, &self.bilinear_route))
    }
}

pub fn assemble_md(jet: &SpinorJet, em: &EMField) -> Result<MdAssembly> {
    let bj = bilinear_jet(jet);
    let f = bj.fields();
    let b = b_field(&f, &em.a, em.q)?;
    let theta = belinfante_spinor_from(&bj);
    let int = interaction_tensor(&lower(&bj.value.j), &em.a, em.q);
    let max = maxwell_tensor(&em.f)?;
    Ok(MdAssembly {
        spinor_route: add3(&theta, &int, &max),
        bilinear_route: assemble_md_bilinear(&f, &b, em)?,
        b,
    })
}

/// (1/2)D^{-1}{i k^ρ[ω∂_ρσ − σ∂_ρω] + ε^{ρσκτ}(∂_ρj_σ)j_κk_τ} − mσ − q j^ρB_ρ
pub fn bilinear_lagrangian(f: &CurrentFields, b_lower: &[f64; 4], p: &PhysParams) -> Result<C64> {
    let d = f.nondegenerate_invariant()?;
    let l = lowered(f);
    let kx: C64 = (0..4).map(|m| f.k[m] * l.x[m]).sum();
    let eps = eps_full(&l.djl, &l.jl, &l.kl);
    let jb: C64 = (0..4).map(|m| f.j[m] * b_lower[m]).sum();
    Ok((I * kx + eps) / (d * 2.0) - f.sigma * p.mass - jb * p.q)
}

/// Flat-space variational tensor before the on-shell simplification.
pub fn variational_pre_tensor(f: &CurrentFields, b_lower: &[f64; 4], p: &PhysParams) -> Result<Tensor2> {
    let d = f.nondegenerate_invariant()?;
    let lag = bilinear_lagrangian(f, b_lower, p)?;
    let l = lowered(f);
    let eps = eps_full(&l.djl, &l.jl, &l.kl);
    let six = symmetrize(&eps_variational(&l.djl, &l.jl, &l.kl));
    let int = interaction_tensor(&l.jl, b_lower, p.q);
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let eta = if m == n { ETA[m] } else { 0.0 };
            let brace = -I * (l.kl[m] * l.x[n] + l.kl[n] * l.x[m]) - eps * (2.0 * eta) + six[m][n];
            -lag * eta + brace / (d * 4.0) + int[m][n]
        })
    }))
}

/// variational_pre_tensor − [gauge_invariant_part + interaction(j,B) − η L]; vanishes
/// off-shell by the ε combinatorial identity.
pub fn decomposition_residual(f: &CurrentFields, b_lower: &[f64; 4], p: &PhysParams) -> Result<Tensor2> {
    let pre = variational_pre_tensor(f, b_lower, p)?;
    let gi = gauge_invariant_part(f)?;
    let lag = bilinear_lagrangian(f, b_lower, p)?;
    let int = interaction_tensor(&lower(&f.j), b_lower, p.q);
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let eta = if m == n { ETA[m] } else { 0.0 };
            pre[m][n] - (gi[m][n] + int[m][n] - lag * eta)
        })
    }))
}
