//! Fierz expansion and the Fierz identities as two-sided residual evaluators.
//!
//! Every identity is built as an [`IdentityExpr`]: left side from spinor
//! bilinears (including the antisymmetric derivative combinations), right
//! side from bilinear fields, each summand carrying its numeric coefficient.

mod context;
mod expr;

pub use context::FierzContext;
pub use expr::{IdentityExpr, Term};

use crate::bilinear::{sandwich, BilinearSet, Spinor, SpinorJet};
use crate::clifford::{dirac, SpinorMatrix};
use crate::error::{Error, Result};
use crate::report::{IdentityReport, IdentityResidual};
use crate::tensor::{dot, Mat4, Vec4, C64, ETA};
use serde::{Deserialize, Serialize};

/// Coefficients of ψχ̄ in the Clifford basis:
/// `ψχ̄ = a_S I + a_V[μ] γ^μ + Σ_{μν} a_T[μ][ν] σ^{μν} + a_A[μ] γ_5γ^μ + a_P γ_5`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FierzCoefficients {
    pub a_s: C64,
    pub a_v: Vec4,
    pub a_t: Mat4,
    pub a_a: Vec4,
    pub a_p: C64,
}

impl FierzCoefficients {
    pub fn reconstruct(&self) -> SpinorMatrix {
        let b = dirac();
        let mut m = SpinorMatrix::identity() * self.a_s + b.gamma5 * self.a_p;
        for mu in 0..4 {
            m += b.gamma[mu] * self.a_v[mu];
            m += b.gamma5_gamma[mu] * self.a_a[mu];
            for nu in 0..4 {
                m += b.sigma[mu][nu] * self.a_t[mu][nu];
            }
        }
        m
    }
}

pub fn fierz_expand(chi: &Spinor, psi: &Spinor) -> FierzCoefficients {
    let b = dirac();
    let cb = chi.bar();
    let quarter = C64::new(0.25, 0.0);
    FierzCoefficients {
        a_s: sandwich(&cb, &SpinorMatrix::identity(), &psi.0) * quarter,
        a_v: std::array::from_fn(|m| sandwich(&cb, &b.gamma_lower[m], &psi.0) * quarter),
        a_t: std::array::from_fn(|m| {
            std::array::from_fn(|n| sandwich(&cb, &b.sigma_lower[m][n], &psi.0) * 0.125)
        }),
        a_a: std::array::from_fn(|m| -sandwich(&cb, &(b.gamma5 * b.gamma_lower[m]), &psi.0) * quarter),
        a_p: sandwich(&cb, &b.gamma5, &psi.0) * quarter,
    }
}

/// The outer product ψχ̄ computed directly.
pub fn outer_product(psi: &Spinor, chi: &Spinor) -> SpinorMatrix {
    let cb = chi.bar();
    SpinorMatrix(std::array::from_fn(|i| std::array::from_fn(|j| psi.0[i] * cb[j])))
}

/// Predicted (s^{μν}, ŝ^{μν}) from σ, ω, j, k.
pub fn rank2_replacement(b: &BilinearSet) -> Result<(Mat4, Mat4)> {
    let d = b.nondegenerate_invariant()?;
    let jl = crate::tensor::lower(&b.j);
    let kl = crate::tensor::lower(&b.k);
    let e = context::eps_upper_pair(&jl, &kl);
    let dl = context::delta_pair(&b.j, &b.k);
    let s = std::array::from_fn(|m| std::array::from_fn(|n| (b.sigma * e[m][n] - b.omega * dl[m][n]) / d));
    let sd = std::array::from_fn(|m| std::array::from_fn(|n| (b.omega * e[m][n] - b.sigma * dl[m][n]) / d));
    Ok((s, sd))
}

pub const FUNDAMENTAL_TOL: f64 = 1e-10;

/// j·j = σ²−ω², k·k = −(σ²−ω²), j·k = 0, the analogous m, n relations and,
/// when non-degenerate, the rank-2 replacement. Residuals are divided by `(1+|ψ|²)²`.
pub fn check_fundamental(b: &BilinearSet) -> IdentityReport {
    check_fundamental_with_tol(b, FUNDAMENTAL_TOL)
}

pub fn check_fundamental_with_tol(b: &BilinearSet, tol: f64) -> IdentityReport {
    let scale = b.scale();
    let d = b.invariant();
    let mut r = IdentityReport::new();
    let mut push = |name: &str, x: C64| r.push(name, x.norm() / scale, scale, tol);
    push("j·j = σ²−ω²", dot(&b.j, &b.j) - d);
    push("k·k = −(σ²−ω²)", dot(&b.k, &b.k) + d);
    push("j·k = 0", dot(&b.j, &b.k));
    push("m·m = −(σ²−ω²)", dot(&b.m, &b.m) + d);
    push("n·n = −(σ²−ω²)", dot(&b.n, &b.n) + d);
    push("m·n = 0", dot(&b.m, &b.n));
    if let Ok((s, sd)) = rank2_replacement(b) {
        let mut worst_s: f64 = 0.0;
        let mut worst_sd: f64 = 0.0;
        for m in 0..4 {
            for n in 0..4 {
                worst_s = worst_s.max((s[m][n] - b.s[m][n]).norm());
                worst_sd = worst_sd.max((sd[m][n] - b.sdual[m][n]).norm());
            }
        }
        r.push("s replacement", worst_s / scale, scale, tol);
        r.push("ŝ replacement", worst_sd / scale, scale, tol);
    }
    r
}

pub fn antiproduct_residuals(jet: &SpinorJet) -> Result<(IdentityResidual, IdentityResidual)> {
    let ctx = FierzContext::new(jet);
    Ok((
        ctx.antiproduct_scalar()?.residual(ctx.scale),
        ctx.antiproduct_pseudo()?.residual(ctx.scale),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BelinfanteResiduals {
    pub full: IdentityResidual,
    pub contracted: IdentityResidual,
    /// |contracted residual − η^{μν}·(full residual)_{μν}|, normalized.
    pub trace_mismatch: f64,
}

pub fn belinfante_identity_residual(jet: &SpinorJet) -> Result<BelinfanteResiduals> {
    let ctx = FierzContext::new(jet);
    belinfante_from_context(&ctx)
}

pub fn belinfante_from_context(ctx: &FierzContext) -> Result<BelinfanteResiduals> {
    let full = ctx.belinfante()?;
    let contracted = ctx.belinfante_contracted()?;
    let r = full.residual_tensor();
    let trace: C64 = (0..4).map(|m| r[4 * m + m] * ETA[m]).sum();
    let rc = contracted.residual_tensor()[0];
    let norm = full.normalization(ctx.scale);
    Ok(BelinfanteResiduals {
        full: full.residual(ctx.scale),
        contracted: contracted.residual(ctx.scale),
        trace_mismatch: (rc - trace).norm() / norm,
    })
}

/// Outcome of one identity in a suite; degenerate inputs are reported per identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub result: Result<IdentityResidual>,
}

/// Every identity of the derivation, as expressions, in display order.
pub fn appendix_b_expressions(ctx: &FierzContext) -> Vec<(&'static str, Result<IdentityExpr>)> {
    vec![
        ("j_antiscalar_expansion", Ok(ctx.j_antiscalar_expansion())),
        ("j_antipseudo_expansion", Ok(ctx.j_antipseudo_expansion())),
        ("k_dsigma_expansion", Ok(ctx.k_dsigma_expansion())),
        ("k_domega_expansion", Ok(ctx.k_domega_expansion())),
        ("first_version", Ok(ctx.first_version())),
        ("s_axial_expansion", Ok(ctx.s_axial_expansion())),
        ("sdual_axial_expansion", Ok(ctx.sdual_axial_expansion())),
        ("rank2_axial_combination", ctx.rank2_axial_combination()),
        ("k_tensor_expansion", Ok(ctx.k_tensor_expansion())),
        ("k_tensor5_expansion", Ok(ctx.k_tensor5_expansion())),
        ("k_tensor_combination", ctx.k_tensor_combination()),
        ("pure_bilinear", ctx.pure_bilinear()),
        ("antiproduct_scalar", ctx.antiproduct_scalar()),
        ("antiproduct_pseudoscalar", ctx.antiproduct_pseudo()),
        ("antiproduct_combination", ctx.antiproduct_combination()),
        ("second_version", ctx.second_version()),
        ("s_replacement", ctx.s_replacement()),
        ("sdual_replacement", ctx.sdual_replacement()),
        ("ds_formula", ctx.ds_formula()),
        ("dsdual_formula", ctx.dsdual_formula()),
        ("rank2_term_j_ds", ctx.rank2_term_j_ds()),
        ("rank2_term_dj_s", ctx.rank2_term_dj_s()),
        ("belinfante", ctx.belinfante()),
        ("belinfante_contracted", ctx.belinfante_contracted()),
    ]
}

pub fn appendix_b_suite(jet: &SpinorJet) -> Vec<SuiteEntry> {
    let ctx = FierzContext::new(jet);
    appendix_b_expressions(&ctx)
        .into_iter()
        .map(|(name, e)| SuiteEntry {
            name,
            result: e.map(|e| e.residual(ctx.scale)),
        })
        .collect()
}

/// Relative residual when each right-hand coefficient in turn is perturbed
/// by `factor`; one entry per term, smallest first.
pub fn mutation_sensitivity(expr: &IdentityExpr, factor: C64) -> Vec<(&'static str, f64)> {
    let mut out: Vec<_> = (0..expr.rhs.len())
        .map(|i| (expr.rhs[i].label, expr.mutated(i, factor).relative_residual()))
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    out
}

/// Residual of the expansion `ψχ̄ = Σ a_R Γ_R` against the direct outer product.
pub fn reconstruction_residual(chi: &Spinor, psi: &Spinor) -> f64 {
    let direct = outer_product(psi, chi);
    (fierz_expand(chi, psi).reconstruct() - direct).max_abs()
}

/// True when the error is the expected degeneracy refusal.
pub fn is_degenerate(e: &Error) -> bool {
    matches!(e, Error::DegenerateInvariant { .. })
}

#[cfg(test)]
mod tests;
