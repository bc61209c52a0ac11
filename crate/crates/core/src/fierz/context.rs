use super::expr::{t0, t1, t2, t3, IdentityExpr};
use crate::bilinear::{bilinear_jet, BilinearJet, SpinorJet};
use crate::error::Result;
use crate::tensor::{
    contract, epsilon_upper_terms, lower, lower2, Mat4, Rank3, Vec4, C64, ETA, I, ONE, ZERO,
};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn ci(x: f64) -> C64 {
    C64::new(0.0, x)
}

/// `v_n = Σ ε_{nsre} a^s b^r c^e` for upper-index arguments.
pub(crate) fn eps_lower_vec(a: &Vec4, b: &Vec4, cc: &Vec4) -> Vec4 {
    let mut out = [ZERO; 4];
    for ([n, s, r, e], sign) in epsilon_upper_terms() {
        out[*n] -= a[*s] * b[*r] * cc[*e] * *sign;
    }
    out
}

/// `T_{ns} = Σ ε_{nsre} y^r z^e` for upper-index arguments.
pub(crate) fn eps_lower_pair(y: &Vec4, z: &Vec4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for ([n, s, r, e], sign) in epsilon_upper_terms() {
        out[*n][*s] -= y[*r] * z[*e] * *sign;
    }
    out
}

/// `T^{ab} = Σ ε^{abcd} y_c z_d` for lower-index arguments.
pub(crate) fn eps_upper_pair(yl: &Vec4, zl: &Vec4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for ([a, b, cc, d], sign) in epsilon_upper_terms() {
        out[*a][*b] += yl[*cc] * zl[*d] * *sign;
    }
    out
}

/// `δ_{nsre} y^r z^e = i(y_n z_s − z_n y_s)`; identical in form with all indices raised.
pub(crate) fn delta_pair(y: &Vec4, z: &Vec4) -> Mat4 {
    std::array::from_fn(|n| std::array::from_fn(|s| I * (y[n] * z[s] - z[n] * y[s])))
}

/// Everything the Fierz identities need, computed once per jet with the
/// index placements used by the formulas.
#[derive(Debug, Clone)]
pub struct FierzContext {
    pub bilinears: BilinearJet,
    pub scale: f64,
    pub sg: C64,
    pub w: C64,
    /// σ² − ω², or the degeneracy error.
    pub inv: Result<C64>,
    /// σ² + ω²
    pub q: C64,
    pub j: Vec4,
    pub k: Vec4,
    pub jl: Vec4,
    pub kl: Vec4,
    pub s_up: Mat4,
    pub sd_up: Mat4,
    pub sl: Mat4,
    pub sdl: Mat4,
    pub ds: Vec4,
    pub dw: Vec4,
    /// `[μ][σ]` = ∂_μ j^σ
    pub dj: Mat4,
    /// `[μ][ν]` = ∂_μ k_ν
    pub dk: Mat4,
    /// `[μ][ν]` = ∂_μ k^ν
    pub dku: Mat4,
    /// `[μ][ν][σ]` = ∂_μ s_{νσ}
    pub dsl: Rank3,
    pub dsdl: Rank3,
    /// m^σ ∂_μ n_σ
    pub mdn: Vec4,
    /// j^ν ∂_μ k_ν
    pub jdk: Vec4,
}

impl FierzContext {
    pub fn new(jet: &SpinorJet) -> Self {
        Self::from_bilinears(bilinear_jet(jet))
    }

    pub fn from_bilinears(bj: BilinearJet) -> Self {
        let v = &bj.value;
        let j = v.j;
        let k = v.k;
        let dk: Mat4 = std::array::from_fn(|m| lower(&bj.d[m].k));
        let jdk = std::array::from_fn(|m| contract(&j, &dk[m]));
        FierzContext {
            scale: bj.jet_scale,
            sg: v.sigma,
            w: v.omega,
            inv: v.nondegenerate_invariant(),
            q: v.sigma * v.sigma + v.omega * v.omega,
            j,
            k,
            jl: lower(&j),
            kl: lower(&k),
            s_up: v.s,
            sd_up: v.sdual,
            sl: lower2(&v.s),
            sdl: lower2(&v.sdual),
            ds: std::array::from_fn(|m| bj.d[m].sigma),
            dw: std::array::from_fn(|m| bj.d[m].omega),
            dj: std::array::from_fn(|m| bj.d[m].j),
            dk,
            dku: std::array::from_fn(|m| bj.d[m].k),
            dsl: std::array::from_fn(|m| lower2(&bj.d[m].s)),
            dsdl: std::array::from_fn(|m| lower2(&bj.d[m].sdual)),
            mdn: bj.m_dn(),
            jdk,
            bilinears: bj,
        }
    }

    // Contraction patterns, all returning `[μ][ν]`.

    /// (∂_μ j^σ) t_{νσ}
    fn dj_t(&self, m: usize, n: usize, t: &Mat4) -> C64 {
        (0..4).map(|s| self.dj[m][s] * t[n][s]).sum()
    }

    /// j^σ ∂_μ t_{νσ}
    fn j_dt(&self, m: usize, n: usize, t: &Rank3) -> C64 {
        (0..4).map(|s| self.j[s] * t[m][n][s]).sum()
    }

    /// t_{νσ}[ψ̄γ_5γ^σ∂_μψ − ∂_μψ̄γ_5γ^σψ]
    fn t_aa(&self, m: usize, n: usize, t: &Mat4) -> C64 {
        let aa = &self.bilinears.antisym_axial;
        (0..4).map(|s| t[n][s] * aa[m][s]).sum()
    }

    /// k^σ[ψ̄Γ_{νσ}∂_μψ − ∂_μψ̄Γ_{νσ}ψ]
    fn k_at(&self, m: usize, n: usize, t: &Rank3) -> C64 {
        (0..4).map(|s| self.k[s] * t[m][n][s]).sum()
    }

    fn at(&self) -> &Rank3 {
        &self.bilinears.antisym_tensor
    }

    fn at5(&self) -> &Rank3 {
        &self.bilinears.antisym_tensor5
    }

    fn av(&self, m: usize, n: usize) -> C64 {
        self.bilinears.antisym_vector[m][n]
    }

    fn a_s(&self) -> &Vec4 {
        &self.bilinears.antisym_scalar
    }

    fn a_p(&self) -> &Vec4 {
        &self.bilinears.antisym_pseudo
    }

    /// ε_{νσρε}(∂_μ j^σ) j^ρ k^ε as `[μ][ν]`.
    fn eps_dj_j_k(&self) -> Mat4 {
        std::array::from_fn(|m| eps_lower_vec(&self.dj[m], &self.j, &self.k))
    }

    /// ε_{νσρε} j^σ (∂_μ j^ρ) k^ε as `[μ][ν]`.
    fn eps_j_dj_k(&self) -> Mat4 {
        std::array::from_fn(|m| eps_lower_vec(&self.j, &self.dj[m], &self.k))
    }

    /// j^σ[σ∂_μŝ_{νσ} + ω∂_μs_{νσ}]
    fn j_d_mix(&self, m: usize, n: usize) -> C64 {
        self.sg * self.j_dt(m, n, &self.dsdl) + self.w * self.j_dt(m, n, &self.dsl)
    }

    /// (∂_μ j^σ)(σŝ_{νσ} + ωs_{νσ})
    fn dj_mix(&self, m: usize, n: usize) -> C64 {
        self.sg * self.dj_t(m, n, &self.sdl) + self.w * self.dj_t(m, n, &self.sl)
    }

    /// k_ν[σ∂_μσ + ω∂_μω]
    fn k_sds(&self, m: usize, n: usize) -> C64 {
        self.kl[n] * (self.sg * self.ds[m] + self.w * self.dw[m])
    }

    // Identities.

    pub fn antiproduct_scalar(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("antiproduct_scalar", 2, vec![4])
            .lhs(ONE, "[ψ̄∂ψ]", self.a_s().to_vec())
            .rhs(c(-1.0), "j·∂k ω/D", t1(|m| self.jdk[m] * self.w / d))
            .rhs(ci(-1.0), "m·∂n σ/D", t1(|m| self.mdn[m] * self.sg / d)))
    }

    pub fn antiproduct_pseudo(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("antiproduct_pseudoscalar", 2, vec![4])
            .lhs(ONE, "[ψ̄γ5∂ψ]", self.a_p().to_vec())
            .rhs(c(-1.0), "j·∂k σ/D", t1(|m| self.jdk[m] * self.sg / d))
            .rhs(ci(-1.0), "m·∂n ω/D", t1(|m| self.mdn[m] * self.w / d)))
    }

    pub fn belinfante(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let e = self.eps_dj_j_k();
        Ok(IdentityExpr::new("belinfante", 2, vec![4, 4])
            .lhs(ONE, "[ψ̄γ_ν∂_μψ]", t2(|m, n| self.av(m, n)))
            .rhs(ONE, "k(ω∂σ − σ∂ω)/D", t2(|m, n| self.kl[n] * (self.w * self.ds[m] - self.sg * self.dw[m]) / d))
            .rhs(ci(-1.0), "ε∂j j k/D", t2(|m, n| e[m][n] / d))
            .rhs(ci(-1.0), "j m·∂n/D", t2(|m, n| self.jl[n] * self.mdn[m] / d)))
    }

    pub fn belinfante_contracted(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let lhs: C64 = (0..4).map(|m| self.av(m, m) * ETA[m]).sum();
        let kterm: C64 = (0..4).map(|m| self.k[m] * (self.w * self.ds[m] - self.sg * self.dw[m])).sum();
        let djl: Mat4 = std::array::from_fn(|m| lower(&self.dj[m]));
        let mut eterm = ZERO;
        for ([a, b, cc, dd], sign) in epsilon_upper_terms() {
            eterm += djl[*a][*b] * self.jl[*cc] * self.kl[*dd] * *sign;
        }
        let jm: C64 = (0..4).map(|m| self.j[m] * self.mdn[m]).sum();
        Ok(IdentityExpr::new("belinfante_contracted", 2, vec![])
            .lhs(ONE, "[ψ̄γ^μ∂_μψ]", t0(lhs))
            .rhs(ONE, "k(ω∂σ − σ∂ω)/D", t0(kterm / d))
            .rhs(ci(-1.0), "ε∂j j k/D", t0(eterm / d))
            .rhs(ci(-1.0), "j m·∂n/D", t0(jm / d)))
    }

    pub fn j_antiscalar_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("j_antiscalar_expansion", 4, vec![4, 4])
            .lhs(ONE, "j[ψ̄∂ψ]", t2(|m, n| self.a_s()[m] * self.jl[n]))
            .rhs(ci(1.0 / 3.0), "∂j s", t2(|m, n| self.dj_t(m, n, &self.sl)))
            .rhs(ci(-1.0 / 3.0), "j ∂s", t2(|m, n| self.j_dt(m, n, &self.dsl)))
            .rhs(c(1.0 / 3.0), "∂ω k", t2(|m, n| self.dw[m] * self.kl[n]))
            .rhs(c(-1.0 / 3.0), "ω ∂k", t2(|m, n| self.w * self.dk[m][n]))
            .rhs(c(1.0 / 3.0), "σ AV", t2(|m, n| self.sg * self.av(m, n)))
            .rhs(ci(-1.0 / 3.0), "ŝ AA", t2(|m, n| self.t_aa(m, n, &self.sdl)))
            .rhs(ci(-1.0 / 3.0), "k AT5", t2(|m, n| self.k_at(m, n, self.at5())))
    }

    pub fn j_antipseudo_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("j_antipseudo_expansion", 4, vec![4, 4])
            .lhs(ONE, "j[ψ̄γ5∂ψ]", t2(|m, n| self.a_p()[m] * self.jl[n]))
            .rhs(ci(1.0 / 3.0), "∂j ŝ", t2(|m, n| self.dj_t(m, n, &self.sdl)))
            .rhs(ci(-1.0 / 3.0), "j ∂ŝ", t2(|m, n| self.j_dt(m, n, &self.dsdl)))
            .rhs(c(1.0 / 3.0), "∂σ k", t2(|m, n| self.ds[m] * self.kl[n]))
            .rhs(c(-1.0 / 3.0), "σ ∂k", t2(|m, n| self.sg * self.dk[m][n]))
            .rhs(c(1.0 / 3.0), "ω AV", t2(|m, n| self.w * self.av(m, n)))
            .rhs(ci(-1.0 / 3.0), "s AA", t2(|m, n| self.t_aa(m, n, &self.sl)))
            .rhs(ci(-1.0 / 3.0), "k AT", t2(|m, n| self.k_at(m, n, self.at())))
    }

    pub fn k_dsigma_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("k_dsigma_expansion", 4, vec![4, 4])
            .lhs(ONE, "k ∂σ", t2(|m, n| self.kl[n] * self.ds[m]))
            .rhs(c(1.0 / 3.0), "σ ∂k", t2(|m, n| self.sg * self.dk[m][n]))
            .rhs(ci(-1.0 / 3.0), "∂(j ŝ)", t2(|m, n| self.dj_t(m, n, &self.sdl) + self.j_dt(m, n, &self.dsdl)))
            .rhs(c(1.0 / 3.0), "j[ψ̄γ5∂ψ]", t2(|m, n| self.a_p()[m] * self.jl[n]))
            .rhs(ci(1.0 / 3.0), "s AA", t2(|m, n| self.t_aa(m, n, &self.sl)))
            .rhs(ci(-1.0 / 3.0), "k AT", t2(|m, n| self.k_at(m, n, self.at())))
            .rhs(c(-1.0 / 3.0), "ω AV", t2(|m, n| self.w * self.av(m, n)))
    }

    pub fn k_domega_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("k_domega_expansion", 4, vec![4, 4])
            .lhs(ONE, "k ∂ω", t2(|m, n| self.kl[n] * self.dw[m]))
            .rhs(c(1.0 / 3.0), "ω ∂k", t2(|m, n| self.w * self.dk[m][n]))
            .rhs(ci(-1.0 / 3.0), "∂(j s)", t2(|m, n| self.dj_t(m, n, &self.sl) + self.j_dt(m, n, &self.dsl)))
            .rhs(c(1.0 / 3.0), "j[ψ̄∂ψ]", t2(|m, n| self.a_s()[m] * self.jl[n]))
            .rhs(ci(1.0 / 3.0), "ŝ AA", t2(|m, n| self.t_aa(m, n, &self.sdl)))
            .rhs(ci(-1.0 / 3.0), "k AT5", t2(|m, n| self.k_at(m, n, self.at5())))
            .rhs(c(-1.0 / 3.0), "σ AV", t2(|m, n| self.sg * self.av(m, n)))
    }

    /// Evaluated multiplied through by σω.
    pub fn first_version(&self) -> IdentityExpr {
        IdentityExpr::new("first_version", 6, vec![4, 4])
            .lhs(ONE, "σω AV", t2(|m, n| self.sg * self.w * self.av(m, n)))
            .rhs(ci(-0.5), "∂j(ωs + σŝ)", t2(|m, n| self.w * self.dj_t(m, n, &self.sl) + self.sg * self.dj_t(m, n, &self.sdl)))
            .rhs(c(-1.0), "k(σ∂σ + ω∂ω)", t2(|m, n| self.k_sds(m, n)))
            .rhs(c(0.5), "∂k Q", t2(|m, n| self.dk[m][n] * self.q))
            .rhs(ONE, "j(ω[ψ̄∂ψ] + σ[ψ̄γ5∂ψ])", t2(|m, n| self.jl[n] * (self.w * self.a_s()[m] + self.sg * self.a_p()[m])))
            .rhs(ci(0.5), "(σs + ωŝ)AA", t2(|m, n| self.sg * self.t_aa(m, n, &self.sl) + self.w * self.t_aa(m, n, &self.sdl)))
    }

    pub fn s_axial_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("s_axial_expansion", 4, vec![4, 4])
            .lhs(ONE, "s AA", t2(|m, n| self.t_aa(m, n, &self.sl)))
            .rhs(ci(0.6), "σ ∂k", t2(|m, n| self.sg * self.dk[m][n]))
            .rhs(ci(-0.6), "∂σ k", t2(|m, n| self.ds[m] * self.kl[n]))
            .rhs(c(0.2), "j ∂ŝ", t2(|m, n| self.j_dt(m, n, &self.dsdl)))
            .rhs(c(-0.2), "∂j ŝ", t2(|m, n| self.dj_t(m, n, &self.sdl)))
            .rhs(ci(0.6), "j[ψ̄γ5∂ψ]", t2(|m, n| self.a_p()[m] * self.jl[n]))
            .rhs(c(-0.2), "k AT", t2(|m, n| self.k_at(m, n, self.at())))
            .rhs(ci(0.6), "ω AV", t2(|m, n| self.w * self.av(m, n)))
    }

    pub fn sdual_axial_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("sdual_axial_expansion", 4, vec![4, 4])
            .lhs(ONE, "ŝ AA", t2(|m, n| self.t_aa(m, n, &self.sdl)))
            .rhs(ci(0.6), "ω ∂k", t2(|m, n| self.w * self.dk[m][n]))
            .rhs(ci(-0.6), "∂ω k", t2(|m, n| self.dw[m] * self.kl[n]))
            .rhs(c(0.2), "j ∂s", t2(|m, n| self.j_dt(m, n, &self.dsl)))
            .rhs(c(-0.2), "∂j s", t2(|m, n| self.dj_t(m, n, &self.sl)))
            .rhs(ci(0.6), "j[ψ̄∂ψ]", t2(|m, n| self.a_s()[m] * self.jl[n]))
            .rhs(c(-0.2), "k AT5", t2(|m, n| self.k_at(m, n, self.at5())))
            .rhs(ci(0.6), "σ AV", t2(|m, n| self.sg * self.av(m, n)))
    }

    /// (i/2)(σs + ωŝ)AA expanded, still containing tensor antiproducts.
    pub fn rank2_axial_combination(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("rank2_axial_combination", 6, vec![4, 4])
            .lhs(ci(0.5), "(σs + ωŝ)AA", t2(|m, n| self.sg * self.t_aa(m, n, &self.sl) + self.w * self.t_aa(m, n, &self.sdl)))
            .rhs(c(0.3), "k(σ∂σ + ω∂ω)", t2(|m, n| self.k_sds(m, n)))
            .rhs(c(-0.3), "Q ∂k", t2(|m, n| self.q * self.dk[m][n]))
            .rhs(ci(-0.1), "∂j(σŝ + ωs)", t2(|m, n| self.dj_mix(m, n)))
            .rhs(ci(0.1), "j(σ∂ŝ + ω∂s)", t2(|m, n| self.j_d_mix(m, n)))
            .rhs(c(0.3), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * self.q / d))
            .rhs(ci(0.6), "j m·∂n σω/D", t2(|m, n| self.jl[n] * self.mdn[m] * self.sg * self.w / d))
            .rhs(ci(-0.1), "k(σAT + ωAT5)", t2(|m, n| self.sg * self.k_at(m, n, self.at()) + self.w * self.k_at(m, n, self.at5())))
            .rhs(c(-0.6), "σω AV", t2(|m, n| self.sg * self.w * self.av(m, n))))
    }

    pub fn k_tensor_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("k_tensor_expansion", 4, vec![4, 4])
            .lhs(ONE, "k AT", t2(|m, n| self.k_at(m, n, self.at())))
            .rhs(c(0.2), "∂j ŝ", t2(|m, n| self.dj_t(m, n, &self.sdl)))
            .rhs(c(-0.2), "j ∂ŝ", t2(|m, n| self.j_dt(m, n, &self.dsdl)))
            .rhs(ci(0.6), "∂σ k", t2(|m, n| self.ds[m] * self.kl[n]))
            .rhs(ci(-0.6), "σ ∂k", t2(|m, n| self.sg * self.dk[m][n]))
            .rhs(ci(0.6), "j[ψ̄γ5∂ψ]", t2(|m, n| self.a_p()[m] * self.jl[n]))
            .rhs(c(-0.2), "s AA", t2(|m, n| self.t_aa(m, n, &self.sl)))
            .rhs(ci(0.6), "ω AV", t2(|m, n| self.w * self.av(m, n)))
    }

    pub fn k_tensor5_expansion(&self) -> IdentityExpr {
        IdentityExpr::new("k_tensor5_expansion", 4, vec![4, 4])
            .lhs(ONE, "k AT5", t2(|m, n| self.k_at(m, n, self.at5())))
            .rhs(c(0.2), "∂j s", t2(|m, n| self.dj_t(m, n, &self.sl)))
            .rhs(c(-0.2), "j ∂s", t2(|m, n| self.j_dt(m, n, &self.dsl)))
            .rhs(ci(0.6), "∂ω k", t2(|m, n| self.dw[m] * self.kl[n]))
            .rhs(ci(-0.6), "ω ∂k", t2(|m, n| self.w * self.dk[m][n]))
            .rhs(ci(0.6), "j[ψ̄∂ψ]", t2(|m, n| self.a_s()[m] * self.jl[n]))
            .rhs(c(-0.2), "ŝ AA", t2(|m, n| self.t_aa(m, n, &self.sdl)))
            .rhs(ci(0.6), "σ AV", t2(|m, n| self.sg * self.av(m, n)))
    }

    pub fn k_tensor_combination(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("k_tensor_combination", 6, vec![4, 4])
            .lhs(ci(-0.1), "k(σAT + ωAT5)", t2(|m, n| self.sg * self.k_at(m, n, self.at()) + self.w * self.k_at(m, n, self.at5())))
            .rhs(ci(1.0 / 50.0), "(σs + ωŝ)AA", t2(|m, n| self.sg * self.t_aa(m, n, &self.sl) + self.w * self.t_aa(m, n, &self.sdl)))
            .rhs(c(6.0 / 50.0), "σω AV", t2(|m, n| self.sg * self.w * self.av(m, n)))
            .rhs(c(-3.0 / 50.0), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * self.q / d))
            .rhs(ci(-6.0 / 50.0), "j m·∂n σω/D", t2(|m, n| self.jl[n] * self.mdn[m] * self.sg * self.w / d))
            .rhs(c(-3.0 / 50.0), "Q ∂k", t2(|m, n| self.q * self.dk[m][n]))
            .rhs(c(3.0 / 50.0), "k(σ∂σ + ω∂ω)", t2(|m, n| self.k_sds(m, n)))
            .rhs(ci(1.0 / 50.0), "j(σ∂ŝ + ω∂s)", t2(|m, n| self.j_d_mix(m, n)))
            .rhs(ci(-1.0 / 50.0), "∂j(σŝ + ωs)", t2(|m, n| self.dj_mix(m, n))))
    }

    pub fn pure_bilinear(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("pure_bilinear", 6, vec![4, 4])
            .lhs(ci(0.5), "(σs + ωŝ)AA", t2(|m, n| self.sg * self.t_aa(m, n, &self.sl) + self.w * self.t_aa(m, n, &self.sdl)))
            .rhs(c(-0.5), "σω AV", t2(|m, n| self.sg * self.w * self.av(m, n)))
            .rhs(c(0.25), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * self.q / d))
            .rhs(ci(0.5), "j m·∂n σω/D", t2(|m, n| self.jl[n] * self.mdn[m] * self.sg * self.w / d))
            .rhs(c(-0.375), "Q ∂k", t2(|m, n| self.q * self.dk[m][n]))
            .rhs(c(0.375), "k(σ∂σ + ω∂ω)", t2(|m, n| self.k_sds(m, n)))
            .rhs(ci(-0.125), "∂j(σŝ + ωs)", t2(|m, n| self.dj_mix(m, n)))
            .rhs(ci(0.125), "j(σ∂ŝ + ω∂s)", t2(|m, n| self.j_d_mix(m, n))))
    }

    pub fn antiproduct_combination(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("antiproduct_combination", 4, vec![4])
            .lhs(ONE, "ω[ψ̄∂ψ]", t1(|m| self.w * self.a_s()[m]))
            .lhs(ONE, "σ[ψ̄γ5∂ψ]", t1(|m| self.sg * self.a_p()[m]))
            .rhs(c(-1.0), "j·∂k Q/D", t1(|m| self.jdk[m] * self.q / d))
            .rhs(ci(-2.0), "m·∂n σω/D", t1(|m| self.mdn[m] * self.sg * self.w / d)))
    }

    /// Evaluated multiplied through by σω.
    pub fn second_version(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        Ok(IdentityExpr::new("second_version", 6, vec![4, 4])
            .lhs(ONE, "σω AV", t2(|m, n| self.sg * self.w * self.av(m, n)))
            .rhs(c(-0.5), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * self.q / d))
            .rhs(ci(-1.0), "j m·∂n σω/D", t2(|m, n| self.jl[n] * self.mdn[m] * self.sg * self.w / d))
            .rhs(c(1.0 / 12.0), "Q ∂k", t2(|m, n| self.q * self.dk[m][n]))
            .rhs(c(-5.0 / 12.0), "k(σ∂σ + ω∂ω)", t2(|m, n| self.k_sds(m, n)))
            .rhs(ci(1.0 / 12.0), "j(σ∂ŝ + ω∂s)", t2(|m, n| self.j_d_mix(m, n)))
            .rhs(ci(-5.0 / 12.0), "∂j(σŝ + ωs)", t2(|m, n| self.dj_mix(m, n))))
    }

    /// (ε, δ) contracted with j_ρ k_σ, upper free indices.
    fn replacement_parts(&self) -> (Mat4, Mat4) {
        (eps_upper_pair(&self.jl, &self.kl), delta_pair(&self.j, &self.k))
    }

    pub fn s_replacement(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let (e, dl) = self.replacement_parts();
        Ok(IdentityExpr::new("s_replacement", 2, vec![4, 4])
            .lhs(ONE, "s", t2(|a, b| self.s_up[a][b]))
            .rhs(ONE, "σ ε j k/D", t2(|a, b| self.sg * e[a][b] / d))
            .rhs(c(-1.0), "ω δ j k/D", t2(|a, b| self.w * dl[a][b] / d)))
    }

    pub fn sdual_replacement(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let (e, dl) = self.replacement_parts();
        Ok(IdentityExpr::new("sdual_replacement", 2, vec![4, 4])
            .lhs(ONE, "ŝ", t2(|a, b| self.sd_up[a][b]))
            .rhs(ONE, "ω ε j k/D", t2(|a, b| self.w * e[a][b] / d))
            .rhs(c(-1.0), "σ δ j k/D", t2(|a, b| self.sg * dl[a][b] / d)))
    }

    /// Lowered pieces of the derivative formulas: `ε(∂j k + j ∂k)` per μ,
    /// then `εjk` and `δjk`.
    fn derivative_parts(&self) -> ([Mat4; 4], Mat4, Mat4) {
        let ejk = eps_lower_pair(&self.j, &self.k);
        let djk = delta_pair(&self.jl, &self.kl);
        let ed: [Mat4; 4] = std::array::from_fn(|m| {
            let a = eps_lower_pair(&self.dj[m], &self.k);
            let b = eps_lower_pair(&self.j, &self.dku[m]);
            std::array::from_fn(|n| std::array::from_fn(|s| a[n][s] + b[n][s]))
        });
        (ed, ejk, djk)
    }

    fn delta_derivative(&self, m: usize) -> Mat4 {
        let djl = lower(&self.dj[m]);
        let dkl = self.dk[m];
        let a = delta_pair(&djl, &self.kl);
        let b = delta_pair(&self.jl, &dkl);
        std::array::from_fn(|n| std::array::from_fn(|s| a[n][s] + b[n][s]))
    }

    pub fn ds_formula(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let d2 = d * d;
        let (ed, ejk, djk) = self.derivative_parts();
        let dd: [Mat4; 4] = std::array::from_fn(|m| self.delta_derivative(m));
        let (sg, w, q) = (self.sg, self.w, self.q);
        Ok(IdentityExpr::new("ds_formula", 2, vec![4, 4, 4])
            .lhs(ONE, "∂s", t3(|m, n, s| self.dsl[m][n][s]))
            .rhs(c(2.0), "σω∂ω ε jk/D²", t3(|m, n, s| sg * w * self.dw[m] * ejk[n][s] / d2))
            .rhs(c(-1.0), "Q∂σ ε jk/D²", t3(|m, n, s| q * self.ds[m] * ejk[n][s] / d2))
            .rhs(c(2.0), "σω∂σ δ jk/D²", t3(|m, n, s| sg * w * self.ds[m] * djk[n][s] / d2))
            .rhs(c(-1.0), "Q∂ω δ jk/D²", t3(|m, n, s| q * self.dw[m] * djk[n][s] / d2))
            .rhs(ONE, "σ ε ∂(jk)/D", t3(|m, n, s| sg * ed[m][n][s] / d))
            .rhs(c(-1.0), "ω δ ∂(jk)/D", t3(|m, n, s| w * dd[m][n][s] / d)))
    }

    pub fn dsdual_formula(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let d2 = d * d;
        let (ed, ejk, djk) = self.derivative_parts();
        let dd: [Mat4; 4] = std::array::from_fn(|m| self.delta_derivative(m));
        let (sg, w, q) = (self.sg, self.w, self.q);
        Ok(IdentityExpr::new("dsdual_formula", 2, vec![4, 4, 4])
            .lhs(ONE, "∂ŝ", t3(|m, n, s| self.dsdl[m][n][s]))
            .rhs(c(-2.0), "σω∂σ ε jk/D²", t3(|m, n, s| sg * w * self.ds[m] * ejk[n][s] / d2))
            .rhs(ONE, "Q∂ω ε jk/D²", t3(|m, n, s| q * self.dw[m] * ejk[n][s] / d2))
            .rhs(c(-2.0), "σω∂ω δ jk/D²", t3(|m, n, s| sg * w * self.dw[m] * djk[n][s] / d2))
            .rhs(ONE, "Q∂σ δ jk/D²", t3(|m, n, s| q * self.ds[m] * djk[n][s] / d2))
            .rhs(ONE, "ω ε ∂(jk)/D", t3(|m, n, s| w * ed[m][n][s] / d))
            .rhs(c(-1.0), "σ δ ∂(jk)/D", t3(|m, n, s| sg * dd[m][n][s] / d)))
    }

    pub fn rank2_term_j_ds(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let e = self.eps_j_dj_k();
        let (sg, w, q) = (self.sg, self.w, self.q);
        Ok(IdentityExpr::new("rank2_term_j_ds", 6, vec![4, 4])
            .lhs(ci(1.0 / 12.0), "j(σ∂ŝ + ω∂s)", t2(|m, n| self.j_d_mix(m, n)))
            .rhs(c(2.0 / 12.0), "σω k(ω∂σ − σ∂ω)/D", t2(|m, n| sg * w * self.kl[n] * (w * self.ds[m] - sg * self.dw[m]) / d))
            .rhs(ci(2.0 / 12.0), "σω ε j ∂j k/D", t2(|m, n| sg * w * e[m][n] / d))
            .rhs(c(1.0 / 12.0), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * q / d))
            .rhs(c(-1.0 / 12.0), "∂k Q", t2(|m, n| self.dk[m][n] * q)))
    }

    pub fn rank2_term_dj_s(&self) -> Result<IdentityExpr> {
        let d = self.inv.clone()?;
        let e = self.eps_dj_j_k();
        let (sg, w, q) = (self.sg, self.w, self.q);
        Ok(IdentityExpr::new("rank2_term_dj_s", 6, vec![4, 4])
            .lhs(ci(-5.0 / 12.0), "∂j(σŝ + ωs)", t2(|m, n| self.dj_mix(m, n)))
            .rhs(c(5.0 / 12.0), "j j·∂k Q/D", t2(|m, n| self.jl[n] * self.jdk[m] * q / d))
            .rhs(ci(-5.0 / 6.0), "σω ε ∂j j k/D", t2(|m, n| sg * w * e[m][n] / d))
            .rhs(c(-5.0 / 12.0), "Q k(ω∂ω − σ∂σ)/D", t2(|m, n| q * self.kl[n] * (w * self.dw[m] - sg * self.ds[m]) / d)))
    }
}
