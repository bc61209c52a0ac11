//! SO(3)-reduced Maxwell-Dirac stress-energy.
//!
//! Fields depend on (t, r) only. The pseudoscalar is stored through its
//! imaginary part, ω = i·omega_im, so every formula here is real.

mod fixture;
mod grid;

pub use fixture::AnalyticFixture;
pub use grid::{grid_evaluate, write_output_csv, FdConfig, GridNode, GridOutputRow, GridTable, MIN_AXIS_POINTS};

use crate::bilinear::{CurrentFields, DEGENERACY_REL};
use crate::error::{Error, Result};
use crate::report::IdentityReport;
use crate::stress::{epsilon_contraction, gauge_invariant_part, interaction_tensor, maxwell_tensor, Tensor2};
use crate::tensor::{lower, max_abs_mat, sub_mat, zero_vec, C64, I};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn value(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalParams {
    pub sign: Branch,
    pub q: f64,
    pub mass: f64,
}

/// Reduced fields and the derivatives the formulas need, at one (t, r).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SphericalJet {
    pub t: f64,
    pub r: f64,
    pub sigma: f64,
    pub omega_im: f64,
    pub j_a: f64,
    pub j_b: f64,
    pub sigma_t: f64,
    pub sigma_r: f64,
    pub omega_im_t: f64,
    pub omega_im_r: f64,
    pub j_a_t: f64,
    pub j_a_r: f64,
    pub j_b_t: f64,
    pub j_b_r: f64,
    pub sigma_tt: f64,
    pub sigma_rr: f64,
    pub omega_im_tt: f64,
    pub omega_im_rr: f64,
}

impl SphericalJet {
    fn values(&self) -> [f64; 16] {
        [
            self.sigma,
            self.omega_im,
            self.j_a,
            self.j_b,
            self.sigma_t,
            self.sigma_r,
            self.omega_im_t,
            self.omega_im_r,
            self.j_a_t,
            self.j_a_r,
            self.j_b_t,
            self.j_b_r,
            self.sigma_tt,
            self.sigma_rr,
            self.omega_im_tt,
            self.omega_im_rr,
        ]
    }

    /// 1 + sum of squares of every field entry.
    pub fn scale(&self) -> f64 {
        1.0 + self.values().iter().map(|x| x * x).sum::<f64>()
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.r.is_finite() && self.values().iter().all(|x| x.is_finite())
    }

    /// σ² − ω² = sigma² + omega_im²
    pub fn invariant(&self) -> f64 {
        self.sigma * self.sigma + self.omega_im * self.omega_im
    }

    pub fn degeneracy_threshold(&self) -> f64 {
        DEGENERACY_REL * (1.0 + self.j_a.abs()).powi(2)
    }

    pub fn nondegenerate_invariant(&self) -> Result<f64> {
        let d = self.invariant();
        let threshold = self.degeneracy_threshold();
        if d <= threshold || !d.is_finite() {
            Err(Error::DegenerateInvariant { value: d, threshold })
        } else {
            Ok(d)
        }
    }

    fn checked(&self) -> Result<f64> {
        if !(self.r > 0.0) {
            return Err(Error::NonPositiveRadius { r: self.r });
        }
        self.nondegenerate_invariant()
    }

    /// Real parts of ω∂σ − σ∂ω divided by i: (x_t, x_r).
    fn cross(&self) -> (f64, f64) {
        (
            self.sigma_t * self.omega_im - self.sigma * self.omega_im_t,
            self.sigma_r * self.omega_im - self.sigma * self.omega_im_r,
        )
    }
}

fn check_radius(x: &[f64; 3], r: f64) -> Result<()> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - r).abs() > 1e-12 * r.abs().max(f64::MIN_POSITIVE) || !(r > 0.0) {
        return Err(Error::RadiusMismatch { norm, r });
    }
    Ok(())
}

/// Contravariant j^μ and (+ branch) k^μ at a point x with |x| = r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ansatz {
    pub j: [f64; 4],
    pub k: [f64; 4],
}

pub fn ansatz_vectors(sj: &SphericalJet, x: &[f64; 3]) -> Result<Ansatz> {
    check_radius(x, sj.r)?;
    let r = sj.r;
    Ok(Ansatz {
        j: [sj.j_a, x[0] * sj.j_b, x[1] * sj.j_b, x[2] * sj.j_b],
        k: [r * sj.j_b, x[0] / r * sj.j_a, x[1] / r * sj.j_a, x[2] / r * sj.j_a],
    })
}

/// B^μ = (B_a, x B_b)
pub fn ansatz_b(b_a: f64, b_b: f64, x: &[f64; 3]) -> [f64; 4] {
    [b_a, x[0] * b_b, x[1] * b_b, x[2] * b_b]
}

pub fn potentials(sj: &SphericalJet, p: &SphericalParams) -> Result<(f64, f64)> {
    if p.q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let d = sj.checked()?;
    let sg = p.sign.value();
    let (xt, xr) = sj.cross();
    let b_a = (-sg * xr / 2.0 - p.mass * sj.sigma * sj.j_a) / (p.q * d);
    let b_b = (sg * xt / (2.0 * sj.r) - p.mass * sj.sigma * sj.j_b) / (p.q * d);
    Ok((b_a, b_b))
}

pub fn maxwell_coeffs(sj: &SphericalJet, p: &SphericalParams) -> Result<(f64, f64)> {
    if p.q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let d = sj.checked()?;
    let sg = p.sign.value();
    let m = p.mass;
    let (s, w, r) = (sj.sigma, sj.omega_im, sj.r);
    let (st, sr, wt, wr) = (sj.sigma_t, sj.sigma_r, sj.omega_im_t, sj.omega_im_r);
    let qq = s * s - w * w;

    let first = -2.0 * m * (s * sj.j_a * (s * sr + w * wr) + r * s * sj.j_b * (s * st + w * wt))
        - sg * (s * w * (sr * sr - st * st - wr * wr + wt * wt) + qq * (st * wt - sr * wr));
    let second = m * (sr * sj.j_a + s * sj.j_a_r + r * st * sj.j_b + r * s * sj.j_b_t)
        - sg * 0.5 * (sj.sigma_tt * w - s * sj.omega_im_tt - sj.sigma_rr * w + s * sj.omega_im_rr);
    let f_a = first / (p.q * r * d * d) + second / (p.q * r * d);
    let f_b = sg / (2.0 * p.q * r.powi(3));
    Ok((f_a, f_b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressFunctions {
    pub t_a: f64,
    pub t_b: f64,
    pub t_c: f64,
    pub script_f: f64,
}

pub fn stress_functions(sj: &SphericalJet, p: &SphericalParams) -> Result<StressFunctions> {
    let d = sj.checked()?;
    let (f_a, f_b) = maxwell_coeffs(sj, p)?;
    let sg = p.sign.value();
    let (xt, xr) = sj.cross();
    let (s, r, ja, jb) = (sj.sigma, sj.r, sj.j_a, sj.j_b);
    let script_f = r * r * (f_a * f_a + f_b * f_b) / 2.0;
    let spin = -sg / 2.0 * (ja * xr - r * jb * xt);
    Ok(StressFunctions {
        t_a: (spin - p.mass * s * ja * ja) / d,
        t_b: (-sg / 2.0 * (ja * xt - r * jb * xr) + p.mass * s * ja * r * jb) / d,
        t_c: (spin - p.mass * s * r * r * jb * jb) / d - 2.0 * script_f,
        script_f,
    })
}

/// All-lower T_{μν} from the four stress functions.
pub fn assemble_from_functions(f: &StressFunctions, x: &[f64; 3], r: f64) -> Result<Tensor2> {
    check_radius(x, r)?;
    let mut t = [[C64::new(0.0, 0.0); 4]; 4];
    t[0][0] = (f.t_a + f.script_f).into();
    for i in 0..3 {
        t[0][i + 1] = (x[i] / r * f.t_b).into();
        t[i + 1][0] = t[0][i + 1];
        for k in 0..3 {
            let diag = if i == k { f.script_f } else { 0.0 };
            t[i + 1][k + 1] = (x[i] * x[k] / (r * r) * f.t_c + diag).into();
        }
    }
    Ok(t)
}

pub fn assemble_spherical(sj: &SphericalJet, p: &SphericalParams, x: &[f64; 3]) -> Result<Tensor2> {
    check_radius(x, sj.r)?;
    assemble_from_functions(&stress_functions(sj, p)?, x, sj.r)
}

/// Full 4D field data reconstructed from the ansatz at x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedding {
    pub fields: CurrentFields,
    pub b_lower: [f64; 4],
    pub f_lower: [[f64; 4]; 4],
}

pub fn embed(sj: &SphericalJet, p: &SphericalParams, x: &[f64; 3]) -> Result<Embedding> {
    let an = ansatz_vectors(sj, x)?;
    let (b_a, b_b) = potentials(sj, p)?;
    let (f_a, f_b) = maxwell_coeffs(sj, p)?;
    let sg = p.sign.value();
    let r = sj.r;
    let c = |v: f64| C64::new(v, 0.0);

    // dj[μ][ν] = ∂_μ j^ν with ∂_i r = x_i/r
    let mut dj = [[c(0.0); 4]; 4];
    dj[0][0] = c(sj.j_a_t);
    for i in 0..3 {
        dj[0][i + 1] = c(x[i] * sj.j_b_t);
        dj[i + 1][0] = c(x[i] / r * sj.j_a_r);
        for k in 0..3 {
            let delta = if i == k { sj.j_b } else { 0.0 };
            dj[i + 1][k + 1] = c(delta + x[k] * x[i] / r * sj.j_b_r);
        }
    }
    let radial = |dt: f64, dr: f64| [c(dt), c(x[0] / r * dr), c(x[1] / r * dr), c(x[2] / r * dr)];
    let fields = CurrentFields {
        sigma: c(sj.sigma),
        omega: I * sj.omega_im,
        j: an.j.map(c),
        k: an.k.map(|v| c(sg * v)),
        dsigma: radial(sj.sigma_t, sj.sigma_r),
        domega: radial(sj.omega_im_t, sj.omega_im_r).map(|v| I * v),
        dj,
        m_dn: zero_vec(),
        scale: (1.0 + sj.j_a.abs()).powi(2),
    };

    let b_up = ansatz_b(b_a, b_b, x);
    let b_lower = [b_up[0], -b_up[1], -b_up[2], -b_up[3]];
    let mut f = [[0.0; 4]; 4];
    for i in 0..3 {
        f[0][i + 1] = x[i] * f_a;
        f[i + 1][0] = -x[i] * f_a;
    }
    // F_{ij} = ε_{ijk} x^k F_b
    f[1][2] = x[2] * f_b;
    f[2][3] = x[0] * f_b;
    f[3][1] = x[1] * f_b;
    f[2][1] = -f[1][2];
    f[3][2] = -f[2][3];
    f[1][3] = -f[3][1];
    Ok(Embedding { fields, b_lower, f_lower: f })
}

/// Residuals of the embedded full-formula evaluation against the reduced one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingCheck {
    /// max |j_σk_κ[ε_ν^{ρσκ}∂_μj_ρ + ε_μ^{ρσκ}∂_νj_ρ]|
    pub epsilon_term: f64,
    pub full_vs_reduced: f64,
    /// Largest entry among the summed tensors; residuals are divided by this.
    pub scale: f64,
}

pub fn embedding_check(sj: &SphericalJet, p: &SphericalParams, x: &[f64; 3]) -> Result<EmbeddingCheck> {
    let reduced = assemble_spherical(sj, p, x)?;
    let e = embed(sj, p, x)?;
    let gi = gauge_invariant_part(&e.fields)?;
    let int = interaction_tensor(&lower(&e.fields.j), &e.b_lower, p.q);
    let em = maxwell_tensor(&e.f_lower)?;
    let eps = epsilon_contraction(&e.fields);
    let full: Tensor2 = std::array::from_fn(|m| std::array::from_fn(|n| gi[m][n] + int[m][n] + em[m][n]));
    let scale = [&reduced, &gi, &int, &em]
        .iter()
        .map(|t| max_abs_mat(t))
        .fold(1.0, f64::max);
    Ok(EmbeddingCheck {
        epsilon_term: max_abs_mat(&eps) / scale,
        full_vs_reduced: max_abs_mat(&sub_mat(&full, &reduced)) / scale,
        scale,
    })
}

pub const EPSILON_TOL: f64 = 1e-11;
pub const EMBEDDING_TOL: f64 = 1e-10;

pub fn embed_and_crosscheck(sj: &SphericalJet, p: &SphericalParams, x: &[f64; 3]) -> Result<IdentityReport> {
    let c = embedding_check(sj, p, x)?;
    let mut r = IdentityReport::new();
    r.push("epsilon term", c.epsilon_term, c.scale, EPSILON_TOL);
    r.push("full vs reduced", c.full_vs_reduced, c.scale, EMBEDDING_TOL);
    Ok(r)
}

#[cfg(test)]
mod tests;
