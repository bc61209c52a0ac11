//! The Dirac-algebra identity catalogue, evaluated as exact matrix equalities.

use super::{GammaBasis, SpinorMatrix};
use crate::report::IdentityReport;
use crate::tensor::{eta, permutation_sign, C64, I};

type Check = fn(&GammaBasis) -> f64;

fn eps(a: usize, b: usize, c: usize, d: usize) -> f64 {
    f64::from(permutation_sign([a, b, c, d]))
}

fn id() -> SpinorMatrix {
    SpinorMatrix::identity()
}

/// Max over every index tuple of `f(indices).max_abs()`.
fn over<const N: usize>(f: impl Fn([usize; N]) -> SpinorMatrix) -> f64 {
    let mut worst = 0.0_f64;
    let total = 4usize.pow(N as u32);
    for flat in 0..total {
        let mut idx = [0usize; N];
        let mut k = flat;
        for slot in idx.iter_mut().rev() {
            *slot = k % 4;
            k /= 4;
        }
        worst = worst.max(f(idx).max_abs());
    }
    worst
}

/// `Σ_s ε^{a b c s} γ_5 γ_s`
fn eps_g5g_lower(b: &GammaBasis, a: usize, bb: usize, c: usize) -> SpinorMatrix {
    (0..4)
        .map(|s| b.gamma5 * b.gamma_lower[s] * eps(a, bb, c, s))
        .sum()
}

fn mixed_sigma_upper_lower(b: &GammaBasis, m: usize, l: usize) -> SpinorMatrix {
    // σ^{μ}{}_{λ}
    b.sigma[m][l] * eta(l, l)
}

fn mixed_sigma_lower_upper(b: &GammaBasis, n: usize, r: usize) -> SpinorMatrix {
    // σ_{ν}{}^{ρ}
    b.sigma_lower[n][r] * eta(r, r)
}

/// Named Appendix-A style identities: each function returns the max-abs residual.
pub const APPENDIX_A_IDENTITIES: &[(&str, Check)] = &[
    ("{γ^μ,γ^ν} = 2η^{μν}", |b| {
        over(|[m, n]| b.gamma[m].anticommutator(&b.gamma[n]) - id() * (2.0 * eta(m, n)))
    }),
    ("[γ^μ,γ^ν] = −2iσ^{μν}", |b| {
        over(|[m, n]| b.gamma[m].commutator(&b.gamma[n]) + b.sigma[m][n] * (I * 2.0))
    }),
    ("γ_5 = −(i/4!)ε_{μνρσ}γ^μγ^νγ^ργ^σ", |b| {
        let mut acc = SpinorMatrix::zero();
        for m in 0..4 {
            for n in 0..4 {
                for r in 0..4 {
                    for s in 0..4 {
                        let e = -eps(m, n, r, s);
                        if e != 0.0 {
                            acc += (b.gamma[m] * b.gamma[n] * b.gamma[r] * b.gamma[s]) * e;
                        }
                    }
                }
            }
        }
        (acc * C64::new(0.0, -1.0 / 24.0) - b.gamma5).max_abs()
    }),
    ("γ_5 = iγ^0γ^1γ^2γ^3", |b| {
        ((b.gamma[0] * b.gamma[1] * b.gamma[2] * b.gamma[3]) * I - b.gamma5).max_abs()
    }),
    ("γ_5 = −iγ_0γ_1γ_2γ_3", |b| {
        ((b.gamma_lower[0] * b.gamma_lower[1] * b.gamma_lower[2] * b.gamma_lower[3]) * (-I) - b.gamma5)
            .max_abs()
    }),
    ("γ_5² = I", |b| (b.gamma5 * b.gamma5 - id()).max_abs()),
    ("{γ_5,γ^μ} = 0", |b| over(|[m]| b.gamma5.anticommutator(&b.gamma[m]))),
    ("[γ_5,σ^{μν}] = 0", |b| over(|[m, n]| b.gamma5.commutator(&b.sigma[m][n]))),
    ("γ^μγ^ν = η^{μν} − iσ^{μν}", |b| {
        over(|[m, n]| b.gamma[m] * b.gamma[n] - id() * eta(m, n) + b.sigma[m][n] * I)
    }),
    ("γ^μγ_μ = 4", |b| {
        ((0..4).map(|m| b.gamma[m] * b.gamma_lower[m]).sum::<SpinorMatrix>() - id() * 4.0).max_abs()
    }),
    ("γ^μγ_5γ_μ = −4γ_5", |b| {
        ((0..4).map(|m| b.gamma[m] * b.gamma5 * b.gamma_lower[m]).sum::<SpinorMatrix>() + b.gamma5 * 4.0)
            .max_abs()
    }),
    ("γ^μγ^νγ^λ = η^{μν}γ^λ + η^{νλ}γ^μ − η^{μλ}γ^ν − iε^{μνλσ}γ_5γ_σ", |b| {
        over(|[m, n, l]| {
            b.gamma[m] * b.gamma[n] * b.gamma[l]
                - (b.gamma[l] * eta(m, n) + b.gamma[m] * eta(n, l) - b.gamma[n] * eta(m, l)
                    - eps_g5g_lower(b, m, n, l) * I)
        })
    }),
    ("γ^νγ^μγ_ν = −2γ^μ", |b| {
        over(|[m]| (0..4).map(|n| b.gamma[n] * b.gamma[m] * b.gamma_lower[n]).sum::<SpinorMatrix>() + b.gamma[m] * 2.0)
    }),
    ("γ^νγ_5γ^μγ_ν = 2γ_5γ^μ", |b| {
        over(|[m]| {
            (0..4)
                .map(|n| b.gamma[n] * b.gamma5 * b.gamma[m] * b.gamma_lower[n])
                .sum::<SpinorMatrix>()
                - b.gamma5_gamma[m] * 2.0
        })
    }),
    ("γ^μγ^νγ^σγ^ε expansion", |b| {
        over(|[m, n, s, e]| {
            let rhs = id() * (eta(m, n) * eta(s, e) + eta(n, s) * eta(m, e) - eta(m, s) * eta(n, e))
                + (b.sigma[s][e] * (-eta(m, n))
                    + b.sigma[m][e] * (-eta(n, s))
                    + b.sigma[n][e] * eta(m, s)
                    + b.sigma[s][n] * eta(m, e)
                    + b.sigma[m][s] * eta(n, e)
                    + b.sigma[n][m] * eta(s, e))
                    * I
                - b.gamma5 * (I * eps(m, n, s, e));
            b.gamma[m] * b.gamma[n] * b.gamma[s] * b.gamma[e] - rhs
        })
    }),
    ("γ^εσ^{μν} = iη^{εμ}γ^ν − iη^{εν}γ^μ + ε^{μνεσ}γ_5γ_σ", |b| {
        over(|[e, m, n]| {
            b.gamma[e] * b.sigma[m][n]
                - ((b.gamma[n] * eta(e, m) - b.gamma[m] * eta(e, n)) * I + eps_g5g_lower(b, m, n, e))
        })
    }),
    ("σ^{μν}γ^ε = iη^{νε}γ^μ − iη^{με}γ^ν + ε^{μνεσ}γ_5γ_σ", |b| {
        over(|[m, n, e]| {
            b.sigma[m][n] * b.gamma[e]
                - ((b.gamma[m] * eta(n, e) - b.gamma[n] * eta(m, e)) * I + eps_g5g_lower(b, m, n, e))
        })
    }),
    ("γ^μσ^{σε}γ^ν expansion", |b| {
        over(|[m, s, e, n]| {
            let eps_term: SpinorMatrix = (0..4)
                .map(|l| b.gamma5 * mixed_sigma_upper_lower(b, m, l) * eps(s, e, n, l))
                .sum();
            let rhs = id() * (I * (eta(e, n) * eta(m, s) - eta(s, n) * eta(m, e)))
                + b.sigma[m][s] * eta(e, n)
                - b.sigma[m][e] * eta(s, n)
                - b.gamma5 * eps(s, e, n, m)
                + eps_term * I;
            b.gamma[m] * b.sigma[s][e] * b.gamma[n] - rhs
        })
    }),
    ("γ^σσ^{μν}γ_σ = 0", |b| {
        over(|[m, n]| (0..4).map(|s| b.gamma[s] * b.sigma[m][n] * b.gamma_lower[s]).sum())
    }),
    ("σ^{μν}γ_μ = −3iγ^ν", |b| {
        over(|[n]| (0..4).map(|m| b.sigma[m][n] * b.gamma_lower[m]).sum::<SpinorMatrix>() + b.gamma[n] * (I * 3.0))
    }),
    ("σ^{μν}γ^ργ_μ = 3iη^{νρ} + σ^{νρ}", |b| {
        over(|[n, r]| {
            (0..4).map(|m| b.sigma[m][n] * b.gamma[r] * b.gamma_lower[m]).sum::<SpinorMatrix>()
                - (id() * (I * 3.0 * eta(n, r)) + b.sigma[n][r])
        })
    }),
    ("σ^{μν}σ^{ρτ}γ_μ = η^{νρ}γ^τ − η^{ντ}γ^ρ + iε^{νρτσ}γ_5γ_σ", |b| {
        over(|[n, r, t]| {
            (0..4)
                .map(|m| b.sigma[m][n] * b.sigma[r][t] * b.gamma_lower[m])
                .sum::<SpinorMatrix>()
                - (b.gamma[t] * eta(n, r) - b.gamma[r] * eta(n, t) + eps_g5g_lower(b, n, r, t) * I)
        })
    }),
    ("γ^μσ_{νμ} = −3iγ_ν", |b| {
        over(|[n]| {
            (0..4).map(|m| b.gamma[m] * b.sigma_lower[n][m]).sum::<SpinorMatrix>() + b.gamma_lower[n] * (I * 3.0)
        })
    }),
    ("γ^μγ^ρσ_{νμ} = 3iδ_ν^ρ − σ_ν^ρ", |b| {
        over(|[n, r]| {
            let delta = if n == r { 1.0 } else { 0.0 };
            (0..4)
                .map(|m| b.gamma[m] * b.gamma[r] * b.sigma_lower[n][m])
                .sum::<SpinorMatrix>()
                - (id() * (I * 3.0 * delta) - mixed_sigma_lower_upper(b, n, r))
        })
    }),
    ("γ^μσ^{ρτ}σ_{νμ} = δ_ν^τγ^ρ − δ_ν^ργ^τ + iη_{νκ}ε^{κρτσ}γ_5γ_σ", |b| {
        over(|[n, r, t]| {
            let d = |a: usize, c: usize| if a == c { 1.0 } else { 0.0 };
            (0..4)
                .map(|m| b.gamma[m] * b.sigma[r][t] * b.sigma_lower[n][m])
                .sum::<SpinorMatrix>()
                - (b.gamma[r] * d(n, t) - b.gamma[t] * d(n, r) + eps_g5g_lower(b, n, r, t) * (I * eta(n, n)))
        })
    }),
    ("{γ^μ,σ^{σν}} = 2ε^{σνμρ}γ_5γ_ρ", |b| {
        over(|[m, s, n]| b.gamma[m].anticommutator(&b.sigma[s][n]) - eps_g5g_lower(b, s, n, m) * 2.0)
    }),
    ("−ε^{λρσε}ε_λ^{μντ} = η-triple expansion", |_| {
        let mut worst = 0.0_f64;
        for flat in 0..4usize.pow(6) {
            let mut i = [0usize; 6];
            let mut k = flat;
            for slot in i.iter_mut().rev() {
                *slot = k % 4;
                k /= 4;
            }
            let [r, s, e, m, n, t] = i;
            let lhs: f64 = -(0..4).map(|l| eps(l, r, s, e) * eta(l, l) * eps(l, m, n, t)).sum::<f64>();
            let rhs = eta(r, m) * eta(s, n) * eta(e, t) - eta(r, m) * eta(e, n) * eta(s, t)
                + eta(r, n) * eta(s, t) * eta(e, m)
                - eta(r, n) * eta(e, t) * eta(s, m)
                + eta(r, t) * eta(s, m) * eta(e, n)
                - eta(r, t) * eta(e, m) * eta(s, n);
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    }),
];

/// Evaluate the whole catalogue; each entry passes iff its residual is ≤ `tol`.
pub fn verify_appendix_a(basis: &GammaBasis, tol: f64) -> IdentityReport {
    let mut report = IdentityReport::new();
    for (name, check) in APPENDIX_A_IDENTITIES {
        report.push(*name, check(basis), 1.0, tol);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{build_gamma_basis, dirac};

    #[test]
    fn every_identity_is_exact_in_the_dirac_representation() {
        let report = verify_appendix_a(dirac(), 1e-12);
        for e in &report.entries {
            assert_eq!(e.residual, 0.0, "{} has residual {}", e.name, e.residual);
        }
        assert!(report.passed());
    }

    #[test]
    fn corrupted_basis_is_detected() {
        let report = verify_appendix_a(&GammaBasis::corrupted(), 1e-12);
        assert!(!report.passed());
        assert!(report.get("{γ^μ,γ^ν} = 2η^{μν}").map(|e| !e.passed).unwrap());
    }

    #[test]
    fn identities_survive_a_unitary_change_of_representation() {
        // γ' = U γ Uᵀ* with U a fixed non-trivial unitary (Hadamard-like on blocks)
        let b = build_gamma_basis();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let p = C64::new(h, 0.0);
        let u = SpinorMatrix([[p, z, p, z], [z, p, z, p], [p, z, -p, z], [z, p, z, -p]]);
        let g = std::array::from_fn(|m| u * b.gamma[m] * u.adjoint());
        let rotated = GammaBasis::from_gammas(g);
        let report = verify_appendix_a(&rotated, 1e-13);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
