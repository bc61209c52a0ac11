//! Dirac-Clifford algebra in the standard (Dirac) representation.
//!
//! Conventions: metric diag(+1,−1,−1,−1), ε^{0123} = +1 (so ε_{0123} = −1),
//! σ^{μν} = (i/2)[γ^μ, γ^ν], γ_5 = iγ^0γ^1γ^2γ^3, and charge conjugation
//! matrix C = iγ^2γ^0 acting as ψ^c = C ψ̄ᵀ.

mod identities;
mod matrix;

pub use identities::{verify_appendix_a, APPENDIX_A_IDENTITIES};
pub use matrix::SpinorMatrix;

use crate::tensor::{eta, permutation_sign, C64, ETA, I, ONE, ZERO};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Index position for tensors whose sign depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variance {
    Upper,
    Lower,
}

/// Which family of the 16-element basis an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    Scalar,
    Vector(usize),
    Tensor(usize, usize),
    Axial(usize),
    Pseudoscalar,
}

#[derive(Debug, Clone)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub label: String,
    pub matrix: SpinorMatrix,
}

/// The gamma matrices together with every derived product used elsewhere.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    /// γ^μ
    pub gamma: [SpinorMatrix; 4],
    /// γ_μ
    pub gamma_lower: [SpinorMatrix; 4],
    pub gamma5: SpinorMatrix,
    /// σ^{μν}
    pub sigma: [[SpinorMatrix; 4]; 4],
    /// σ_{μν}
    pub sigma_lower: [[SpinorMatrix; 4]; 4],
    /// γ_5 γ^μ
    pub gamma5_gamma: [SpinorMatrix; 4],
    /// γ_5 σ^{μν}
    pub gamma5_sigma: [[SpinorMatrix; 4]; 4],
    /// γ_5 σ_{μν}
    pub gamma5_sigma_lower: [[SpinorMatrix; 4]; 4],
    /// {I, γ^μ, σ^{μν} (μ<ν), γ_5γ^μ, γ_5}
    pub basis: Vec<BasisElement>,
    pub eta: [[f64; 4]; 4],
    /// Charge-conjugation matrix C.
    pub conjugation: SpinorMatrix,
}

impl GammaBasis {
    /// Derive the full basis from the four generators γ^μ.
    pub fn from_gammas(gamma: [SpinorMatrix; 4]) -> Self {
        let gamma_lower: [SpinorMatrix; 4] = std::array::from_fn(|m| gamma[m] * ETA[m]);
        let gamma5 = (gamma[0] * gamma[1] * gamma[2] * gamma[3]) * I;
        let half_i = C64::new(0.0, 0.5);
        let sigma: [[SpinorMatrix; 4]; 4] =
            std::array::from_fn(|m| std::array::from_fn(|n| gamma[m].commutator(&gamma[n]) * half_i));
        let sigma_lower: [[SpinorMatrix; 4]; 4] =
            std::array::from_fn(|m| std::array::from_fn(|n| sigma[m][n] * (ETA[m] * ETA[n])));
        let gamma5_gamma: [SpinorMatrix; 4] = std::array::from_fn(|m| gamma5 * gamma[m]);
        let gamma5_sigma: [[SpinorMatrix; 4]; 4] =
            std::array::from_fn(|m| std::array::from_fn(|n| gamma5 * sigma[m][n]));
        let gamma5_sigma_lower: [[SpinorMatrix; 4]; 4] =
            std::array::from_fn(|m| std::array::from_fn(|n| gamma5 * sigma_lower[m][n]));

        let mut basis = Vec::with_capacity(16);
        basis.push(BasisElement {
            kind: BasisKind::Scalar,
            label: "I".into(),
            matrix: SpinorMatrix::identity(),
        });
        for (m, g) in gamma.iter().enumerate() {
            basis.push(BasisElement {
                kind: BasisKind::Vector(m),
                label: format!("γ^{m}"),
                matrix: *g,
            });
        }
        for m in 0..4 {
            for n in (m + 1)..4 {
                basis.push(BasisElement {
                    kind: BasisKind::Tensor(m, n),
                    label: format!("σ^{m}{n}"),
                    matrix: sigma[m][n],
                });
            }
        }
        for (m, g) in gamma5_gamma.iter().enumerate() {
            basis.push(BasisElement {
                kind: BasisKind::Axial(m),
                label: format!("γ5γ^{m}"),
                matrix: *g,
            });
        }
        basis.push(BasisElement {
            kind: BasisKind::Pseudoscalar,
            label: "γ5".into(),
            matrix: gamma5,
        });

        let eta_m = std::array::from_fn(|m| std::array::from_fn(|n| eta(m, n)));
        let conjugation = (gamma[2] * gamma[0]) * I;
        GammaBasis {
            gamma,
            gamma_lower,
            gamma5,
            sigma,
            sigma_lower,
            gamma5_gamma,
            gamma5_sigma,
            gamma5_sigma_lower,
            basis,
            eta: eta_m,
            conjugation,
        }
    }

    /// Basis with one entry of γ^2 sign-flipped; only for mutation checks.
    pub fn corrupted() -> Self {
        let mut g = dirac_generators();
        g[2].0[0][3] = -g[2].0[0][3];
        Self::from_gammas(g)
    }

    /// Gram matrix of the 16 basis elements under `Tr(Γ_R Γ_S)`.
    pub fn gram_matrix(&self) -> Vec<Vec<C64>> {
        self.basis
            .iter()
            .map(|a| self.basis.iter().map(|b| a.matrix.trace_pair(&b.matrix)).collect())
            .collect()
    }
}

fn dirac_generators() -> [SpinorMatrix; 4] {
    let o = ONE;
    let z = ZERO;
    let g0 = SpinorMatrix::diag([o, o, -o, -o]);
    let g1 = SpinorMatrix([[z, z, z, o], [z, z, o, z], [z, -o, z, z], [-o, z, z, z]]);
    let g2 = SpinorMatrix([[z, z, z, -I], [z, z, I, z], [z, I, z, z], [-I, z, z, z]]);
    let g3 = SpinorMatrix([[z, z, o, z], [z, z, z, -o], [-o, z, z, z], [z, o, z, z]]);
    [g0, g1, g2, g3]
}

/// Standard Dirac representation, γ^0 = diag(1,1,−1,−1) and γ^k = [[0,σ_k],[−σ_k,0]].
pub fn build_gamma_basis() -> GammaBasis {
    GammaBasis::from_gammas(dirac_generators())
}

/// Shared instance of [`build_gamma_basis`].
pub fn dirac() -> &'static GammaBasis {
    static BASIS: OnceLock<GammaBasis> = OnceLock::new();
    BASIS.get_or_init(build_gamma_basis)
}

/// Levi-Civita symbol with ε^{0123} = +1 and ε_{0123} = −1.
pub fn levi_civita(indices: [usize; 4], variance: Variance) -> i32 {
    let s = permutation_sign(indices);
    match variance {
        Variance::Upper => s,
        Variance::Lower => -s,
    }
}

/// δ^{μνρσ} = i(η^{μρ}η^{νσ} − η^{μσ}η^{νρ}). Numerically identical with all indices lowered.
pub fn delta4(mu: usize, nu: usize, rho: usize, sigma: usize) -> C64 {
    I * (eta(mu, rho) * eta(nu, sigma) - eta(mu, sigma) * eta(nu, rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_is_diagonal() {
        let b = dirac();
        let expected = SpinorMatrix::diag([ONE, ONE, -ONE, -ONE]);
        assert_eq!(b.gamma[0], expected);
    }

    #[test]
    fn clifford_relation_exact() {
        let b = dirac();
        for m in 0..4 {
            for n in 0..4 {
                let ac = b.gamma[m].anticommutator(&b.gamma[n]);
                let rhs = SpinorMatrix::identity() * (2.0 * eta(m, n));
                assert_eq!(ac, rhs, "μ={m} ν={n}");
            }
        }
    }

    #[test]
    fn gamma5_squares_to_one_and_anticommutes() {
        let b = dirac();
        assert_eq!(b.gamma5 * b.gamma5, SpinorMatrix::identity());
        assert_eq!(b.gamma5.anticommutator(&b.gamma[2]), SpinorMatrix::zero());
    }

    #[test]
    fn sigma_is_antisymmetric() {
        let b = dirac();
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(b.sigma[m][n], -b.sigma[n][m]);
            }
        }
    }

    #[test]
    fn levi_civita_examples() {
        assert_eq!(levi_civita([0, 1, 2, 3], Variance::Upper), 1);
        assert_eq!(levi_civita([0, 1, 2, 3], Variance::Lower), -1);
        assert_eq!(levi_civita([0, 1, 1, 3], Variance::Upper), 0);
        assert_eq!(levi_civita([1, 0, 2, 3], Variance::Upper), -1);
    }

    #[test]
    fn levi_civita_matches_gamma5_by_expansion() {
        // −(i/4!) ε_{μνρσ} γ^μγ^νγ^ργ^σ, summed over all 256 index tuples.
        let b = dirac();
        let mut acc = SpinorMatrix::zero();
        for m in 0..4 {
            for n in 0..4 {
                for r in 0..4 {
                    for s in 0..4 {
                        let e = levi_civita([m, n, r, s], Variance::Lower);
                        if e != 0 {
                            acc += (b.gamma[m] * b.gamma[n] * b.gamma[r] * b.gamma[s]) * f64::from(e);
                        }
                    }
                }
            }
        }
        let lhs = acc * C64::new(0.0, -1.0 / 24.0);
        assert!((lhs - b.gamma5).max_abs() < 1e-15);
    }

    #[test]
    fn delta4_examples() {
        assert_eq!(delta4(0, 1, 0, 1), C64::new(0.0, -1.0));
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(delta4(0, 0, r, s), ZERO);
                assert_eq!(delta4(1, 2, r, s), -delta4(2, 1, r, s));
            }
        }
    }

    #[test]
    fn trace_orthogonality_over_all_pairs() {
        let b = dirac();
        let gram = b.gram_matrix();
        assert_eq!(gram.len(), 16);
        for (r, row) in gram.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                if r == s {
                    assert!((v.norm() - 4.0).abs() < 1e-15, "diag {r}: {v}");
                } else {
                    assert_eq!(*v, ZERO, "off-diagonal ({r},{s})");
                }
            }
        }
    }

    #[test]
    fn charge_conjugation_matrix_entries() {
        let c = dirac().conjugation;
        // iγ^2γ^0 in the Dirac representation is real antidiagonal.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.0[i][j].im, 0.0);
                if i + j != 3 {
                    assert_eq!(c.0[i][j], ZERO);
                } else {
                    assert_eq!(c.0[i][j].norm(), 1.0);
                }
            }
        }
    }
}
