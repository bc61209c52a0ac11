//! Minkowski index helpers for fixed-size complex vectors and rank-2 arrays.
//!
//! Signature is (+,-,-,-). Raising and lowering are explicit; nothing in the
//! crate tracks variance in the type system, so each function states which
//! positions it expects.

use num_complex::Complex64;
use std::sync::OnceLock;

pub type C64 = Complex64;
pub type Vec4 = [C64; 4];
pub type Mat4 = [[C64; 4]; 4];
pub type Rank3 = [[[C64; 4]; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Diagonal of the Minkowski metric; η^{μν} and η_{μν} coincide numerically.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[inline]
pub fn eta(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        ETA[mu]
    } else {
        0.0
    }
}

#[inline]
pub fn zero_vec() -> Vec4 {
    [ZERO; 4]
}

#[inline]
pub fn zero_mat() -> Mat4 {
    [[ZERO; 4]; 4]
}

#[inline]
pub fn zero_rank3() -> Rank3 {
    [[[ZERO; 4]; 4]; 4]
}

/// Lower (or raise) a single vector index.
#[inline]
pub fn lower(v: &Vec4) -> Vec4 {
    [v[0], -v[1], -v[2], -v[3]]
}

/// Lower (or raise) both indices of a rank-2 array.
pub fn lower2(t: &Mat4) -> Mat4 {
    let mut out = *t;
    for (a, row) in out.iter_mut().enumerate() {
        for (b, x) in row.iter_mut().enumerate() {
            *x *= ETA[a] * ETA[b];
        }
    }
    out
}

/// Lower (or raise) the second index only: `t[a][b] -> t[a][b] η_{bb}`.
pub fn lower_second(t: &Mat4) -> Mat4 {
    let mut out = *t;
    for row in out.iter_mut() {
        for (b, x) in row.iter_mut().enumerate() {
            *x *= ETA[b];
        }
    }
    out
}

/// Minkowski product of two upper-index vectors.
#[inline]
pub fn dot(a: &Vec4, b: &Vec4) -> C64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Plain index sum `Σ a_μ b^μ` with one argument already lowered.
#[inline]
pub fn contract(a: &Vec4, b: &Vec4) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
pub fn outer(a: &Vec4, b: &Vec4) -> Mat4 {
    let mut out = zero_mat();
    for m in 0..4 {
        for n in 0..4 {
            out[m][n] = a[m] * b[n];
        }
    }
    out
}

#[inline]
pub fn transpose(t: &Mat4) -> Mat4 {
    let mut out = zero_mat();
    for m in 0..4 {
        for n in 0..4 {
            out[m][n] = t[n][m];
        }
    }
    out
}

pub fn add_mat(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for m in 0..4 {
        for n in 0..4 {
            out[m][n] += b[m][n];
        }
    }
    out
}

pub fn sub_mat(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for m in 0..4 {
        for n in 0..4 {
            out[m][n] -= b[m][n];
        }
    }
    out
}

pub fn scale_mat(a: &Mat4, s: C64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

/// `a + aᵀ`.
pub fn sym_sum(a: &Mat4) -> Mat4 {
    add_mat(a, &transpose(a))
}

pub fn real_vec(v: &[f64; 4]) -> Vec4 {
    [v[0].into(), v[1].into(), v[2].into(), v[3].into()]
}

pub fn real_mat(v: &[[f64; 4]; 4]) -> Mat4 {
    let mut out = zero_mat();
    for m in 0..4 {
        for n in 0..4 {
            out[m][n] = v[m][n].into();
        }
    }
    out
}

pub fn max_abs<'a>(xs: impl IntoIterator<Item = &'a C64>) -> f64 {
    xs.into_iter().fold(0.0_f64, |acc, x| acc.max(x.norm()))
}

pub fn max_abs_vec(v: &Vec4) -> f64 {
    max_abs(v.iter())
}

pub fn max_abs_mat(t: &Mat4) -> f64 {
    max_abs(t.iter().flatten())
}

pub fn max_abs_rank3(t: &Rank3) -> f64 {
    max_abs(t.iter().flatten().flatten())
}

/// Sign of the permutation `idx` of (0,1,2,3), or 0 when an index repeats.
pub fn permutation_sign(idx: [usize; 4]) -> i32 {
    for a in 0..4 {
        for b in (a + 1)..4 {
            if idx[a] == idx[b] {
                return 0;
            }
        }
    }
    let mut inversions = 0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The 24 non-vanishing entries of ε^{μνρσ} with ε^{0123} = +1.
pub fn epsilon_upper_terms() -> &'static [([usize; 4], f64); 24] {
    static TERMS: OnceLock<[([usize; 4], f64); 24]> = OnceLock::new();
    TERMS.get_or_init(|| {
        let mut out = [([0; 4], 0.0); 24];
        let mut n = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let s = permutation_sign([a, b, c, d]);
                        if s != 0 {
                            out[n] = ([a, b, c, d], f64::from(s));
                            n += 1;
                        }
                    }
                }
            }
        }
        out
    })
}

/// `Σ ε^{abcd} x_a y_b z_c w_d` with all four arguments carrying lower indices.
pub fn eps_contract4(x: &Vec4, y: &Vec4, z: &Vec4, w: &Vec4) -> C64 {
    epsilon_upper_terms()
        .iter()
        .map(|([a, b, c, d], s)| x[*a] * y[*b] * z[*c] * w[*d] * *s)
        .sum()
}
