use crate::tensor::{C64, ONE, ZERO};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A 4×4 complex matrix acting on Dirac spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub [[C64; 4]; 4]);

impl SpinorMatrix {
    pub const fn zero() -> Self {
        SpinorMatrix([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for x in m.0.iter_mut().flatten() {
            *x = x.conj();
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for x in m.0.iter_mut().flatten() {
            *x *= s;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |a, x| a.max(x.norm()))
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i][0] * v[0] + self.0[i][1] * v[1] + self.0[i][2] * v[2] + self.0[i][3] * v[3];
        }
        out
    }

    /// Row vector times matrix: `(uᵀ M)_j = Σ_i u_i M_ij`.
    pub fn left_apply(&self, u: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (j, o) in out.iter_mut().enumerate() {
            *o = u[0] * self.0[0][j] + u[1] * self.0[1][j] + u[2] * self.0[2][j] + u[3] * self.0[3][j];
        }
        out
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Hilbert-Schmidt pairing `Tr(A B)`.
    pub fn trace_pair(&self, other: &Self) -> C64 {
        let mut t = ZERO;
        for i in 0..4 {
            for k in 0..4 {
                t += self.0[i][k] * other.0[k][i];
            }
        }
        t
    }
}

impl Add for SpinorMatrix {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for SpinorMatrix {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for SpinorMatrix {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Neg for SpinorMatrix {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for SpinorMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }
}

impl Mul<C64> for SpinorMatrix {
    type Output = Self;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for SpinorMatrix {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl std::iter::Sum for SpinorMatrix {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}
