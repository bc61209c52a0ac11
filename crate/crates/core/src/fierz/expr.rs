use crate::report::IdentityResidual;
use crate::tensor::{C64, ZERO};

/// One summand `coeff · value` of an identity side. The numeric prefactor is
/// kept apart from the tensor so it can be perturbed.
#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: C64,
    pub label: &'static str,
    pub value: Vec<C64>,
}

impl Term {
    pub fn new(coeff: C64, label: &'static str, value: Vec<C64>) -> Self {
        Term { coeff, label, value }
    }
}

/// `Σ lhs − Σ rhs`, each side a list of terms of a common tensor shape.
#[derive(Debug, Clone)]
pub struct IdentityExpr {
    pub name: &'static str,
    /// Polynomial degree in (ψ, ∂ψ); the residual is divided by `scale^(degree/2)`.
    pub degree: i32,
    pub shape: Vec<usize>,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl IdentityExpr {
    pub fn new(name: &'static str, degree: i32, shape: Vec<usize>) -> Self {
        IdentityExpr {
            name,
            degree,
            shape,
            lhs: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn lhs(mut self, coeff: impl Into<C64>, label: &'static str, value: Vec<C64>) -> Self {
        self.check_len(&value);
        self.lhs.push(Term::new(coeff.into(), label, value));
        self
    }

    pub fn rhs(mut self, coeff: impl Into<C64>, label: &'static str, value: Vec<C64>) -> Self {
        self.check_len(&value);
        self.rhs.push(Term::new(coeff.into(), label, value));
        self
    }

    fn check_len(&self, v: &[C64]) {
        debug_assert_eq!(v.len(), self.shape.iter().product::<usize>(), "{}", self.name);
    }

    fn len(&self) -> usize {
        self.shape.iter().product()
    }

    fn accumulate(out: &mut [C64], terms: &[Term], sign: f64) {
        for t in terms {
            let c = t.coeff * sign;
            for (o, v) in out.iter_mut().zip(&t.value) {
                *o += c * v;
            }
        }
    }

    pub fn lhs_value(&self) -> Vec<C64> {
        let mut out = vec![ZERO; self.len()];
        Self::accumulate(&mut out, &self.lhs, 1.0);
        out
    }

    pub fn rhs_value(&self) -> Vec<C64> {
        let mut out = vec![ZERO; self.len()];
        Self::accumulate(&mut out, &self.rhs, 1.0);
        out
    }

    pub fn residual_tensor(&self) -> Vec<C64> {
        let mut out = vec![ZERO; self.len()];
        Self::accumulate(&mut out, &self.lhs, 1.0);
        Self::accumulate(&mut out, &self.rhs, -1.0);
        out
    }

    pub fn normalization(&self, scale: f64) -> f64 {
        scale.powf(f64::from(self.degree) / 2.0)
    }

    pub fn residual(&self, scale: f64) -> IdentityResidual {
        let max_abs = self
            .residual_tensor()
            .iter()
            .fold(0.0_f64, |a, x| if x.norm().is_nan() { f64::NAN } else { a.max(x.norm()) });
        IdentityResidual::new(self.name, max_abs, self.shape.clone(), self.normalization(scale))
    }

    /// Largest |coeff · value| entry over all terms of both sides.
    pub fn term_magnitude(&self) -> f64 {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .flat_map(|t| t.value.iter().map(move |v| (t.coeff * v).norm()))
            .fold(0.0, f64::max)
    }

    /// Residual divided by [`Self::term_magnitude`]; independent of input size.
    pub fn relative_residual(&self) -> f64 {
        let r = self.residual_tensor().iter().fold(0.0_f64, |a, x| a.max(x.norm()));
        let m = self.term_magnitude();
        if m == 0.0 {
            r
        } else {
            r / m
        }
    }

    /// Copy with the `idx`-th right-hand coefficient multiplied by `factor`.
    pub fn mutated(&self, idx: usize, factor: C64) -> IdentityExpr {
        let mut m = self.clone();
        m.rhs[idx].coeff *= factor;
        m
    }
}

pub(crate) fn t0(x: C64) -> Vec<C64> {
    vec![x]
}

pub(crate) fn t1(f: impl Fn(usize) -> C64) -> Vec<C64> {
    (0..4).map(f).collect()
}

pub(crate) fn t2(f: impl Fn(usize, usize) -> C64) -> Vec<C64> {
    let mut v = Vec::with_capacity(16);
    for m in 0..4 {
        for n in 0..4 {
            v.push(f(m, n));
        }
    }
    v
}

pub(crate) fn t3(f: impl Fn(usize, usize, usize) -> C64) -> Vec<C64> {
    let mut v = Vec::with_capacity(64);
    for m in 0..4 {
        for n in 0..4 {
            for s in 0..4 {
                v.push(f(m, n, s));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::ONE;

    #[test]
    fn residual_and_mutation() {
        let e = IdentityExpr::new("x", 2, vec![4])
            .lhs(ONE, "a", t1(|m| C64::new(m as f64, 0.0)))
            .rhs(C64::new(0.5, 0.0), "b", t1(|m| C64::new(2.0 * m as f64, 0.0)));
        assert_eq!(e.residual(1.0).max_abs, 0.0);
        let r = e.mutated(0, C64::new(1.1, 0.0)).residual(4.0);
        assert!((r.max_abs - 0.3).abs() < 1e-12);
        assert!((r.normalized() - 0.075).abs() < 1e-12);
    }
}
