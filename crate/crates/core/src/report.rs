//! Residual bookkeeping shared by every identity check.

use serde::{Deserialize, Serialize};

/// `LHS − RHS` of one identity evaluated at one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub name: String,
    /// Largest absolute component of the residual.
    pub max_abs: f64,
    /// Tensor shape of the residual (empty for a scalar).
    pub shape: Vec<usize>,
    /// Input-size normalization; `max_abs / scale` is the reported residual.
    pub scale: f64,
}

impl IdentityResidual {
    pub fn new(name: impl Into<String>, max_abs: f64, shape: Vec<usize>, scale: f64) -> Self {
        debug_assert!(max_abs >= 0.0 || max_abs.is_nan());
        IdentityResidual {
            name: name.into(),
            max_abs,
            shape,
            scale,
        }
    }

    pub fn normalized(&self) -> f64 {
        self.max_abs / self.scale
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    /// Normalized residual (`max_abs / scale`), maximized over all evaluated inputs.
    pub residual: f64,
    pub scale: f64,
    pub tol: f64,
    pub passed: bool,
}

/// A list of named residuals judged against tolerances.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub entries: Vec<ReportEntry>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, scale: f64, tol: f64) {
        let passed = residual.is_finite() && residual <= tol;
        self.entries.push(ReportEntry {
            name: name.into(),
            residual,
            scale,
            tol,
            passed,
        });
    }

    pub fn push_residual(&mut self, r: &IdentityResidual, tol: f64) {
        self.push(r.name.clone(), r.normalized(), r.scale, tol);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |a, e| a.max(e.residual))
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.entries.extend(other.entries);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_never_passes() {
        let mut r = IdentityReport::new();
        r.push("a", 0.0, 1.0, 1e-12);
        r.push("b", f64::NAN, 1.0, 1e-12);
        assert!(r.get("a").unwrap().passed);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
