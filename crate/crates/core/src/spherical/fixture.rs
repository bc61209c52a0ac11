use super::grid::{GridNode, GridTable};
use super::SphericalJet;

/// Smooth closed-form reduced fields with exact derivatives.
///
/// `freq` scales every time frequency; `freq = 0` gives a static configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticFixture {
    pub freq: f64,
}

impl Default for AnalyticFixture {
    fn default() -> Self {
        AnalyticFixture { freq: 1.0 }
    }
}

impl AnalyticFixture {
    pub fn static_in_t() -> Self {
        AnalyticFixture { freq: 0.0 }
    }

    pub fn jet(&self, t: f64, r: f64) -> SphericalJet {
        let (a, b, c, d) = (self.freq, 0.7 * self.freq, self.freq, 0.3 * self.freq);
        let ps = a * t + r;
        let pw = b * t - r;
        let pa = c * t + 0.5;
        let pb = r + d * t;
        SphericalJet {
            t,
            r,
            sigma: 1.2 + 0.3 * ps.sin(),
            omega_im: 0.4 * pw.cos(),
            j_a: 1.0 + 0.2 * r * pa.sin(),
            j_b: 0.5 * pb.cos(),
            sigma_t: 0.3 * a * ps.cos(),
            sigma_r: 0.3 * ps.cos(),
            omega_im_t: -0.4 * b * pw.sin(),
            omega_im_r: 0.4 * pw.sin(),
            j_a_t: 0.2 * r * c * pa.cos(),
            j_a_r: 0.2 * pa.sin(),
            j_b_t: -0.5 * d * pb.sin(),
            j_b_r: -0.5 * pb.sin(),
            sigma_tt: -0.3 * a * a * ps.sin(),
            sigma_rr: -0.3 * ps.sin(),
            omega_im_tt: -0.4 * b * b * pw.cos(),
            omega_im_rr: -0.4 * pw.cos(),
        }
    }

    /// Samples on a uniform `nt × nr` lattice over `[t0, t1] × [r0, r1]`.
    pub fn grid(&self, t: (f64, f64), nt: usize, r: (f64, f64), nr: usize) -> GridTable {
        let axis = |(lo, hi): (f64, f64), n: usize| -> Vec<f64> {
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        let ts = axis(t, nt);
        let rs = axis(r, nr);
        let mut nodes = Vec::with_capacity(nt * nr);
        for &tv in &ts {
            for &rv in &rs {
                let j = self.jet(tv, rv);
                nodes.push(GridNode {
                    sigma: j.sigma,
                    omega_im: j.omega_im,
                    j_a: j.j_a,
                    j_b: j.j_b,
                });
            }
        }
        GridTable::from_parts(ts, rs, nodes).expect("fixture lattice is well formed")
    }
}
