//! Finite-difference evaluation of the reduced formulas over a (t, r) lattice.

use super::{maxwell_coeffs, potentials, stress_functions, SphericalJet, SphericalParams};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Second-order one-sided second derivatives at the edges need five points.
pub const MIN_AXIS_POINTS: usize = 5;

const UNIFORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridNode {
    pub sigma: f64,
    pub omega_im: f64,
    pub j_a: f64,
    pub j_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct GridRow {
    t: f64,
    r: f64,
    sigma: f64,
    omega_im: f64,
    j_a: f64,
    j_b: f64,
}

const COLUMNS: [&str; 6] = ["t", "r", "sigma", "omega_im", "j_a", "j_b"];

/// Rectangular lattice; `nodes[it * r.len() + ir]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    t: Vec<f64>,
    r: Vec<f64>,
    nodes: Vec<GridNode>,
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl GridTable {
    pub fn from_parts(t: Vec<f64>, r: Vec<f64>, nodes: Vec<GridNode>) -> Result<Self> {
        if !strictly_increasing(&t) || !strictly_increasing(&r) {
            return Err(Error::InvalidGrid("axes must be strictly increasing".into()));
        }
        if nodes.len() != t.len() * r.len() {
            return Err(Error::InvalidGrid(format!(
                "{} nodes for a {}×{} lattice",
                nodes.len(),
                t.len(),
                r.len()
            )));
        }
        if r.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::InvalidGrid("r must be positive".into()));
        }
        Ok(GridTable { t, r, nodes })
    }

    fn from_rows(rows: Vec<GridRow>) -> Result<Self> {
        if rows.iter().any(|x| ![x.t, x.r, x.sigma, x.omega_im, x.j_a, x.j_b].iter().all(|v| v.is_finite())) {
            return Err(Error::InvalidGrid("non-finite value".into()));
        }
        let axis = |f: fn(&GridRow) -> f64| {
            let mut v: Vec<f64> = rows.iter().map(f).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let t = axis(|x| x.t);
        let r = axis(|x| x.r);
        let mut slots: Vec<Option<GridNode>> = vec![None; t.len() * r.len()];
        for row in &rows {
            let it = t.partition_point(|&v| v < row.t);
            let ir = r.partition_point(|&v| v < row.r);
            let slot = &mut slots[it * r.len() + ir];
            if slot.is_some() {
                return Err(Error::InvalidGrid(format!("duplicate node (t={}, r={})", row.t, row.r)));
            }
            *slot = Some(GridNode {
                sigma: row.sigma,
                omega_im: row.omega_im,
                j_a: row.j_a,
                j_b: row.j_b,
            });
        }
        let nodes = slots
            .into_iter()
            .enumerate()
            .map(|(i, n)| {
                n.ok_or_else(|| {
                    Error::InvalidGrid(format!("missing node (t={}, r={})", t[i / r.len()], r[i % r.len()]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(t, r, nodes)
    }

    /// Reads `t, r, sigma, omega_im, j_a, j_b` with a header row; rows may come in any order.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Schema(e.to_string()))?.clone();
        for col in COLUMNS {
            if !headers.iter().any(|h| h == col) {
                return Err(Error::Schema(format!("missing column `{col}`")));
            }
        }
        let rows = rdr
            .deserialize::<GridRow>()
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_rows(rows)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for (it, &t) in self.t.iter().enumerate() {
            for (ir, &r) in self.r.iter().enumerate() {
                let n = self.node(it, ir);
                w.serialize(GridRow {
                    t,
                    r,
                    sigma: n.sigma,
                    omega_im: n.omega_im,
                    j_a: n.j_a,
                    j_b: n.j_b,
                })
                .map_err(|e| Error::Io(e.to_string()))?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn t_axis(&self) -> &[f64] {
        &self.t
    }

    pub fn r_axis(&self) -> &[f64] {
        &self.r
    }

    pub fn node(&self, it: usize, ir: usize) -> &GridNode {
        &self.nodes[it * self.r.len() + ir]
    }

    pub fn validate(&self) -> Result<(f64, f64)> {
        let ht = uniform_step("t", &self.t)?;
        let hr = uniform_step("r", &self.r)?;
        Ok((ht, hr))
    }

    /// Reduced jet at a node with finite-difference derivatives.
    pub fn node_jet(&self, it: usize, ir: usize, ht: f64, hr: f64) -> SphericalJet {
        let along_t = |f: fn(&GridNode) -> f64| -> Vec<f64> {
            (0..self.t.len()).map(|k| f(self.node(k, ir))).collect()
        };
        let along_r = |f: fn(&GridNode) -> f64| -> Vec<f64> {
            (0..self.r.len()).map(|k| f(self.node(it, k))).collect()
        };
        let s_t = along_t(|n| n.sigma);
        let s_r = along_r(|n| n.sigma);
        let w_t = along_t(|n| n.omega_im);
        let w_r = along_r(|n| n.omega_im);
        let n = self.node(it, ir);
        SphericalJet {
            t: self.t[it],
            r: self.r[ir],
            sigma: n.sigma,
            omega_im: n.omega_im,
            j_a: n.j_a,
            j_b: n.j_b,
            sigma_t: d1(&s_t, it, ht),
            sigma_r: d1(&s_r, ir, hr),
            omega_im_t: d1(&w_t, it, ht),
            omega_im_r: d1(&w_r, ir, hr),
            j_a_t: d1(&along_t(|n| n.j_a), it, ht),
            j_a_r: d1(&along_r(|n| n.j_a), ir, hr),
            j_b_t: d1(&along_t(|n| n.j_b), it, ht),
            j_b_r: d1(&along_r(|n| n.j_b), ir, hr),
            sigma_tt: d2(&s_t, it, ht),
            sigma_rr: d2(&s_r, ir, hr),
            omega_im_tt: d2(&w_t, it, ht),
            omega_im_rr: d2(&w_r, ir, hr),
        }
    }
}

fn uniform_step(axis: &'static str, v: &[f64]) -> Result<f64> {
    if v.len() < MIN_AXIS_POINTS {
        return Err(Error::GridTooSmall {
            axis,
            points: v.len(),
            required: MIN_AXIS_POINTS,
        });
    }
    let h = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
    if v.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > UNIFORM_TOL * h) {
        return Err(Error::NonUniformAxis { axis });
    }
    Ok(h)
}

fn d1(f: &[f64], i: usize, h: f64) -> f64 {
    let n = f.len();
    if i == 0 {
        (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    } else if i == n - 1 {
        (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
    } else {
        (f[i + 1] - f[i - 1]) / (2.0 * h)
    }
}

fn d2(f: &[f64], i: usize, h: f64) -> f64 {
    const EDGE: [f64; 5] = [35.0, -104.0, 114.0, -56.0, 11.0];
    let n = f.len();
    let edge = |g: &dyn Fn(usize) -> f64| EDGE.iter().enumerate().map(|(k, c)| c * g(k)).sum::<f64>() / (12.0 * h * h);
    if i == 0 {
        edge(&|k| f[k])
    } else if i == n - 1 {
        edge(&|k| f[n - 1 - k])
    } else {
        (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    /// Nodes with r below this are flagged instead of evaluated.
    pub r_floor: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { r_floor: 1e-6 }
    }
}

/// One output line. Flagged nodes carry empty values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOutputRow {
    pub t: f64,
    pub r: f64,
    #[serde(rename = "B_a")]
    pub b_a: Option<f64>,
    #[serde(rename = "B_b")]
    pub b_b: Option<f64>,
    #[serde(rename = "F_a")]
    pub f_a: Option<f64>,
    #[serde(rename = "F_b")]
    pub f_b: Option<f64>,
    #[serde(rename = "T_a")]
    pub t_a: Option<f64>,
    #[serde(rename = "T_b")]
    pub t_b: Option<f64>,
    #[serde(rename = "T_c")]
    pub t_c: Option<f64>,
    #[serde(rename = "scriptF")]
    pub script_f: Option<f64>,
    #[serde(rename = "T00")]
    pub t00: Option<f64>,
    pub degenerate_flag: bool,
}

impl GridOutputRow {
    fn flagged(t: f64, r: f64) -> Self {
        GridOutputRow {
            t,
            r,
            b_a: None,
            b_b: None,
            f_a: None,
            f_b: None,
            t_a: None,
            t_b: None,
            t_c: None,
            script_f: None,
            t00: None,
            degenerate_flag: true,
        }
    }

    /// Evaluates the reduced formulas at one jet; degenerate or sub-floor nodes are flagged.
    pub fn evaluate(sj: &SphericalJet, p: &SphericalParams, cfg: &FdConfig) -> Result<Self> {
        if sj.r < cfg.r_floor {
            return Ok(Self::flagged(sj.t, sj.r));
        }
        let out = (|| {
            let (b_a, b_b) = potentials(sj, p)?;
            let (f_a, f_b) = maxwell_coeffs(sj, p)?;
            let s = stress_functions(sj, p)?;
            Ok(GridOutputRow {
                t: sj.t,
                r: sj.r,
                b_a: Some(b_a),
                b_b: Some(b_b),
                f_a: Some(f_a),
                f_b: Some(f_b),
                t_a: Some(s.t_a),
                t_b: Some(s.t_b),
                t_c: Some(s.t_c),
                script_f: Some(s.script_f),
                t00: Some(s.t_a + s.script_f),
                degenerate_flag: false,
            })
        })();
        match out {
            Err(Error::DegenerateInvariant { .. }) => Ok(Self::flagged(sj.t, sj.r)),
            other => other,
        }
    }

    /// Numeric outputs in column order, `None` when flagged.
    pub fn values(&self) -> [Option<f64>; 9] {
        [
            self.b_a,
            self.b_b,
            self.f_a,
            self.f_b,
            self.t_a,
            self.t_b,
            self.t_c,
            self.script_f,
            self.t00,
        ]
    }
}

/// Rows in (t, r) lexicographic order regardless of thread schedule.
pub fn grid_evaluate(g: &GridTable, p: &SphericalParams, cfg: &FdConfig) -> Result<Vec<GridOutputRow>> {
    if p.q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let (ht, hr) = g.validate()?;
    let nr = g.r.len();
    (0..g.nodes.len())
        .into_par_iter()
        .map(|i| GridOutputRow::evaluate(&g.node_jet(i / nr, i % nr, ht, hr), p, cfg))
        .collect()
}

pub fn write_output_csv<W: Write>(rows: &[GridOutputRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
