//! JSON jet input and tensor output formats.
//!
//! Complex numbers are `[re, im]` pairs.

use crate::bilinear::{bilinear_jet, Spinor, SpinorJet};
use crate::error::{Error, Result};
use crate::stress::{
    assemble_md_bilinear, assemble_md_spinor, b_field, belinfante_bilinear, belinfante_spinor_from,
    bilinear_lagrangian, canonical_from, spinor_lagrangian_from, EMField, Tensor2,
};
use crate::tensor::{max_abs_mat, sub_mat, C64};
use serde::{Deserialize, Serialize};
use std::io::Write;

pub type ComplexPair = [f64; 2];

fn pair(z: C64) -> ComplexPair {
    [z.re, z.im]
}

fn tensor_pairs(t: &Tensor2) -> [[ComplexPair; 4]; 4] {
    t.map(|row| row.map(pair))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetInput {
    pub psi: [ComplexPair; 4],
    /// `dpsi[μ]` = ∂_μψ
    pub dpsi: [[ComplexPair; 4]; 4],
    #[serde(rename = "A")]
    pub a: [f64; 4],
    /// ∂_μA_ν, row-major over (μ, ν)
    #[serde(rename = "dA")]
    pub da: [f64; 16],
    pub mass: f64,
    pub charge: f64,
}

impl JetInput {
    pub fn from_parts(jet: &SpinorJet, em: &EMField) -> Self {
        let sp = |s: &Spinor| s.0.map(pair);
        let mut da = [0.0; 16];
        for m in 0..4 {
            for n in 0..4 {
                da[4 * m + n] = em.da[m][n];
            }
        }
        JetInput {
            psi: sp(&jet.value),
            dpsi: jet.d.each_ref().map(sp),
            a: em.a,
            da,
            mass: em.mass,
            charge: em.q,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let input: JetInput = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let finite = input.psi.iter().chain(input.dpsi.iter().flatten()).flatten().all(|x| x.is_finite())
            && input.a.iter().chain(&input.da).all(|x| x.is_finite())
            && input.mass.is_finite()
            && input.charge.is_finite();
        if !finite {
            return Err(Error::Schema("non-finite number".into()));
        }
        Ok(input)
    }

    pub fn jet(&self) -> SpinorJet {
        let sp = |v: &[ComplexPair; 4]| Spinor(v.map(|[re, im]| C64::new(re, im)));
        SpinorJet {
            value: sp(&self.psi),
            d: self.dpsi.each_ref().map(sp),
        }
    }

    pub fn em_field(&self) -> EMField {
        let da = std::array::from_fn(|m| std::array::from_fn(|n| self.da[4 * m + n]));
        EMField::from_potential(self.a, da, self.charge, self.mass)
    }
}

/// Bilinear-route results; absent when the input is degenerate or uncharged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilinearRoute {
    pub belinfante: [[ComplexPair; 4]; 4],
    pub md: [[ComplexPair; 4]; 4],
    #[serde(rename = "B")]
    pub b: [f64; 4],
    pub lagrangian: ComplexPair,
    /// max |Θ_spinor − Θ_bilinear|
    pub belinfante_route_residual: f64,
    pub md_route_residual: f64,
    pub lagrangian_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressOutput {
    pub canonical: [[ComplexPair; 4]; 4],
    pub belinfante_spinor: [[ComplexPair; 4]; 4],
    pub md_spinor: [[ComplexPair; 4]; 4],
    pub lagrangian_spinor: ComplexPair,
    /// Residuals are divided by this.
    pub scale: f64,
    pub bilinear: Option<BilinearRoute>,
    pub bilinear_error: Option<String>,
}

pub fn evaluate_stress(input: &JetInput) -> Result<StressOutput> {
    let jet = input.jet();
    let em = input.em_field();
    let bj = bilinear_jet(&jet);
    let canonical = canonical_from(&bj);
    let theta = belinfante_spinor_from(&bj);
    let md_spinor = assemble_md_spinor(&jet, &em)?;
    let lag = spinor_lagrangian_from(&bj, &em.a, &em.params());
    let scale = jet.scale() * em.magnitude();

    let fields = bj.fields();
    let bilinear = (|| -> Result<BilinearRoute> {
        let b = b_field(&fields, &em.a, em.q)?;
        let thb = belinfante_bilinear(&fields)?;
        let md = assemble_md_bilinear(&fields, &b, &em)?;
        let lb = bilinear_lagrangian(&fields, &b, &em.params())?;
        Ok(BilinearRoute {
            belinfante: tensor_pairs(&thb),
            md: tensor_pairs(&md),
            b,
            lagrangian: pair(lb),
            belinfante_route_residual: max_abs_mat(&sub_mat(&theta, &thb)) / scale,
            md_route_residual: max_abs_mat(&sub_mat(&md_spinor, &md)) / scale,
            lagrangian_residual: (lag - lb).norm() / scale,
        })
    })();
    let (bilinear, bilinear_error) = match bilinear {
        Ok(b) => (Some(b), None),
        Err(e @ (Error::DegenerateInvariant { .. } | Error::ZeroCharge)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(StressOutput {
        canonical: tensor_pairs(&canonical),
        belinfante_spinor: tensor_pairs(&theta),
        md_spinor: tensor_pairs(&md_spinor),
        lagrangian_spinor: pair(lag),
        scale,
        bilinear,
        bilinear_error,
    })
}

/// Long-format CSV: `quantity,mu,nu,re,im`.
pub fn write_stress_csv<W: Write>(out: &StressOutput, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["quantity", "mu", "nu", "re", "im"]).map_err(io)?;
    let mut tensor = |name: &str, t: &[[ComplexPair; 4]; 4]| -> Result<()> {
        for (m, row) in t.iter().enumerate() {
            for (n, z) in row.iter().enumerate() {
                w.serialize((name, m, n, z[0], z[1])).map_err(io)?;
            }
        }
        Ok(())
    };
    tensor("canonical", &out.canonical)?;
    tensor("belinfante_spinor", &out.belinfante_spinor)?;
    tensor("md_spinor", &out.md_spinor)?;
    if let Some(b) = &out.bilinear {
        tensor("belinfante_bilinear", &b.belinfante)?;
        tensor("md_bilinear", &b.md)?;
    }
    w.serialize(("lagrangian_spinor", "", "", out.lagrangian_spinor[0], out.lagrangian_spinor[1]))
        .map_err(io)?;
    if let Some(b) = &out.bilinear {
        w.serialize(("lagrangian_bilinear", "", "", b.lagrangian[0], b.lagrangian[1])).map_err(io)?;
        for (m, v) in b.b.iter().enumerate() {
            w.serialize(("B", m.to_string(), "", v, 0.0)).map_err(io)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_jet, random_real4, random_real_mat, trial_rng};

    #[test]
    fn json_roundtrip_is_exact() {
        let mut rng = trial_rng(400, 0);
        let jet = random_jet(&mut rng);
        let em = EMField::from_potential(random_real4(&mut rng), random_real_mat(&mut rng), 0.3, 1.1);
        let input = JetInput::from_parts(&jet, &em);
        let text = serde_json::to_string(&input).unwrap();
        let back = JetInput::parse(&text).unwrap();
        assert_eq!(back, input);
        assert_eq!(back.jet(), jet);
        assert_eq!(back.em_field(), em);
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(JetInput::parse("{"), Err(Error::Schema(_))));
        assert!(matches!(JetInput::parse(r#"{"psi": []}"#), Err(Error::Schema(_))));
        let mut rng = trial_rng(401, 0);
        let input = JetInput::from_parts(&random_jet(&mut rng), &EMField::vacuum(1.0, 1.0));
        let mut v = serde_json::to_value(&input).unwrap();
        v["extra"] = 1.into();
        assert!(matches!(JetInput::parse(&v.to_string()), Err(Error::Schema(_))));
    }

    #[test]
    fn zero_jet_gives_zero_tensors_and_flags_degeneracy() {
        let input = JetInput::from_parts(&SpinorJet::constant(Spinor::zero()), &EMField::vacuum(1.0, 1.0));
        let out = evaluate_stress(&input).unwrap();
        let zero = [[[0.0, 0.0]; 4]; 4];
        assert_eq!(out.canonical, zero);
        assert_eq!(out.belinfante_spinor, zero);
        assert_eq!(out.md_spinor, zero);
        assert!(out.bilinear.is_none());
        assert!(out.bilinear_error.as_deref().unwrap().contains("degenerate"));
    }

    #[test]
    fn routes_agree_on_random_input() {
        let mut rng = trial_rng(402, 0);
        let em = EMField::from_potential(random_real4(&mut rng), random_real_mat(&mut rng), 0.6, 1.2);
        let out = evaluate_stress(&JetInput::from_parts(&random_jet(&mut rng), &em)).unwrap();
        let b = out.bilinear.clone().unwrap();
        assert!(b.belinfante_route_residual < 1e-9);
        assert!(b.md_route_residual < 1e-9);
        assert!(b.lagrangian_residual < 1e-9);
        let mut buf = Vec::new();
        write_stress_csv(&out, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 5 * 16 + 2 + 4);
    }
}
