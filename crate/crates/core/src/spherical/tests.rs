use super::*;
use crate::sampling::{random_point_on_sphere, random_spherical_jet, trial_rng};

fn params(sign: Branch) -> SphericalParams {
    SphericalParams { sign, q: 0.7, mass: 1.3 }
}

fn static_jet(sigma: f64, j_a: f64, j_b: f64, r: f64) -> SphericalJet {
    SphericalJet {
        r,
        sigma,
        j_a,
        j_b,
        ..Default::default()
    }
}

/// Complex-arithmetic transcription of the reduced formulas with ω = i·omega_im.
fn complex_oracle(sj: &SphericalJet, p: &SphericalParams) -> [C64; 8] {
    let i = I;
    let sg = p.sign.value();
    let (q, m, r) = (p.q, p.mass, sj.r);
    let s = C64::from(sj.sigma);
    let w = i * sj.omega_im;
    let (st, sr) = (C64::from(sj.sigma_t), C64::from(sj.sigma_r));
    let (wt, wr) = (i * sj.omega_im_t, i * sj.omega_im_r);
    let (wtt, wrr) = (i * sj.omega_im_tt, i * sj.omega_im_rr);
    let (ja, jb) = (sj.j_a, sj.j_b);
    let d = s * s - w * w;
    let qq = s * s + w * w;
    let ba = (i * 0.5 * sg * (sr * w - s * wr) - m * s * ja) / (d * q);
    let bb = (-i * (0.5 * sg / r) * (st * w - s * wt) - m * s * jb) / (d * q);
    let fa = (-2.0 * m * (s * ja * (s * sr - w * wr) + s * r * jb * (s * st - w * wt))
        + i * sg * (s * w * (sr * sr - st * st + wr * wr - wt * wt) + qq * (st * wt - sr * wr)))
        / (d * d * q * r)
        + (m * (sr * ja + s * sj.j_a_r + st * r * jb + s * r * sj.j_b_t)
            + i * 0.5 * sg * (w * sj.sigma_tt - s * wtt - w * sj.sigma_rr + s * wrr))
            / (d * q * r);
    let fb = C64::from(sg / (2.0 * q * r * r * r));
    let sf = (fa * fa + fb * fb) * (r * r / 2.0);
    let xr = sr * w - s * wr;
    let xt = st * w - s * wt;
    let ta = (i * 0.5 * sg * (xr * ja - xt * r * jb) - m * s * ja * ja) / d;
    let tb = (i * 0.5 * sg * (xt * ja - xr * r * jb) + m * s * ja * r * jb) / d;
    let tc = (i * 0.5 * sg * (xr * ja - xt * r * jb) - m * s * r * r * jb * jb) / d - sf * 2.0;
    [ba, bb, fa, fb, ta, tb, tc, sf]
}

#[test]
fn ansatz_on_the_axis() {
    let sj = static_jet(1.0, 0.8, 0.0, 2.0);
    let a = ansatz_vectors(&sj, &[0.0, 0.0, 2.0]).unwrap();
    assert_eq!(a.j, [0.8, 0.0, 0.0, 0.0]);
    assert_eq!(a.k, [0.0, 0.0, 0.0, 0.8]);
    assert!(matches!(
        ansatz_vectors(&sj, &[0.0, 0.0, 2.1]),
        Err(Error::RadiusMismatch { .. })
    ));
}

#[test]
fn ansatz_satisfies_fundamental_relations() {
    let mut rng = trial_rng(300, 0);
    let mdot = |a: &[f64; 4], b: &[f64; 4]| a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
    for _ in 0..1000 {
        let sj = random_spherical_jet(&mut rng);
        let x = random_point_on_sphere(&mut rng, sj.r);
        let a = ansatz_vectors(&sj, &x).unwrap();
        let scale = sj.scale() * (1.0 + sj.r * sj.r);
        assert!(mdot(&a.j, &a.k).abs() <= 1e-12 * scale);
        let jj = sj.j_a * sj.j_a - sj.r * sj.r * sj.j_b * sj.j_b;
        assert!((mdot(&a.j, &a.j) - jj).abs() <= 1e-12 * scale);
        assert!((mdot(&a.k, &a.k) + jj).abs() <= 1e-12 * scale);
    }
}

#[test]
fn static_potentials_and_stress() {
    let p = params(Branch::Plus);
    let (s, ja, jb, r) = (1.4, 0.9, -0.6, 1.7);
    let sj = static_jet(s, ja, jb, r);
    let (b_a, b_b) = potentials(&sj, &p).unwrap();
    assert!((b_a + p.mass * ja / (p.q * s)).abs() < 1e-15);
    assert!((b_b + p.mass * jb / (p.q * s)).abs() < 1e-15);
    let f = stress_functions(&sj, &p).unwrap();
    assert!((f.t_a + p.mass * ja * ja / s).abs() < 1e-15);
    // sign opposite to the displayed T_b; fixed by the embedding check
    assert!((f.t_b - p.mass * ja * r * jb / s).abs() < 1e-15);
}

#[test]
fn monopole_coefficient() {
    let cases = [(Branch::Plus, 2.0, 1.0 / 16.0), (Branch::Minus, 1.0, -0.5), (Branch::Plus, 0.5, 4.0)];
    for (sign, r, expected) in cases {
        let p = SphericalParams { sign, q: 1.0, mass: 0.3 };
        let (_, f_b) = maxwell_coeffs(&static_jet(1.0, 0.5, 0.2, r), &p).unwrap();
        assert!(((f_b - expected) / expected).abs() <= 1e-15);
    }
}

#[test]
fn errors() {
    let p = params(Branch::Plus);
    let deg = static_jet(0.0, 1.0, 0.0, 1.0);
    assert!(matches!(potentials(&deg, &p), Err(Error::DegenerateInvariant { .. })));
    assert!(matches!(stress_functions(&deg, &p), Err(Error::DegenerateInvariant { .. })));
    let ok = static_jet(1.0, 1.0, 0.0, 1.0);
    let q0 = SphericalParams { q: 0.0, ..p };
    assert_eq!(potentials(&ok, &q0), Err(Error::ZeroCharge));
    assert_eq!(maxwell_coeffs(&ok, &q0), Err(Error::ZeroCharge));
    assert!(matches!(
        embedding_check(&deg, &p, &[1.0, 0.0, 0.0]),
        Err(Error::DegenerateInvariant { .. })
    ));
}

#[test]
fn real_formulas_match_complex_evaluation() {
    let mut rng = trial_rng(301, 0);
    for sign in [Branch::Plus, Branch::Minus] {
        let p = params(sign);
        for _ in 0..1000 {
            let sj = random_spherical_jet(&mut rng);
            let oracle = complex_oracle(&sj, &p);
            let (b_a, b_b) = potentials(&sj, &p).unwrap();
            let (f_a, f_b) = maxwell_coeffs(&sj, &p).unwrap();
            let f = stress_functions(&sj, &p).unwrap();
            let ours = [b_a, b_b, f_a, f_b, f.t_a, f.t_b, f.t_c, f.script_f];
            let mag = oracle.iter().fold(1.0_f64, |a, z| a.max(z.norm()));
            for (z, x) in oracle.iter().zip(ours) {
                assert!(z.im.abs() <= 1e-12 * mag);
                assert!((z.re - x).abs() <= 1e-12 * mag, "{z} vs {x}");
            }
        }
    }
}

#[test]
fn t_c_relation() {
    let mut rng = trial_rng(302, 0);
    let p = params(Branch::Minus);
    for _ in 0..1000 {
        let sj = random_spherical_jet(&mut rng);
        let f = stress_functions(&sj, &p).unwrap();
        let jj = sj.j_a * sj.j_a - sj.r * sj.r * sj.j_b * sj.j_b;
        let r = f.t_c - f.t_a - p.mass * sj.sigma * jj / sj.invariant() + 2.0 * f.script_f;
        let mag = [f.t_a, f.t_c, f.script_f].iter().fold(1.0_f64, |a, x| a.max(x.abs()));
        assert!(r.abs() <= 1e-12 * mag);
    }
}

#[test]
fn sign_flip() {
    let mut rng = trial_rng(303, 0);
    for _ in 0..200 {
        let sj = random_spherical_jet(&mut rng);
        let p = params(Branch::Plus);
        let pm = params(Branch::Minus);
        let m0 = SphericalParams { mass: 0.0, ..p };
        let (b_a, _) = potentials(&sj, &p).unwrap();
        let (b_am, _) = potentials(&sj, &pm).unwrap();
        let (b_a0, _) = potentials(&sj, &m0).unwrap();
        // derivative part negates, mass part unchanged
        let mass_part = b_a - b_a0;
        assert!((b_am - (mass_part - b_a0)).abs() <= 1e-12 * (1.0 + b_a.abs()));
        let (_, f_b) = maxwell_coeffs(&sj, &p).unwrap();
        let (_, f_bm) = maxwell_coeffs(&sj, &pm).unwrap();
        assert_eq!(f_b, -f_bm);
    }
}

#[test]
fn assembled_components() {
    let f = StressFunctions { t_a: 0.3, t_b: 0.0, t_c: -1.1, script_f: 0.4 };
    let t = assemble_from_functions(&f, &[0.0, 0.0, 2.0], 2.0).unwrap();
    for i in 1..4 {
        assert_eq!(t[0][i], C64::from(0.0));
    }
    assert!((t[3][3].re - (f.t_c + f.script_f)).abs() < 1e-15);
    assert_eq!(t[1][1].re, f.script_f);
    assert_eq!(t[2][2].re, f.script_f);
    assert_eq!(t[0][0].re, f.t_a + f.script_f);

    let mut rng = trial_rng(304, 0);
    let p = params(Branch::Plus);
    for _ in 0..200 {
        let sj = random_spherical_jet(&mut rng);
        let x = random_point_on_sphere(&mut rng, sj.r);
        let f = stress_functions(&sj, &p).unwrap();
        let t = assemble_spherical(&sj, &p, &x).unwrap();
        let spatial: f64 = (1..4).map(|i| t[i][i].re).sum();
        let mag = [f.t_a, f.t_c, f.script_f].iter().fold(1.0_f64, |a, x| a.max(x.abs()));
        assert!((spatial - (f.t_c + 3.0 * f.script_f)).abs() <= 1e-12 * mag);
        assert_eq!(crate::stress::asymmetry(&t), 0.0);
    }
}

#[test]
fn embedding_matches_reduction() {
    let mut rng = trial_rng(305, 0);
    for sign in [Branch::Plus, Branch::Minus] {
        let p = params(sign);
        for _ in 0..500 {
            let sj = random_spherical_jet(&mut rng);
            let axis = embedding_check(&sj, &p, &[0.0, 0.0, sj.r]).unwrap();
            assert!(axis.epsilon_term <= EPSILON_TOL, "{}", axis.epsilon_term);
            let x = random_point_on_sphere(&mut rng, sj.r);
            let rep = embed_and_crosscheck(&sj, &p, &x).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }
}

fn rotation<R: rand::Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    let axis = random_point_on_sphere(rng, 1.0);
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (s, c) = angle.sin_cos();
    let [x, y, z] = axis;
    [
        [c + x * x * (1.0 - c), x * y * (1.0 - c) - z * s, x * z * (1.0 - c) + y * s],
        [y * x * (1.0 - c) + z * s, c + y * y * (1.0 - c), y * z * (1.0 - c) - x * s],
        [z * x * (1.0 - c) - y * s, z * y * (1.0 - c) + x * s, c + z * z * (1.0 - c)],
    ]
}

#[test]
fn rotational_covariance() {
    let mut rng = trial_rng(306, 0);
    let p = params(Branch::Plus);
    for _ in 0..300 {
        let sj = random_spherical_jet(&mut rng);
        let x = random_point_on_sphere(&mut rng, sj.r);
        let rot = rotation(&mut rng);
        let rx: [f64; 3] = std::array::from_fn(|i| (0..3).map(|k| rot[i][k] * x[k]).sum());
        let t = assemble_spherical(&sj, &p, &x).unwrap();
        let tr = assemble_spherical(&sj, &p, &rx).unwrap();
        let mag = max_abs_mat(&t).max(1.0);
        assert!((t[0][0] - tr[0][0]).norm() <= 1e-11 * mag);
        for i in 0..3 {
            let v: f64 = (0..3).map(|k| rot[i][k] * t[0][k + 1].re).sum();
            assert!((tr[0][i + 1].re - v).abs() <= 1e-11 * mag);
            for j in 0..3 {
                let mut c = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        c += rot[i][a] * t[a + 1][b + 1].re * rot[j][b];
                    }
                }
                assert!((tr[i + 1][j + 1].re - c).abs() <= 1e-11 * mag);
            }
        }
    }
}

fn max_error(rows: &[GridOutputRow], fx: &AnalyticFixture, p: &SphericalParams, stride: usize, nr: usize) -> f64 {
    let cfg = FdConfig::default();
    let mut worst: f64 = 0.0;
    for (idx, row) in rows.iter().enumerate() {
        let (it, ir) = (idx / nr, idx % nr);
        if it % stride != 0 || ir % stride != 0 {
            continue;
        }
        let exact = GridOutputRow::evaluate(&fx.jet(row.t, row.r), p, &cfg).unwrap();
        for (a, b) in row.values().iter().zip(exact.values()) {
            worst = worst.max((a.unwrap() - b.unwrap()).abs());
        }
    }
    worst
}

#[test]
fn grid_converges_at_second_order() {
    let fx = AnalyticFixture::default();
    let p = params(Branch::Plus);
    let cfg = FdConfig::default();
    let coarse = fx.grid((0.0, 1.0), 11, (0.5, 1.5), 11);
    let fine = fx.grid((0.0, 1.0), 21, (0.5, 1.5), 21);
    let ec = max_error(&grid_evaluate(&coarse, &p, &cfg).unwrap(), &fx, &p, 1, 11);
    let ef = max_error(&grid_evaluate(&fine, &p, &cfg).unwrap(), &fx, &p, 2, 21);
    assert!(ec / ef >= 3.5, "{ec} / {ef}");
}

#[test]
fn grid_static_in_t_and_flags() {
    let fx = AnalyticFixture::static_in_t();
    let g = fx.grid((0.0, 1.0), 5, (0.5, 1.5), 6);
    let (ht, hr) = g.validate().unwrap();
    for it in 0..5 {
        for ir in 0..6 {
            let sj = g.node_jet(it, ir, ht, hr);
            for v in [sj.sigma_t, sj.omega_im_t, sj.j_a_t, sj.j_b_t, sj.sigma_tt, sj.omega_im_tt] {
                assert!(v.abs() < 1e-12);
            }
        }
    }

    let mut nodes: Vec<GridNode> = (0..25)
        .map(|_| GridNode { sigma: 1.0, omega_im: 0.0, j_a: 1.0, j_b: 0.1 })
        .collect();
    nodes[12] = GridNode { sigma: 0.0, omega_im: 0.0, j_a: 1.0, j_b: 0.1 };
    let axis: Vec<f64> = (1..=5).map(f64::from).collect();
    let g = GridTable::from_parts(axis.clone(), axis, nodes).unwrap();
    let rows = grid_evaluate(&g, &params(Branch::Plus), &FdConfig::default()).unwrap();
    assert!(rows[12].degenerate_flag && rows[12].t00.is_none());
    assert_eq!(rows.iter().filter(|r| r.degenerate_flag).count(), 1);
    let floor = FdConfig { r_floor: 1.5 };
    let rows = grid_evaluate(&g, &params(Branch::Plus), &floor).unwrap();
    assert_eq!(rows.iter().filter(|r| r.degenerate_flag).count(), 5 + 1);
}

#[test]
fn grid_shape_errors_and_csv_roundtrip() {
    let fx = AnalyticFixture::default();
    let small = fx.grid((0.0, 1.0), 2, (0.5, 1.5), 2);
    assert!(matches!(
        grid_evaluate(&small, &params(Branch::Plus), &FdConfig::default()),
        Err(Error::GridTooSmall { .. })
    ));
    let g = fx.grid((0.0, 1.0), 5, (0.5, 1.5), 5);
    let mut buf = Vec::new();
    g.write_csv(&mut buf).unwrap();
    assert_eq!(GridTable::read_csv(buf.as_slice()).unwrap(), g);

    let text = String::from_utf8(buf).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let header = lines.remove(0);
    lines.reverse();
    let shuffled = format!("{header}\n{}\n", lines.join("\n"));
    assert_eq!(GridTable::read_csv(shuffled.as_bytes()).unwrap(), g);
    let missing = format!("{header}\n{}\n", lines[1..].join("\n"));
    assert!(matches!(GridTable::read_csv(missing.as_bytes()), Err(Error::InvalidGrid(_))));
    assert!(matches!(GridTable::read_csv("t,r,sigma\n1,2,3\n".as_bytes()), Err(Error::Schema(_))));
    assert!(matches!(
        GridTable::read_csv("t,r,sigma,omega_im,j_a,j_b\n1,2,x,0,0,0\n".as_bytes()),
        Err(Error::Schema(_))
    ));
    let nonuniform = GridTable::from_parts(
        vec![0.0, 1.0, 2.0, 3.0, 5.0],
        vec![1.0, 2.0, 3.0, 4.0, 5.0],
        vec![GridNode { sigma: 1.0, omega_im: 0.0, j_a: 1.0, j_b: 0.0 }; 25],
    )
    .unwrap();
    assert_eq!(nonuniform.validate(), Err(Error::NonUniformAxis { axis: "t" }));
}

#[test]
fn grid_output_is_ordered_and_monopole_column_exact() {
    let fx = AnalyticFixture::default();
    let g = fx.grid((0.0, 0.4), 5, (0.5, 2.0), 7);
    let p = SphericalParams { sign: Branch::Minus, q: 1.0, mass: 0.8 };
    let rows = grid_evaluate(&g, &p, &FdConfig::default()).unwrap();
    for w in rows.windows(2) {
        assert!((w[0].t, w[0].r) < (w[1].t, w[1].r));
    }
    for row in &rows {
        assert_eq!(row.f_b.unwrap(), -1.0 / (2.0 * row.r.powi(3)));
    }
    let mut out = Vec::new();
    write_output_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("t,r,B_a,B_b,F_a,F_b,T_a,T_b,T_c,scriptF,T00,degenerate_flag\n"));
}
