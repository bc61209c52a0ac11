//! Spherically reduced tensor: pointwise functions, the 3D embedding check,
//! and finite differences over a CSV grid.

use fierz_stress::spherical::{
    embedding_check, grid_evaluate, maxwell_coeffs, stress_functions, write_output_csv, AnalyticFixture, Branch,
    FdConfig, GridOutputRow, GridTable, SphericalParams,
};

fn main() {
    let fx = AnalyticFixture::default();
    let p = SphericalParams { sign: Branch::Plus, q: 1.0, mass: 0.8 };

    let sj = fx.jet(0.3, 1.0);
    let f = stress_functions(&sj, &p).unwrap();
    println!("at t = 0.3, r = 1: T_a {:.5} T_b {:.5} T_c {:.5} F {:.5}", f.t_a, f.t_b, f.t_c, f.script_f);
    for r in [0.5, 1.0, 2.0] {
        let (_, fb) = maxwell_coeffs(&fx.jet(0.0, r), &p).unwrap();
        println!("F_b(r = {r}) = {fb}");
    }
    let c = embedding_check(&sj, &p, &[0.6, 0.0, 0.8]).unwrap();
    println!("embedding: full vs reduced {:.2e}, ε term {:.2e}", c.full_vs_reduced, c.epsilon_term);

    // grid round trip through CSV, as the command line tool would see it
    let mut csv = Vec::new();
    fx.grid((0.0, 1.0), 21, (0.5, 1.5), 21).write_csv(&mut csv).unwrap();
    let grid = GridTable::read_csv(csv.as_slice()).unwrap();
    let rows = grid_evaluate(&grid, &p, &FdConfig::default()).unwrap();
    let mut worst: f64 = 0.0;
    for row in &rows {
        let exact = GridOutputRow::evaluate(&fx.jet(row.t, row.r), &p, &FdConfig::default()).unwrap();
        for (a, b) in row.values().iter().zip(exact.values()) {
            worst = worst.max((a.unwrap() - b.unwrap()).abs());
        }
    }
    println!("{} nodes, max deviation from exact derivatives {worst:.2e}", rows.len());

    let mut out = Vec::new();
    write_output_csv(&rows[..3], &mut out).unwrap();
    print!("{}", String::from_utf8(out).unwrap());
}
