//! Time-step convergence of both ETDRK4 steppers.
use coriolis_kp::boussinesq::ModelParams;
use coriolis_kp::scalar::ScalarModelKind;
use coriolis_kp::spectral::{Grid, DEFAULT_BOX};
use coriolis_kp::verify::{boussinesq_order_study, kdv_soliton_field, scalar_order_study};
use std::f64::consts::PI;

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::new(256, 16, DEFAULT_BOX, DEFAULT_BOX)?;
    let k0 = kdv_soliton_field(g, 0.5, g.lx / 2.0, 0.0)?;
    let dts = [0.2, 0.1, 0.05, 0.025];
    let s = scalar_order_study(&k0, ScalarModelKind::KdV, 2.0, &dts)?;
    println!("scalar KdV: errors {:?} slope {:?}", s.errors, s.slope());

    let g = Grid::square(16, 2.0 * PI)?;
    let params = ModelParams::new(0.1, 0.1, 1.0, 0.3)?;
    let b = boussinesq_order_study(g, params, 0.1, 1.0, &[0.2, 0.1, 0.05, 0.025])?;
    println!(
        "boussinesq manufactured: errors {:?} slope {:?}",
        b.errors,
        b.slope()
    );
    Ok(())
}
