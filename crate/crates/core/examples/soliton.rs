//! KdV soliton a = 0.5 carried to τ = 2 and compared with the exact profile.
use coriolis_kp::scalar::{solve, ScalarModelKind};
use coriolis_kp::spectral::{linf_norm, Grid, DEFAULT_BOX};
use coriolis_kp::verify::kdv_soliton_field;

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::new(512, 16, DEFAULT_BOX, DEFAULT_BOX)?;
    let (a, x0) = (0.5, g.lx / 2.0);
    let k0 = kdv_soliton_field(g, a, x0, 0.0)?;
    let traj = solve(&k0, ScalarModelKind::KdV, 2.0, 1e-3, 500)?;
    for s in &traj.samples {
        let exact = kdv_soliton_field(g, a, x0, s.tau)?;
        println!(
            "tau={:.1} L∞ error {:.2e}",
            s.tau,
            linf_norm(&s.k.sub(&exact)?)
        );
    }
    Ok(())
}
