//! Conserved quantities: scalar L², Boussinesq mass and linear energy.
use coriolis_kp::boussinesq::{self, BoussinesqState, ModelParams};
use coriolis_kp::experiments::{make_profile, RunConfig};
use coriolis_kp::regimes::{params_for, RegimeKind};
use coriolis_kp::scalar::{self, ScalarModelKind};
use coriolis_kp::spectral::{Grid, ScalarField, VectorField2, DEFAULT_BOX};

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::square(128, DEFAULT_BOX)?;
    let k0 = make_profile(g, &RunConfig::default().profile)?;
    for kind in ScalarModelKind::ALL {
        let t = scalar::solve(&k0, kind, 5.0, 5e-3, 100)?;
        println!("{kind:>9}: relative L² drift {:.2e}", t.l2_drift());
    }
    let state = BoussinesqState::new(
        k0.clone(),
        VectorField2::new(k0, ScalarField::zeros(g))?,
        0.0,
    )?;
    for (name, p) in [
        ("rkp mu=0.04", params_for(RegimeKind::RKP, 0.04)?),
        ("linear", ModelParams::new(0.04, 0.0, 0.2, 0.2)?),
    ] {
        let dt = 0.5 * boussinesq::stability_dt(&p, &g);
        let t = boussinesq::solve(&state, &p, 50.0, dt, 50, 2)?;
        let (d0, d1) = (&t.diagnostics[0], t.diagnostics.last().unwrap());
        println!(
            "{name}: mass drift {:.2e}, E0 {:.6} -> {:.6}, E2 {:.6} -> {:.6}",
            (d1.mass - d0.mass).abs(),
            d0.e0,
            d1.e0,
            d0.en,
            d1.en
        );
    }
    Ok(())
}
