//! Transport probe: bounded when the same-speed source vanishes, linear growth otherwise.
use coriolis_kp::ansatz::transport_growth_probe;
use coriolis_kp::experiments::{make_profile, Profile, ProfileSpec, RunConfig};
use coriolis_kp::spectral::{Grid, ScalarField, DEFAULT_BOX};

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::square(128, DEFAULT_BOX)?;
    let spec = |profile| ProfileSpec {
        profile,
        ..RunConfig::default().profile
    };
    let k2 = make_profile(g, &spec(Profile::GaussianDx))?;
    let k1 = make_profile(g, &spec(Profile::Gaussian))?;
    for (name, k1) in [("k1 = 0", ScalarField::zeros(g)), ("k1 = gaussian", k1)] {
        let r = transport_growth_probe(1.0, -1.0, &k1, &k2, 200.0, 400)?;
        println!(
            "{name}: sup[0,20] {:.4} sup[0,200] {:.4} fit {:?} C {:?}",
            r.sup_until(20.0),
            r.sup_until(200.0),
            r.fit,
            r.bound_constant
        );
    }
    Ok(())
}
