//! Targeted residuals of the RKP ansatz, for k solving RKP and for k solving KP.
use coriolis_kp::ansatz::{residual_eval, AnsatzSetup, KTrajectory, SourceMode, V0Choice};
use coriolis_kp::regimes::RegimeKind;
use coriolis_kp::scalar::ScalarModelKind;
use coriolis_kp::spectral::{Grid, ScalarField, DEFAULT_BOX};

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::square(128, DEFAULT_BOX)?;
    let (c, s) = (g.lx / 2.0, 3.0);
    let k0 = ScalarField::from_fn(g, |x, y| {
        let (dx, dy) = (x - c, y - c);
        -dx / s * (-(dx * dx + dy * dy) / (2.0 * s * s)).exp()
    })?;
    let mu = 0.04;
    let times = [0.0, 5.0, 12.5, 25.0];
    for model in [ScalarModelKind::RKP, ScalarModelKind::KP] {
        let traj = KTrajectory::generate(&k0, model, 1.0, 1e-3, 50)?;
        for mode in [SourceMode::Reduced, SourceMode::Full] {
            let setup =
                AnsatzSetup::with_choice(RegimeKind::RKP, mu, traj.clone(), V0Choice::Auto, mode)?;
            let r = residual_eval(&setup, &times)?;
            println!("k from {model}, {mode:?}:");
            for s in &r.samples {
                println!(
                    "  t={:5.1} R1_1={:.2e} R2_1/2={:.2e} R2_1={:.2e} R1={:.2e} R2={:.2e} rec={:.1e}",
                    s.t, s.r1_one.linf, s.r2_half.linf, s.r2_one.linf, s.r1_rem.linf, s.r2_rem.linf,
                    s.reconstruction_eq1.max(s.reconstruction_eq2)
                );
            }
        }
    }
    Ok(())
}
