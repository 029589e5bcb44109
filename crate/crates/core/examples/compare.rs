//! Boussinesq against the leading-order reconstruction for one μ.
use coriolis_kp::experiments::{run_comparison, RunConfig};
use coriolis_kp::regimes::RegimeKind;

fn main() -> coriolis_kp::Result<()> {
    let c = RunConfig {
        regime: RegimeKind::KP,
        mu: vec![0.02],
        ..RunConfig::default()
    };
    let r = run_comparison(&c)?;
    for s in &r.samples {
        println!(
            "t={:7.2} E={:.3e} bound={:.3e} ratio={:.3}",
            s.t, s.error_linf, s.bound, s.ratio
        );
    }
    println!("partial: {}", r.partial);
    Ok(())
}
