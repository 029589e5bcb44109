//! μ-sweep for one regime; writes sweep.csv, report.json and run.log to runs/sweep_<regime>.
use coriolis_kp::experiments::{sweep_mu, RunConfig};
use coriolis_kp::regimes::RegimeKind;

fn main() -> coriolis_kp::Result<()> {
    let regime: RegimeKind = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "rkp".into())
        .parse()?;
    let c = RunConfig {
        regime,
        ..RunConfig::default()
    };
    let r = sweep_mu(&c)?;
    let dir = c.out.join(format!("sweep_{regime}"));
    r.write(&dir)?;
    println!("{}", r.to_json()?);
    println!("written to {}", dir.display());
    Ok(())
}
