//! Write an RKP run as snapshots and read one back.
use coriolis_kp::experiments::{make_profile, RunConfig};
use coriolis_kp::scalar::{solve, ScalarModelKind};
use coriolis_kp::snapshot::read_snapshot;
use coriolis_kp::spectral::{Grid, DEFAULT_BOX};
use std::path::Path;

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::square(64, DEFAULT_BOX)?;
    let k0 = make_profile(g, &RunConfig::default().profile)?;
    let traj = solve(&k0, ScalarModelKind::RKP, 0.5, 5e-3, 25)?;
    let dir = Path::new("runs/snapshots_example");
    traj.write_snapshots(dir)?;
    traj.write_csv(&dir.join("scalar.csv"))?;
    let (meta, k) = read_snapshot(&dir.join("k_00004.json"))?;
    println!("{meta:?}");
    println!(
        "matches final state: {}",
        k.values() == traj.final_state().k.values()
    );
    Ok(())
}
