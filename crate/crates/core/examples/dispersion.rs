//! Measured plane-wave frequencies of the four scalar models against ω(kx, ky).
use coriolis_kp::scalar::{plane_wave_frequency, ScalarModelKind};
use coriolis_kp::spectral::Grid;
use coriolis_kp::verify::measured_frequency;
use std::f64::consts::PI;

fn main() -> coriolis_kp::Result<()> {
    let g = Grid::square(16, 2.0 * PI)?;
    for kind in ScalarModelKind::ALL {
        for (jx, jy) in [(1, 0), (1, 1), (2, -1)] {
            let w = measured_frequency(kind, g, jx, jy, 1e-8, 10.0, 1000)?;
            let exact = plane_wave_frequency(kind, jx as f64, jy as f64);
            println!("{kind:>9} ({jx},{jy:>2}): measured {w:+.12} exact {exact:+.12}");
        }
    }
    Ok(())
}
