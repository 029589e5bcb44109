//! Reference solutions, frequency measurements and convergence studies.

use crate::boussinesq::{
    BoussinesqIntegrator, BoussinesqState, BoussinesqStepper, BoussinesqTrajectory, Forcing,
    ModelParams,
};
use crate::error::{Error, Result};
use crate::fit::{fit_power_law, LineFit};
use crate::scalar::{self, ScalarModelKind};
use crate::spectral::{linf_norm, Grid, ScalarField, VectorField2};
use serde::Serialize;
use std::sync::Arc;

/// KdV soliton `a sech²(√(3a)/2 (ξ − ξ0 − aτ/2))`, travelling at speed `a/2`.
pub fn kdv_soliton(a: f64, xi: f64, xi0: f64, tau: f64) -> f64 {
    let z = (3.0 * a).sqrt() / 2.0 * (xi - xi0 - a * tau / 2.0);
    a / z.cosh().powi(2)
}

/// The soliton sampled on `grid` (y-independent), summed over the nearest
/// periodic images so that the field is smooth across the boundary.
pub fn kdv_soliton_field(grid: Grid, a: f64, xi0: f64, tau: f64) -> Result<ScalarField> {
    ScalarField::from_fn(grid, |x, _| {
        (-2..=2)
            .map(|m| kdv_soliton(a, x + m as f64 * grid.lx, xi0, tau))
            .sum()
    })
}

/// Frequency ω of the plane wave `cos(kx ξ + ky y − ωτ)` measured from a
/// run of `kind` started at amplitude `amplitude` on mode `(jx, jy)`.
pub fn measured_frequency(
    kind: ScalarModelKind,
    grid: Grid,
    jx: i64,
    jy: i64,
    amplitude: f64,
    t_end: f64,
    steps: usize,
) -> Result<f64> {
    if jx <= 0 || steps == 0 {
        return Err(Error::InvalidParameter(
            "need jx >= 1 and steps >= 1".into(),
        ));
    }
    let (kx, ky) = (
        2.0 * std::f64::consts::PI * jx as f64 / grid.lx,
        2.0 * std::f64::consts::PI * jy as f64 / grid.ly,
    );
    let k0 = ScalarField::from_fn(grid, |x, y| amplitude * (kx * x + ky * y).cos())?;
    let traj = scalar::solve(&k0, kind, t_end, t_end / steps as f64, 1)?;
    let ix = jx.rem_euclid(grid.nx as i64) as usize;
    let iy = jy.rem_euclid(grid.ny as i64) as usize;
    let i = iy * grid.nx + ix;
    let mut phase = 0.0;
    for w in traj.spectra.windows(2) {
        phase += (w[1].coeffs()[i] / w[0].coeffs()[i]).arg();
    }
    Ok(-phase / traj.horizon())
}

/// Errors of a time integrator at several steps, with the log-log slope.
#[derive(Clone, Debug, Serialize)]
pub struct OrderStudy {
    pub dts: Vec<f64>,
    pub errors: Vec<f64>,
    pub fit: Option<LineFit>,
}

impl OrderStudy {
    fn new(dts: &[f64], errors: Vec<f64>) -> Self {
        Self {
            fit: fit_power_law(dts, &errors),
            dts: dts.to_vec(),
            errors,
        }
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

/// ETDRK4 errors of `kind` from `k0` over `[0, t_end]` against a reference
/// run at `min(dts)/8`.
pub fn scalar_order_study(
    k0: &ScalarField,
    kind: ScalarModelKind,
    t_end: f64,
    dts: &[f64],
) -> Result<OrderStudy> {
    let finest = dts.iter().cloned().fold(f64::INFINITY, f64::min);
    let reference = scalar::solve(k0, kind, t_end, finest / 8.0, usize::MAX)?;
    let r = &reference.final_state().k;
    let errors = dts
        .iter()
        .map(|&dt| {
            let t = scalar::solve(k0, kind, t_end, dt, usize::MAX)?;
            Ok(linf_norm(&t.final_state().k.sub(r)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderStudy::new(dts, errors))
}

/// Manufactured solution `ζ = u = a cos(x − t)`, `v = 0` and the source
/// `(R1, R2)` that makes it exact.
pub fn manufactured_wave(
    grid: Grid,
    params: ModelParams,
    a: f64,
) -> (impl Fn(f64) -> Result<BoussinesqState>, Forcing) {
    let exact = move |t: f64| -> Result<BoussinesqState> {
        let z = ScalarField::from_fn(grid, |x, _| a * (x - t).cos())?;
        BoussinesqState::new(
            z.clone(),
            VectorField2::new(z, ScalarField::zeros(grid))?,
            t,
        )
    };
    let p = params;
    let forcing: Forcing = Arc::new(move |t: f64| {
        let f = |g: &dyn Fn(f64) -> f64| {
            ScalarField::from_fn(grid, |x, _| g(x - t)).expect("finite source")
        };
        let r1 = f(&|th| -p.eps * a * a * (2.0 * th).sin());
        let r2u = f(&|th| p.mu / 3.0 * a * th.sin() - p.eps / 2.0 * a * a * (2.0 * th).sin());
        let r2v = f(&|th| p.rot * a * th.cos());
        (r1, VectorField2::new(r2u, r2v).expect("same grid"))
    });
    (exact, forcing)
}

/// Boussinesq stepper errors on [`manufactured_wave`] at `t_end`.
pub fn boussinesq_order_study(
    grid: Grid,
    params: ModelParams,
    a: f64,
    t_end: f64,
    dts: &[f64],
) -> Result<OrderStudy> {
    let (exact, forcing) = manufactured_wave(grid, params, a);
    let target = exact(t_end)?;
    let errors = dts
        .iter()
        .map(|&dt| {
            let n = (t_end / dt).round().max(1.0) as usize;
            let stepper = BoussinesqStepper::new(params, grid, t_end / n as f64)?
                .with_forcing(forcing.clone());
            let mut integ = BoussinesqIntegrator::new(&exact(0.0)?, stepper)?;
            integ.advance(n)?;
            let s = integ.state()?;
            Ok(linf_norm(&s.zeta.sub(&target.zeta)?)
                .max(linf_norm(&s.vbar.u.sub(&target.vbar.u)?))
                .max(linf_norm(&s.vbar.v.sub(&target.vbar.v)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderStudy::new(dts, errors))
}

/// Integrate `n` steps forward, flip `V` and the sense of rotation,
/// integrate `n` more, flip `V` back and return the L∞ distance to `state0`.
pub fn reversibility_error(
    state0: &BoussinesqState,
    params: ModelParams,
    dt: f64,
    n: usize,
) -> Result<f64> {
    let g = *state0.grid();
    let mut fwd = BoussinesqIntegrator::new(state0, BoussinesqStepper::new(params, g, dt)?)?;
    fwd.advance(n)?;
    let mid = fwd.state()?;
    let flip = |s: &BoussinesqState| -> Result<BoussinesqState> {
        BoussinesqState::new(
            s.zeta.clone(),
            VectorField2::new(s.vbar.u.scaled(-1.0), s.vbar.v.scaled(-1.0))?,
            s.time,
        )
    };
    let mut back_params = params;
    back_params.rot = -params.rot;
    let mut back =
        BoussinesqIntegrator::new(&flip(&mid)?, BoussinesqStepper::new(back_params, g, dt)?)?;
    back.advance(n)?;
    let end = flip(&back.state()?)?;
    // compare against the band-limited initial data the integrator started from
    let start =
        BoussinesqIntegrator::new(state0, BoussinesqStepper::new(params, g, dt)?)?.state()?;
    Ok(linf_norm(&end.zeta.sub(&start.zeta)?)
        .max(linf_norm(&end.vbar.u.sub(&start.vbar.u)?))
        .max(linf_norm(&end.vbar.v.sub(&start.vbar.v)?)))
}

/// `C = max_t (log E^N(t) − log E^N(0))⁺ / (μ t)` over the trajectory
/// samples, with `N` the trajectory's energy order.
pub fn energy_growth_constant(traj: &BoussinesqTrajectory) -> f64 {
    let mu = traj.params.mu;
    let Some(first) = traj.diagnostics.first() else {
        return 0.0;
    };
    traj.diagnostics
        .iter()
        .filter(|d| d.t > first.t)
        .map(|d| (d.en / first.en).ln().max(0.0) / (mu * (d.t - first.t)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soliton_solves_kdv_pointwise() {
        // residual of k_τ + 3/2 k k_ξ + 1/6 k_ξξξ by centred differences
        let (a, h) = (0.5, 1e-3);
        let k = |xi: f64, tau: f64| kdv_soliton(a, xi, 0.0, tau);
        for &xi in &[-3.0, -1.0, 0.0, 0.7, 2.5] {
            let kt = (k(xi, h) - k(xi, -h)) / (2.0 * h);
            let kx = (k(xi + h, 0.0) - k(xi - h, 0.0)) / (2.0 * h);
            let kxxx = (k(xi + 2.0 * h, 0.0) - 2.0 * k(xi + h, 0.0) + 2.0 * k(xi - h, 0.0)
                - k(xi - 2.0 * h, 0.0))
                / (2.0 * h * h * h);
            let r = kt + 1.5 * k(xi, 0.0) * kx + kxxx / 6.0;
            assert!(r.abs() < 1e-5, "{xi}: {r}");
        }
    }
}
