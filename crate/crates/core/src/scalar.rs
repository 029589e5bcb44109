//! The four scalar long-wave models
//!
//! ```text
//! KdV        ∂τk + 3/2 k∂ξk + 1/6 ∂ξ³k                                  = 0
//! Ostrovsky  ∂τk + 3/2 k∂ξk + 1/6 ∂ξ³k                      − 1/2 ∂ξ⁻¹k = 0
//! KP         ∂τk + 3/2 k∂ξk + 1/6 ∂ξ³k + 1/2 ∂ξ⁻¹∂y²k                = 0
//! RKP        ∂τk + 3/2 k∂ξk + 1/6 ∂ξ³k + 1/2 ∂ξ⁻¹∂y²k − 1/2 ∂ξ⁻¹k = 0
//! ```
//!
//! and their ETDRK4 integration on the periodic grid. KdV and Ostrovsky
//! carry no y-coupling; they run on the same 2D grid with y as a parameter.

use crate::error::{Error, Result};
use crate::etd::Etdrk4Coeffs;
use crate::spectral::{l2_norm, linf_norm, Grid, ScalarField, Spectrum, ZERO_X_MEAN_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

/// Largest kx=0 coefficient tolerated (relative) in the input of a model
/// containing ∂ξ⁻¹ before it is projected out.
pub const SOLVER_ZERO_MEAN_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarModelKind {
    KdV,
    Ostrovsky,
    KP,
    RKP,
}

impl ScalarModelKind {
    pub const ALL: [ScalarModelKind; 4] = [Self::KdV, Self::Ostrovsky, Self::KP, Self::RKP];

    /// Carries the `−½∂ξ⁻¹k` rotation term.
    pub fn has_rotation(self) -> bool {
        matches!(self, Self::Ostrovsky | Self::RKP)
    }

    /// Carries the `½∂ξ⁻¹∂y²k` transverse term.
    pub fn has_transverse(self) -> bool {
        matches!(self, Self::KP | Self::RKP)
    }

    pub fn needs_zero_x_mean(self) -> bool {
        self.has_rotation() || self.has_transverse()
    }

    pub fn from_flags(transverse: bool, rotation: bool) -> Self {
        match (transverse, rotation) {
            (true, true) => Self::RKP,
            (true, false) => Self::KP,
            (false, true) => Self::Ostrovsky,
            (false, false) => Self::KdV,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::KdV => "kdv",
            Self::Ostrovsky => "ostrovsky",
            Self::KP => "kp",
            Self::RKP => "rkp",
        }
    }
}

impl fmt::Display for ScalarModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ScalarModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kdv" => Ok(Self::KdV),
            "ostrovsky" => Ok(Self::Ostrovsky),
            "kp" => Ok(Self::KP),
            "rkp" => Ok(Self::RKP),
            other => Err(Error::Config(format!("unknown scalar model '{other}'"))),
        }
    }
}

/// Symbol λ of the linear part, `∂τk̂ = λ k̂`. Purely imaginary; zero at kx=0.
pub fn linear_symbol(kind: ScalarModelKind, kx: f64, ky: f64) -> Complex64 {
    if kx == 0.0 {
        return Complex64::default();
    }
    let mut im = kx.powi(3) / 6.0;
    if kind.has_transverse() {
        im -= ky * ky / (2.0 * kx);
    }
    if kind.has_rotation() {
        im -= 1.0 / (2.0 * kx);
    }
    Complex64::new(0.0, im)
}

/// Plane-wave frequency ω for `k = e^{i(kx ξ + ky y − ωτ)}`, i.e. `λ = −iω`.
pub fn plane_wave_frequency(kind: ScalarModelKind, kx: f64, ky: f64) -> f64 {
    (Complex64::i() * linear_symbol(kind, kx, ky)).re
}

/// Spectrum of `−(3/4)∂ξ(k²)`, dealiased.
pub(crate) fn nonlinear_spectrum(k_hat: &Spectrum) -> Spectrum {
    let mut out = Spectrum::product(k_hat, k_hat).dx().scaled(-0.75);
    out.dealias_in_place();
    out
}

pub(crate) fn linear_spectrum(kind: ScalarModelKind, k_hat: &Spectrum) -> Spectrum {
    k_hat.apply(|kx, ky| linear_symbol(kind, kx, ky))
}

/// `∂τk` in Fourier space (linear + nonlinear part).
pub(crate) fn tau_derivative_spectrum(kind: ScalarModelKind, k_hat: &Spectrum) -> Spectrum {
    linear_spectrum(kind, k_hat).axpy(1.0, &nonlinear_spectrum(k_hat))
}

/// `∂τ²k` obtained by differentiating the model once more:
/// `L(∂τk) − (3/2)∂ξ(k ∂τk)`.
pub(crate) fn tau_second_derivative_spectrum(
    kind: ScalarModelKind,
    k_hat: &Spectrum,
    kt_hat: &Spectrum,
) -> Spectrum {
    let mut nl = Spectrum::product(k_hat, kt_hat).dx().scaled(-1.5);
    nl.dealias_in_place();
    linear_spectrum(kind, kt_hat).axpy(1.0, &nl)
}

/// Unknown of a scalar model at slow time `tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarState {
    pub kind: ScalarModelKind,
    pub k: ScalarField,
    pub tau: f64,
}

impl ScalarState {
    /// Validates the zero-x-mean requirement of models containing ∂ξ⁻¹.
    pub fn new(kind: ScalarModelKind, k: ScalarField, tau: f64) -> Result<Self> {
        let k = if kind.needs_zero_x_mean() {
            k.checked_zero_x_mean(ZERO_X_MEAN_TOL)?
        } else {
            k
        };
        Ok(Self { kind, k, tau })
    }
}

/// Nonlinear right-hand side `−(3/4)∂ξ(k²)`, dealiased.
pub fn rhs_nonlinear(state: &ScalarState) -> ScalarField {
    nonlinear_spectrum(&state.k.to_spectrum()).to_field()
}

/// Step-size bound for the explicit treatment of the nonlinearity:
/// `dt ≤ 1 / ((3/2)·max|k|·kmax)` with kmax the largest retained |kx|.
pub fn stable_dt(k: &ScalarField) -> f64 {
    let (kmax, _) = k.grid().dealiased_kmax();
    let rate = 1.5 * k.max_abs() * kmax;
    if rate == 0.0 {
        f64::INFINITY
    } else {
        1.0 / rate
    }
}

/// Precomputed ETDRK4 stepper for one model, grid and step size.
#[derive(Clone, Debug)]
pub struct ScalarStepper {
    kind: ScalarModelKind,
    grid: Grid,
    dt: f64,
    coeffs: Vec<Etdrk4Coeffs>,
    nonlinear: bool,
}

impl ScalarStepper {
    pub fn new(kind: ScalarModelKind, grid: Grid, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
        }
        let mut coeffs = Vec::with_capacity(grid.len());
        for iy in 0..grid.ny {
            let ky = grid.ky(iy);
            for ix in 0..grid.nx {
                coeffs.push(Etdrk4Coeffs::new(
                    dt * linear_symbol(kind, grid.kx(ix), ky),
                    dt,
                ));
            }
        }
        Ok(Self {
            kind,
            grid,
            dt,
            coeffs,
            nonlinear: true,
        })
    }

    /// Disable the nonlinearity (pure linear semigroup).
    pub fn linear_only(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn kind(&self) -> ScalarModelKind {
        self.kind
    }

    fn n(&self, k: &Spectrum) -> Spectrum {
        if self.nonlinear {
            nonlinear_spectrum(k)
        } else {
            Spectrum::zeros(self.grid)
        }
    }

    pub fn step_spectrum(&self, u: &Spectrum) -> Spectrum {
        let nu = self.n(u);
        let mut a = u.clone();
        for ((a, c), n) in a.coeffs_mut().iter_mut().zip(&self.coeffs).zip(nu.coeffs()) {
            *a = c.e2 * *a + c.q * n;
        }
        let na = self.n(&a);
        let mut b = u.clone();
        for ((b, c), n) in b.coeffs_mut().iter_mut().zip(&self.coeffs).zip(na.coeffs()) {
            *b = c.e2 * *b + c.q * n;
        }
        let nb = self.n(&b);
        let mut cc = a.clone();
        for (((x, c), n_b), n_u) in cc
            .coeffs_mut()
            .iter_mut()
            .zip(&self.coeffs)
            .zip(nb.coeffs())
            .zip(nu.coeffs())
        {
            *x = c.e2 * *x + c.q * (2.0 * n_b - n_u);
        }
        let nc = self.n(&cc);
        let mut out = u.clone();
        for (i, x) in out.coeffs_mut().iter_mut().enumerate() {
            let c = &self.coeffs[i];
            *x = c.e * *x
                + c.f1 * nu.coeffs()[i]
                + 2.0 * c.f2 * (na.coeffs()[i] + nb.coeffs()[i])
                + c.f3 * nc.coeffs()[i];
        }
        out
    }
}

/// Bring initial data into the solver subspace: dealiased, and with the
/// kx=0 column removed for models containing ∂ξ⁻¹.
pub(crate) fn prepare_initial(kind: ScalarModelKind, k0: &ScalarField) -> Result<Spectrum> {
    let mut s = k0.to_spectrum();
    if kind.needs_zero_x_mean() {
        let (row, ratio) = s.zero_x_mean_defect();
        if ratio > SOLVER_ZERO_MEAN_TOL {
            return Err(Error::NotInRangeOfDx { row, ratio });
        }
        s.project_zero_x_mean();
    }
    s.dealias_in_place();
    Ok(s)
}

/// One ETDRK4 step of size `dt`.
pub fn step(state: &ScalarState, dt: f64) -> Result<ScalarState> {
    let stepper = ScalarStepper::new(state.kind, *state.k.grid(), dt)?;
    let u = prepare_initial(state.kind, &state.k)?;
    let next = stepper.step_spectrum(&u);
    if !next.is_finite() {
        return Err(Error::BlowUp {
            step: 1,
            time: state.tau + dt,
        });
    }
    let mut k = next.to_field_checked()?;
    if state.kind.needs_zero_x_mean() {
        k.set_zero_x_mean(true);
    }
    Ok(ScalarState {
        kind: state.kind,
        k,
        tau: state.tau + dt,
    })
}

/// One row of the scalar diagnostics CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarDiagnostics {
    pub tau: f64,
    pub l2: f64,
    pub linf: f64,
    /// Largest kx=0 coefficient relative to the total coefficient norm.
    pub mass_x0: f64,
    pub dt: f64,
}

/// Sampled solution of a scalar model.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub kind: ScalarModelKind,
    pub dt: f64,
    pub samples: Vec<ScalarState>,
    pub diagnostics: Vec<ScalarDiagnostics>,
    pub(crate) spectra: Vec<Spectrum>,
}

impl Trajectory {
    pub fn grid(&self) -> &Grid {
        self.samples[0].k.grid()
    }

    pub fn final_state(&self) -> &ScalarState {
        self.samples.last().expect("non-empty trajectory")
    }

    pub fn horizon(&self) -> f64 {
        self.final_state().tau
    }

    /// Largest relative L² drift over the samples.
    pub fn l2_drift(&self) -> f64 {
        let l0 = self.diagnostics[0].l2;
        if l0 == 0.0 {
            return self.diagnostics.iter().map(|d| d.l2).fold(0.0, f64::max);
        }
        self.diagnostics
            .iter()
            .map(|d| (d.l2 - l0).abs() / l0)
            .fold(0.0, f64::max)
    }

    pub fn max_x0_defect(&self) -> f64 {
        self.diagnostics
            .iter()
            .map(|d| d.mass_x0)
            .fold(0.0, f64::max)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "tau,l2,linf,mass_x0,dt")?;
        for d in &self.diagnostics {
            writeln!(f, "{},{},{},{},{}", d.tau, d.l2, d.linf, d.mass_x0, d.dt)?;
        }
        Ok(())
    }

    /// One snapshot per sample, `k_00000.{json,f64}`, ….
    pub fn write_snapshots(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (i, s) in self.samples.iter().enumerate() {
            crate::snapshot::write_snapshot(&dir.join(format!("k_{i:05}")), &s.k, s.tau, "k")?;
        }
        Ok(())
    }
}

fn diagnostics_of(tau: f64, s: &Spectrum, k: &ScalarField, dt: f64) -> ScalarDiagnostics {
    ScalarDiagnostics {
        tau,
        l2: l2_norm(k),
        linf: linf_norm(k),
        mass_x0: s.zero_x_mean_defect().1,
        dt,
    }
}

/// Integrate `kind` from `k0` over `τ ∈ [0, t_end]`, keeping every
/// `sample_every`-th step. `dt` is shrunk so that it divides `t_end`.
pub fn solve(
    k0: &ScalarField,
    kind: ScalarModelKind,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    solve_with(k0, kind, t_end, dt, sample_every, true)
}

/// As [`solve`], optionally with the nonlinearity switched off.
pub fn solve_with(
    k0: &ScalarField,
    kind: ScalarModelKind,
    t_end: f64,
    dt: f64,
    sample_every: usize,
    nonlinear: bool,
) -> Result<Trajectory> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "t_end must be >= 0, got {t_end}"
        )));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
    }
    if sample_every == 0 {
        return Err(Error::InvalidParameter("sample_every must be >= 1".into()));
    }
    let steps = (t_end / dt).ceil().max(if t_end > 0.0 { 1.0 } else { 0.0 }) as usize;
    let dt = if steps > 0 { t_end / steps as f64 } else { dt };
    let grid = *k0.grid();
    let mut stepper = ScalarStepper::new(kind, grid, dt)?;
    if !nonlinear {
        stepper = stepper.linear_only();
    }

    let mut u = prepare_initial(kind, k0)?;
    let mut traj = Trajectory {
        kind,
        dt,
        samples: Vec::new(),
        diagnostics: Vec::new(),
        spectra: Vec::new(),
    };
    let push = |traj: &mut Trajectory, tau: f64, u: &Spectrum| -> Result<()> {
        let mut k = u.to_field_checked()?;
        if kind.needs_zero_x_mean() {
            k.set_zero_x_mean(true);
        }
        traj.diagnostics.push(diagnostics_of(tau, u, &k, dt));
        traj.samples.push(ScalarState { kind, k, tau });
        traj.spectra.push(u.clone());
        Ok(())
    };
    push(&mut traj, 0.0, &u)?;
    for n in 1..=steps {
        u = stepper.step_spectrum(&u);
        if !u.is_finite() {
            return Err(Error::BlowUp {
                step: n,
                time: n as f64 * dt,
            });
        }
        if n % sample_every == 0 || n == steps {
            let tau = if n == steps { t_end } else { n as f64 * dt };
            push(&mut traj, tau, &u)?;
        }
    }
    Ok(traj)
}
