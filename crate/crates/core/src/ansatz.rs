//! Multiscale approximate solutions of the Boussinesq-Coriolis system.
//!
//! With `s = √μ` and `K = k(x−t, y, τ)`, `τ = μt`, the ansatz is
//!
//! ```text
//! ζ_app = K + μ ζ1(t,x,y,τ)
//! u_app = K + μ u1(t,x,y,τ)
//! v_app = s v_half(t,x,y,τ) + μ v_one(t,x,y,τ)
//! ```
//!
//! and the four long-wave regimes differ only through two flags:
//! `a` (rot = √μ rather than μ) and `b` (γ = √μ rather than μ). Writing
//! `D⁻¹ = ∂x⁻¹`, the correctors are
//!
//! ```text
//! v_half = v_half⁰ + D⁻¹(a + b∂y)(K − k⁰)
//! v_one  = v_one⁰  + D⁻¹((1−a) + (1−b)∂y)(K − k⁰)
//! (∂t + ∂x) w₊ = −S₊(x−t, τ) − F0¹,   (∂t − ∂x) w₋ = −S₋(x−t, τ) − F0²
//! S₊ = 2∂τk + 3k∂ξk + ⅓∂ξ³k + D⁻¹(b∂y² − a)k
//! S₋ = k∂ξk − ⅓∂ξ³k + D⁻¹(b∂y² + 2ab∂y + a)k
//! F0¹ = (b∂y − a) v_s,  F0² = (b∂y + a) v_s,  v_s = v_half⁰ − D⁻¹(a + b∂y)k⁰
//! ζ1 = (w₊ + w₋)/2,  u1 = (w₊ − w₋)/2
//! ```
//!
//! `S₊` is resonant with the transport; it is twice the residual of the
//! regime's scalar equation. The transport is solved in closed form, mode
//! by mode, treating `τ` as an independent variable.

use crate::boussinesq::{residual, BoussinesqState, ModelParams};
use crate::error::{Error, Result};
use crate::fit::{fit_line, LineFit};
use crate::regimes::{params_for, RegimeKind};
use crate::scalar::{self, ScalarModelKind, Trajectory};
use crate::spectral::ops::hs_norm_spectrum;
use crate::spectral::{
    l2_norm, linf_norm, Axis, Grid, ScalarField, Spectrum, VectorField2, ZERO_X_MEAN_TOL,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

/// Slow-time history of `k`, interpolated by cubic Hermite polynomials whose
/// slopes come from the generating model.
#[derive(Clone, Debug)]
pub struct KTrajectory {
    model: Option<ScalarModelKind>,
    grid: Grid,
    taus: Vec<f64>,
    values: Vec<Spectrum>,
    derivs: Vec<Spectrum>,
}

impl KTrajectory {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        let kind = traj.kind;
        Self {
            model: Some(kind),
            grid: *traj.grid(),
            taus: traj.samples.iter().map(|s| s.tau).collect(),
            values: traj.spectra.clone(),
            derivs: traj
                .spectra
                .iter()
                .map(|s| scalar::tau_derivative_spectrum(kind, s))
                .collect(),
        }
    }

    /// Solve `kind` from `k0` up to `horizon` and keep every
    /// `sample_every`-th step.
    pub fn generate(
        k0: &ScalarField,
        kind: ScalarModelKind,
        horizon: f64,
        dt: f64,
        sample_every: usize,
    ) -> Result<Self> {
        Ok(Self::from_trajectory(&scalar::solve(
            k0,
            kind,
            horizon,
            dt,
            sample_every,
        )?))
    }

    /// A τ-independent `k` (∂τk = 0), valid for every τ ≥ 0.
    pub fn frozen(k: &ScalarField) -> Self {
        let s = k.to_spectrum().dealiased();
        Self {
            model: None,
            grid: *k.grid(),
            taus: vec![0.0],
            derivs: vec![Spectrum::zeros(*k.grid())],
            values: vec![s],
        }
    }

    pub fn model(&self) -> Option<ScalarModelKind> {
        self.model
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn horizon(&self) -> f64 {
        if self.model.is_none() {
            f64::INFINITY
        } else {
            *self.taus.last().expect("non-empty")
        }
    }

    pub fn sample_taus(&self) -> &[f64] {
        &self.taus
    }

    pub(crate) fn k_hat(&self, tau: f64) -> Result<Spectrum> {
        if self.model.is_none() {
            if tau < 0.0 {
                return Err(Error::OutsideHorizon {
                    tau,
                    horizon: f64::INFINITY,
                });
            }
            return Ok(self.values[0].clone());
        }
        let horizon = self.horizon();
        let slack = 1e-12 * horizon.max(1.0);
        if !(tau >= -slack && tau <= horizon + slack) {
            return Err(Error::OutsideHorizon { tau, horizon });
        }
        let tau = tau.clamp(0.0, horizon);
        let j = match self
            .taus
            .binary_search_by(|p| p.partial_cmp(&tau).expect("finite"))
        {
            Ok(j) => return Ok(self.values[j].clone()),
            Err(j) => j - 1,
        };
        let h = self.taus[j + 1] - self.taus[j];
        let s = (tau - self.taus[j]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = (s3 - 2.0 * s2 + s) * h;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = (s3 - s2) * h;
        let mut out = self.values[j].scaled(h00);
        out.add_assign_scaled(h10, &self.derivs[j]);
        out.add_assign_scaled(h01, &self.values[j + 1]);
        out.add_assign_scaled(h11, &self.derivs[j + 1]);
        Ok(out)
    }

    /// `∂τk` from the generating model; zero for a frozen profile.
    pub(crate) fn dk_hat(&self, k: &Spectrum) -> Spectrum {
        match self.model {
            Some(m) => scalar::tau_derivative_spectrum(m, k),
            None => Spectrum::zeros(self.grid),
        }
    }

    pub(crate) fn d2k_hat(&self, k: &Spectrum, dk: &Spectrum) -> Spectrum {
        match self.model {
            Some(m) => scalar::tau_second_derivative_spectrum(m, k, dk),
            None => Spectrum::zeros(self.grid),
        }
    }

    /// `k(·, τ)`.
    pub fn k_at(&self, tau: f64) -> Result<ScalarField> {
        self.k_hat(tau)?.to_field_checked()
    }
}

/// How the initial transverse velocity correctors are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum V0Choice {
    /// Balanced when `k⁰` has zero x-mean, zero otherwise.
    #[default]
    Auto,
    /// `v_half⁰ = D⁻¹(a + b∂y)k⁰`, `v_one⁰ = D⁻¹((1−a) + (1−b)∂y)k⁰`, which
    /// makes the stationary sources vanish.
    Balanced,
    Zero,
}

impl FromStr for V0Choice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(Self::Auto),
            "balanced" => Ok(Self::Balanced),
            "zero" => Ok(Self::Zero),
            other => Err(Error::Config(format!(
                "unknown v0 choice '{other}' (expected auto|balanced|zero)"
            ))),
        }
    }
}

impl fmt::Display for V0Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Auto => "auto",
            Self::Balanced => "balanced",
            Self::Zero => "zero",
        })
    }
}

/// Whether the resonant source `S₊` is kept in the `w₊` transport.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceMode {
    /// `S₊` dropped: `k` is taken to solve the regime's scalar equation,
    /// and any failure to do so shows up in the targeted residuals.
    #[default]
    Reduced,
    /// `S₊` kept: the correctors absorb the mismatch, growing secularly.
    Full,
}

impl FromStr for SourceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reduced" => Ok(Self::Reduced),
            "full" => Ok(Self::Full),
            other => Err(Error::Config(format!(
                "unknown source mode '{other}' (expected reduced|full)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Flags {
    a: f64,
    b: f64,
}

impl Flags {
    fn of(regime: RegimeKind) -> Result<Self> {
        if regime == RegimeKind::Boussinesq {
            return Err(Error::Config(
                "the ansatz needs one of the long-wave regimes rkp|kp|ostrovsky|kdv".into(),
            ));
        }
        let f = |x: bool| if x { 1.0 } else { 0.0 };
        Ok(Self {
            a: f(regime.strong_rotation()),
            b: f(regime.weakly_transverse()),
        })
    }

    fn ao(&self) -> f64 {
        1.0 - self.a
    }

    fn bo(&self) -> f64 {
        1.0 - self.b
    }

    fn needs_zero_mean(&self) -> bool {
        self.a != 0.0 || self.b != 0.0
    }
}

/// `(a + b∂y) s`.
fn comb(s: &Spectrum, a: f64, b: f64) -> Spectrum {
    let mut out = s.scaled(a);
    if b != 0.0 {
        out.add_assign_scaled(b, &s.dy());
    }
    out
}

fn check_range(s: &Spectrum, scale: f64) -> Result<()> {
    let nx = s.grid().nx;
    let (mut row, mut worst) = (0, 0.0);
    for iy in 0..s.grid().ny {
        let c = s.coeffs()[iy * nx].norm();
        if c > worst {
            worst = c;
            row = iy;
        }
    }
    let ratio = if scale > 0.0 { worst / scale } else { worst };
    if ratio > ZERO_X_MEAN_TOL {
        return Err(Error::NotInRangeOfDx { row, ratio });
    }
    Ok(())
}

fn coeff_norm(s: &Spectrum) -> f64 {
    s.energy().sqrt()
}

/// Initial transverse correctors for `choice`.
pub fn initial_transverse(
    regime: RegimeKind,
    k0: &ScalarField,
    choice: V0Choice,
) -> Result<(ScalarField, ScalarField)> {
    let fl = Flags::of(regime)?;
    let g = *k0.grid();
    let s = k0.to_spectrum().dealiased();
    let zero_mean = s.zero_x_mean_defect().1 <= ZERO_X_MEAN_TOL;
    let balanced = match choice {
        V0Choice::Balanced => {
            check_range(&s, coeff_norm(&s))?;
            true
        }
        V0Choice::Auto => zero_mean,
        V0Choice::Zero => false,
    };
    if !balanced {
        return Ok((ScalarField::zeros(g), ScalarField::zeros(g)));
    }
    let vh = comb(&s, fl.a, fl.b).antideriv_x(1);
    let vo = comb(&s, fl.ao(), fl.bo()).antideriv_x(1);
    let mut vh = vh.to_field_checked()?;
    let mut vo = vo.to_field_checked()?;
    vh.set_zero_x_mean(true);
    vo.set_zero_x_mean(true);
    Ok((vh, vo))
}

/// Corrector fields at one physical time.
#[derive(Clone, Debug)]
pub struct CorrectorSet {
    pub t: f64,
    pub tau: f64,
    pub v_half: ScalarField,
    pub v_one: ScalarField,
    pub w_plus: ScalarField,
    pub w_minus: ScalarField,
    pub zeta1: ScalarField,
    pub u1: ScalarField,
    /// `F0` (stationary part of `v_half`), `F0_1` and `F0_2`.
    pub f0_fields: BTreeMap<String, ScalarField>,
}

/// `w±` and their partial t-derivatives at fixed τ.
#[derive(Clone, Debug)]
pub struct TransportSample {
    pub t: f64,
    pub tau: f64,
    pub w_plus: Spectrum,
    pub w_minus: Spectrum,
    pub dt_w_plus: Spectrum,
    pub dt_w_minus: Spectrum,
    pub dtau_w_plus: Spectrum,
    pub dtau_w_minus: Spectrum,
}

impl TransportSample {
    pub fn w_plus_field(&self) -> Result<ScalarField> {
        self.w_plus.to_field_checked()
    }

    pub fn w_minus_field(&self) -> Result<ScalarField> {
        self.w_minus.to_field_checked()
    }
}

/// `∫₀ᵗ e^{iΔs} ds`, without cancellation for small `Δt`.
fn duhamel_weight(delta: f64, t: f64) -> Complex64 {
    if delta == 0.0 {
        return Complex64::new(t, 0.0);
    }
    let th = delta * t;
    let half = (0.5 * th).sin();
    // (e^{iθ} − 1)/(iΔ) with e^{iθ} − 1 = −2 sin²(θ/2) + i sin θ
    Complex64::new(-2.0 * half * half, th.sin()) / Complex64::new(0.0, delta)
}

struct Sources {
    k: Spectrum,
    kt: Spectrum,
    sp: Spectrum,
    sm: Spectrum,
    dsp: Spectrum,
    dsm: Spectrum,
}

/// Everything needed to evaluate the ansatz of one regime.
#[derive(Clone, Debug)]
pub struct AnsatzSetup {
    regime: RegimeKind,
    params: ModelParams,
    mode: SourceMode,
    flags: Flags,
    model: ScalarModelKind,
    k_traj: KTrajectory,
    k0: Spectrum,
    v_half0: Spectrum,
    v_one0: Spectrum,
    v_stat: Spectrum,
    f0_1: Spectrum,
    f0_2: Spectrum,
}

impl AnsatzSetup {
    /// `v_one0` is ignored in the RKP regime and `v_half0` in the KdV
    /// regime, where the corresponding corrector is absent.
    pub fn new(
        regime: RegimeKind,
        mu: f64,
        k_traj: KTrajectory,
        v_half0: &ScalarField,
        v_one0: &ScalarField,
        mode: SourceMode,
    ) -> Result<Self> {
        let flags = Flags::of(regime)?;
        let params = params_for(regime, mu)?;
        let g = *k_traj.grid();
        g.check_same(v_half0.grid())?;
        g.check_same(v_one0.grid())?;
        let k0 = k_traj.k_hat(0.0)?;
        if flags.needs_zero_mean() {
            check_range(&k0, coeff_norm(&k0))?;
        }
        let has_half = flags.a != 0.0 || flags.b != 0.0;
        let has_one = flags.ao() != 0.0 || flags.bo() != 0.0;
        let v_half0 = if has_half {
            v_half0.to_spectrum().dealiased()
        } else {
            Spectrum::zeros(g)
        };
        let v_one0 = if has_one {
            v_one0.to_spectrum().dealiased()
        } else {
            Spectrum::zeros(g)
        };
        let v_stat = v_half0.axpy(-1.0, &comb(&k0, flags.a, flags.b).antideriv_x(1));
        let f0_1 = comb(&v_stat, -flags.a, flags.b);
        let f0_2 = comb(&v_stat, flags.a, flags.b);
        Ok(Self {
            regime,
            params,
            mode,
            flags,
            model: regime.scalar_model().expect("long-wave regime"),
            k_traj,
            k0,
            v_half0,
            v_one0,
            v_stat,
            f0_1,
            f0_2,
        })
    }

    pub fn with_choice(
        regime: RegimeKind,
        mu: f64,
        k_traj: KTrajectory,
        choice: V0Choice,
        mode: SourceMode,
    ) -> Result<Self> {
        let k0 = k_traj.k_at(0.0)?;
        let (vh, vo) = initial_transverse(regime, &k0, choice)?;
        Self::new(regime, mu, k_traj, &vh, &vo, mode)
    }

    pub fn regime(&self) -> RegimeKind {
        self.regime
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn mu(&self) -> f64 {
        self.params.mu
    }

    pub fn mode(&self) -> SourceMode {
        self.mode
    }

    pub fn k_traj(&self) -> &KTrajectory {
        &self.k_traj
    }

    /// Largest physical time covered by the k trajectory.
    pub fn time_horizon(&self) -> f64 {
        self.k_traj.horizon() / self.params.mu
    }

    /// Initial velocity `v⁰ = √μ v_half⁰ + μ v_one⁰`.
    pub fn initial_v(&self) -> Result<ScalarField> {
        let s = self.params.mu.sqrt();
        self.v_half0
            .scaled(s)
            .axpy(self.params.mu, &self.v_one0)
            .to_field_checked()
    }

    pub fn f0_fields(&self) -> Result<BTreeMap<String, ScalarField>> {
        let mut m = BTreeMap::new();
        m.insert("F0".to_string(), self.v_stat.to_field_checked()?);
        m.insert("F0_1".to_string(), self.f0_1.to_field_checked()?);
        m.insert("F0_2".to_string(), self.f0_2.to_field_checked()?);
        Ok(m)
    }

    fn sources(&self, tau: f64) -> Result<Sources> {
        let g = *self.k_traj.grid();
        let fl = self.flags;
        let k = self.k_traj.k_hat(tau)?;
        let kt = self.k_traj.dk_hat(&k);
        // D⁻¹(b∂y² + 2ab∂y + a)
        let lin_minus = |s: &Spectrum| -> Spectrum {
            if !fl.needs_zero_mean() {
                return Spectrum::zeros(g);
            }
            let mut x = s.scaled(fl.a);
            x.add_assign_scaled(2.0 * fl.a * fl.b, &s.dy());
            x.add_assign_scaled(fl.b, &s.dy().dy());
            x.antideriv_x(1)
        };
        // ½∂ξ(k²) − ⅓∂ξ³k + D⁻¹(…)k, nonlinearity dealiased as in the model
        let sm = scalar::nonlinear_spectrum(&k)
            .scaled(-2.0 / 3.0)
            .axpy(-1.0 / 3.0, &k.deriv(Axis::X, 3, 1.0))
            .axpy(1.0, &lin_minus(&k));
        let mut kk_t = Spectrum::product(&k, &kt).dx();
        kk_t.dealias_in_place();
        let dsm = kk_t
            .axpy(-1.0 / 3.0, &kt.deriv(Axis::X, 3, 1.0))
            .axpy(1.0, &lin_minus(&kt));
        let (sp, dsp) = match self.mode {
            SourceMode::Reduced => (Spectrum::zeros(g), Spectrum::zeros(g)),
            SourceMode::Full => {
                let sp = kt
                    .axpy(-1.0, &scalar::tau_derivative_spectrum(self.model, &k))
                    .scaled(2.0);
                let ktt = self.k_traj.d2k_hat(&k, &kt);
                let dsp = ktt
                    .axpy(
                        -1.0,
                        &scalar::tau_second_derivative_spectrum(self.model, &k, &kt),
                    )
                    .scaled(2.0);
                (sp, dsp)
            }
        };
        Ok(Sources {
            k,
            kt,
            sp,
            sm,
            dsp,
            dsm,
        })
    }

    fn transport_from(&self, src: &Sources, t: f64, tau: f64) -> TransportSample {
        let g = *self.k_traj.grid();
        let mut wp = Spectrum::zeros(g);
        let mut wm = Spectrum::zeros(g);
        let mut dwp = Spectrum::zeros(g);
        let mut dwm = Spectrum::zeros(g);
        let mut twp = Spectrum::zeros(g);
        let mut twm = Spectrum::zeros(g);
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                let i = iy * g.nx + ix;
                let kx = g.kx(ix);
                let ik = Complex64::new(0.0, kx);
                let back = Complex64::from_polar(1.0, -kx * t);
                let fwd = back.conj();
                let (sp, sm) = (src.sp.coeffs()[i], src.sm.coeffs()[i]);
                let (f1, f2) = (self.f0_1.coeffs()[i], self.f0_2.coeffs()[i]);
                let gm2 = duhamel_weight(-2.0 * kx, t);
                let p = -sp * back * t - f1 * back * duhamel_weight(kx, t);
                let m = -sm * fwd * gm2 - f2 * fwd * duhamel_weight(-kx, t);
                wp.coeffs_mut()[i] = p;
                wm.coeffs_mut()[i] = m;
                dwp.coeffs_mut()[i] = -ik * p - sp * back - f1;
                dwm.coeffs_mut()[i] = ik * m - sm * back - f2;
                twp.coeffs_mut()[i] = -src.dsp.coeffs()[i] * back * t;
                twm.coeffs_mut()[i] = -src.dsm.coeffs()[i] * fwd * gm2;
            }
        }
        TransportSample {
            t,
            tau,
            w_plus: wp,
            w_minus: wm,
            dt_w_plus: dwp,
            dt_w_minus: dwm,
            dtau_w_plus: twp,
            dtau_w_minus: twm,
        }
    }

    /// `w±(t, ·, τ)` with τ treated as independent of t.
    pub fn transport(&self, t: f64, tau: f64) -> Result<TransportSample> {
        let src = self.sources(tau)?;
        Ok(self.transport_from(&src, t, tau))
    }

    /// `(v_half, v_one)` and their partial derivatives in t and τ.
    fn transverse(&self, kt_trav: &Spectrum, kt_tau: &Spectrum) -> Result<[Spectrum; 6]> {
        let fl = self.flags;
        let scale = coeff_norm(kt_trav) + coeff_norm(&self.k0);
        let diff = kt_trav.axpy(-1.0, &self.k0);
        let mut out: Vec<Spectrum> = Vec::with_capacity(6);
        for (v0, a, b) in [
            (&self.v_half0, fl.a, fl.b),
            (&self.v_one0, fl.ao(), fl.bo()),
        ] {
            if a == 0.0 && b == 0.0 {
                let z = Spectrum::zeros(*v0.grid());
                out.extend([v0.clone(), z.clone(), z]);
                continue;
            }
            let c = comb(&diff, a, b);
            check_range(&c, scale)?;
            out.push(v0.axpy(1.0, &c.antideriv_x(1)));
            // ∂t D⁻¹X(x−t) = −D⁻¹∂ξX
            out.push(comb(kt_trav, a, b).dx().antideriv_x(1).scaled(-1.0));
            out.push(comb(kt_tau, a, b).antideriv_x(1));
        }
        Ok(out.try_into().expect("six spectra"))
    }

    /// Correctors at physical time `t` (slow time μt).
    pub fn correctors(&self, t: f64) -> Result<CorrectorSet> {
        let tau = self.params.mu * t;
        let src = self.sources(tau)?;
        let tr = self.transport_from(&src, t, tau);
        let big_k = src.k.shifted_x(t);
        let [vh, _, _, vo, _, _] = self.transverse(&big_k, &src.kt.shifted_x(t))?;
        let zeta1 = tr.w_plus.axpy(1.0, &tr.w_minus).scaled(0.5);
        let u1 = tr.w_plus.axpy(-1.0, &tr.w_minus).scaled(0.5);
        Ok(CorrectorSet {
            t,
            tau,
            v_half: vh.to_field_checked()?,
            v_one: vo.to_field_checked()?,
            w_plus: tr.w_plus.to_field_checked()?,
            w_minus: tr.w_minus.to_field_checked()?,
            zeta1: zeta1.to_field_checked()?,
            u1: u1.to_field_checked()?,
            f0_fields: self.f0_fields()?,
        })
    }

    /// Leading-order state `ζ = u = k(x−t, y, μt)`, `v = 0`.
    pub fn leading_order_state(&self, t: f64) -> Result<BoussinesqState> {
        leading_order_state(&self.k_traj, t, self.params.mu)
    }

    /// The assembled approximation `(ζ_app, u_app, v_app)`.
    pub fn approximate_state(&self, t: f64) -> Result<BoussinesqState> {
        let e = self.evaluate(t)?;
        let mu = self.params.mu;
        let s = mu.sqrt();
        let zeta = e.k.axpy(mu, &e.z1).to_field_checked()?;
        let u = e.k.axpy(mu, &e.u1).to_field_checked()?;
        let v = e.vh.scaled(s).axpy(mu, &e.vo).to_field_checked()?;
        BoussinesqState::new(zeta, VectorField2::new(u, v)?, t)
    }

    fn evaluate(&self, t: f64) -> Result<Evaluated> {
        let tau = self.params.mu * t;
        let src = self.sources(tau)?;
        let tr = self.transport_from(&src, t, tau);
        let k = src.k.shifted_x(t);
        let kt = src.kt.shifted_x(t);
        let [vh, vh_t, vh_tau, vo, vo_t, vo_tau] = self.transverse(&k, &kt)?;
        let half = |a: &Spectrum, b: &Spectrum, sign: f64| a.axpy(sign, b).scaled(0.5);
        Ok(Evaluated {
            z1: half(&tr.w_plus, &tr.w_minus, 1.0),
            u1: half(&tr.w_plus, &tr.w_minus, -1.0),
            z1_t: half(&tr.dt_w_plus, &tr.dt_w_minus, 1.0),
            u1_t: half(&tr.dt_w_plus, &tr.dt_w_minus, -1.0),
            z1_tau: half(&tr.dtau_w_plus, &tr.dtau_w_minus, 1.0),
            u1_tau: half(&tr.dtau_w_plus, &tr.dtau_w_minus, -1.0),
            k,
            kt,
            vh,
            vh_t,
            vh_tau,
            vo,
            vo_t,
            vo_tau,
        })
    }

    /// Residuals split by order at physical time `t`.
    pub fn residuals(&self, t: f64) -> Result<ResidualSample> {
        let e = self.evaluate(t)?;
        let p = &self.params;
        let fl = self.flags;
        let g = *self.k_traj.grid();
        let (mu, gm, rot) = (p.mu, p.gamma, p.rot);
        let s = mu.sqrt();
        let n = g.len();
        let re = |x: &Spectrum| x.real_values();
        let field = |v: Vec<f64>| ScalarField::new(g, v);

        let k = re(&e.k);
        let kx = re(&e.k.dx());
        let ky = re(&e.k.dy());
        let kt = re(&e.kt);
        let kxxx = re(&e.k.deriv(Axis::X, 3, 1.0));
        let (z1, u1) = (re(&e.z1), re(&e.u1));
        let (z1_t, u1_t) = (re(&e.z1_t), re(&e.u1_t));
        let (z1_tau, u1_tau) = (re(&e.z1_tau), re(&e.u1_tau));
        let (u1x, u1y, z1x, z1y) = (
            re(&e.u1.dx()),
            re(&e.u1.dy()),
            re(&e.z1.dx()),
            re(&e.z1.dy()),
        );
        let (vh, vh_t, vh_tau) = (re(&e.vh), re(&e.vh_t), re(&e.vh_tau));
        let (vo, vo_t, vo_tau) = (re(&e.vo), re(&e.vo_t), re(&e.vo_tau));
        let vhy = re(&e.vh.dy());

        // approximate solution and its total time derivatives
        let za: Vec<f64> = (0..n).map(|i| k[i] + mu * z1[i]).collect();
        let ua: Vec<f64> = (0..n).map(|i| k[i] + mu * u1[i]).collect();
        let va: Vec<f64> = (0..n).map(|i| s * vh[i] + mu * vo[i]).collect();
        let dza: Vec<f64> = (0..n)
            .map(|i| -kx[i] + mu * kt[i] + mu * z1_t[i] + mu * mu * z1_tau[i])
            .collect();
        let dua: Vec<f64> = (0..n)
            .map(|i| -kx[i] + mu * (kt[i] + u1_t[i]) + mu * mu * u1_tau[i])
            .collect();
        let dva: Vec<f64> = (0..n)
            .map(|i| s * vh_t[i] + mu * vo_t[i] + s * mu * vh_tau[i] + mu * mu * vo_tau[i])
            .collect();

        // targeted residuals
        let kk_x = re(&Spectrum::product(&e.k, &e.k).dx());
        let r1_one: Vec<f64> = (0..n)
            .map(|i| z1_t[i] + u1x[i] + kt[i] + kk_x[i] + fl.b * vhy[i])
            .collect();
        let r2_half_y: Vec<f64> = (0..n)
            .map(|i| vh_t[i] + fl.b * ky[i] + fl.a * k[i])
            .collect();
        let r2_one_x: Vec<f64> = (0..n)
            .map(|i| u1_t[i] + z1x[i] + kt[i] + kxxx[i] / 3.0 + k[i] * kx[i] - fl.a * vh[i])
            .collect();
        let r2_one_y: Vec<f64> = (0..n)
            .map(|i| vo_t[i] + fl.bo() * ky[i] + fl.ao() * k[i])
            .collect();
        // the same with the quadratic terms projected on the retained band,
        // which is the sense in which the spectral scalar solver is exact
        let kk_x_g = re(&Spectrum::product(&e.k, &e.k).dx().dealiased());
        let kkx_g = re(&Spectrum::product(&e.k, &e.k.dx()).dealiased());
        let r1_one_g: Vec<f64> = (0..n).map(|i| r1_one[i] - kk_x[i] + kk_x_g[i]).collect();
        let r2_one_x_g: Vec<f64> = (0..n)
            .map(|i| r2_one_x[i] - k[i] * kx[i] + kkx_g[i])
            .collect();

        // remainders, first equation
        let prod1: Vec<f64> = (0..n)
            .map(|i| k[i] * u1[i] + z1[i] * k[i] + mu * z1[i] * u1[i])
            .collect();
        let prod1_x = re(&Spectrum::from_real(g, &prod1).dx());
        let zv: Vec<f64> = (0..n).map(|i| za[i] * va[i]).collect();
        let zv_y = re(&Spectrum::from_real(g, &zv).dy());
        let voy = re(&e.vo.dy());
        let rem1: Vec<f64> = (0..n)
            .map(|i| {
                mu * mu * (z1_tau[i] + prod1_x[i])
                    + (gm * s - fl.b * mu) * vhy[i]
                    + gm * mu * voy[i]
                    + gm * mu * zv_y[i]
            })
            .collect();

        // remainders, second equation
        let dua_hi: Vec<f64> = (0..n)
            .map(|i| mu * (kt[i] + u1_t[i]) + mu * mu * u1_tau[i])
            .collect();
        let dua_hi_s = Spectrum::from_real(g, &dua_hi);
        let dua_s = Spectrum::from_real(g, &dua);
        let dva_s = Spectrum::from_real(g, &dva);
        let ell_x = re(&dua_hi_s.dx().axpy(gm, &dva_s.dy()).dx());
        let ell_y = re(&dua_s.dx().axpy(gm, &dva_s.dy()).dy());
        let (vax, vay) = {
            let vs = Spectrum::from_real(g, &va);
            (re(&vs.dx()), re(&vs.dy()))
        };
        let rem2x: Vec<f64> = (0..n)
            .map(|i| {
                mu * mu * u1_tau[i] - mu / 3.0 * ell_x[i]
                    + mu * mu * (k[i] * u1x[i] + u1[i] * kx[i])
                    + mu * mu * mu * u1[i] * u1x[i]
                    + mu * gm * va[i] * (ky[i] + mu * u1y[i])
                    - (rot * s - fl.a * mu) * vh[i]
                    - rot * mu * vo[i]
            })
            .collect();
        let rem2y: Vec<f64> = (0..n)
            .map(|i| {
                s * mu * vh_tau[i] + mu * mu * vo_tau[i] - mu / 3.0 * gm * ell_y[i]
                    + gm * mu * z1y[i]
                    + mu * (ua[i] * vax[i] + gm * va[i] * vay[i])
                    + rot * mu * u1[i]
            })
            .collect();

        // full residual of the assembled approximation
        let (full1, full2) = residual(
            &field(za)?,
            &VectorField2::new(field(ua)?, field(va)?)?,
            &field(dza)?,
            &VectorField2::new(field(dua)?, field(dva)?)?,
            p,
        )?;
        let mut rec1: f64 = 0.0;
        let mut rec2: f64 = 0.0;
        for i in 0..n {
            rec1 = rec1.max((full1.values()[i] - (mu * r1_one[i] + rem1[i])).abs());
            rec2 = rec2.max((full2.u.values()[i] - (mu * r2_one_x[i] + rem2x[i])).abs());
            rec2 = rec2.max(
                (full2.v.values()[i] - (s * r2_half_y[i] + mu * r2_one_y[i] + rem2y[i])).abs(),
            );
        }

        let p1 = if self.regime == RegimeKind::KP || self.regime == RegimeKind::Ostrovsky {
            1.5
        } else {
            2.0
        };
        let n1 = mu.powf(p1);
        let n2 = mu.powf(1.5);
        let sc =
            |v: &[f64], c: f64| -> Result<ScalarField> { field(v.iter().map(|x| x / c).collect()) };
        let zero = ScalarField::zeros(g);
        Ok(ResidualSample {
            t,
            tau: mu * t,
            r1_one: NormPair::of(&[&field(r1_one_g)?]),
            r2_half: NormPair::of(&[&zero, &field(r2_half_y.clone())?]),
            r2_one: NormPair::of(&[&field(r2_one_x_g)?, &field(r2_one_y.clone())?]),
            r1_one_collocation: NormPair::of(&[&field(r1_one.clone())?]),
            r2_one_collocation: NormPair::of(&[
                &field(r2_one_x.clone())?,
                &field(r2_one_y.clone())?,
            ]),
            r1_rem: NormPair::of(&[&sc(&rem1, n1)?]),
            r2_rem: NormPair::of(&[&sc(&rem2x, n2)?, &sc(&rem2y, n2)?]),
            full_eq1: NormPair::of(&[&full1]),
            full_eq2: NormPair::of(&[&full2.u, &full2.v]),
            reconstruction_eq1: rec1,
            reconstruction_eq2: rec2,
        })
    }
}

struct Evaluated {
    k: Spectrum,
    kt: Spectrum,
    z1: Spectrum,
    u1: Spectrum,
    z1_t: Spectrum,
    u1_t: Spectrum,
    z1_tau: Spectrum,
    u1_tau: Spectrum,
    vh: Spectrum,
    vh_t: Spectrum,
    vh_tau: Spectrum,
    vo: Spectrum,
    vo_t: Spectrum,
    vo_tau: Spectrum,
}

/// `(L², L∞)` of a scalar or of the components of a vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct NormPair {
    pub l2: f64,
    pub linf: f64,
}

impl NormPair {
    fn of(parts: &[&ScalarField]) -> Self {
        Self {
            l2: parts.iter().map(|f| l2_norm(f).powi(2)).sum::<f64>().sqrt(),
            linf: parts.iter().map(|f| linf_norm(f)).fold(0.0, f64::max),
        }
    }
}

/// Residuals at one time.
///
/// `r1_one` and `r2_one` project their quadratic terms on the dealiased band;
/// the `_collocation` variants do not, and are the ones that add up with the
/// remainders to the full residual. `r1_rem` and `r2_rem` are normalized by
/// the power of μ at which they enter; `reconstruction_*` compare the full
/// residual with the sum of its split parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualSample {
    pub t: f64,
    pub tau: f64,
    pub r1_one: NormPair,
    pub r2_half: NormPair,
    pub r2_one: NormPair,
    /// `R¹₍₁₎` and `R²₍₁₎` with plain collocation products.
    pub r1_one_collocation: NormPair,
    pub r2_one_collocation: NormPair,
    pub r1_rem: NormPair,
    pub r2_rem: NormPair,
    pub full_eq1: NormPair,
    pub full_eq2: NormPair,
    pub reconstruction_eq1: f64,
    pub reconstruction_eq2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub regime: String,
    pub mu: f64,
    pub source_mode: SourceMode,
    pub k_model: Option<String>,
    pub k0_linf: f64,
    pub samples: Vec<ResidualSample>,
}

impl ResidualReport {
    /// Largest L∞ over samples of the three targeted residuals.
    pub fn max_targeted_linf(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.r1_one.linf.max(s.r2_half.linf).max(s.r2_one.linf))
            .fold(0.0, f64::max)
    }

    pub fn max_r2_one_linf(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.r2_one.linf)
            .fold(0.0, f64::max)
    }

    pub fn max_reconstruction_error(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.reconstruction_eq1.max(s.reconstruction_eq2))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// Transverse correctors at `(t, τ)` from explicit initial data.
pub fn correctors_transverse(
    regime: RegimeKind,
    k_traj: &KTrajectory,
    k0: &ScalarField,
    v_half0: &ScalarField,
    v_one0: &ScalarField,
    t: f64,
    tau: f64,
) -> Result<(ScalarField, ScalarField)> {
    let fl = Flags::of(regime)?;
    let k = k_traj.k_hat(tau)?.shifted_x(t);
    let k0s = k0.to_spectrum();
    let scale = coeff_norm(&k) + coeff_norm(&k0s);
    let diff = k.axpy(-1.0, &k0s);
    let build = |v0: &ScalarField, a: f64, b: f64| -> Result<ScalarField> {
        if a == 0.0 && b == 0.0 {
            return Ok(v0.clone());
        }
        let c = comb(&diff, a, b);
        check_range(&c, scale)?;
        let mut f = v0
            .to_spectrum()
            .axpy(1.0, &c.antideriv_x(1))
            .to_field_checked()?;
        f.set_zero_x_mean(v0.is_zero_x_mean());
        Ok(f)
    };
    Ok((
        build(v_half0, fl.a, fl.b)?,
        build(v_one0, fl.ao(), fl.bo())?,
    ))
}

/// `w±` at the physical times `times`, with `τ = μt`.
pub fn solve_corrector_transport(
    setup: &AnsatzSetup,
    times: &[f64],
) -> Result<Vec<TransportSample>> {
    times
        .iter()
        .map(|&t| setup.transport(t, setup.mu() * t))
        .collect()
}

/// Residuals of the assembled ansatz at `times`.
pub fn residual_eval(setup: &AnsatzSetup, times: &[f64]) -> Result<ResidualReport> {
    let k0 = setup.k_traj.k_at(0.0)?;
    Ok(ResidualReport {
        regime: setup.regime.name().to_string(),
        mu: setup.mu(),
        source_mode: setup.mode,
        k_model: setup.k_traj.model().map(|m| m.name().to_string()),
        k0_linf: linf_norm(&k0),
        samples: times
            .iter()
            .map(|&t| setup.residuals(t))
            .collect::<Result<Vec<_>>>()?,
    })
}

/// `ζ = u = k(x−t, y, μt)`, `v = 0`.
pub fn leading_order_state(k_traj: &KTrajectory, t: f64, mu: f64) -> Result<BoussinesqState> {
    let k = k_traj.k_hat(mu * t)?.shifted_x(t).to_field_checked()?;
    BoussinesqState::new(
        k.clone(),
        VectorField2::new(k, ScalarField::zeros(*k_traj.grid()))?,
        t,
    )
}

/// Output of [`transport_growth_probe`].
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub c1: f64,
    pub c2: f64,
    pub times: Vec<f64>,
    pub h2_norm: Vec<f64>,
    /// `h2_norm / t` (0 at t = 0).
    pub ratio: Vec<f64>,
    /// Line fit of `h2_norm` against `t` over the second half of the run.
    pub fit: Option<LineFit>,
    /// `sup_t h2_norm(t)·(1+t)/t / |K₂|_{H³}` when `k2 = ∂x K₂` is nonzero.
    pub bound_constant: Option<f64>,
}

impl GrowthReport {
    /// Supremum of the H² norm over `t ≤ t_max`.
    pub fn sup_until(&self, t_max: f64) -> f64 {
        self.times
            .iter()
            .zip(&self.h2_norm)
            .filter(|(t, _)| **t <= t_max + 1e-12)
            .map(|(_, h)| *h)
            .fold(0.0, f64::max)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "t,h2_norm,ratio")?;
        for i in 0..self.times.len() {
            writeln!(f, "{},{},{}", self.times[i], self.h2_norm[i], self.ratio[i])?;
        }
        Ok(())
    }
}

/// Solve `(∂t + c1∂x)k = k1(x−c1t, y) + k2(x−c2t, y)`, `k(0) = 0`, exactly
/// and sample `|k(t)|_{H²}` at `samples + 1` equispaced times in `[0, t_end]`.
pub fn transport_growth_probe(
    c1: f64,
    c2: f64,
    k1: &ScalarField,
    k2: &ScalarField,
    t_end: f64,
    samples: usize,
) -> Result<GrowthReport> {
    if c1 == c2 {
        return Err(Error::InvalidParameter("the two speeds must differ".into()));
    }
    if !(t_end > 0.0) || samples == 0 {
        return Err(Error::InvalidParameter(
            "need t_end > 0 and samples >= 1".into(),
        ));
    }
    let g = *k1.grid();
    g.check_same(k2.grid())?;
    let s1 = k1.to_spectrum();
    let s2 = k2.to_spectrum();
    check_range(&s2, coeff_norm(&s2))?;
    let mut times = Vec::with_capacity(samples + 1);
    let mut h2 = Vec::with_capacity(samples + 1);
    let mut ratio = Vec::with_capacity(samples + 1);
    for j in 0..=samples {
        let t = t_end * j as f64 / samples as f64;
        let mut w = Spectrum::zeros(g);
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                let i = iy * g.nx + ix;
                let kx = g.kx(ix);
                let back = Complex64::from_polar(1.0, -kx * c1 * t);
                w.coeffs_mut()[i] = back
                    * (s1.coeffs()[i] * t + s2.coeffs()[i] * duhamel_weight(kx * (c1 - c2), t));
            }
        }
        let h = hs_norm_spectrum(&w, 2);
        times.push(t);
        h2.push(h);
        ratio.push(if t > 0.0 { h / t } else { 0.0 });
    }
    let half = times.len() / 2;
    let fit = fit_line(&times[half..], &h2[half..]);
    let big_k2 = hs_norm_spectrum(&s2.antideriv_x(1), 3);
    let bound_constant = if big_k2 > 0.0 {
        Some(
            times
                .iter()
                .zip(&h2)
                .filter(|(t, _)| **t > 0.0)
                .map(|(t, h)| h * (1.0 + t) / t / big_k2)
                .fold(0.0, f64::max),
        )
    } else {
        None
    };
    Ok(GrowthReport {
        c1,
        c2,
        times,
        h2_norm: h2,
        ratio,
        fit,
        bound_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(64, 64, 16.0 * PI, 16.0 * PI).unwrap()
    }

    fn gauss_dx(g: Grid, amp: f64, sigma: f64) -> ScalarField {
        let (cx, cy) = (g.lx / 2.0, g.ly / 2.0);
        ScalarField::from_fn(g, |x, y| {
            let (dx, dy) = (x - cx, y - cy);
            -amp * dx / (sigma * sigma) * (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp()
        })
        .unwrap()
    }

    #[test]
    fn duhamel_weight_matches_integral() {
        for &(d, t) in &[(0.0, 2.0), (0.3, 1.7), (-2.0, 0.01), (1e-9, 5.0)] {
            let w = duhamel_weight(d, t);
            // midpoint quadrature
            let n = 20000;
            let h = t / n as f64;
            let mut acc = Complex64::default();
            for j in 0..n {
                acc += Complex64::from_polar(1.0, d * (j as f64 + 0.5) * h) * h;
            }
            assert!((w - acc).norm() < 1e-7, "{d} {t}");
        }
    }

    #[test]
    fn zero_everything_gives_zero_residuals() {
        let g = grid();
        let kt = KTrajectory::frozen(&ScalarField::zeros(g));
        let setup =
            AnsatzSetup::with_choice(RegimeKind::RKP, 0.04, kt, V0Choice::Zero, SourceMode::Full)
                .unwrap();
        let r = residual_eval(&setup, &[0.0, 1.0, 3.0]).unwrap();
        for s in &r.samples {
            for p in [s.r1_one, s.r2_half, s.r2_one, s.r1_rem, s.r2_rem] {
                assert_eq!(p.linf, 0.0);
            }
        }
    }

    #[test]
    fn correctors_at_time_zero_equal_initial_data() {
        let g = grid();
        let k0 = gauss_dx(g, 1.0, 3.0);
        let vh0 = ScalarField::from_fn(g, |x, y| 0.1 * (x / 8.0).sin() * (y / 8.0).cos()).unwrap();
        let vo0 = ScalarField::from_fn(g, |x, _| 0.2 * (x / 8.0).cos()).unwrap();
        let traj = KTrajectory::frozen(&k0);
        for regime in RegimeKind::LONG_WAVE {
            let (vh, vo) = correctors_transverse(regime, &traj, &k0, &vh0, &vo0, 0.0, 0.0).unwrap();
            assert!(vh.sub(&vh0).unwrap().max_abs() < 1e-12);
            assert!(vo.sub(&vo0).unwrap().max_abs() < 1e-12);
        }
        let setup =
            AnsatzSetup::new(RegimeKind::KP, 0.04, traj, &vh0, &vo0, SourceMode::Full).unwrap();
        let c = setup.correctors(0.0).unwrap();
        assert_eq!(c.w_plus.max_abs(), 0.0);
        assert_eq!(c.w_minus.max_abs(), 0.0);
    }

    #[test]
    fn frozen_k_transverse_shift_oracle() {
        // KP: v_one(t) − v_one0 = D⁻¹k(x−t) − D⁻¹k⁰(x)
        let g = grid();
        let k0 = gauss_dx(g, 1.0, 3.0);
        let traj = KTrajectory::frozen(&k0);
        let z = ScalarField::zeros(g);
        let t = 2.5;
        let (_, vo) = correctors_transverse(RegimeKind::KP, &traj, &k0, &z, &z, t, 0.0).unwrap();
        // D⁻¹ of ∂x G is G
        let (cx, cy) = (g.lx / 2.0, g.ly / 2.0);
        let gauss = |x: f64, y: f64| {
            let (dx, dy) = (x - cx, y - cy);
            (-(dx * dx + dy * dy) / 18.0).exp()
        };
        let expect = ScalarField::from_fn(g, |x, y| gauss(x - t, y) - gauss(x, y)).unwrap();
        assert!(vo.sub(&expect).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn transport_satisfies_its_equations() {
        let g = grid();
        let k0 = gauss_dx(g, 1.0, 3.0);
        let traj = KTrajectory::frozen(&k0);
        let setup = AnsatzSetup::with_choice(
            RegimeKind::RKP,
            0.04,
            traj,
            V0Choice::Zero,
            SourceMode::Full,
        )
        .unwrap();
        let (t, tau, h) = (3.0, 0.0, 1e-3);
        let w = |t: f64| setup.transport(t, tau).unwrap();
        let c = w(t);
        let fd = |f: &dyn Fn(&TransportSample) -> Spectrum| {
            let (a, b, cc, d) = (w(t - 2.0 * h), w(t - h), w(t + h), w(t + 2.0 * h));
            f(&a)
                .axpy(-8.0, &f(&b))
                .axpy(8.0, &f(&cc))
                .axpy(-1.0, &f(&d))
                .scaled(1.0 / (12.0 * h))
        };
        let dp = fd(&|s| s.w_plus.clone());
        let dm = fd(&|s| s.w_minus.clone());
        assert!(dp.axpy(-1.0, &c.dt_w_plus).to_field().max_abs() < 1e-8);
        assert!(dm.axpy(-1.0, &c.dt_w_minus).to_field().max_abs() < 1e-8);
    }

    #[test]
    fn growth_probe_branches() {
        let g = grid();
        let z = ScalarField::zeros(g);
        let r = transport_growth_probe(1.0, -1.0, &z, &z, 10.0, 10).unwrap();
        assert!(r.h2_norm.iter().all(|h| *h == 0.0));
        assert!(transport_growth_probe(1.0, 1.0, &z, &z, 10.0, 10).is_err());
        let k1 = ScalarField::from_fn(g, |x, y| {
            (-((x - 25.0).powi(2) + (y - 25.0).powi(2)) / 8.0).exp()
        })
        .unwrap();
        let r = transport_growth_probe(1.0, -1.0, &k1, &z, 20.0, 40).unwrap();
        let f = r.fit.unwrap();
        assert!(f.slope > 0.0 && f.r2 > 0.99);
    }

    #[test]
    fn hermite_interpolation_hits_samples() {
        let g = grid();
        let k0 = gauss_dx(g, 0.5, 3.0);
        let traj = KTrajectory::generate(&k0, ScalarModelKind::KP, 0.2, 0.01, 5).unwrap();
        let taus = traj.sample_taus().to_vec();
        assert_eq!(taus.len(), 5);
        let a = traj.k_at(taus[2]).unwrap();
        assert_eq!(a.values(), traj.values[2].to_field().values());
        assert!(traj.k_at(0.3).is_err());
        assert!(traj.k_at(0.13).is_ok());
    }
}
