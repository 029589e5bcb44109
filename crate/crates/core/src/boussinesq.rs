//! The Boussinesq-Coriolis system
//!
//! ```text
//! ∂t ζ + ∇^γ·((1+εζ) V) = 0
//! (1 − μ/3 ∇^γ∇^γ·) ∂t V + ∇^γ ζ + ε (V·∇^γ) V + rot V⊥ = 0,   V⊥ = (−v, u)
//! ```
//!
//! The linearization (ε = 0) is advanced exactly per Fourier mode. With
//! `κ = (kx, γ ky)` and `M = I + (μ/3)κκᵀ` the linear generator is
//!
//! ```text
//! A = [ 0        −iκᵀ       ]
//!     [ −iM⁻¹κ   −rot M⁻¹J  ]
//! ```
//!
//! which becomes skew-Hermitian after conjugation by `S = diag(1, M)`. Its
//! exponential and the ETDRK4 φ-matrices are assembled from the eigenvectors
//! of the Hermitian matrix `i S^{1/2} A S^{-1/2}`.

use crate::error::{Error, Result};
use crate::etd::Etdrk4Coeffs;
use crate::spectral::ops::{apply_elliptic_spectra, invert_elliptic_spectra};
use crate::spectral::{l2_norm, linf_norm, Axis, Grid, ScalarField, Spectrum, VectorField2};
use nalgebra::{Matrix3, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

pub const DEFAULT_H_MIN: f64 = 0.25;

/// Dimensionless parameters. `rot` is ε/Ro.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: f64,
    pub eps: f64,
    pub gamma: f64,
    pub rot: f64,
    pub h_min: f64,
}

impl ModelParams {
    pub fn new(mu: f64, eps: f64, gamma: f64, rot: f64) -> Result<Self> {
        let p = Self {
            mu,
            eps,
            gamma,
            rot,
            h_min: DEFAULT_H_MIN,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_h_min(mut self, h_min: f64) -> Result<Self> {
        self.h_min = h_min;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if ![self.mu, self.eps, self.gamma, self.rot, self.h_min]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::NonFinite("model parameters"));
        }
        if self.mu < 0.0 {
            return bad("mu must be >= 0");
        }
        if self.eps < 0.0 {
            return bad("eps must be >= 0");
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return bad("gamma must lie in (0, 1]");
        }
        if self.rot < 0.0 {
            return bad("rot must be >= 0");
        }
        if self.h_min <= 0.0 {
            return bad("h_min must be > 0");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoussinesqState {
    pub zeta: ScalarField,
    pub vbar: VectorField2,
    pub time: f64,
}

impl BoussinesqState {
    pub fn new(zeta: ScalarField, vbar: VectorField2, time: f64) -> Result<Self> {
        zeta.grid().check_same(vbar.grid())?;
        Ok(Self { zeta, vbar, time })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            zeta: ScalarField::zeros(grid),
            vbar: VectorField2::zeros(grid),
            time: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.zeta.grid()
    }

    fn spectra(&self) -> [Spectrum; 3] {
        [
            self.zeta.to_spectrum(),
            self.vbar.u.to_spectrum(),
            self.vbar.v.to_spectrum(),
        ]
    }

    fn from_spectra(s: &[Spectrum; 3], time: f64) -> Result<Self> {
        Ok(Self {
            zeta: s[0].to_field_checked()?,
            vbar: VectorField2::new(s[1].to_field_checked()?, s[2].to_field_checked()?)?,
            time,
        })
    }
}

fn check_cavitation(zeta: &[f64], grid: &Grid, params: &ModelParams) -> Result<()> {
    for (i, z) in zeta.iter().enumerate() {
        let depth = 1.0 + params.eps * z;
        if !(depth >= params.h_min) {
            return Err(Error::Cavitation {
                ix: i % grid.nx,
                iy: i / grid.nx,
                depth,
                h_min: params.h_min,
            });
        }
    }
    Ok(())
}

/// Domain integral of ζ.
pub fn mass(state: &BoussinesqState) -> f64 {
    state.zeta.integral()
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Nonlinear part `(−ε∇^γ·(ζV), −εM⁻¹(V·∇^γ)V)`, dealiased. Also returns
/// the nodal ζ so callers can check non-cavitation.
fn nonlinear_spectra(s: &[Spectrum; 3], params: &ModelParams) -> ([Spectrum; 3], Vec<f64>) {
    let g = *s[0].grid();
    let zeta = s[0].real_values();
    if params.eps == 0.0 {
        return (
            [Spectrum::zeros(g), Spectrum::zeros(g), Spectrum::zeros(g)],
            zeta,
        );
    }
    let gm = params.gamma;
    let u = s[1].real_values();
    let v = s[2].real_values();
    let ux = s[1].dx().real_values();
    let uy = s[1].deriv(Axis::Y, 1, gm).real_values();
    let vx = s[2].dx().real_values();
    let vy = s[2].deriv(Axis::Y, 1, gm).real_values();

    let fu = Spectrum::from_real(g, &mul(&zeta, &u));
    let fv = Spectrum::from_real(g, &mul(&zeta, &v));
    let mut nz = fu
        .dx()
        .axpy(1.0, &fv.deriv(Axis::Y, 1, gm))
        .scaled(-params.eps);
    nz.dealias_in_place();

    let adv_u: Vec<f64> = (0..g.len()).map(|i| u[i] * ux[i] + v[i] * uy[i]).collect();
    let adv_v: Vec<f64> = (0..g.len()).map(|i| u[i] * vx[i] + v[i] * vy[i]).collect();
    let mut au = Spectrum::from_real(g, &adv_u).scaled(-params.eps);
    let mut av = Spectrum::from_real(g, &adv_v).scaled(-params.eps);
    au.dealias_in_place();
    av.dealias_in_place();
    let (nu, nv) = invert_elliptic_spectra(&au, &av, params.mu, gm);
    ([nz, nu, nv], zeta)
}

fn linear_spectra(s: &[Spectrum; 3], params: &ModelParams) -> [Spectrum; 3] {
    let gm = params.gamma;
    let lz = s[1]
        .dx()
        .axpy(1.0, &s[2].deriv(Axis::Y, 1, gm))
        .scaled(-1.0);
    // −∇ζ − rot V⊥, V⊥ = (−v, u)
    let fu = s[0].dx().scaled(-1.0).axpy(params.rot, &s[2]);
    let fv = s[0]
        .deriv(Axis::Y, 1, gm)
        .scaled(-1.0)
        .axpy(-params.rot, &s[1]);
    let (lu, lv) = invert_elliptic_spectra(&fu, &fv, params.mu, gm);
    [lz, lu, lv]
}

/// `(∂t ζ, ∂t V)` of the full system.
pub fn rhs_boussinesq(
    state: &BoussinesqState,
    params: &ModelParams,
) -> Result<(ScalarField, VectorField2)> {
    let g = *state.grid();
    check_cavitation(state.zeta.values(), &g, params)?;
    let mut s = state.spectra();
    for x in s.iter_mut() {
        x.dealias_in_place();
    }
    let (n, _) = nonlinear_spectra(&s, params);
    let l = linear_spectra(&s, params);
    let dz = l[0].axpy(1.0, &n[0]).to_field_checked()?;
    let du = l[1].axpy(1.0, &n[1]).to_field_checked()?;
    let dv = l[2].axpy(1.0, &n[2]).to_field_checked()?;
    Ok((dz, VectorField2::new(du, dv)?))
}

/// Equation residuals of a candidate solution given its time derivatives:
///
/// ```text
/// r1 = ∂tζ + ∇^γ·((1+εζ)V)
/// r2 = (1 − μ/3 ∇^γ∇^γ·)∂tV + ∇^γζ + ε(V·∇^γ)V + rot V⊥
/// ```
///
/// Products are plain collocation products (no dealiasing).
pub fn residual(
    zeta: &ScalarField,
    vbar: &VectorField2,
    dzeta_dt: &ScalarField,
    dvbar_dt: &VectorField2,
    params: &ModelParams,
) -> Result<(ScalarField, VectorField2)> {
    let g = *zeta.grid();
    g.check_same(vbar.grid())?;
    g.check_same(dzeta_dt.grid())?;
    g.check_same(dvbar_dt.grid())?;
    let gm = params.gamma;
    let z = zeta.values();
    let u = vbar.u.values();
    let v = vbar.v.values();
    let hu: Vec<f64> = (0..g.len())
        .map(|i| (1.0 + params.eps * z[i]) * u[i])
        .collect();
    let hv: Vec<f64> = (0..g.len())
        .map(|i| (1.0 + params.eps * z[i]) * v[i])
        .collect();
    let div = Spectrum::from_real(g, &hu)
        .dx()
        .axpy(1.0, &Spectrum::from_real(g, &hv).deriv(Axis::Y, 1, gm));
    let r1 = dzeta_dt.to_spectrum().axpy(1.0, &div).to_field_checked()?;

    let su = vbar.u.to_spectrum();
    let sv = vbar.v.to_spectrum();
    let ux = su.dx().real_values();
    let uy = su.deriv(Axis::Y, 1, gm).real_values();
    let vx = sv.dx().real_values();
    let vy = sv.deriv(Axis::Y, 1, gm).real_values();
    let zs = zeta.to_spectrum();
    let zx = zs.dx().real_values();
    let zy = zs.deriv(Axis::Y, 1, gm).real_values();
    let (mu_t, mv_t) = apply_elliptic_spectra(
        &dvbar_dt.u.to_spectrum(),
        &dvbar_dt.v.to_spectrum(),
        params.mu,
        gm,
    );
    let mu_t = mu_t.real_values();
    let mv_t = mv_t.real_values();
    let r2u: Vec<f64> = (0..g.len())
        .map(|i| mu_t[i] + zx[i] + params.eps * (u[i] * ux[i] + v[i] * uy[i]) - params.rot * v[i])
        .collect();
    let r2v: Vec<f64> = (0..g.len())
        .map(|i| mv_t[i] + zy[i] + params.eps * (u[i] * vx[i] + v[i] * vy[i]) + params.rot * u[i])
        .collect();
    Ok((
        r1,
        VectorField2::new(ScalarField::new(g, r2u)?, ScalarField::new(g, r2v)?)?,
    ))
}

/// Frequency of the linearized system at `κ = (kx, γky)` without rotation.
pub fn linear_frequency(params: &ModelParams, kx: f64, ky: f64) -> f64 {
    let kk = kx * kx + (params.gamma * ky).powi(2);
    (kk / (1.0 + params.mu * kk / 3.0)).sqrt()
}

/// Largest step allowed by `dt·max|ω| ≤ 1` over the retained modes.
pub fn stability_dt(params: &ModelParams, grid: &Grid) -> f64 {
    let (kx, ky) = grid.dealiased_kmax();
    let w = linear_frequency(params, kx, ky) + params.rot.abs();
    if w == 0.0 {
        f64::INFINITY
    } else {
        1.0 / w
    }
}

type C3 = [[Complex64; 3]; 3];

#[derive(Clone, Copy, Debug)]
struct ModeCoeffs {
    e: C3,
    e2: C3,
    q: C3,
    f1: C3,
    f2: C3,
    f3: C3,
}

#[inline]
fn mv(m: &C3, x: [Complex64; 3]) -> [Complex64; 3] {
    [
        m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
        m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
        m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2],
    ]
}

fn conj3(m: &C3) -> C3 {
    let mut out = *m;
    for row in out.iter_mut() {
        for c in row.iter_mut() {
            *c = c.conj();
        }
    }
    out
}

fn mode_coeffs(kx: f64, kyg: f64, c: f64, rot: f64, h: f64) -> ModeCoeffs {
    let kk = kx * kx + kyg * kyg;
    let kap = [kx, kyg];
    // M^{±1/2} = I + (s^{±1} − 1) κκᵀ/|κ|², s = √(1 + c|κ|²)
    let (mh, mhi) = if kk == 0.0 {
        ([[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]])
    } else {
        let s = (1.0 + c * kk).sqrt();
        let mut a = [[0.0; 2]; 2];
        let mut b = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let p = kap[i] * kap[j] / kk;
                let id = if i == j { 1.0 } else { 0.0 };
                a[i][j] = id + (s - 1.0) * p;
                b[i][j] = id + (1.0 / s - 1.0) * p;
            }
        }
        (a, b)
    };
    let q = [
        mhi[0][0] * kx + mhi[0][1] * kyg,
        mhi[1][0] * kx + mhi[1][1] * kyg,
    ];
    // K = M^{-1/2} J M^{-1/2}, J = [[0, −1], [1, 0]]
    let jm = [[-mhi[1][0], -mhi[1][1]], [mhi[0][0], mhi[0][1]]];
    let mut kmat = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            kmat[i][j] = mhi[i][0] * jm[0][j] + mhi[i][1] * jm[1][j];
        }
    }
    let re = |x: f64| Complex64::new(x, 0.0);
    let mi = |x: f64| Complex64::new(0.0, -rot * x);
    let hmat = Matrix3::new(
        re(0.0),
        re(q[0]),
        re(q[1]),
        re(q[0]),
        mi(kmat[0][0]),
        mi(kmat[0][1]),
        re(q[1]),
        mi(kmat[1][0]),
        mi(kmat[1][1]),
    );
    let eig = SymmetricEigen::new(hmat);
    let per_eig: Vec<Etdrk4Coeffs> = (0..3)
        .map(|j| Etdrk4Coeffs::new(Complex64::new(0.0, -h * eig.eigenvalues[j]), h))
        .collect();
    let qv = eig.eigenvectors;

    // S^{-1/2} Q diag(φ) Q* S^{1/2}
    let assemble = |pick: &dyn Fn(&Etdrk4Coeffs) -> Complex64| -> C3 {
        let mut b = [[Complex64::default(); 3]; 3];
        for (i, row) in b.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let mut acc = Complex64::default();
                for (l, co) in per_eig.iter().enumerate() {
                    acc += qv[(i, l)] * pick(co) * qv[(j, l)].conj();
                }
                *x = acc;
            }
        }
        let mut sinv = [[Complex64::default(); 3]; 3];
        let mut sh = [[Complex64::default(); 3]; 3];
        sinv[0][0] = re(1.0);
        sh[0][0] = re(1.0);
        for i in 0..2 {
            for j in 0..2 {
                sinv[i + 1][j + 1] = re(mhi[i][j]);
                sh[i + 1][j + 1] = re(mh[i][j]);
            }
        }
        let mut tmp = [[Complex64::default(); 3]; 3];
        let mut out = [[Complex64::default(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                tmp[i][j] = (0..3).map(|l| sinv[i][l] * b[l][j]).sum();
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|l| tmp[i][l] * sh[l][j]).sum();
            }
        }
        if kk == 0.0 {
            // ζ decouples exactly at κ = 0; keep the mean untouched by roundoff
            let scalar = pick(&Etdrk4Coeffs::new(Complex64::default(), h));
            out[0] = [scalar, Complex64::default(), Complex64::default()];
            out[1][0] = Complex64::default();
            out[2][0] = Complex64::default();
        }
        out
    };
    ModeCoeffs {
        e: assemble(&|c| c.e),
        e2: assemble(&|c| c.e2),
        q: assemble(&|c| c.q),
        f1: assemble(&|c| c.f1),
        f2: assemble(&|c| c.f2),
        f3: assemble(&|c| c.f3),
    }
}

/// External source in equation form: `(R1, R2)` added to the right-hand
/// sides of the ζ equation and of the (undivided) V equation.
pub type Forcing = Arc<dyn Fn(f64) -> (ScalarField, VectorField2) + Send + Sync>;

/// Exponential ETDRK4 stepper for fixed parameters, grid and step.
#[derive(Clone)]
pub struct BoussinesqStepper {
    params: ModelParams,
    grid: Grid,
    dt: f64,
    coeffs: Vec<ModeCoeffs>,
    forcing: Option<Forcing>,
}

impl std::fmt::Debug for BoussinesqStepper {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoussinesqStepper")
            .field("params", &self.params)
            .field("grid", &self.grid)
            .field("dt", &self.dt)
            .field("forced", &self.forcing.is_some())
            .finish()
    }
}

impl BoussinesqStepper {
    /// `rot` may be negative here: it reverses the sense of rotation, which
    /// together with `V → −V` gives the time-reversed flow.
    pub fn new(params: ModelParams, grid: Grid, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt must be finite and non-zero, got {dt}"
            )));
        }
        let mut check = params;
        check.rot = check.rot.abs();
        check.validate()?;
        let c = params.mu / 3.0;
        let mut coeffs: Vec<Option<ModeCoeffs>> = vec![None; grid.len()];
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                let i = iy * grid.nx + ix;
                if coeffs[i].is_some() {
                    continue;
                }
                let mc = mode_coeffs(grid.kx(ix), params.gamma * grid.ky(iy), c, params.rot, dt);
                let (cx, cy) = grid.conjugate_index(ix, iy);
                let j = cy * grid.nx + cx;
                if j != i && !grid.is_nyquist_x(ix) && !grid.is_nyquist_y(iy) {
                    coeffs[j] = Some(ModeCoeffs {
                        e: conj3(&mc.e),
                        e2: conj3(&mc.e2),
                        q: conj3(&mc.q),
                        f1: conj3(&mc.f1),
                        f2: conj3(&mc.f2),
                        f3: conj3(&mc.f3),
                    });
                }
                coeffs[i] = Some(mc);
            }
        }
        Ok(Self {
            params,
            grid,
            dt,
            coeffs: coeffs
                .into_iter()
                .map(|c| c.expect("all modes filled"))
                .collect(),
            forcing: None,
        })
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    fn n(&self, s: &[Spectrum; 3], t: f64) -> Result<([Spectrum; 3], Vec<f64>)> {
        let (mut n, zeta) = nonlinear_spectra(s, &self.params);
        if let Some(f) = &self.forcing {
            let (r1, r2) = f(t);
            let (fu, fv) = invert_elliptic_spectra(
                &r2.u.to_spectrum(),
                &r2.v.to_spectrum(),
                self.params.mu,
                self.params.gamma,
            );
            n[0].add_assign_scaled(1.0, &r1.to_spectrum().dealiased());
            n[1].add_assign_scaled(1.0, &fu.dealiased());
            n[2].add_assign_scaled(1.0, &fv.dealiased());
        }
        Ok((n, zeta))
    }

    fn combine(
        &self,
        base: &[Spectrum; 3],
        f: impl Fn(&ModeCoeffs, [Complex64; 3], usize) -> [Complex64; 3],
    ) -> [Spectrum; 3] {
        let mut out = base.clone();
        for i in 0..self.grid.len() {
            let x = [
                base[0].coeffs()[i],
                base[1].coeffs()[i],
                base[2].coeffs()[i],
            ];
            let y = f(&self.coeffs[i], x, i);
            out[0].coeffs_mut()[i] = y[0];
            out[1].coeffs_mut()[i] = y[1];
            out[2].coeffs_mut()[i] = y[2];
        }
        out
    }

    /// One step from time `t`. Checks non-cavitation of the input.
    pub(crate) fn step_spectra(&self, u: &[Spectrum; 3], t: f64) -> Result<[Spectrum; 3]> {
        let h = self.dt;
        let (nu, zeta) = self.n(u, t)?;
        check_cavitation(&zeta, &self.grid, &self.params)?;
        let at =
            |s: &[Spectrum; 3], i: usize| [s[0].coeffs()[i], s[1].coeffs()[i], s[2].coeffs()[i]];
        let add = |a: [Complex64; 3], b: [Complex64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];

        let a = self.combine(u, |c, x, i| add(mv(&c.e2, x), mv(&c.q, at(&nu, i))));
        let (na, _) = self.n(&a, t + h / 2.0)?;
        let b = self.combine(u, |c, x, i| add(mv(&c.e2, x), mv(&c.q, at(&na, i))));
        let (nb, _) = self.n(&b, t + h / 2.0)?;
        let cc = self.combine(&a, |c, x, i| {
            let nbi = at(&nb, i);
            let nui = at(&nu, i);
            let w = [
                2.0 * nbi[0] - nui[0],
                2.0 * nbi[1] - nui[1],
                2.0 * nbi[2] - nui[2],
            ];
            add(mv(&c.e2, x), mv(&c.q, w))
        });
        let (nc, _) = self.n(&cc, t + h)?;
        Ok(self.combine(u, |c, x, i| {
            let nab = add(at(&na, i), at(&nb, i));
            let mut y = mv(&c.e, x);
            let t1 = mv(&c.f1, at(&nu, i));
            let t2 = mv(&c.f2, nab);
            let t3 = mv(&c.f3, at(&nc, i));
            for k in 0..3 {
                y[k] += t1[k] + 2.0 * t2[k] + t3[k];
            }
            y
        }))
    }
}

/// One step of the exponential scheme.
pub fn step_imex(
    state: &BoussinesqState,
    params: &ModelParams,
    dt: f64,
) -> Result<BoussinesqState> {
    let stepper = BoussinesqStepper::new(*params, *state.grid(), dt)?;
    let mut s = state.spectra();
    for x in s.iter_mut() {
        x.dealias_in_place();
    }
    let next = stepper.step_spectra(&s, state.time)?;
    if next.iter().any(|x| !x.is_finite()) {
        return Err(Error::BlowUp {
            step: 1,
            time: state.time + dt,
        });
    }
    BoussinesqState::from_spectra(&next, state.time + dt)
}

/// Integrator keeping the state in Fourier space between steps.
#[derive(Debug, Clone)]
pub struct BoussinesqIntegrator {
    stepper: BoussinesqStepper,
    state: [Spectrum; 3],
    time: f64,
    steps: usize,
}

impl BoussinesqIntegrator {
    /// The initial state is projected onto the dealiased band.
    pub fn new(state0: &BoussinesqState, stepper: BoussinesqStepper) -> Result<Self> {
        state0.grid().check_same(&stepper.grid)?;
        let mut state = state0.spectra();
        for x in state.iter_mut() {
            x.dealias_in_place();
        }
        Ok(Self {
            stepper,
            state,
            time: state0.time,
            steps: 0,
        })
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&mut self) -> Result<()> {
        let next = self.stepper.step_spectra(&self.state, self.time)?;
        self.steps += 1;
        if next.iter().any(|x| !x.is_finite()) {
            return Err(Error::BlowUp {
                step: self.steps,
                time: self.time + self.stepper.dt,
            });
        }
        self.state = next;
        self.time += self.stepper.dt;
        Ok(())
    }

    pub fn advance(&mut self, n: usize) -> Result<()> {
        for _ in 0..n {
            self.step()?;
        }
        Ok(())
    }

    pub fn state(&self) -> Result<BoussinesqState> {
        BoussinesqState::from_spectra(&self.state, self.time)
    }

    /// Mass read from the mean Fourier coefficient.
    pub fn mass(&self) -> f64 {
        let g = self.stepper.grid;
        self.state[0].coeffs()[0].re * g.lx * g.ly / g.len() as f64
    }
}

/// `E^N = ½ Σ_{|α|≤N} ∫ (∂^αζ)² + h|∂^αV|² + (μ/3) h (∇^γ·∂^αV)²`, `h = 1+εζ`.
pub fn energy_symmetrized(state: &BoussinesqState, params: &ModelParams, n: u32) -> Result<f64> {
    if n > 3 {
        return Err(Error::InvalidParameter(format!(
            "energy order must be <= 3, got {n}"
        )));
    }
    let g = *state.grid();
    check_cavitation(state.zeta.values(), &g, params)?;
    let h: Vec<f64> = state
        .zeta
        .values()
        .iter()
        .map(|z| 1.0 + params.eps * z)
        .collect();
    let (sz, su, sv) = (
        state.zeta.to_spectrum(),
        state.vbar.u.to_spectrum(),
        state.vbar.v.to_spectrum(),
    );
    let mut total = 0.0;
    for order in 0..=n {
        for ax in 0..=order {
            let ay = order - ax;
            let d = |s: &Spectrum| s.deriv(Axis::X, ax, 1.0).deriv(Axis::Y, ay, 1.0);
            let (dz, du, dv) = (d(&sz), d(&su), d(&sv));
            let div = du
                .dx()
                .axpy(1.0, &dv.deriv(Axis::Y, 1, params.gamma))
                .real_values();
            let (dz, du, dv) = (dz.real_values(), du.real_values(), dv.real_values());
            for i in 0..g.len() {
                total += dz[i] * dz[i]
                    + h[i] * (du[i] * du[i] + dv[i] * dv[i])
                    + params.mu / 3.0 * h[i] * div[i] * div[i];
            }
        }
    }
    Ok(0.5 * total * g.cell_area())
}

/// One row of the Boussinesq diagnostics CSV. `l2`, `linf` and `mass_x0`
/// refer to ζ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoussinesqDiagnostics {
    pub t: f64,
    pub l2: f64,
    pub linf: f64,
    pub mass_x0: f64,
    pub dt: f64,
    pub mass: f64,
    pub e0: f64,
    pub en: f64,
}

pub fn diagnostics(
    state: &BoussinesqState,
    params: &ModelParams,
    dt: f64,
    energy_order: u32,
) -> Result<BoussinesqDiagnostics> {
    Ok(BoussinesqDiagnostics {
        t: state.time,
        l2: l2_norm(&state.zeta),
        linf: linf_norm(&state.zeta),
        mass_x0: state.zeta.zero_x_mean_defect().1,
        dt,
        mass: mass(state),
        e0: energy_symmetrized(state, params, 0)?,
        en: energy_symmetrized(state, params, energy_order)?,
    })
}

#[derive(Clone, Debug)]
pub struct BoussinesqTrajectory {
    pub params: ModelParams,
    pub dt: f64,
    pub energy_order: u32,
    pub samples: Vec<BoussinesqState>,
    pub diagnostics: Vec<BoussinesqDiagnostics>,
}

impl BoussinesqTrajectory {
    pub fn final_state(&self) -> &BoussinesqState {
        self.samples.last().expect("non-empty trajectory")
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "t,l2,linf,mass_x0,dt,mass,e0,eN")?;
        for d in &self.diagnostics {
            writeln!(
                f,
                "{},{},{},{},{},{},{},{}",
                d.t, d.l2, d.linf, d.mass_x0, d.dt, d.mass, d.e0, d.en
            )?;
        }
        Ok(())
    }

    /// `zeta_00000`, `u_00000`, `v_00000`, … snapshots.
    pub fn write_snapshots(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (i, s) in self.samples.iter().enumerate() {
            for (name, f) in [("zeta", &s.zeta), ("u", &s.vbar.u), ("v", &s.vbar.v)] {
                crate::snapshot::write_snapshot(
                    &dir.join(format!("{name}_{i:05}")),
                    f,
                    s.time,
                    name,
                )?;
            }
        }
        Ok(())
    }
}

/// Integrate over `[t0, t0 + t_end]`, sampling every `sample_every` steps.
/// `dt` is shrunk to divide `t_end`.
pub fn solve(
    state0: &BoussinesqState,
    params: &ModelParams,
    t_end: f64,
    dt: f64,
    sample_every: usize,
    energy_order: u32,
) -> Result<BoussinesqTrajectory> {
    params.validate()?;
    if !(t_end >= 0.0 && t_end.is_finite()) || !(dt > 0.0) || sample_every == 0 {
        return Err(Error::InvalidParameter(
            "need t_end >= 0, dt > 0 and sample_every >= 1".into(),
        ));
    }
    let steps = if t_end > 0.0 {
        (t_end / dt).ceil() as usize
    } else {
        0
    };
    let dt = if steps > 0 { t_end / steps as f64 } else { dt };
    let stepper = BoussinesqStepper::new(*params, *state0.grid(), dt)?;
    let mut integ = BoussinesqIntegrator::new(state0, stepper)?;
    let mut traj = BoussinesqTrajectory {
        params: *params,
        dt,
        energy_order,
        samples: Vec::new(),
        diagnostics: Vec::new(),
    };
    let s = integ.state()?;
    traj.diagnostics
        .push(diagnostics(&s, params, dt, energy_order)?);
    traj.samples.push(s);
    for n in 1..=steps {
        integ.step()?;
        if n % sample_every == 0 || n == steps {
            let s = integ.state()?;
            traj.diagnostics
                .push(diagnostics(&s, params, dt, energy_order)?);
            traj.samples.push(s);
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::square(32, 2.0 * PI).unwrap()
    }

    fn params(mu: f64, eps: f64, gamma: f64, rot: f64) -> ModelParams {
        ModelParams::new(mu, eps, gamma, rot).unwrap()
    }

    fn field(g: Grid, f: impl Fn(f64, f64) -> f64) -> ScalarField {
        ScalarField::from_fn(g, f).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(-0.1, 0.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(0.1, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.1, 0.0, 1.5, 0.0).is_err());
        assert!(ModelParams::new(0.1, 0.0, 1.0, -1.0).is_err());
        assert!(ModelParams::new(0.1, 0.1, 1.0, 0.0)
            .unwrap()
            .with_h_min(0.0)
            .is_err());
    }

    #[test]
    fn zero_state_rhs_and_step() {
        let g = grid();
        let p = params(0.1, 0.1, 0.5, 0.3);
        let s = BoussinesqState::zeros(g);
        let (dz, dv) = rhs_boussinesq(&s, &p).unwrap();
        assert_eq!(dz.max_abs() + dv.u.max_abs() + dv.v.max_abs(), 0.0);
        let n = step_imex(&s, &p, 0.1).unwrap();
        assert_eq!(
            n.zeta.max_abs() + n.vbar.u.max_abs() + n.vbar.v.max_abs(),
            0.0
        );
    }

    #[test]
    fn uniform_flow_rotates_inertially() {
        let g = grid();
        let (r, c) = (0.7, 0.3);
        let p = params(0.2, 0.1, 1.0, r);
        let s = BoussinesqState::new(
            ScalarField::zeros(g),
            VectorField2::new(field(g, |_, _| c), ScalarField::zeros(g)).unwrap(),
            0.0,
        )
        .unwrap();
        let (dz, dv) = rhs_boussinesq(&s, &p).unwrap();
        assert!(dz.max_abs() < 1e-14);
        assert!(dv.u.max_abs() < 1e-14);
        assert!((dv.v.at(3, 5) + r * c).abs() < 1e-14);
        // V' = −r V⊥: (u, v)(t) = c (cos rt, −sin rt)
        let t = 2.0;
        let traj = solve(&s, &p, t, 0.05, 1000, 0).unwrap();
        let f = traj.final_state();
        assert!((f.vbar.u.at(1, 1) - c * (r * t).cos()).abs() < 1e-13);
        assert!((f.vbar.v.at(1, 1) + c * (r * t).sin()).abs() < 1e-13);
    }

    #[test]
    fn linear_plane_wave_frequency() {
        let g = grid();
        let p = params(0.3, 0.0, 0.5, 0.0);
        let (kx, ky) = (2.0, 1.0);
        let w = linear_frequency(&p, kx, ky);
        // eigenvector: ζ̂ = 1, V̂ = κ/(M... ) ∝ M⁻¹κ/ω
        let kap = [kx, 0.5 * ky];
        let kk = kap[0] * kap[0] + kap[1] * kap[1];
        let m = 1.0 / (1.0 + p.mu / 3.0 * kk);
        let amp = [kap[0] * m / w, kap[1] * m / w];
        let mk = |a: f64, t: f64| field(g, move |x, y| a * (kx * x + ky * y - w * t).cos());
        let s0 = BoussinesqState::new(
            mk(1.0, 0.0),
            VectorField2::new(mk(amp[0], 0.0), mk(amp[1], 0.0)).unwrap(),
            0.0,
        )
        .unwrap();
        let t = 1.3;
        let out = solve(&s0, &p, t, 0.1, 100, 0).unwrap();
        let f = out.final_state();
        assert!(f.zeta.sub(&mk(1.0, t)).unwrap().max_abs() < 1e-12);
        assert!(f.vbar.u.sub(&mk(amp[0], t)).unwrap().max_abs() < 1e-12);
        assert!(f.vbar.v.sub(&mk(amp[1], t)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn energy_examples() {
        let g = grid();
        let z = BoussinesqState::zeros(g);
        assert_eq!(
            energy_symmetrized(&z, &params(0.1, 0.1, 1.0, 0.0), 2).unwrap(),
            0.0
        );
        let s = BoussinesqState::new(
            field(g, |x, y| (x + y).sin()),
            VectorField2::new(field(g, |x, _| x.cos()), field(g, |_, y| (2.0 * y).sin())).unwrap(),
            0.0,
        )
        .unwrap();
        let e = energy_symmetrized(&s, &params(0.0, 0.0, 1.0, 0.0), 0).unwrap();
        let l = |f: &ScalarField| l2_norm(f).powi(2);
        let expect = 0.5 * (l(&s.zeta) + l(&s.vbar.u) + l(&s.vbar.v));
        assert!((e - expect).abs() < 1e-12 * expect);
        // ζ=0, V=(sin x, 0), μ=3: ½(∫sin² + ∫cos²) = 2π²
        let s = BoussinesqState::new(
            ScalarField::zeros(g),
            VectorField2::new(field(g, |x, _| x.sin()), ScalarField::zeros(g)).unwrap(),
            0.0,
        )
        .unwrap();
        let e = energy_symmetrized(&s, &params(3.0, 0.0, 1.0, 0.0), 0).unwrap();
        assert!((e - 2.0 * PI * PI).abs() < 1e-12);
        assert!(energy_symmetrized(&s, &params(3.0, 0.0, 1.0, 0.0), 4).is_err());
    }

    #[test]
    fn mass_examples() {
        let g = grid();
        assert_eq!(mass(&BoussinesqState::zeros(g)), 0.0);
        let s =
            BoussinesqState::new(field(g, |x, _| x.sin()), VectorField2::zeros(g), 0.0).unwrap();
        assert!(mass(&s).abs() < 1e-14);
    }

    #[test]
    fn cavitation_is_reported_with_location() {
        let g = grid();
        let mut vals = vec![0.0; g.len()];
        vals[3 * g.nx + 7] = -10.0;
        let s = BoussinesqState::new(
            ScalarField::new(g, vals).unwrap(),
            VectorField2::zeros(g),
            0.0,
        )
        .unwrap();
        match rhs_boussinesq(&s, &params(0.1, 0.1, 1.0, 0.0)) {
            Err(Error::Cavitation { ix, iy, .. }) => assert_eq!((ix, iy), (7, 3)),
            other => panic!("expected cavitation, got {other:?}"),
        }
        assert!(energy_symmetrized(&s, &params(0.1, 0.1, 1.0, 0.0), 0).is_err());
    }

    #[test]
    fn residual_vanishes_on_rhs() {
        let g = grid();
        let p = params(0.2, 0.3, 0.6, 0.4);
        let s = BoussinesqState::new(
            field(g, |x, y| 0.2 * (x + y).sin()),
            VectorField2::new(
                field(g, |x, _| 0.3 * x.cos()),
                field(g, |x, y| 0.1 * (x - 2.0 * y).sin()),
            )
            .unwrap(),
            0.0,
        )
        .unwrap();
        let (dz, dv) = rhs_boussinesq(&s, &p).unwrap();
        let (r1, r2) = residual(&s.zeta, &s.vbar, &dz, &dv, &p).unwrap();
        assert!(r1.max_abs() < 1e-12);
        assert!(r2.u.max_abs() < 1e-12 && r2.v.max_abs() < 1e-12);
    }

    #[test]
    fn stepper_keeps_fields_real_and_conjugate_symmetric() {
        let g = Grid::new(32, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let p = params(0.5, 0.0, 0.7, 0.9);
        let stepper = BoussinesqStepper::new(p, g, 0.2).unwrap();
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                let (cx, cy) = g.conjugate_index(ix, iy);
                if g.is_nyquist_x(ix) || g.is_nyquist_y(iy) {
                    continue;
                }
                let a = stepper.coeffs[iy * g.nx + ix].e;
                let b = stepper.coeffs[cy * g.nx + cx].e;
                for i in 0..3 {
                    for j in 0..3 {
                        assert!((a[i][j] - b[i][j].conj()).norm() < 1e-13);
                    }
                }
            }
        }
    }
}
