use super::{Axis, Grid, ScalarField, Spectrum, VectorField2, ZERO_X_MEAN_TOL};
use crate::error::{Error, Result};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn ipow(order: u32) -> Complex64 {
    match order % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => I,
        2 => Complex64::new(-1.0, 0.0),
        _ => -I,
    }
}

impl Spectrum {
    /// Spectral derivative `∂^order` along `axis`; y-derivatives carry a
    /// factor `gamma^order`. Odd derivatives vanish on the Nyquist mode.
    pub fn deriv(&self, axis: Axis, order: u32, gamma: f64) -> Spectrum {
        if order == 0 {
            return self.clone();
        }
        let g = *self.grid();
        let mut out = self.clone();
        let c = ipow(order);
        let odd = order % 2 == 1;
        let nx = g.nx;
        for iy in 0..g.ny {
            let ky = g.ky(iy);
            for ix in 0..nx {
                let m = match axis {
                    Axis::X => {
                        if odd && g.is_nyquist_x(ix) {
                            Complex64::default()
                        } else {
                            c * g.kx(ix).powi(order as i32)
                        }
                    }
                    Axis::Y => {
                        if odd && g.is_nyquist_y(iy) {
                            Complex64::default()
                        } else {
                            c * (gamma * ky).powi(order as i32)
                        }
                    }
                };
                out.coeffs_mut()[iy * nx + ix] *= m;
            }
        }
        out
    }

    pub fn dx(&self) -> Spectrum {
        self.deriv(Axis::X, 1, 1.0)
    }

    pub fn dy(&self) -> Spectrum {
        self.deriv(Axis::Y, 1, 1.0)
    }

    /// `∂ₓ^{-power}`: division by `(i kx)^power`, kx=0 modes set to zero.
    /// No range check; see [`antideriv_x`] for the checked version.
    pub fn antideriv_x(&self, power: u32) -> Spectrum {
        let g = *self.grid();
        let c = ipow(power);
        let mut out = self.apply(|kx, _| {
            if kx == 0.0 {
                Complex64::default()
            } else {
                1.0 / (c * kx.powi(power as i32))
            }
        });
        if power % 2 == 1 {
            for iy in 0..g.ny {
                out.coeffs_mut()[iy * g.nx + g.nx / 2] = Complex64::default();
            }
        }
        out
    }
}

/// Spectral derivative of a field; see [`Spectrum::deriv`].
pub fn deriv(f: &ScalarField, axis: Axis, order: u32, gamma: f64) -> Result<ScalarField> {
    if order == 0 || order > 4 {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be 1..=4, got {order}"
        )));
    }
    if !gamma.is_finite() {
        return Err(Error::NonFinite("gamma"));
    }
    let mut out = f.to_spectrum().deriv(axis, order, gamma).to_field();
    if axis == Axis::X || f.is_zero_x_mean() {
        out.set_zero_x_mean(true);
    }
    Ok(out)
}

/// Checked `∂ₓ^{-power}` for power 1 or 2.
///
/// kx=0 coefficients up to [`ZERO_X_MEAN_TOL`] (relative) are projected out;
/// anything larger is rejected with the offending ky row.
pub fn antideriv_x(f: &ScalarField, power: u32) -> Result<ScalarField> {
    if !(1..=2).contains(&power) {
        return Err(Error::InvalidParameter(format!(
            "antiderivative power must be 1 or 2, got {power}"
        )));
    }
    let s = f.to_spectrum();
    let (row, ratio) = s.zero_x_mean_defect();
    if ratio > ZERO_X_MEAN_TOL {
        return Err(Error::NotInRangeOfDx { row, ratio });
    }
    let mut out = s.antideriv_x(power).to_field();
    out.set_zero_x_mean(true);
    Ok(out)
}

fn elliptic_symbol_solve(
    f: [Complex64; 2],
    kx: f64,
    kyg: f64,
    c: f64,
    inverse: bool,
) -> [Complex64; 2] {
    let kk = kx * kx + kyg * kyg;
    let dot = f[0] * kx + f[1] * kyg;
    // (I + cκκᵀ)^{-1} = I - cκκᵀ/(1 + c|κ|²)
    let s = if inverse { -c / (1.0 + c * kk) } else { c };
    [f[0] + s * dot * kx, f[1] + s * dot * kyg]
}

/// Apply `(I + (μ/3)κκᵀ)^{-1}` per mode with `κ = (kx, γ ky)`.
pub(crate) fn invert_elliptic_spectra(
    fu: &Spectrum,
    fv: &Spectrum,
    mu: f64,
    gamma: f64,
) -> (Spectrum, Spectrum) {
    elliptic_spectra(fu, fv, mu, gamma, true)
}

pub(crate) fn apply_elliptic_spectra(
    fu: &Spectrum,
    fv: &Spectrum,
    mu: f64,
    gamma: f64,
) -> (Spectrum, Spectrum) {
    elliptic_spectra(fu, fv, mu, gamma, false)
}

fn elliptic_spectra(
    fu: &Spectrum,
    fv: &Spectrum,
    mu: f64,
    gamma: f64,
    inverse: bool,
) -> (Spectrum, Spectrum) {
    let g = *fu.grid();
    let c = mu / 3.0;
    let mut wu = fu.clone();
    let mut wv = fv.clone();
    if c == 0.0 {
        return (wu, wv);
    }
    for iy in 0..g.ny {
        let kyg = gamma * g.ky(iy);
        for ix in 0..g.nx {
            let i = iy * g.nx + ix;
            let r =
                elliptic_symbol_solve([fu.coeffs()[i], fv.coeffs()[i]], g.kx(ix), kyg, c, inverse);
            wu.coeffs_mut()[i] = r[0];
            wv.coeffs_mut()[i] = r[1];
        }
    }
    (wu, wv)
}

/// Solve `(I − (μ/3)∇^γ∇^γ·) W = F` exactly, mode by mode.
pub fn invert_boussinesq_elliptic(f: &VectorField2, mu: f64, gamma: f64) -> Result<VectorField2> {
    if !(mu >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mu must be >= 0, got {mu}"
        )));
    }
    if mu == 0.0 {
        return Ok(f.clone());
    }
    let (wu, wv) = invert_elliptic_spectra(&f.u.to_spectrum(), &f.v.to_spectrum(), mu, gamma);
    VectorField2::new(wu.to_field_checked()?, wv.to_field_checked()?)
}

/// Forward application of `(I − (μ/3)∇^γ∇^γ·)`.
pub fn apply_boussinesq_elliptic(w: &VectorField2, mu: f64, gamma: f64) -> Result<VectorField2> {
    let (fu, fv) = apply_elliptic_spectra(&w.u.to_spectrum(), &w.v.to_spectrum(), mu, gamma);
    VectorField2::new(fu.to_field_checked()?, fv.to_field_checked()?)
}

/// Zero every Fourier mode outside the dealiasing band.
pub fn dealias(f: &ScalarField) -> ScalarField {
    let mut out = f.to_spectrum().dealiased().to_field();
    out.set_zero_x_mean(f.is_zero_x_mean());
    out
}

/// Norm selector for scalar fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L2,
    Linf,
    /// `H^N` with weight `(1+|k|²)^N`.
    Sobolev(u32),
}

pub fn l2_norm(f: &ScalarField) -> f64 {
    (f.values().iter().map(|v| v * v).sum::<f64>() * f.grid().cell_area()).sqrt()
}

pub fn linf_norm(f: &ScalarField) -> f64 {
    f.max_abs()
}

fn spectral_sobolev(s: &Spectrum, n: u32) -> f64 {
    let g: Grid = *s.grid();
    let scale = g.lx * g.ly / (g.len() as f64).powi(2);
    let mut acc = 0.0;
    for iy in 0..g.ny {
        let ky = g.ky(iy);
        for ix in 0..g.nx {
            let kx = g.kx(ix);
            acc += (1.0 + kx * kx + ky * ky).powi(n as i32) * s.coeffs()[iy * g.nx + ix].norm_sqr();
        }
    }
    (acc * scale).sqrt()
}

pub(crate) fn hs_norm_spectrum(s: &Spectrum, n: u32) -> f64 {
    spectral_sobolev(s, n)
}

pub fn hs_norm(f: &ScalarField, n: u32) -> f64 {
    spectral_sobolev(&f.to_spectrum(), n)
}

pub fn norm(f: &ScalarField, kind: Norm) -> Result<f64> {
    match kind {
        Norm::L2 => Ok(l2_norm(f)),
        Norm::Linf => Ok(linf_norm(f)),
        Norm::Sobolev(n) if n <= 4 => Ok(hs_norm(f, n)),
        Norm::Sobolev(n) => Err(Error::InvalidParameter(format!(
            "Sobolev index must be <= 4, got {n}"
        ))),
    }
}

/// `|(ζ,V)|²_{X^N_μ} = |ζ|²_{H^N} + |V|²_{H^N} + μ|∇^γ·V|²_{H^N}`.
pub fn xmu_norm(
    zeta: &ScalarField,
    vbar: &VectorField2,
    mu: f64,
    gamma: f64,
    n: u32,
) -> Result<f64> {
    if n > 4 {
        return Err(Error::InvalidParameter(format!(
            "Sobolev index must be <= 4, got {n}"
        )));
    }
    zeta.grid().check_same(vbar.grid())?;
    let su = vbar.u.to_spectrum();
    let sv = vbar.v.to_spectrum();
    let div = su.dx().axpy(1.0, &sv.deriv(Axis::Y, 1, gamma));
    let z = hs_norm(zeta, n);
    let u = spectral_sobolev(&su, n);
    let v = spectral_sobolev(&sv, n);
    let d = spectral_sobolev(&div, n);
    Ok((z * z + u * u + v * v + mu * d * d).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_grid(n: usize) -> Grid {
        Grid::square(n, 2.0 * PI).unwrap()
    }

    fn max_diff(a: &ScalarField, b: &ScalarField) -> f64 {
        a.sub(b).unwrap().max_abs()
    }

    #[test]
    fn deriv_of_sine_and_constant() {
        let g = unit_grid(32);
        let f = ScalarField::from_fn(g, |x, _| x.sin()).unwrap();
        let d = deriv(&f, Axis::X, 1, 1.0).unwrap();
        let cos = ScalarField::from_fn(g, |x, _| x.cos()).unwrap();
        assert!(max_diff(&d, &cos) < 1e-12);

        let c = ScalarField::from_fn(g, |_, _| 3.5).unwrap();
        for axis in [Axis::X, Axis::Y] {
            for order in 1..=4 {
                assert!(deriv(&c, axis, order, 0.7).unwrap().max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn anisotropic_second_derivative() {
        let g = unit_grid(32);
        let f = ScalarField::from_fn(g, |_, y| y.sin()).unwrap();
        let d = deriv(&f, Axis::Y, 2, 0.5).unwrap();
        // symbol (i·γ·ky)² = -γ² at ky=1
        let expect = f.scaled(-0.25);
        assert!(max_diff(&d, &expect) < 1e-12);
    }

    #[test]
    fn deriv_rejects_order_five() {
        let g = unit_grid(16);
        assert!(deriv(&ScalarField::zeros(g), Axis::X, 5, 1.0).is_err());
    }

    #[test]
    fn antideriv_of_sine() {
        let g = unit_grid(32);
        let f = ScalarField::from_fn(g, |x, _| x.sin()).unwrap();
        let a = antideriv_x(&f, 1).unwrap();
        let expect = ScalarField::from_fn(g, |x, _| -x.cos()).unwrap();
        assert!(max_diff(&a, &expect) < 1e-12);
        assert!(a.is_zero_x_mean());
        let a2 = antideriv_x(&f, 2).unwrap();
        assert!(max_diff(&a2, &f.scaled(-1.0)) < 1e-12);
    }

    #[test]
    fn antideriv_rejects_constant() {
        let g = unit_grid(16);
        let one = ScalarField::from_fn(g, |_, _| 1.0).unwrap();
        match antideriv_x(&one, 1) {
            Err(Error::NotInRangeOfDx { row, ratio }) => {
                assert_eq!(row, 0);
                assert!(ratio > 0.99);
            }
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn antideriv_tolerates_roundoff_mean() {
        let g = unit_grid(16);
        let f = ScalarField::from_fn(g, |x, y| x.cos() * y.sin() + 1e-14).unwrap();
        assert!(antideriv_x(&f, 1).is_ok());
    }

    #[test]
    fn elliptic_identity_for_zero_mu() {
        let g = unit_grid(16);
        let f = VectorField2::new(
            ScalarField::from_fn(g, |x, y| x.sin() + y.cos()).unwrap(),
            ScalarField::from_fn(g, |x, y| (x + 2.0 * y).cos()).unwrap(),
        )
        .unwrap();
        let w = invert_boussinesq_elliptic(&f, 0.0, 0.3).unwrap();
        assert_eq!(w, f);
    }

    #[test]
    fn elliptic_parallel_and_perpendicular_modes() {
        // κ = (1, γ·1) with γ = 1; (μ/3)|κ|² = 1 ⇒ μ = 1.5
        let g = unit_grid(16);
        let mu = 1.5;
        let par = VectorField2::new(
            ScalarField::from_fn(g, |x, y| (x + y).cos()).unwrap(),
            ScalarField::from_fn(g, |x, y| (x + y).cos()).unwrap(),
        )
        .unwrap();
        let w = invert_boussinesq_elliptic(&par, mu, 1.0).unwrap();
        assert!(max_diff(&w.u, &par.u.scaled(0.5)) < 1e-14);
        assert!(max_diff(&w.v, &par.v.scaled(0.5)) < 1e-14);

        let perp = VectorField2::new(
            ScalarField::from_fn(g, |x, y| (x + y).cos()).unwrap(),
            ScalarField::from_fn(g, |x, y| -(x + y).cos()).unwrap(),
        )
        .unwrap();
        let w = invert_boussinesq_elliptic(&perp, mu, 1.0).unwrap();
        assert!(max_diff(&w.u, &perp.u) < 1e-14);
        assert!(max_diff(&w.v, &perp.v) < 1e-14);
    }

    #[test]
    fn dealias_examples() {
        let g = unit_grid(48);
        let low = ScalarField::from_fn(g, |x, y| (16.0 * x).cos() + (3.0 * y).sin()).unwrap();
        assert!(max_diff(&dealias(&low), &low) < 1e-14);
        let nyq = ScalarField::from_fn(g, |x, _| (24.0 * x).cos()).unwrap();
        assert!(dealias(&nyq).max_abs() < 1e-14);
        let mixed = ScalarField::from_fn(g, |x, y| (20.0 * x).cos() * y.sin() + x.sin()).unwrap();
        let once = dealias(&mixed);
        assert!(max_diff(&dealias(&once), &once) < 1e-15);
    }

    #[test]
    fn norm_examples() {
        let g = unit_grid(32);
        let f = ScalarField::from_fn(g, |x, _| x.sin()).unwrap();
        // ∫∫ sin² over [0,2π)² = 2π²
        assert!((l2_norm(&f) - (2.0 * PI * PI).sqrt()).abs() < 1e-12);
        assert!((linf_norm(&f) - 1.0).abs() < 1e-12);
        // |sin x|²_{H^1} = (1+1)·2π²
        assert!((hs_norm(&f, 1) - (4.0 * PI * PI).sqrt()).abs() < 1e-12);
        let z = ScalarField::zeros(g);
        for k in [Norm::L2, Norm::Linf, Norm::Sobolev(3)] {
            assert_eq!(norm(&z, k).unwrap(), 0.0);
        }
        assert!(norm(&z, Norm::Sobolev(5)).is_err());
    }

    #[test]
    fn xmu_example() {
        let g = unit_grid(32);
        let zeta = ScalarField::zeros(g);
        let v = VectorField2::new(
            ScalarField::from_fn(g, |x, _| x.sin()).unwrap(),
            ScalarField::zeros(g),
        )
        .unwrap();
        let n = xmu_norm(&zeta, &v, 1.0, 1.0, 0).unwrap();
        assert!((n - 2.0 * PI).abs() < 1e-12);
    }
}
