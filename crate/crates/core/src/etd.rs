//! Scalar coefficients of the fourth-order exponential time differencing
//! Runge–Kutta scheme (Cox–Matthews ETDRK4).
//!
//! For `u' = λu + N(u, t)` and step `h`, with `z = hλ`:
//!
//! ```text
//! a  = e^{z/2} u  + Q N(u, t)
//! b  = e^{z/2} u  + Q N(a, t+h/2)
//! c  = e^{z/2} a  + Q (2N(b, t+h/2) − N(u, t))
//! u⁺ = e^{z} u + f1 N(u) + 2 f2 (N(a) + N(b)) + f3 N(c)
//! ```
//!
//! The φ-type coefficients are averaged over a circle of radius 1 around `z`
//! to avoid cancellation when `|z|` is small.

use num_complex::Complex64;
use std::f64::consts::PI;

pub const CONTOUR_POINTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Etdrk4Coeffs {
    pub e: Complex64,
    pub e2: Complex64,
    pub q: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
}

impl Etdrk4Coeffs {
    /// Coefficients for `z = h·λ`.
    pub fn new(z: Complex64, h: f64) -> Self {
        let mut q = Complex64::default();
        let mut f1 = Complex64::default();
        let mut f2 = Complex64::default();
        let mut f3 = Complex64::default();
        for j in 0..CONTOUR_POINTS {
            let theta = PI * (j as f64 + 0.5) * 2.0 / CONTOUR_POINTS as f64;
            let r = z + Complex64::from_polar(1.0, theta);
            let er = r.exp();
            let r2 = r * r;
            let r3 = r2 * r;
            q += ((r / 2.0).exp() - 1.0) / r;
            f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
            f2 += (2.0 + r + er * (r - 2.0)) / r3;
            f3 += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
        }
        let m = h / CONTOUR_POINTS as f64;
        Self {
            e: z.exp(),
            e2: (z / 2.0).exp(),
            q: q * m,
            f1: f1 * m,
            f2: f2 * m,
            f3: f3 * m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_eigenvalue_reduces_to_rk4_weights() {
        let c = Etdrk4Coeffs::new(Complex64::default(), 0.3);
        assert!((c.e - 1.0).norm() < 1e-15);
        assert!((c.q - 0.15).norm() < 1e-15);
        for f in [c.f1, c.f2, c.f3] {
            assert!((f - 0.05).norm() < 1e-15);
        }
    }

    #[test]
    fn matches_closed_form_away_from_origin() {
        let h = 0.1;
        for z in [
            Complex64::new(0.0, 7.0),
            Complex64::new(-3.0, 2.0),
            Complex64::new(0.0, -40.0),
        ] {
            let c = Etdrk4Coeffs::new(z, h);
            let ez = z.exp();
            let z3 = z * z * z;
            let f1 = h * (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            let f2 = h * (2.0 + z + ez * (z - 2.0)) / z3;
            let f3 = h * (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
            let q = h * ((z / 2.0).exp() - 1.0) / z;
            assert!((c.f1 - f1).norm() < 1e-14 * h);
            assert!((c.f2 - f2).norm() < 1e-14 * h);
            assert!((c.f3 - f3).norm() < 1e-14 * h);
            assert!((c.q - q).norm() < 1e-14 * h);
        }
    }

    #[test]
    fn small_argument_is_accurate() {
        // series: f2 = h(1/6 + z/12 + ...)
        let z = Complex64::new(0.0, 1e-6);
        let c = Etdrk4Coeffs::new(z, 1.0);
        let series = Complex64::new(1.0 / 6.0, 0.0) + z / 12.0;
        assert!((c.f2 - series).norm() < 1e-13);
    }
}
