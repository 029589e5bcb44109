use coriolis_kp::experiments::error_bound;
use coriolis_kp::regimes::{in_regime, params_for, RegimeKind, MU0};
use coriolis_kp::scalar::{linear_symbol, ScalarModelKind};
use coriolis_kp::spectral::{
    antideriv_x, apply_boussinesq_elliptic, dealias, deriv, invert_boussinesq_elliptic, linf_norm,
    Axis, Grid, ScalarField, VectorField2,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn grid() -> Grid {
    Grid::square(16, 2.0 * PI).unwrap()
}

/// Low-mode trig polynomial with zero x-mean.
fn trig(c: &[f64]) -> ScalarField {
    ScalarField::from_fn(grid(), |x, y| {
        c[0] * (x + 2.0 * y).sin() + c[1] * (2.0 * x).cos() + c[2] * (x - y).cos() * (2.0 * x).sin()
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fft_roundtrip(v in prop::collection::vec(-10.0f64..10.0, 256)) {
        let f = ScalarField::new(grid(), v).unwrap();
        let back = f.to_spectrum().to_field();
        prop_assert!(linf_norm(&back.sub(&f).unwrap()) < 1e-12);
    }

    #[test]
    fn antiderivative_inverts_dx(c in prop::collection::vec(-3.0f64..3.0, 3)) {
        let f = trig(&c);
        let g = antideriv_x(&f, 1).unwrap();
        let back = deriv(&g, Axis::X, 1, 1.0).unwrap();
        prop_assert!(linf_norm(&back.sub(&f).unwrap()) < 1e-12);
    }

    #[test]
    fn dealias_is_idempotent(v in prop::collection::vec(-1.0f64..1.0, 256)) {
        let f = dealias(&ScalarField::new(grid(), v).unwrap());
        prop_assert!(linf_norm(&dealias(&f).sub(&f).unwrap()) < 1e-14);
    }

    #[test]
    fn elliptic_inverse_roundtrip(
        c in prop::collection::vec(-3.0f64..3.0, 6),
        mu in 0.0f64..0.25,
        gamma in 0.01f64..1.0,
    ) {
        let w = VectorField2::new(trig(&c[..3]), trig(&c[3..])).unwrap();
        let back = invert_boussinesq_elliptic(&apply_boussinesq_elliptic(&w, mu, gamma).unwrap(), mu, gamma).unwrap();
        prop_assert!(linf_norm(&back.u.sub(&w.u).unwrap()) < 1e-12);
        prop_assert!(linf_norm(&back.v.sub(&w.v).unwrap()) < 1e-12);
    }

    #[test]
    fn linear_symbols_are_imaginary(kx in -5.0f64..5.0, ky in -5.0f64..5.0) {
        for kind in ScalarModelKind::ALL {
            prop_assert_eq!(linear_symbol(kind, kx, ky).re, 0.0);
        }
    }

    #[test]
    fn regime_parameters_round_trip(mu in 1e-4f64..MU0) {
        for r in RegimeKind::LONG_WAVE {
            let p = params_for(r, mu).unwrap();
            prop_assert!(in_regime(r, &p));
            prop_assert!(in_regime(RegimeKind::Boussinesq, &p));
        }
    }

    #[test]
    fn bound_is_nonnegative_and_increasing(mu in 1e-4f64..0.25, t in 0.0f64..1e4, dt in 0.0f64..10.0) {
        let b = error_bound(mu, t);
        prop_assert!(b >= 0.0);
        prop_assert!(error_bound(mu, t + dt) >= b);
    }
}
