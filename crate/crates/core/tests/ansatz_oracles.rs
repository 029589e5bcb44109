use coriolis_kp::ansatz::{
    leading_order_state, residual_eval, transport_growth_probe, AnsatzSetup, KTrajectory,
    SourceMode, V0Choice,
};
use coriolis_kp::experiments::TAU_SAMPLE_SPACING;
use coriolis_kp::regimes::RegimeKind;
use coriolis_kp::scalar::ScalarModelKind;
use coriolis_kp::spectral::{linf_norm, Grid, ScalarField, DEFAULT_BOX};
use coriolis_kp::verify::kdv_soliton;

fn gaussian_dx(g: Grid, s: f64) -> ScalarField {
    let c = g.lx / 2.0;
    ScalarField::from_fn(g, |x, y| {
        let (dx, dy) = (x - c, y - c);
        -dx / s * (-(dx * dx + dy * dy) / (2.0 * s * s)).exp()
    })
    .unwrap()
}

#[test]
fn leading_order_is_the_travelling_soliton() {
    let g = Grid::new(512, 16, DEFAULT_BOX, DEFAULT_BOX).unwrap();
    let (a, x0, mu) = (0.5, g.lx / 2.0, 0.01);
    let k0 = ScalarField::from_fn(g, |x, _| kdv_soliton(a, x, x0, 0.0)).unwrap();
    let traj = KTrajectory::generate(&k0, ScalarModelKind::KdV, 0.5, 1e-3, 10).unwrap();
    for t in [0.0, 7.3, 20.0, 50.0] {
        let s = leading_order_state(&traj, t, mu).unwrap();
        // ξ = x − t on the box, τ = μt
        let exact = ScalarField::from_fn(g, |x, _| {
            (-2..=2)
                .map(|m| kdv_soliton(a, x - t + m as f64 * g.lx, x0, mu * t))
                .sum()
        })
        .unwrap();
        assert!(linf_norm(&s.zeta.sub(&exact).unwrap()) < 1e-6, "t = {t}");
        assert_eq!(s.zeta.values(), s.vbar.u.values());
        assert_eq!(linf_norm(&s.vbar.v), 0.0);
    }
}

#[test]
fn tau_interpolation_converges_under_refinement() {
    let g = Grid::square(64, DEFAULT_BOX).unwrap();
    let k0 = gaussian_dx(g, 4.0);
    // default spacing against 10x denser samples
    let every = (TAU_SAMPLE_SPACING / 1e-3).round() as usize;
    let coarse = KTrajectory::generate(&k0, ScalarModelKind::RKP, 0.5, 1e-3, every).unwrap();
    let fine = KTrajectory::generate(&k0, ScalarModelKind::RKP, 0.5, 1e-3, every / 10).unwrap();
    for tau in [0.0105, 0.1234, 0.333, 0.4999] {
        let d = linf_norm(
            &coarse
                .k_at(tau)
                .unwrap()
                .sub(&fine.k_at(tau).unwrap())
                .unwrap(),
        );
        assert!(d < 1e-8, "tau {tau}: {d}");
    }
    assert!(coarse.k_at(0.6).is_err());
}

fn setup(regime: RegimeKind, model: ScalarModelKind, mu: f64) -> AnsatzSetup {
    let g = Grid::square(64, 16.0 * std::f64::consts::PI).unwrap();
    let k0 = gaussian_dx(g, 3.0);
    let traj = KTrajectory::generate(&k0, model, 0.5, 1e-3, 20).unwrap();
    AnsatzSetup::with_choice(regime, mu, traj, V0Choice::Auto, SourceMode::Reduced).unwrap()
}

#[test]
fn residual_split_reconstructs_the_full_residual() {
    for mu in [0.1, 0.01] {
        let s = setup(RegimeKind::RKP, ScalarModelKind::RKP, mu);
        let r = residual_eval(&s, &[0.0, 1.0, 0.4 / mu]).unwrap();
        assert!(r.max_reconstruction_error() < 1e-10, "mu {mu}");
    }
}

#[test]
fn each_regime_cancels_its_own_model() {
    for regime in RegimeKind::LONG_WAVE {
        let model = regime.scalar_model().unwrap();
        let s = setup(regime, model, 0.04);
        let r = residual_eval(&s, &[0.0, 3.0, 10.0]).unwrap();
        assert!(
            r.max_targeted_linf() < 1e-6,
            "{regime}: {}",
            r.max_targeted_linf()
        );
    }
}

#[test]
fn wrong_model_leaves_a_secular_residual() {
    let s = setup(RegimeKind::RKP, ScalarModelKind::KP, 0.04);
    let r = residual_eval(&s, &[10.0]).unwrap();
    assert!(r.max_r2_one_linf() > 0.1 * r.k0_linf);
}

#[test]
fn full_source_mode_keeps_targeted_residuals_small() {
    let g = Grid::square(64, 16.0 * std::f64::consts::PI).unwrap();
    let traj =
        KTrajectory::generate(&gaussian_dx(g, 3.0), ScalarModelKind::RKP, 0.5, 1e-3, 20).unwrap();
    let s = AnsatzSetup::with_choice(
        RegimeKind::RKP,
        0.04,
        traj,
        V0Choice::Auto,
        SourceMode::Full,
    )
    .unwrap();
    let r = residual_eval(&s, &[0.0, 5.0]).unwrap();
    assert!(r.max_targeted_linf() < 1e-6);
}

#[test]
fn probe_examples() {
    let g = Grid::square(64, DEFAULT_BOX).unwrap();
    let zero = ScalarField::zeros(g);
    let r = transport_growth_probe(1.0, -1.0, &zero, &zero, 50.0, 50).unwrap();
    assert!(r.h2_norm.iter().all(|h| *h == 0.0));
    assert!(transport_growth_probe(1.0, 1.0, &zero, &zero, 50.0, 50).is_err());

    let c = g.lx / 2.0;
    let k1 = ScalarField::from_fn(g, |x, y| {
        (-((x - c).powi(2) + (y - c).powi(2)) / 32.0).exp()
    })
    .unwrap();
    let r = transport_growth_probe(1.0, -1.0, &k1, &zero, 200.0, 100).unwrap();
    let fit = r.fit.unwrap();
    assert!(fit.slope > 0.0 && fit.r2 > 0.99);
    // resonant growth is exactly t·‖k1‖
    let last = *r.ratio.last().unwrap();
    assert!((r.ratio[10] - last).abs() < 1e-12 * last);
}
